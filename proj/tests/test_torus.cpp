#include <doctest.h>

#include "ainfty/fixtures.hpp"
#include "ainfty/torus.hpp"

using namespace ainfty;

TEST_CASE("grothendieck of three points") {
    auto pt = std::make_shared<AinfCategory>([] {
        AinfCategory a;
        a.name = "pt";
        a.add_object({"P", std::nullopt});
        a.finalize();
        return a;
    }());
    auto id = std::make_shared<AinfFunctor>(identity_functor(pt));
    Grothendieck g = grothendieck({id, id});
    CHECK(g.cat->objects.size() == 3);
    CHECK(g.adj1.size() == 1);
    CHECK(g.adj2.size() == 1);
    CHECK(!check_relations(*g.cat, 3).has_value());
}

TEST_CASE("cylinder reproduces the paper shape with W_C") {
    auto a = std::make_shared<AinfCategory>(directed_line(0, 2));
    Cylinder c = cylinder(a);
    CHECK(c.g.cat->objects.size() == 9);
    CHECK(c.w_c.size() == 6); // two adjacent units per object
    CHECK(!check_relations(*c.g.cat, 4).has_value());
    // pi sends W_C to units
    for (Mor w : c.w_c) {
        Mor arr[1] = {w};
        Combo img = c.pi->eval(arr);
        REQUIRE(img.size() == 1);
        CHECK(is_unit(img[0]));
    }
    // pi o (iota_bot u iota_top) = id u id structurally
    AinfFunctor pb = compose_functors(*c.iota_bot, *c.pi, 4);
    AinfFunctor id = identity_functor(a);
    CHECK(pb.obj_map == id.obj_map);
    CHECK(pb.comps == id.comps);
}

TEST_CASE("mixed-sequence operation equals the block expansion on the directed line") {
    // with strict legs the block formula reduces to one term; verify the
    // Grothendieck relations catch it all
    auto a = std::make_shared<AinfCategory>(directed_line(-1, 2));
    auto id = std::make_shared<AinfFunctor>(identity_functor(a));
    Grothendieck g = grothendieck({id, id});
    CHECK(!check_relations(*g.cat, 4).has_value());
    // a concrete mixed product: e0_1 in the apex, adjacent unit, then e1_2
    int apex_e01 = g.apex_gen[static_cast<size_t>(a->gen_index("e0_1"))];
    Mor adj = g.cross.at({1, a->object_index("X^1(E)"), unit_of(a->object_index("X^1(E)"))});
    int d1_e12 = g.d1_gen[static_cast<size_t>(a->gen_index("e1_2"))];
    Mor expect = g.cross.at({1, a->object_index("X^0(E)"), a->gen_index("e0_2")});
    std::vector<Mor> seq = {apex_e01, adj, d1_e12};
    // mu^3 vanishes (DG); the pairwise products compose to the expected cross
    Mor pair[2] = {apex_e01, adj};
    Combo mid = g.cat->mu_eval(pair);
    REQUIRE(mid.size() == 1);
    Mor pair2[2] = {mid[0], d1_e12};
    CHECK(g.cat->mu_eval(pair2) == Combo{expect});
    (void)seq;
    (void)expect;
}

TEST_CASE("homotopic legs induce the kappa comparison functor") {
    // A with u ~ v via k; two diagrams with legs (w -> u) and (w -> v)
    auto A = std::make_shared<AinfCategory>([] {
        AinfCategory a;
        a.name = "huv";
        a.add_object({"P", std::nullopt});
        a.add_object({"Q", std::nullopt});
        a.add_gen({"u", 0, 1, {0, 0}});
        a.add_gen({"v", 0, 1, {0, 0}});
        a.add_gen({"k", 0, 1, {-1, 0}});
        a.add_mu({2}, {0, 1});
        a.finalize();
        return a;
    }());
    auto I = std::make_shared<AinfCategory>([] {
        AinfCategory a;
        a.name = "interval";
        a.add_object({"s", std::nullopt});
        a.add_object({"t", std::nullopt});
        a.add_gen({"w", 0, 1, {0, 0}});
        a.finalize();
        return a;
    }());
    auto phi = std::make_shared<AinfFunctor>(strict_functor("phi", I, A, {0, 1}, {{0, Combo{0}}}));
    auto psi = std::make_shared<AinfFunctor>(strict_functor("psi", I, A, {0, 1}, {{0, Combo{1}}}));
    FunctorHomotopy t;
    t.from = phi.get();
    t.to = psi.get();
    t.comps[{0}] = {2};
    REQUIRE(!check_homotopy(t, 3).has_value());
    Grothendieck g0 = grothendieck({psi, psi}); // legs = t.to
    Grothendieck g1 = grothendieck({phi, phi}); // legs = t.from
    AinfFunctor kappa = homotopic_diagram_functor(g0, g1, t, t, 4);
    CHECK(!check_functor(kappa, 4).has_value());
    // adjacent units map to adjacent units
    for (size_t i = 0; i < g0.adj1.size(); ++i) {
        Mor arr[1] = {g0.adj1[i]};
        Combo img = kappa.eval(arr);
        REQUIRE(img.size() == 1);
        CHECK(img[0] == g1.adj1[i]);
    }
}

TEST_CASE("coinvariants of the units-only line is the point") {
    auto a = std::make_shared<AinfCategory>(units_line(-2, 4));
    Coinvariants co = coinvariants(a, canonical_shift_functor(a), 3);
    CHECK(co.cat->objects.size() == 1);
    CHECK(co.cat->gens.empty());
}

TEST_CASE("coinvariants of the directed line is the polynomial pattern") {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    Coinvariants co = coinvariants(a, canonical_shift_functor(a), 4);
    CHECK(co.cat->objects.size() == 1);
    // classes u_j = [e(0,j)] with level-0 representatives, j = 1..4
    CHECK(co.cat->gens.size() == 4);
    // mu^2(u_a, u_b) = u_{a+b}
    int u1 = co.cat->gen_index("[e0_1]");
    int u2 = co.cat->gen_index("[e0_2]");
    int u3 = co.cat->gen_index("[e0_3]");
    REQUIRE(u1 >= 0);
    REQUIRE(u2 >= 0);
    Mor arr[2] = {u1, u2};
    CHECK(co.cat->mu_eval(arr) == Combo{u3});
    CHECK(!check_relations(*co.cat, 4).has_value());
}

TEST_CASE("non-equivariant mu entry gives IllDefinedInducedOp") {
    AinfCategory a = directed_line(0, 3);
    // corrupt one high translate: remove mu(e1_2, e2_3) so the translate of
    // mu(e0_1, e1_2) projects inconsistently
    a.mu.erase({a.gen_index("e1_2"), a.gen_index("e2_3")});
    a.finalize();
    auto ap = std::make_shared<AinfCategory>(a);
    bool threw = false;
    try {
        coinvariants(ap, canonical_shift_functor(ap), 3);
    } catch (const Error& e) {
        threw = true;
        CHECK((e.kind() == ErrKind::IllDefinedInducedOp || e.kind() == ErrKind::NotBijectiveOnHoms));
    }
    CHECK(threw);
}

TEST_CASE("M_G has d o d = 0 and the expected value at X_bullet^0") {
    auto a = std::make_shared<AinfCategory>(units_line(-1, 1));
    TorusG tg = build_torus_g(a, canonical_shift_functor(a));
    ModuleG mg = build_module_g(tg, 0, 3);
    for (int x = 0; x < static_cast<int>(mg.g0->objects.size()); ++x)
        module_value_complex(*mg.m_g, x).check_dd_zero();
    // value at X_bullet^0: one class per bullet level >= 0
    int xb = tg.object(TorusG::Bullet, 0, 0);
    ChainComplex cc = module_value_complex(*mg.m_g, xb);
    CHECK(betti_at(cc, {0, 0}) == 1); // only the unit row survives (units-only line)
}

TEST_CASE("theorem A on the units-only line") {
    auto a = std::make_shared<AinfCategory>(units_line(-2, 4));
    TorusOptions opt;
    opt.adams_lo = 0;
    opt.adams_hi = 4;
    opt.c_lo = -2;
    opt.c_hi = 2;
    opt.cap_initial = 6;
    opt.cap_max = 12;
    opt.run_module_checks = false;
    TorusReport rep = verify_thm_a(a, canonical_shift_functor(a), opt);
    for (const auto& c : rep.checks) {
        INFO(c.name, " : ", c.detail);
        CHECK(c.pass);
    }
    REQUIRE(!rep.tables.empty());
    CHECK(rep.tables[0].lhs.at({0, 0}) == 1);
    CHECK(rep.pass);
}

TEST_CASE("theorem A on the directed line (hybrid tables)") {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    TorusOptions opt;
    opt.adams_lo = 0;
    opt.adams_hi = 4;
    opt.c_lo = -2;
    opt.c_hi = 2;
    opt.cap_initial = 4;
    opt.cap_max = 6;
    opt.run_module_checks = false;
    TorusReport rep = verify_thm_a(a, canonical_shift_functor(a), opt);
    REQUIRE(!rep.tables.empty());
    for (int j = 0; j <= 4; ++j)
        CHECK(rep.tables[0].lhs.at({0, j}) == 1);
    CHECK(rep.pass);
}

TEST_CASE("theorem A reports a precondition failure for a broken tau") {
    auto a = std::make_shared<AinfCategory>(directed_line(-1, 2));
    AinfFunctor tau = canonical_shift_functor(a);
    tau.comps.erase({a->gen_index("e-1_0")}); // drop one hom bijection
    TorusOptions opt;
    opt.adams_hi = 2;
    opt.c_lo = -1;
    opt.c_hi = 1;
    TorusReport rep = verify_thm_a(a, tau, opt);
    CHECK(!rep.pass);
    REQUIRE(!rep.checks.empty());
    CHECK(!rep.checks[0].pass); // the precondition line, not a silent FAIL
}

TEST_CASE("theorem B on the directed line (hybrid tables)") {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    ThmBData fd = shift_f_for(a, 0);
    TorusOptions opt;
    opt.adams_lo = 0;
    opt.adams_hi = 4;
    opt.c_lo = -2;
    opt.c_hi = 2;
    opt.cap_initial = 4;
    opt.cap_max = 6;
    opt.run_module_checks = false;
    TorusReport rep = verify_thm_b(a, canonical_shift_functor(a), *fd.f, 0, opt);
    REQUIRE(!rep.tables.empty());
    for (int j = 0; j <= 4; ++j)
        CHECK(rep.tables[0].lhs.at({0, j}) == 1);
    CHECK(rep.pass);
    SUBCASE("zeroed f component fails the hypotheses") {
        BimoduleMap broken = *fd.f;
        // rebuild without the i<j component at (0,1): f(e0_1) killed
        BimoduleMap b2(fd.diag, fd.twisted, 0);
        for (const auto& [k, v] : fd.f->comps()) {
            if (!is_unit(k.u) && fd.a_m->gens[static_cast<size_t>(k.u)].id == "e0_1")
                continue;
            b2.add_comp(k, v);
        }
        TorusReport r2 = verify_thm_b(a, canonical_shift_functor(a), b2, 0, opt);
        CHECK(!r2.pass);
    }
}

TEST_CASE("theorems A and B agree bidegree-wise on the doubly-eligible fixture") {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    ThmBData fd = shift_f_for(a, 0);
    TorusOptions opt;
    opt.adams_lo = 0;
    opt.adams_hi = 3;
    opt.c_lo = -1;
    opt.c_hi = 1;
    opt.cap_initial = 4;
    opt.cap_max = 6;
    opt.run_module_checks = false;
    TorusReport ra = verify_thm_a(a, canonical_shift_functor(a), opt);
    TorusReport rb = verify_thm_b(a, canonical_shift_functor(a), *fd.f, 0, opt);
    REQUIRE(ra.pass);
    REQUIRE(rb.pass);
    CHECK(ra.tables[0].lhs == rb.tables[0].lhs);
}
