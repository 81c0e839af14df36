#include <doctest.h>

#include "ainfty/fixtures.hpp"
#include "ainfty/functor.hpp"
#include "ainfty/torus.hpp"

using namespace ainfty;

namespace {

CatPtr dline(int lo, int hi) { return std::make_shared<AinfCategory>(directed_line(lo, hi)); }

} // namespace

TEST_CASE("identity functor passes check_functor") {
    auto a = dline(-1, 2);
    AinfFunctor id = identity_functor(a);
    CHECK(!check_functor(id, 4).has_value());
}

TEST_CASE("strict shift functor on the directed line passes") {
    auto a = dline(-2, 4);
    ShiftData sd = validate_shift_functor(a, canonical_shift_functor(a));
    CHECK(!check_functor(*sd.tau, 4).has_value());
}

TEST_CASE("corrupted component fails with a located tuple") {
    auto a = dline(0, 3);
    AinfFunctor f = identity_functor(a);
    // corrupt: send e0_1 to e0_1 + nothing composable... replace by zero
    f.comps.erase({a->gen_index("e0_1")});
    auto bad = check_functor(f, 4);
    REQUIRE(bad.has_value());
    CHECK(bad->tuple.size() >= 1);
}

TEST_CASE("compose with identity is the identity composition") {
    auto a = dline(0, 2);
    AinfFunctor id = identity_functor(a);
    AinfFunctor ff = compose_functors(id, id, 3);
    CHECK(ff.obj_map == id.obj_map);
    CHECK(ff.comps == id.comps);
}

TEST_CASE("shift composed with shift is shift-by-two on objects") {
    auto a = dline(-2, 4);
    // restrict twice
    std::vector<int> objs;
    for (int i = 0; i < static_cast<int>(a->objects.size()); ++i)
        if (a->objects[static_cast<size_t>(i)].split->level <= 2)
            objs.push_back(i);
    Subcategory rr = full_subcategory(a, objs, "rr");
    ShiftData sd = validate_shift_functor(a, canonical_shift_functor(a));
    // tau restricted to rr, then tau again
    AinfFunctor tau1 = *sd.tau; // on [lo, hi-1]
    // build tau on rr by restriction of the canonical shift
    AinfFunctor tau_rr;
    tau_rr.name = "tau_rr";
    tau_rr.src = rr.cat;
    tau_rr.dst = sd.restricted.cat;
    tau_rr.obj_map.resize(rr.cat->objects.size());
    for (int i = 0; i < static_cast<int>(rr.cat->objects.size()); ++i) {
        int par = rr.obj_of_parent[static_cast<size_t>(i)];
        int lvl = a->objects[static_cast<size_t>(par)].split->level;
        tau_rr.obj_map[static_cast<size_t>(i)] =
            sd.restricted.parent_to_sub[static_cast<size_t>(split_info(*a).object(lvl + 1, 0))];
    }
    for (int g = 0; g < static_cast<int>(rr.cat->gens.size()); ++g) {
        Mor parent = rr.gen_of_parent[static_cast<size_t>(g)];
        Mor shifted = a->shift_map.at(parent);
        // find restricted index
        for (int gg = 0; gg < static_cast<int>(sd.restricted.gen_of_parent.size()); ++gg)
            if (sd.restricted.gen_of_parent[static_cast<size_t>(gg)] == shifted)
                tau_rr.add_comp({g}, {gg});
    }
    tau_rr.finalize();
    AinfFunctor twice = compose_functors(tau_rr, tau1, 3);
    for (int i = 0; i < static_cast<int>(rr.cat->objects.size()); ++i) {
        int par = rr.obj_of_parent[static_cast<size_t>(i)];
        int lvl = a->objects[static_cast<size_t>(par)].split->level;
        int img = twice.map_obj(i);
        CHECK(a->objects[static_cast<size_t>(img)].split->level == lvl + 2);
    }
    CHECK(!check_functor(twice, 4).has_value());
}

TEST_CASE("functor homotopy: interval example") {
    // A: objects P, Q; u, v : P -> Q closed degree 0; k : P -> Q degree -1
    // with mu^1 k = u + v; I: one arrow w
    auto A = std::make_shared<AinfCategory>([] {
        AinfCategory a;
        a.name = "huv";
        a.add_object({"P", std::nullopt});
        a.add_object({"Q", std::nullopt});
        a.add_gen({"u", 0, 1, {0, 0}});
        a.add_gen({"v", 0, 1, {0, 0}});
        a.add_gen({"k", 0, 1, {-1, 0}});
        a.add_mu({2}, {0, 1}); // mu^1 k = u + v
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
    AinfFunctor phi = strict_functor("phi", I, A, {0, 1}, {{0, Combo{0}}}); // w -> u
    AinfFunctor psi = strict_functor("psi", I, A, {0, 1}, {{0, Combo{1}}}); // w -> v
    FunctorHomotopy t;
    t.from = &phi;
    t.to = &psi;
    t.comps[{0}] = {2}; // T(w) = k
    CHECK(!check_homotopy(t, 3).has_value());
    SUBCASE("corrupting the homotopy fails") {
        FunctorHomotopy bad = t;
        bad.comps.clear();
        CHECK(check_homotopy(bad, 3).has_value());
    }
}

TEST_CASE("adjunction lift places Adams-j morphisms in the t^j slice") {
    auto a = dline(0, 3);
    auto a0 = std::make_shared<AinfCategory>(collapse_grading(*a, 0));
    auto pt = std::make_shared<AinfCategory>(poly_tensor(*a0, 0, 4));
    // psi_m : collapse of the identity-on-objects inclusion a_0 -> a_0
    AinfFunctor psim = identity_functor(a0);
    psim.src = a0;
    // the lift wants source = the graded category
    AinfFunctor psim2;
    psim2.name = "psi_m";
    psim2.src = a0;
    psim2.dst = a0;
    psim2.obj_map = psim.obj_map;
    psim2.comps = psim.comps;
    // treat the graded a as the source for the lift
    AinfFunctor lift = adjunction_lift(
        [&] {
            AinfFunctor f;
            f.name = "psi";
            f.src = std::make_shared<AinfCategory>(collapse_grading(*a0, 0));
            f.dst = a0;
            f.obj_map = psim.obj_map;
            f.comps = psim.comps;
            return f;
        }(),
        a, pt, 0);
    for (const auto& [in, out] : lift.comps) {
        int k = 0;
        for (Mor m : in)
            k += a->deg_of(m).a;
        for (Mor ogen : out)
            CHECK(pt->deg_of(ogen).a == k);
    }
    CHECK(!check_functor(lift, 4).has_value());
}

TEST_CASE("collapse functor keeps components") {
    auto a = dline(-1, 2);
    ShiftData sd = validate_shift_functor(a, canonical_shift_functor(a));
    auto r0 = std::make_shared<AinfCategory>(collapse_grading(*sd.restricted.cat, 3));
    auto a0 = std::make_shared<AinfCategory>(collapse_grading(*a, 3));
    AinfFunctor tm = collapse_functor(*sd.tau, r0, a0);
    CHECK(tm.comps == sd.tau->comps);
    CHECK(!check_functor(tm, 4).has_value());
}
