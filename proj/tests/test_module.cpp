#include <doctest.h>

#include "ainfty/fixtures.hpp"
#include "ainfty/localization.hpp"
#include "ainfty/module.hpp"
#include "ainfty/torus.hpp"

#include <random>

using namespace ainfty;

namespace {

CatPtr dline(int lo, int hi) { return std::make_shared<AinfCategory>(directed_line(lo, hi)); }

// module map given by an explicit component table (test helper)
class TableMap : public ModuleMap {
public:
    using Key = std::pair<std::vector<Mor>, std::pair<int, int>>; // (xs, (end_obj, u))
    TableMap(ModPtr s, ModPtr d, Bidegree deg, std::map<Key, ModCombo> table)
        : ModuleMap(std::move(s), std::move(d), deg), table_(std::move(table)) {}

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override {
        Key k{{xs.begin(), xs.end()}, {end_obj, u}};
        auto it = table_.find(k);
        return it == table_.end() ? ModCombo{} : it->second;
    }

private:
    std::map<Key, ModCombo> table_;
};

} // namespace

TEST_CASE("yoneda values over the units-only line") {
    auto a = std::make_shared<AinfCategory>(units_line(0, 2));
    YonedaModule y(a, 1);
    CHECK(y.value(1).size() == 1); // the unit
    CHECK(y.value(0).empty());
    CHECK(y.value(2).empty());
}

TEST_CASE("t_{e_Y} acts as the identity on values") {
    auto a = dline(0, 3);
    auto y = std::make_shared<YonedaModule>(a, 2);
    YonedaWordMap te(y, y, {unit_of(2)});
    for (int x = 0; x <= 2; ++x) {
        int n = static_cast<int>(y->value(x).size());
        for (int u = 0; u < n; ++u)
            CHECK(te.component({}, x, u) == ModCombo{u});
    }
}

TEST_CASE("module relations hold for yoneda and cones on the directed line") {
    auto a = dline(-1, 3);
    auto y0 = std::make_shared<YonedaModule>(a, a->object_index("X^0(E)"));
    CHECK(!check_module(*y0, 4).has_value());
    auto y1 = std::make_shared<YonedaModule>(a, a->object_index("X^1(E)"));
    auto t = std::make_shared<YonedaWordMap>(y0, y1, std::vector<Mor>{a->gen_index("e0_1")});
    auto cone = cone_of_map(t, 4);
    CHECK(!check_module(*cone, 4).has_value());
}

TEST_CASE("differential of a closed yoneda map vanishes") {
    auto a = dline(0, 3);
    auto y0 = std::make_shared<YonedaModule>(a, 0);
    auto y2 = std::make_shared<YonedaModule>(a, 2);
    auto t = std::make_shared<YonedaWordMap>(y0, y2, std::vector<Mor>{a->gen_index("e0_2")});
    CHECK(is_zero_map(DiffMap(t), 4));
}

TEST_CASE("mu^1_Mod squared vanishes on randomized module maps") {
    auto a = dline(0, 3);
    auto y0 = std::make_shared<YonedaModule>(a, 1);
    auto y1 = std::make_shared<YonedaModule>(a, 3);
    std::mt19937 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        std::map<TableMap::Key, ModCombo> table;
        // random components on a few tuples, arbitrary degrees; mu^1 mu^1 = 0
        // holds identically
        std::uniform_int_distribution<int> coin(0, 1);
        for (int d = 0; d <= 2; ++d) {
            for_each_composable(*a, std::max(d, 1), [&](const std::vector<Mor>& xs) {
                if (d == 0 && xs.size() > 1)
                    return;
                std::vector<Mor> key = d == 0 ? std::vector<Mor>{} : xs;
                int end = key.empty() ? 1 : a->dst_of(key.back());
                int n1 = static_cast<int>(y0->value(end).size());
                int front = key.empty() ? end : a->src_of(key.front());
                int n2 = static_cast<int>(y1->value(front).size());
                for (int u = 0; u < n1; ++u) {
                    ModCombo out;
                    for (int v = 0; v < n2; ++v)
                        if (coin(rng))
                            out.push_back(v);
                    if (!out.empty())
                        table[{key, {end, u}}] = out;
                }
            });
        }
        auto t = std::make_shared<TableMap>(y0, y1, Bidegree{0, 0}, std::move(table));
        auto dt = std::make_shared<DiffMap>(t);
        CHECK(is_zero_map(DiffMap(dt), 3));
    }
}

TEST_CASE("yoneda lemma at desk scale: H^0 Hom_Mod(yon X^0, yon X^2) is one-dimensional") {
    auto a = dline(-1, 3);
    auto y0 = std::make_shared<YonedaModule>(a, a->object_index("X^0(E)"));
    auto y2 = std::make_shared<YonedaModule>(a, a->object_index("X^2(E)"));
    // basis of the module-map space: elementary components (xs, u) -> v;
    // grade by s = deg(v) - sum deg(xs) - deg(u) + |xs| (component of a
    // degree-s map); assemble mu^1_Mod as a matrix and take Betti at 0
    struct Elem {
        std::vector<Mor> xs;
        int end, u, v;
        int deg;
    };
    std::vector<Elem> elems;
    auto add_elems = [&](const std::vector<Mor>& xs) {
        int end = xs.empty() ? -1 : a->dst_of(xs.back());
        for (int e = 0; e < static_cast<int>(a->objects.size()); ++e) {
            if (end >= 0 && e != end)
                continue;
            int front = xs.empty() ? e : a->src_of(xs.front());
            int n1 = static_cast<int>(y0->value(e).size());
            int n2 = static_cast<int>(y2->value(front).size());
            for (int u = 0; u < n1; ++u) {
                for (int v = 0; v < n2; ++v) {
                    int s = y2->value(front)[static_cast<size_t>(v)].deg.c -
                            y0->value(e)[static_cast<size_t>(u)].deg.c +
                            static_cast<int>(xs.size());
                    for (Mor m : xs)
                        s -= a->deg_of(m).c;
                    elems.push_back({xs, e, u, v, s});
                }
            }
        }
    };
    add_elems({});
    for (int d = 1; d <= 3; ++d)
        for_each_composable(*a, d, [&](const std::vector<Mor>& xs) { add_elems(xs); });

    auto index_of = [&](const std::vector<Mor>& xs, int e, int u, int v) {
        for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
            const Elem& el = elems[static_cast<size_t>(i)];
            if (el.xs == xs && el.end == e && el.u == u && el.v == v)
                return i;
        }
        return -1;
    };
    // mu^1 of each elementary map, restricted to components on tuples of
    // length <= 3 (the directed line has no longer composables)
    std::map<int, std::vector<int>> bydeg;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i)
        bydeg[elems[static_cast<size_t>(i)].deg].push_back(i);
    // matrix of mu^1 from degree s to s+1
    auto matrix_for = [&](int s) {
        const auto& cols = bydeg[s];
        const auto& rows = bydeg[s + 1];
        F2Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (int cj = 0; cj < static_cast<int>(cols.size()); ++cj) {
            const Elem& el = elems[static_cast<size_t>(cols[static_cast<size_t>(cj)])];
            std::map<TableMap::Key, ModCombo> table;
            table[{el.xs, {el.end, el.u}}] = {el.v};
            auto t = std::make_shared<TableMap>(y0, y2, Bidegree{el.deg, 0}, std::move(table));
            DiffMap dt(t);
            // expand the differential over all component slots
            for (int ri = 0; ri < static_cast<int>(rows.size()); ++ri) {
                const Elem& rl = elems[static_cast<size_t>(rows[static_cast<size_t>(ri)])];
                ModCombo out = dt.component(rl.xs, rl.end, rl.u);
                bool hit = std::binary_search(out.begin(), out.end(), rl.v);
                if (hit)
                    m.add_entry(ri, cj);
            }
        }
        return m;
    };
    F2Matrix d0 = matrix_for(0);
    F2Matrix dm1 = matrix_for(-1);
    int n0 = static_cast<int>(bydeg[0].size());
    int h0 = n0 - f2_rank(d0) - f2_rank(dm1);
    CHECK(h0 == 1); // = dim H(C(X^0, X^2))
}

TEST_CASE("cone of the identity map is acyclic at every object") {
    auto a = dline(0, 3);
    auto y = std::make_shared<YonedaModule>(a, 2);
    auto cone = cone_of_map(std::make_shared<IdentityMap>(y), 4);
    for (int x = 0; x < static_cast<int>(a->objects.size()); ++x) {
        ChainComplex cc = module_value_complex(*cone, x);
        BidegreeWindow w{-3, 3, -4, 4};
        CHECK(is_acyclic(cc, w));
    }
}

TEST_CASE("cone of the zero map is the direct sum with untwisted action") {
    auto a = dline(0, 2);
    auto y0 = std::make_shared<YonedaModule>(a, 0);
    auto y1 = std::make_shared<YonedaModule>(a, 1);
    auto z = std::make_shared<ZeroMap>(y0, y1, Bidegree{0, 0});
    auto cone = cone_of_map(z, 4);
    // untwisted: acting never mixes the parts
    for (int x = 0; x < 2; ++x) {
        int n0 = static_cast<int>(y0->value(x).size());
        for_each_composable(*a, 1, [&](const std::vector<Mor>& xs) {
            if (a->dst_of(xs[0]) != x)
                return;
            for (int u = 0; u < n0; ++u) {
                ModCombo out = cone->act(xs, x, u); // part 0 element
                for (int o : out)
                    CHECK(cone->to_local(a->src_of(xs[0]), o).first == 0);
            }
        });
    }
}

TEST_CASE("cone of a non-closed map throws NotClosed") {
    auto a = dline(0, 2);
    auto y0 = std::make_shared<YonedaModule>(a, 0);
    auto y1 = std::make_shared<YonedaModule>(a, 1);
    std::map<TableMap::Key, ModCombo> tbl;
    // a map picking out e0_1 from the unit: not closed in general? build a
    // degree-0 map whose differential is nonzero: send unit -> e0_1 only at
    // the top object and nothing else; mu^1 picks up action mismatches
    tbl[{{}, {0, static_cast<int>(YonedaModule(a, 0).value(0).size()) - 1}}] = {0};
    auto t = std::make_shared<TableMap>(y0, y1, Bidegree{0, 0}, std::move(tbl));
    bool closed = is_zero_map(DiffMap(t), 3);
    if (!closed)
        CHECK_THROWS_AS(cone_of_map(t, 3), Error);
}

TEST_CASE("pullback along the identity is the same module") {
    auto a = dline(0, 3);
    auto id = std::make_shared<AinfFunctor>(identity_functor(a));
    auto y = std::make_shared<YonedaModule>(a, 2);
    PullbackModule pb(id, y);
    for (int x = 0; x < static_cast<int>(a->objects.size()); ++x) {
        CHECK(pb.value(x).size() == y->value(x).size());
        for_each_composable(*a, 2, [&](const std::vector<Mor>& xs) {
            int end = a->dst_of(xs.back());
            if (end != x)
                return;
            for (int u = 0; u < static_cast<int>(y->value(x).size()); ++u)
                CHECK(pb.act(xs, x, u) == y->act(xs, x, u));
        });
    }
}

TEST_CASE("t_Phi is closed and pullback composes contravariantly") {
    auto a = dline(-2, 4);
    ShiftData sd = validate_shift_functor(a, canonical_shift_functor(a));
    auto tau = sd.tau;
    auto r = sd.restricted.cat;
    int y_obj = r->object_index("X^1(E)");
    auto ysrc = std::make_shared<YonedaModule>(r, y_obj);
    auto ydst = std::make_shared<YonedaModule>(a, tau->map_obj(y_obj));
    auto pb = std::make_shared<PullbackModule>(tau, ydst);
    auto tphi = std::make_shared<FunctorInducedMap>(tau, ysrc, pb);
    CHECK(is_zero_map(DiffMap(tphi), 4));

    // (psi o phi)^* = phi^* o psi^* structurally: pull back a yoneda along
    // the inclusion then tau versus the composite
    auto incl = sd.restricted.inclusion;
    auto comp = std::make_shared<AinfFunctor>(compose_functors(*tau, identity_functor(a), 3));
    auto pb2 = std::make_shared<PullbackModule>(comp, ydst);
    for (int x = 0; x < static_cast<int>(r->objects.size()); ++x) {
        CHECK(pb->value(x).size() == pb2->value(x).size());
        for_each_composable(*r, 2, [&](const std::vector<Mor>& xs) {
            if (r->dst_of(xs.back()) != x)
                return;
            for (int u = 0; u < static_cast<int>(pb->value(x).size()); ++u)
                CHECK(pb->act(xs, x, u) == pb2->act(xs, x, u));
        });
    }
    (void)incl;
}

TEST_CASE("homotopy cone map: strictly commuting square with h = 0") {
    auto a = std::make_shared<AinfCategory>(collapse_grading(directed_line(-2, 4), 0));
    // square: y0 -> y1 (via e0_1), y0 -> y2 (via e0_2); targets map to y3
    auto y0 = std::make_shared<YonedaModule>(a, a->object_index("X^0(E)"));
    auto y1 = std::make_shared<YonedaModule>(a, a->object_index("X^1(E)"));
    auto y2 = std::make_shared<YonedaModule>(a, a->object_index("X^2(E)"));
    auto y3 = std::make_shared<YonedaModule>(a, a->object_index("X^3(E)"));
    auto t1 = std::make_shared<YonedaWordMap>(y0, y1, std::vector<Mor>{a->gen_index("e0_1")});
    auto t1p = std::make_shared<YonedaWordMap>(y0, y2, std::vector<Mor>{a->gen_index("e0_2")});
    auto t2 = std::make_shared<YonedaWordMap>(y1, y3, std::vector<Mor>{a->gen_index("e1_3")});
    auto t2p = std::make_shared<YonedaWordMap>(y2, y3, std::vector<Mor>{a->gen_index("e2_3")});
    auto cone = cone_of_two_maps(t1, t1p, 4);
    auto h = std::make_shared<ZeroMap>(y0, y3, Bidegree{-1, 0});
    MapPtr th = homotopy_cone_map(t1, t2, t1p, t2p, h, cone, 4);
    CHECK(is_zero_map(DiffMap(th), 4));
    SUBCASE("corrupting h raises NotAHomotopy") {
        // a single stray component at an object with incoming morphisms
        int xm1 = a->object_index("X^-1(E)");
        std::map<TableMap::Key, ModCombo> tbl;
        tbl[{{}, {xm1, 0}}] = {0};
        auto bad = std::make_shared<TableMap>(y0, y3, Bidegree{-1, 0}, std::move(tbl));
        CHECK_THROWS_AS(homotopy_cone_map(t1, t2, t1p, t2p, bad, cone, 4), Error);
    }
}

TEST_CASE("telescope: shift map identity mu^1(s) = t^{n+1} t_c + t^n") {
    auto a = dline(0, 4);
    auto a0 = std::make_shared<AinfCategory>(collapse_grading(*a, 0));
    std::vector<int> lev;
    std::vector<Mor> cf;
    for (int n = 0; n <= 4; ++n)
        lev.push_back(n);
    for (int n = 0; n < 4; ++n)
        cf.push_back(a0->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    TelescopeData td = build_telescope(a0, lev, cf, 3);
    // s at row n = 1
    int n = 1;
    auto cone = td.module;
    auto src_sum = std::dynamic_pointer_cast<const DirectSumModule>(cone->map().src_ptr());
    auto s = std::make_shared<ConeShiftInclusion>(td.yonedas[static_cast<size_t>(n)], cone, src_sum, n);
    auto tc = std::make_shared<YonedaWordMap>(td.yonedas[1], td.yonedas[2],
                                              std::vector<Mor>{cf[static_cast<size_t>(n)]});
    auto rhs1 = std::make_shared<ComposeMap>(tc, td.inclusions[2]);
    auto total = std::make_shared<SumMap>(
        std::vector<MapPtr>{std::make_shared<DiffMap>(s), rhs1, td.inclusions[1]});
    CHECK(is_zero_map(*total, 3));
}

TEST_CASE("quotient module of the directed line at X^1") {
    // quotient value at X^0 of yoneda(X^2): basis {e0_2} u {e0_1[1] (x) e1_2},
    // differential sends the word to e0_2
    auto a = dline(-1, 3);
    std::vector<int> killed = {a->object_index("X^1(E)")};
    WordComplex wc = quotient_hom_complex(a, killed, a->object_index("X^0(E)"),
                                          a->object_index("X^2(E)"), {-2, 2, 0, 4}, 6);
    CHECK(wc.cc.dim({0, 2}) == 1);  // e0_2
    CHECK(wc.cc.dim({-1, 2}) == 1); // e0_1[1] (x) e1_2
    const F2Matrix* d = wc.cc.differential({-1, 2});
    REQUIRE(d);
    CHECK(d->at(0, 0));
    // H^0 unchanged: dimension 1 at (0, j) for the classes that survive?
    // the quotient kills X^1: H of the quotient hom at (0,2) is 0 (word
    // cancels e0_2), elsewhere the homs pass through
    CHECK(betti_at(wc.cc, {0, 2}) == 0);
    CHECK(betti_at(wc.cc, {-1, 2}) == 0);
}

TEST_CASE("quotient by the empty subcategory is the hom complex") {
    auto a = dline(0, 2);
    WordComplex wc = quotient_hom_complex(a, {}, 0, 2, {-1, 1, 0, 3}, 4);
    BettiTable t = betti(a->hom_complex(0, 2), {-1, 1, 0, 3});
    CHECK(wc.betti == t);
    CHECK(wc.cert.kind == CertKind::Exact);
}
