#include <doctest.h>

#include "ainfty/fixtures.hpp"
#include "ainfty/localization.hpp"
#include "ainfty/torus.hpp"

using namespace ainfty;

namespace {

CatPtr dline0(int lo, int hi) {
    return std::make_shared<AinfCategory>(collapse_grading(directed_line(lo, hi), 0));
}

} // namespace

TEST_CASE("extended category passes the relations on the directed line") {
    auto a = dline0(-1, 2);
    std::vector<Mor> ws;
    for (int n = -1; n < 2; ++n)
        ws.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    ExtCategory ext = adjoin_cones(a, ws, 0);
    CHECK(!check_relations(*ext.ext, 3).has_value());
}

TEST_CASE("cone of a unit has acyclic hom complexes from every object") {
    auto a = dline0(0, 2);
    ExtCategory ext = adjoin_cones(a, {unit_of(1)}, 0);
    int cone = ext.cones[0].obj;
    for (int x = 0; x < 3; ++x) {
        ChainComplex cc = ext.ext->hom_complex(x, cone);
        CHECK(is_acyclic(cc, {-3, 3, 0, 0}));
    }
}

TEST_CASE("hom into Cone(c_0) on the directed line is acyclic where c_0 multiplies isomorphically") {
    auto a = dline0(-1, 2);
    Mor c0 = a->gen_index("e0_1");
    ExtCategory ext = adjoin_cones(a, {c0}, 0);
    int cone = ext.cones[0].obj;
    // hom(X^-1, Cone(c0)) = Cone(mu^2(-, c0) : hom(X^-1,X^0) -> hom(X^-1,X^1)),
    // acyclic since the multiplication is an isomorphism there
    int xm1 = a->object_index("X^-1(E)");
    ChainComplex cc = ext.ext->hom_complex(xm1, cone);
    CHECK(is_acyclic(cc, {-3, 3, 0, 0}));
    // d o d = 0 on all extended hom complexes
    for (int x = 0; x < static_cast<int>(ext.ext->objects.size()); ++x)
        for (int y = 0; y < static_cast<int>(ext.ext->objects.size()); ++y)
            ext.ext->hom_complex(x, y).check_dd_zero();
}

TEST_CASE("telescope oracle on the directed line") {
    auto a = dline0(-2, 4);
    std::vector<int> lev;
    std::vector<Mor> cf;
    for (int n = -2; n <= 4; ++n)
        lev.push_back(a->object_index("X^" + std::to_string(n) + "(E)"));
    for (int n = -2; n < 4; ++n)
        cf.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    BettiTable t = telescope_oracle(a, lev, cf, a->object_index("X^0(E)"), {-2, 2, 0, 0}, 3);
    CHECK(t.at({0, 0}) == 1);
    CHECK(t.at({-1, 0}) == 0);
    CHECK(t.at({1, 0}) == 0);
    SUBCASE("zeroed continuation element fails the hypotheses") {
        AinfCategory broken = *a;
        // drop every mu entry that outputs e0_1 and the ones consuming it:
        // replacing c_0 by a non-quasi-iso: delete the composition through it
        // simplest: report c_0 as the unit-of-wrong-object morphism e0_2
        std::vector<Mor> cf2 = cf;
        cf2[2] = a->gen_index("e0_2"); // X^0 -> X^2, wrong target
        CHECK_THROWS_AS(telescope_oracle(a, lev, cf2, a->object_index("X^0(E)"), {-2, 2, 0, 0}, 3),
                        Error);
    }
}

TEST_CASE("units-only category localized at an adjoined unit cone keeps End") {
    auto a = std::make_shared<AinfCategory>(collapse_grading(units_line(0, 1), 0));
    LocalizationPresentation lp = make_localization(a, {unit_of(0)}, 0);
    WordComplex wc = localized_hom(lp, 0, 0, {-2, 2, 0, 0});
    CHECK(wc.betti.at({0, 0}) == 1);
    CHECK(wc.betti.at({-1, 0}) == 0);
    CHECK(wc.betti.at({1, 0}) == 0);
}

TEST_CASE("directed line localized at all continuation elements: oracle equivalence") {
    auto a = dline0(-2, 4);
    std::vector<Mor> ws;
    for (int n = -2; n < 4; ++n)
        ws.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    LocalizationPresentation lp = make_localization(a, ws, 0);
    lp.cap_initial = 6;
    lp.cap_max = 12;
    // localized End(X^0): expected one class in degree 0 (the oracle value)
    WordComplex wc = localized_hom(lp, a->object_index("X^0(E)"), a->object_index("X^0(E)"),
                                   {-2, 2, 0, 0});
    INFO("certificate: ", wc.cert.str());
    CHECK(wc.betti.at({0, 0}) == 1);
    CHECK(wc.betti.at({-1, 0}) == 0);
    CHECK(wc.betti.at({1, 0}) == 0);
    // and hom(X^0, X^n) agrees with the telescope oracle for every n
    std::vector<int> lev;
    for (int n = -2; n <= 4; ++n)
        lev.push_back(a->object_index("X^" + std::to_string(n) + "(E)"));
    BettiTable oracle = telescope_oracle(a, lev, ws, a->object_index("X^0(E)"), {-2, 2, 0, 0}, 3);
    for (int n = -1; n <= 2; ++n) {
        WordComplex w2 = localized_hom(lp, a->object_index("X^0(E)"),
                                       a->object_index("X^" + std::to_string(n) + "(E)"),
                                       {-2, 2, 0, 0});
        CHECK(w2.betti == oracle);
    }
}

TEST_CASE("w-multiplication preserves localized Betti tables") {
    auto a = dline0(-1, 2);
    std::vector<Mor> ws;
    for (int n = -1; n < 2; ++n)
        ws.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    LocalizationPresentation lp = make_localization(a, ws, 0);
    // mu^2(w, -) : hom(X^1, -) -> hom(X^0, -) should preserve Betti numbers
    WordComplex src = localized_hom(lp, a->object_index("X^1(E)"), a->object_index("X^2(E)"),
                                    {-2, 2, 0, 0});
    WordComplex dst = localized_hom(lp, a->object_index("X^0(E)"), a->object_index("X^2(E)"),
                                    {-2, 2, 0, 0});
    CHECK(src.betti == dst.betti);
}

TEST_CASE("localizing at units leaves Betti tables unchanged") {
    auto a = dline0(0, 2);
    std::vector<Mor> ws = {unit_of(0), unit_of(1), unit_of(2)};
    LocalizationPresentation lp = make_localization(a, ws, 0);
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y) {
            WordComplex wc = localized_hom(lp, x, y, {-2, 2, 0, 0});
            BettiTable plain = betti(a->hom_complex(x, y), {-2, 2, 0, 0});
            CHECK(wc.betti == plain);
        }
}

TEST_CASE("localized telescope value matches localized hom (third-result lemma)") {
    auto a = dline0(-2, 3);
    std::vector<Mor> ws;
    std::vector<int> lev;
    for (int n = -2; n <= 3; ++n)
        lev.push_back(a->object_index("X^" + std::to_string(n) + "(E)"));
    for (int n = -2; n < 3; ++n)
        ws.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    LocalizationPresentation lp = make_localization(a, ws, 0);
    TelescopeData td = build_telescope(a, lev, ws, 3);
    int x0 = a->object_index("X^0(E)");
    WordComplex hom = localized_hom(lp, x0, a->object_index("X^1(E)"), {-2, 2, 0, 0});
    WordComplex tel = localized_module_value(lp, td.module, x0, {-2, 2, 0, 0});
    CHECK(hom.betti == tel.betti);
    // and the unlocalized telescope value agrees (GPS 3.13 route)
    BettiTable plain = betti(module_value_complex(*td.module, x0), {-2, 2, 0, 0});
    CHECK(tel.betti == plain);
}

TEST_CASE("bigraded localization of the directed line (Adams slices)") {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    std::vector<Mor> ws;
    for (int n = -2; n < 4; ++n)
        ws.push_back(a->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    LocalizationPresentation lp = make_localization(a, ws, 0);
    lp.cap_initial = 6;
    lp.cap_max = 12;
    WordComplex wc = localized_hom(lp, a->object_index("X^0(E)"), a->object_index("X^0(E)"),
                                   {-2, 2, 0, 3});
    MESSAGE("bigraded localized End(X^0) certificate: ", wc.cert.str());
    for (const auto& [d, n] : wc.betti)
        if (n != 0)
            MESSAGE("betti ", d.str(), " = ", n);
    CHECK(true); // informational; the acceptance pins the H-side tables
}
