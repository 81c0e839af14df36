#include "ainfty/fixtures.hpp"
#include "ainfty/presentation.hpp"
#include "ainfty/torus.hpp"

namespace ainfty {

AinfCategory units_line(int lo, int hi, std::vector<std::string> labels) {
    AinfCategory a;
    a.name = "units_line";
    a.window = {lo, hi};
    a.shift_equivariant = true;
    for (int n = lo; n <= hi; ++n)
        for (const auto& l : labels)
            a.add_object({split_object_name(n, l), SplitKey{n, l}});
    a.finalize();
    return a;
}

AinfCategory directed_line(int lo, int hi) {
    AinfCategory a;
    a.name = "directed_line";
    a.window = {lo, hi};
    a.shift_equivariant = true;
    for (int n = lo; n <= hi; ++n)
        a.add_object({split_object_name(n, "E"), SplitKey{n, "E"}});
    auto obj = [&](int n) { return n - lo; };
    std::map<std::pair<int, int>, Mor> e;
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            e[{i, j}] = a.add_gen({"e" + std::to_string(i) + "_" + std::to_string(j), obj(i), obj(j),
                                   {0, j - i}});
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            for (int k = j + 1; k <= hi; ++k)
                a.add_mu({e.at({i, j}), e.at({j, k})}, {e.at({i, k})});
    for (int i = lo; i + 1 <= hi; ++i)
        for (int j = i + 1; j + 1 <= hi; ++j)
            a.shift_map[e.at({i, j})] = e.at({i + 1, j + 1});
    a.finalize();
    return a;
}

AinfCategory two_label_line(int lo, int hi) {
    AinfCategory a;
    a.name = "two_label_line";
    a.window = {lo, hi};
    a.shift_equivariant = true;
    for (int n = lo; n <= hi; ++n) {
        a.add_object({split_object_name(n, "a"), SplitKey{n, "a"}});
        a.add_object({split_object_name(n, "b"), SplitKey{n, "b"}});
    }
    auto obj = [&](int n, int lab) { return 2 * (n - lo) + lab; };
    std::map<std::tuple<int, int, int>, Mor> ee; // (label 0/1, i, j) within a label
    std::map<std::pair<int, int>, Mor> q;        // a -> b
    for (int i = lo; i <= hi; ++i) {
        for (int j = i + 1; j <= hi; ++j) {
            ee[{0, i, j}] = a.add_gen({"ea" + std::to_string(i) + "_" + std::to_string(j), obj(i, 0),
                                       obj(j, 0), {0, j - i}});
            ee[{1, i, j}] = a.add_gen({"eb" + std::to_string(i) + "_" + std::to_string(j), obj(i, 1),
                                       obj(j, 1), {0, j - i}});
        }
        for (int j = i; j <= hi; ++j)
            q[{i, j}] = a.add_gen({"q" + std::to_string(i) + "_" + std::to_string(j), obj(i, 0),
                                   obj(j, 1), {0, j - i}});
    }
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            for (int k = j + 1; k <= hi; ++k) {
                a.add_mu({ee.at({0, i, j}), ee.at({0, j, k})}, {ee.at({0, i, k})});
                a.add_mu({ee.at({1, i, j}), ee.at({1, j, k})}, {ee.at({1, i, k})});
            }
    // ea(i,j) q(j,k) = q(i,k); q(i,j) eb(j,k) = q(i,k)
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            for (int k = j; k <= hi; ++k)
                a.add_mu({ee.at({0, i, j}), q.at({j, k})}, {q.at({i, k})});
    for (int i = lo; i <= hi; ++i)
        for (int j = i; j <= hi; ++j)
            for (int k = j + 1; k <= hi; ++k)
                a.add_mu({q.at({i, j}), ee.at({1, j, k})}, {q.at({i, k})});
    for (const auto& [key, g] : ee) {
        auto [lab, i, j] = key;
        if (j + 1 <= hi)
            a.shift_map[g] = ee.at({lab, i + 1, j + 1});
    }
    for (const auto& [key, g] : q) {
        auto [i, j] = key;
        if (j + 1 <= hi)
            a.shift_map[g] = q.at({i + 1, j + 1});
    }
    a.finalize();
    return a;
}

AinfCategory poly_algebra(int m, int adams_cap) {
    AinfCategory a;
    a.name = "F[t_" + std::to_string(m) + "]";
    a.add_object({"T", std::nullopt});
    std::vector<Mor> t(static_cast<size_t>(adams_cap) + 1, -1);
    for (int k = 1; k <= adams_cap; ++k)
        t[static_cast<size_t>(k)] = a.add_gen({"t^" + std::to_string(k), 0, 0, {m * k, k}});
    for (int i = 1; i <= adams_cap; ++i)
        for (int j = 1; i + j <= adams_cap; ++j)
            a.add_mu({t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]},
                     {t[static_cast<size_t>(i + j)]});
    a.finalize();
    return a;
}

AinfCocategory two_gen_cocategory() {
    AinfCocategory c;
    c.name = "cocat2";
    c.add_object({"P", std::nullopt});
    Mor x = c.add_gen({"x", 0, 0, {2, 1}});
    Mor z = c.add_gen({"z", 0, 0, {4, 2}});
    c.add_coop(z, {x, x});
    c.finalize();
    return c;
}

BimoduleMap shift_bimodule_map(const std::shared_ptr<const HomBimodule>& diag,
                               const std::shared_ptr<const HomBimodule>& twisted) {
    const AinfCategory& am = diag->cat();
    BimoduleMap f(diag, twisted, 0);
    // f(u) = the target-level shift of u, when it exists
    CatPtr amp(&am, [](const AinfCategory*) {});
    SplitInfo s = split_info(am);
    auto obj_level = [&](int o) { return am.objects[static_cast<size_t>(o)].split->level; };
    for (int g = 0; g < static_cast<int>(am.gens.size()); ++g) {
        // shift the target: compose with nothing; in the corpus fixtures the
        // shifted morphism is the generator with the same source and target
        // one level up, recovered from the shift structure of the line
        const Gen& gg = am.gens[static_cast<size_t>(g)];
        int tl = obj_level(gg.dst);
        if (tl + 1 > s.hi)
            continue;
        // target-shift morphism: unique generator with the same source and
        // the target one level up (holds in the line fixtures)
        const auto& lb = am.objects[static_cast<size_t>(gg.dst)].split->label;
        int up = -1;
        for (int o = 0; o < static_cast<int>(am.objects.size()); ++o) {
            const auto& oo = am.objects[static_cast<size_t>(o)];
            if (oo.split->level == tl + 1 && oo.split->label == lb)
                up = o;
        }
        const auto& cands = am.hom(gg.src, up);
        if (cands.size() != 1)
            throw Error(ErrKind::HypothesisFailed,
                        "shift_bimodule_map: no unique target shift for " + gg.id);
        f.add_comp({{}, g, {}}, {cands[0]});
    }
    for (int o = 0; o < static_cast<int>(am.objects.size()); ++o) {
        int lvl = obj_level(o);
        if (lvl + 1 > s.hi)
            continue;
        const auto& lb = am.objects[static_cast<size_t>(o)].split->label;
        int up = -1;
        for (int oo = 0; oo < static_cast<int>(am.objects.size()); ++oo)
            if (am.objects[static_cast<size_t>(oo)].split->level == lvl + 1 &&
                am.objects[static_cast<size_t>(oo)].split->label == lb)
                up = oo;
        const auto& cands = am.hom(o, up);
        if (cands.size() != 1)
            throw Error(ErrKind::HypothesisFailed, "shift_bimodule_map: no unique c_n at level " +
                                                       std::to_string(lvl));
        f.add_comp({{}, unit_of(o), {}}, {cands[0]});
    }
    (void)amp;
    return f;
}

ThmBData shift_f_for(const CatPtr& a, int m) {
    ThmBData d;
    auto am = std::make_shared<AinfCategory>(collapse_grading(*a, m));
    // keep the split keys for level bookkeeping in the bimodule map
    d.a_m = am;
    AinfFunctor tau_cl = canonical_shift_functor(a);
    d.tau_m = std::make_shared<AinfFunctor>(collapse_functor(tau_cl, am, am));
    d.diag = std::make_shared<HomBimodule>(am, nullptr);
    d.twisted = std::make_shared<HomBimodule>(am, d.tau_m);
    d.f = std::make_shared<BimoduleMap>(shift_bimodule_map(d.diag, d.twisted));
    return d;
}

} // namespace ainfty
