/* Acceptance suite: one pass/fail line per criterion, nonzero exit on any
 * failure. Expected values are pinned here, never computed from the code
 * under test; oracles are the coinvariant construction, the telescope
 * module, and hand-expanded bar complexes. */

#include "ainfty/duality.hpp"
#include "ainfty/fixtures.hpp"
#include "ainfty/presentation.hpp"
#include "ainfty/report.hpp"
#include "ainfty/torus.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace ainfty;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::ostringstream g_machine; // accumulated machine reports for criterion 7

void line(int crit, bool pass, const std::string& what, double secs) {
    std::ostringstream os;
    os << (pass ? "[PASS]" : "[FAIL]") << " criterion " << crit << ": " << what << " (" << secs
       << " s)";
    std::cout << os.str() << std::endl;
    if (!pass)
        ++g_failures;
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    double secs() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() /
               1000.0;
    }
};

void record(const std::string& name, const Report& r) {
    g_machine << "=== " << name << "\n" << render_machine(r);
}

TorusOptions standard_opts(int a_hi, int c_lo, int c_hi) {
    TorusOptions o;
    o.adams_lo = 0;
    o.adams_hi = a_hi;
    o.c_lo = c_lo;
    o.c_hi = c_hi;
    o.cap_initial = 4;
    o.cap_max = 6;
    o.check_arity = 0;
    o.run_module_checks = true;
    return o;
}

Report torus_report(const TorusReport& tr, const std::string& cmd) {
    Report r;
    r.command = cmd;
    for (const auto& c : tr.checks)
        r.checks.push_back({c.name, c.pass, c.detail});
    for (const auto& t : tr.tables) {
        ReportTable rt;
        rt.name = t.name;
        for (const auto& [d, n] : t.lhs)
            if (n)
                rt.lhs[d] = n;
        for (const auto& [d, n] : t.rhs)
            if (n)
                rt.rhs[d] = n;
        rt.certificate = t.cert.cap > 0 ? t.cert.str() : "";
        r.tables.push_back(std::move(rt));
    }
    r.pass = tr.pass;
    r.fail_reason = tr.fail_reason;
    return r;
}

/* criterion 1: relation soundness of every category-producing construction
 * over the fixture corpus */
bool criterion1(Report& rep) {
    bool ok = true;
    auto gate = [&](const std::string& name, const std::optional<RelationFailure>& bad,
                    const AinfCategory& cat) {
        rep.checks.push_back({name, !bad.has_value(), bad ? bad->describe(cat) : ""});
        ok = ok && !bad;
    };

    auto units = std::make_shared<AinfCategory>(units_line(-2, 4));
    auto dline = std::make_shared<AinfCategory>(directed_line(-2, 4));
    auto two = std::make_shared<AinfCategory>(two_label_line(-1, 2));
    auto pt2 = std::make_shared<AinfCategory>(poly_algebra(2, 6));
    AinfCocategory cc2 = two_gen_cocategory();

    gate("fixture units_line", check_relations(*units, default_check_arity(*units)), *units);
    gate("fixture directed_line", check_relations(*dline, default_check_arity(*dline)), *dline);
    gate("fixture two_label_line", check_relations(*two, default_check_arity(*two)), *two);
    gate("fixture F[t_2]", check_relations(*pt2, 4), *pt2);

    for (const auto& base : {units, dline, two}) {
        auto id = std::make_shared<AinfFunctor>(identity_functor(base));
        Grothendieck g = grothendieck({id, id});
        gate("grothendieck(id,id) over " + base->name,
             check_relations(*g.cat, default_check_arity(*g.cat)), *g.cat);
        Cylinder cyl = cylinder(base);
        gate("cylinder over " + base->name, check_relations(*cyl.g.cat, default_check_arity(*cyl.g.cat)),
             *cyl.g.cat);
        TorusG tg = build_torus_g(base, canonical_shift_functor(base));
        gate("mapping-torus G over " + base->name,
             check_relations(*tg.g.cat, default_check_arity(*tg.g.cat)), *tg.g.cat);
    }

    auto dline0 = std::make_shared<AinfCategory>(collapse_grading(*dline, 0));
    AinfCategory pt = poly_tensor(*dline0, 2, 3);
    gate("poly_tensor F[t_2] (x) directed_line_0", check_relations(pt, 4), pt);

    AinfCategory om = cobar(cc2, 3);
    gate("cobar of the 2-generator cocategory", check_relations(om, default_check_arity(om)), om);

    {
        std::vector<Mor> ws;
        auto small = std::make_shared<AinfCategory>(directed_line(-1, 2));
        for (int n = -1; n < 2; ++n)
            ws.push_back(small->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
        ExtCategory ext = adjoin_cones(small, ws, 0);
        gate("adjoin_cone over the directed line", check_relations(*ext.ext, 3), *ext.ext);
        ExtCategory exu = adjoin_cones(small, {unit_of(0)}, 0);
        gate("adjoin_cone on a unit", check_relations(*exu.ext, 3), *exu.ext);
    }

    for (const auto& base : {units, dline, two}) {
        try {
            Coinvariants co = coinvariants(base, canonical_shift_functor(base), 0);
            gate("coinvariants over " + base->name,
                 check_relations(*co.cat, default_check_arity(*co.cat)), *co.cat);
        } catch (const Error& e) {
            rep.checks.push_back({"coinvariants over " + base->name, false, e.what()});
            ok = false;
        }
    }

    {
        Cylinder cyl = cylinder(dline);
        for (int x = 0; x < static_cast<int>(cyl.g.cat->objects.size()); x += 5)
            for (int y = 0; y < static_cast<int>(cyl.g.cat->objects.size()); y += 5)
                cyl.g.cat->hom_complex(x, y).check_dd_zero();
        rep.checks.push_back({"d o d = 0 on sampled cylinder hom complexes", true, ""});
    }
    rep.pass = ok;
    return ok;
}

bool criterion2(Report& rep) {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    TorusReport tr = verify_thm_a(a, canonical_shift_functor(a), standard_opts(4, -2, 2));
    rep = torus_report(tr, "verify-thm-a directed_line[-2,4]");
    if (!tr.pass)
        return false;
    // pinned expectations: dimension 1 at (0,j), j = 0..4, zero elsewhere
    for (const auto& tp : tr.tables) {
        for (const auto& [d, n] : tp.lhs) {
            int expect = (d.c == 0 && d.a >= 0 && d.a <= 4) ? 1 : 0;
            if (n != expect)
                return false;
            if (tp.rhs.at(d) != expect)
                return false;
        }
    }
    return true;
}

bool criterion3(Report& rep, const BettiTable* thma_table, bool* cross_ok) {
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 4));
    ThmBData fd = shift_f_for(a, 0);
    TorusReport tr = verify_thm_b(a, canonical_shift_functor(a), *fd.f, 0, standard_opts(4, -2, 2));
    rep = torus_report(tr, "verify-thm-b directed_line[-2,4] m=0");
    if (!tr.pass)
        return false;
    for (const auto& tp : tr.tables) {
        for (const auto& [d, n] : tp.lhs) {
            int expect = (d.c == 0 && d.a >= 0 && d.a <= 4) ? 1 : 0;
            if (n != expect)
                return false;
        }
    }
    *cross_ok = thma_table && !tr.tables.empty();
    if (*cross_ok) {
        // cross-theorem consistency on the doubly-eligible fixture
        BettiTable bt;
        for (const auto& [d, n] : tr.tables[0].lhs)
            if (n)
                bt[d] = n;
        *cross_ok = bt == *thma_table;
        rep.checks.push_back({"cross-check: bidegree-wise agreement with the Theorem A report",
                              *cross_ok, ""});
    }
    return *cross_ok;
}

/* criterion 4: the specific-module lemma suite, on a window widened so the
 * top-edge truncation artifacts sit above the inspected Adams range */
bool criterion4(Report& rep) {
    bool ok = true;
    auto a = std::make_shared<AinfCategory>(directed_line(-2, 9));
    auto am = std::make_shared<AinfCategory>(collapse_grading(*a, 0));
    SplitInfo s = split_info(*am);
    std::vector<int> lev;
    std::vector<Mor> cf;
    for (int n = s.lo; n <= s.hi; ++n)
        lev.push_back(s.object(n, 0));
    for (int n = s.lo; n < s.hi; ++n)
        cf.push_back(am->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
    TelescopeData td = build_telescope(am, lev, cf, 3);

    // (a) inclusions A(X^k, X^n) -> M_A(X^k) are Betti equalities for k < n
    {
        bool iok = true;
        std::string why;
        for (int n = s.lo + 1; n <= 4 && iok; ++n) {
            for (int k = s.lo; k < n && iok; ++k) {
                int xk = s.object(k, 0);
                ChainComplex src = am->hom_complex(xk, s.object(n, 0));
                ChainComplex dst = module_value_complex(*td.module, xk);
                auto mats = map_value_matrices(*td.inclusions[static_cast<size_t>(n - s.lo)], xk);
                if (!chain_map_is_qiso(src, dst, mats, {-4, 4, 0, 0})) {
                    iok = false;
                    why = "k=" + std::to_string(k) + ", n=" + std::to_string(n);
                }
            }
        }
        rep.checks.push_back({"(a) A(X^k, X^n) -> M_A(X^k) Betti equality, k < n <= 4", iok, why});
        ok = ok && iok;
    }

    // (b) M_A(Cone c_n) acyclic on interior levels
    {
        bool aok = true;
        std::string why;
        for (int n = s.lo; n <= 4 && aok; ++n) {
            ChainComplex src = module_value_complex(*td.module, s.object(n + 1, 0));
            ChainComplex dst = module_value_complex(*td.module, s.object(n, 0));
            Mor cn = cf[static_cast<size_t>(n - s.lo)];
            std::map<Bidegree, F2Matrix> f;
            {
                std::map<Bidegree, std::vector<int>> ss, ds;
                const auto& sv = td.module->value(s.object(n + 1, 0));
                const auto& dv = td.module->value(s.object(n, 0));
                for (int i = 0; i < static_cast<int>(sv.size()); ++i)
                    ss[sv[static_cast<size_t>(i)].deg].push_back(i);
                for (int i = 0; i < static_cast<int>(dv.size()); ++i)
                    ds[dv[static_cast<size_t>(i)].deg].push_back(i);
                Mor arr[1] = {cn};
                for (auto& [dg, v] : ss) {
                    auto dit = ds.find(dg);
                    F2Matrix mat(dit == ds.end() ? 0 : static_cast<int>(dit->second.size()),
                                 static_cast<int>(v.size()));
                    for (int j = 0; j < static_cast<int>(v.size()); ++j)
                        for (int o :
                             td.module->act(arr, s.object(n + 1, 0), v[static_cast<size_t>(j)])) {
                            const auto& dvv = dit->second;
                            auto pos = std::lower_bound(dvv.begin(), dvv.end(), o);
                            mat.add_entry(static_cast<int>(pos - dvv.begin()), j);
                        }
                    f[dg] = std::move(mat);
                }
            }
            ChainComplex cone = mapping_cone_complex(src, dst, f);
            if (!is_acyclic(cone, {-5, 5, 0, 0})) {
                aok = false;
                why = "M_A(Cone c_" + std::to_string(n) + ") not acyclic";
            }
        }
        rep.checks.push_back({"(b) M_A(Cone c_n) acyclic for n <= 4 on the widened window", aok, why});
        ok = ok && aok;
    }
    {
        TorusG tg = build_torus_g(a, canonical_shift_functor(a));
        ModuleG mg = build_module_g(tg, 0, 3);
        bool gok = true;
        std::string why;
        int checked = 0;
        BidegreeWindow win{-4, 4, 0, 4};
        for (Mor w : tg.w_g) {
            int src_obj = tg.g.cat->src_of(w);
            int k = s.hi;
            for (int lv = s.lo; lv <= s.hi; ++lv)
                for (TorusG::Zone z :
                     {TorusG::Minus, TorusG::Plus, TorusG::Bot, TorusG::I, TorusG::Top}) {
                    try {
                        if (tg.object(z, lv, 0) == src_obj)
                            k = std::min(k, lv);
                    } catch (const Error&) {
                    }
                }
            if (s.hi - k <= 4)
                continue;
            ++checked;
            if (!module_cone_value_acyclic_public(*mg.m_g, w, win)) {
                gok = false;
                why = "M_G(Cone " + tg.g.cat->mor_name(w) + ") not acyclic on the window";
                break;
            }
        }
        rep.checks.push_back({"(b) M_G(Cone w) acyclic on the window, " + std::to_string(checked) +
                                  " morphisms in the conclusive scope",
                              gok, why});
        ok = ok && gok;
    }

    // (c) localized inclusions: Betti equality between the localized hom and
    //     the localized telescope value
    {
        auto asmall = std::make_shared<AinfCategory>(collapse_grading(directed_line(-2, 3), 0));
        SplitInfo s2 = split_info(*asmall);
        std::vector<int> lev2;
        std::vector<Mor> cf2;
        for (int n = s2.lo; n <= s2.hi; ++n)
            lev2.push_back(s2.object(n, 0));
        for (int n = s2.lo; n < s2.hi; ++n)
            cf2.push_back(asmall->gen_index("e" + std::to_string(n) + "_" + std::to_string(n + 1)));
        TelescopeData td2 = build_telescope(asmall, lev2, cf2, 3);
        LocalizationPresentation lp = make_localization(asmall, cf2, 0);
        lp.cap_initial = 6;
        lp.cap_max = 10;
        bool lok = true;
        std::string why;
        for (int n = -1; n <= 1 && lok; ++n) {
            WordComplex hom = localized_hom(lp, s2.object(0, 0), s2.object(n, 0), {-2, 2, 0, 0});
            WordComplex tel = localized_module_value(lp, td2.module, s2.object(0, 0), {-2, 2, 0, 0});
            if (hom.betti != tel.betti) {
                lok = false;
                why = "localized hom vs localized telescope differ at n=" + std::to_string(n);
            }
        }
        rep.checks.push_back({"(c) localized t_A^n Betti equalities on the directed line", lok, why});
        ok = ok && lok;
    }
    rep.pass = ok;
    return ok;
}

bool criterion5(Report& rep) {
    bool ok = true;
    {
        AinfCategory ft = poly_algebra(2, 8);
        AinfCocategory b = bar(ft, Augmentation{}, 4);
        ChainComplex cc = bar_complex(b);
        bool bok = !b.check_corelations().has_value();
        BettiTable t;
        for (int aa = 0; aa <= 4; ++aa)
            for (int c = -1; c <= 8; ++c) {
                int got = betti_at(cc, {c, aa});
                if (got)
                    t[{c, aa}] = got;
                int expect = ((c == 0 && aa == 0) || (c == 1 && aa == 1)) ? 1 : 0;
                if (got != expect)
                    bok = false;
            }
        ReportTable rt;
        rt.name = "H(B(F[t_2])), Adams cap 4";
        rt.lhs = t;
        rt.rhs = {{{0, 0}, 1}, {{1, 1}, 1}};
        rep.tables.push_back(rt);
        rep.checks.push_back({"H(B(F[t_2])) = F at (0,0) and (1,1)", bok, ""});
        ok = ok && bok;
    }
    {
        AinfCategory ft = poly_algebra(2, 8);
        AinfCategory e1 = koszul_E(ft, Augmentation{}, 3);
        AinfCategory e2 = koszul_E(e1, Augmentation{}, 3);
        ChainComplex cc = e2.hom_complex(0, 0);
        bool kok = true;
        for (int j = 0; j <= 3; ++j)
            if (betti_at(cc, {2 * j, j}) != 1)
                kok = false;
        for (int j = 1; j <= 3; ++j)
            if (betti_at(cc, {2 * j - 1, j}) != 0)
                kok = false;
        rep.checks.push_back(
            {"E(E(F[t_2])) homology matches F[t_2] at (0,0),(2,1),(4,2),(6,3)", kok, ""});
        ok = ok && kok;
    }
    {
        BarCobarReport br = check_bar_cobar(two_gen_cocategory(), 3);
        rep.checks.push_back(
            {"B(Omega C) ~ C dimension equality, 2-generator cocategory, cap 3", br.pass, ""});
        ReportTable rt;
        rt.name = "B(Omega C) vs C";
        for (const auto& [d, n] : br.lhs)
            if (n)
                rt.lhs[d] = n;
        for (const auto& [d, n] : br.rhs)
            if (n)
                rt.rhs[d] = n;
        rep.tables.push_back(rt);
        ok = ok && br.pass;
    }
    rep.pass = ok;
    return ok;
}

bool criterion6(Report& rep) {
    bool ok = true;
    auto run_side = [&](const CatPtr& graded, const std::string& name) {
        auto am = std::make_shared<AinfCategory>(collapse_grading(*graded, 0));
        SplitInfo s = split_info(*am);
        int nl = static_cast<int>(s.labels.size());
        for (int e2 = 0; e2 < nl; ++e2) {
            std::vector<int> lev;
            std::vector<Mor> cf;
            bool have = true;
            for (int n = s.lo; n <= s.hi; ++n)
                lev.push_back(s.object(n, e2));
            for (int n = s.lo; n < s.hi; ++n) {
                const auto& h = am->hom(s.object(n, e2), s.object(n + 1, e2));
                if (h.size() != 1) {
                    have = false;
                    break;
                }
                cf.push_back(h[0]);
            }
            if (!have)
                continue;
            LocalizationPresentation lp = make_localization(am, cf, 0);
            lp.cap_initial = 6;
            lp.cap_max = 10;
            for (int e1 = 0; e1 < nl; ++e1) {
                BettiTable oracle;
                try {
                    oracle = telescope_oracle(am, lev, cf, s.object(0, e1), {-2, 2, 0, 0}, 3);
                } catch (const Error& err) {
                    rep.checks.push_back({name + ": oracle hypotheses (" +
                                              s.labels[static_cast<size_t>(e1)] + " -> " +
                                              s.labels[static_cast<size_t>(e2)] + ")",
                                          true, std::string("skipped: ") + err.what()});
                    continue;
                }
                for (int n = 0; n <= 1; ++n) {
                    WordComplex wc = localized_hom(lp, s.object(0, e1), s.object(n, e2), {-2, 2, 0, 0});
                    bool match = wc.betti == oracle;
                    rep.checks.push_back({name + " localized hom (X^0(" +
                                              s.labels[static_cast<size_t>(e1)] + "), X^" +
                                              std::to_string(n) + "(" +
                                              s.labels[static_cast<size_t>(e2)] +
                                              ")) equals the telescope oracle [" + wc.cert.str() + "]",
                                          match, ""});
                    ok = ok && match;
                }
            }
        }
    };
    run_side(std::make_shared<AinfCategory>(directed_line(-2, 3)), "directed_line");
    run_side(std::make_shared<AinfCategory>(two_label_line(-1, 2)), "two_label_line");
    rep.pass = ok;
    return ok;
}

} // namespace

int main() {
    std::cout << "ainfty acceptance suite (" << tool_version() << ")\n";

    auto run_all = [&](bool announce) {
        g_machine.str("");
        {
            Timer t;
            Report r;
            r.command = "criterion1";
            bool ok = criterion1(r);
            if (announce)
                line(1, ok, "A-infinity soundness suite over the fixture corpus", t.secs());
            record("criterion1", r);
        }
        BettiTable thma_first;
        {
            Timer t;
            Report r;
            bool ok = criterion2(r);
            if (ok && !r.tables.empty())
                thma_first = r.tables[0].lhs;
            if (announce)
                line(2, ok, "Theorem A desk verification on the directed line", t.secs());
            record("criterion2", r);
        }
        {
            Timer t;
            Report r;
            bool cross = false;
            bool ok = criterion3(r, &thma_first, &cross);
            if (announce)
                line(3, ok, "Theorem B desk verification + cross-check with Theorem A", t.secs());
            record("criterion3", r);
        }
        {
            Timer t;
            Report r;
            r.command = "criterion4";
            bool ok = criterion4(r);
            if (announce)
                line(4, ok, "specific-module lemma suite (widened window)", t.secs());
            record("criterion4", r);
        }
        {
            Timer t;
            Report r;
            r.command = "criterion5";
            bool ok = criterion5(r);
            if (announce)
                line(5, ok, "Koszul/bar suite", t.secs());
            record("criterion5", r);
        }
        {
            Timer t;
            Report r;
            r.command = "criterion6";
            bool ok = criterion6(r);
            if (announce)
                line(6, ok, "localization oracle equivalence with certificates", t.secs());
            record("criterion6", r);
        }
        return g_machine.str();
    };

    Timer t7;
    std::string first = run_all(true);
    std::string second = run_all(false);
    line(7, first == second && !first.empty(),
         "byte-identical machine reports across two full runs", t7.secs());

    if (g_failures == 0)
        std::cout << "acceptance: all criteria PASS\n";
    else
        std::cout << "acceptance: " << g_failures << " criterion(s) FAILED\n";
    return g_failures == 0 ? 0 : 1;
}
