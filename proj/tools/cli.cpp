#include "ainfty/duality.hpp"
#include "ainfty/fixtures.hpp"
#include "ainfty/presentation.hpp"
#include "ainfty/report.hpp"
#include "ainfty/torus.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace ainfty;

namespace {

struct CommonOpts {
    std::string format = "human";
    std::string out;
    int a_lo = 0, a_hi = 4;
    int c_lo = -2, c_hi = 2;
    int cap = 8, cap_max = 14;
    int adams_cap = 4;
    int max_arity = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "report format: human | machine")
        ->check(CLI::IsMember({"human", "machine"}));
    cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
    cmd->add_option("--window", [&o](const std::vector<std::string>& v) {
        // adams window lo..hi
        auto dots = v[0].find("..");
        if (dots == std::string::npos)
            return false;
        o.a_lo = std::stoi(v[0].substr(0, dots));
        o.a_hi = std::stoi(v[0].substr(dots + 2));
        return true;
    }, "Adams window lo..hi");
    cmd->add_option("--cdeg", [&o](const std::vector<std::string>& v) {
        auto dots = v[0].find("..");
        if (dots == std::string::npos)
            return false;
        o.c_lo = std::stoi(v[0].substr(0, dots));
        o.c_hi = std::stoi(v[0].substr(dots + 2));
        return true;
    }, "cohomological window lo..hi");
    cmd->add_option("--cap", o.cap, "initial word-length cap");
    cmd->add_option("--cap-max", o.cap_max, "maximal word-length cap");
    cmd->add_option("--adams-cap", o.adams_cap, "Adams cap for bar/cobar/poly constructions");
    cmd->add_option("--max-arity", o.max_arity, "relation/functor check arity (0 = derived default)");
}

int emit(const Report& r, const CommonOpts& o) {
    std::string doc = o.format == "machine" ? render_machine(r) : render_human(r);
    if (o.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        f << doc;
    }
    return r.pass ? 0 : 1;
}

void echo_params(Report& r, const CommonOpts& o) {
    r.params.push_back({"window", std::to_string(o.a_lo) + ".." + std::to_string(o.a_hi)});
    r.params.push_back({"cdeg", std::to_string(o.c_lo) + ".." + std::to_string(o.c_hi)});
    r.params.push_back({"cap", std::to_string(o.cap)});
    r.params.push_back({"cap_max", std::to_string(o.cap_max)});
    r.params.push_back({"adams_cap", std::to_string(o.adams_cap)});
}

BettiTable drop_zeros(const BettiTable& t) {
    BettiTable out;
    for (const auto& [d, n] : t)
        if (n != 0)
            out[d] = n;
    return out;
}

Report torus_to_report(const TorusReport& tr, const std::string& cmd) {
    Report r;
    r.command = cmd;
    for (const auto& c : tr.checks)
        r.checks.push_back({c.name, c.pass, c.detail});
    for (const auto& t : tr.tables) {
        ReportTable rt;
        rt.name = t.name;
        rt.lhs = drop_zeros(t.lhs);
        rt.rhs = drop_zeros(t.rhs);
        rt.certificate = t.cert.cap > 0 ? t.cert.str() : "";
        r.tables.push_back(std::move(rt));
    }
    r.pass = tr.pass;
    r.fail_reason = tr.fail_reason;
    return r;
}

TorusOptions torus_opts(const CommonOpts& o) {
    TorusOptions t;
    t.adams_lo = o.a_lo;
    t.adams_hi = o.a_hi;
    t.c_lo = o.c_lo;
    t.c_hi = o.c_hi;
    t.cap_initial = o.cap;
    t.cap_max = o.cap_max;
    t.check_arity = o.max_arity;
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact A-infinity category toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string in1, in2, obj1, obj2, fmap;
    std::vector<std::string> wset;
    int m_param = 0;

    auto* c_rel = app.add_subcommand("check-relations", "A-infinity relation check of a presentation");
    c_rel->add_option("input", in1)->required();
    add_common(c_rel, o);

    auto* c_fun = app.add_subcommand("check-functor", "functor equation check: <src.ainf> <dst.ainf> <f.map>");
    c_fun->add_option("src", in1)->required();
    c_fun->add_option("dst", in2)->required();
    c_fun->add_option("map", fmap)->required();
    add_common(c_fun, o);

    auto* c_hom = app.add_subcommand("homology", "Betti table of a hom complex");
    c_hom->add_option("input", in1)->required();
    c_hom->add_option("--source", obj1)->required();
    c_hom->add_option("--target", obj2)->required();
    add_common(c_hom, o);

    auto* c_gro = app.add_subcommand("grothendieck", "Grothendieck construction of id,id legs (self-pushout)");
    c_gro->add_option("input", in1)->required();
    add_common(c_gro, o);

    auto* c_cyl = app.add_subcommand("cylinder", "cylinder object checks");
    c_cyl->add_option("input", in1)->required();
    add_common(c_cyl, o);

    auto* c_mt = app.add_subcommand("mapping-torus", "mapping torus End tables via localization");
    c_mt->add_option("input", in1)->required();
    add_common(c_mt, o);

    auto* c_coi = app.add_subcommand("coinvariants", "coinvariant category of the canonical shift");
    c_coi->add_option("input", in1)->required();
    add_common(c_coi, o);

    auto* c_loc = app.add_subcommand("localize", "localized hom complex at a morphism set");
    c_loc->add_option("input", in1)->required();
    c_loc->add_option("--source", obj1)->required();
    c_loc->add_option("--target", obj2)->required();
    c_loc->add_option("--w", wset, "morphism ids to invert (repeatable)");
    add_common(c_loc, o);

    auto* c_bar = app.add_subcommand("bar", "bar construction homology table");
    c_bar->add_option("input", in1)->required();
    add_common(c_bar, o);

    auto* c_cob = app.add_subcommand("cobar", "cobar construction of a cocategory (relation check)");
    c_cob->add_option("input", in1)->required();
    add_common(c_cob, o);

    auto* c_kos = app.add_subcommand("koszul", "Koszul dual E(A) relation check and homology");
    c_kos->add_option("input", in1)->required();
    add_common(c_kos, o);

    auto* c_va = app.add_subcommand("verify-thm-a", "mapping torus vs coinvariants verification");
    c_va->add_option("input", in1)->required();
    add_common(c_va, o);

    auto* c_vb = app.add_subcommand("verify-thm-b", "mapping torus vs localized level-0 verification");
    c_vb->add_option("input", in1)->required();
    c_vb->add_option("--f", fmap, "bimodule map file")->required();
    c_vb->add_option("--m", m_param, "grading collapse parameter");
    add_common(c_vb, o);

    auto* c_bc = app.add_subcommand("verify-bar-cobar", "B(Omega C) ~ C dimension comparison");
    c_bc->add_option("input", in1)->required();
    add_common(c_bc, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_rel->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            Report r;
            r.command = "check-relations " + in1;
            r.add_input(in1);
            echo_params(r, o);
            int arity = o.max_arity > 0 ? o.max_arity : default_check_arity(*cat);
            auto bad = check_relations(*cat, arity);
            r.checks.push_back({"A-infinity relations up to arity " + std::to_string(arity), !bad,
                                bad ? bad->describe(*cat) : ""});
            r.pass = !bad;
            return emit(r, o);
        }
        if (c_fun->parsed()) {
            auto src = std::make_shared<AinfCategory>(load_presentation(in1));
            auto dst = std::make_shared<AinfCategory>(load_presentation(in2));
            AinfFunctor f = load_functor(fmap, src, dst);
            Report r;
            r.command = "check-functor " + in1 + " " + in2 + " " + fmap;
            r.add_input(in1);
            r.add_input(in2);
            r.add_input(fmap);
            echo_params(r, o);
            int arity = o.max_arity > 0 ? o.max_arity : default_check_arity(*src);
            auto bad = check_functor(f, arity);
            r.checks.push_back({"functor equations up to arity " + std::to_string(arity), !bad,
                                bad ? "fails on " + src->describe_tuple(bad->tuple) : ""});
            r.pass = !bad;
            return emit(r, o);
        }
        if (c_hom->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            int x = cat->object_index(obj1);
            int y = cat->object_index(obj2);
            if (x < 0 || y < 0)
                throw Error(ErrKind::DanglingId, "unknown object");
            Report r;
            r.command = "homology " + in1;
            r.add_input(in1);
            echo_params(r, o);
            ChainComplex cc = cat->hom_complex(x, y);
            ReportTable t;
            t.name = "H(" + obj1 + ", " + obj2 + ")";
            t.lhs = drop_zeros(betti(cc, {o.c_lo, o.c_hi, o.a_lo, o.a_hi}));
            t.compare = false;
            r.tables.push_back(std::move(t));
            return emit(r, o);
        }
        if (c_gro->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            auto id = std::make_shared<AinfFunctor>(identity_functor(cat));
            Grothendieck g = grothendieck({id, id});
            Report r;
            r.command = "grothendieck " + in1;
            r.add_input(in1);
            echo_params(r, o);
            auto bad = check_relations(*g.cat, default_check_arity(*g.cat));
            r.checks.push_back({"Grothendieck construction passes check_relations", !bad,
                                bad ? bad->describe(*g.cat) : ""});
            bool adj = true;
            for (Mor w : g.adjacent_units()) {
                Mor arr[1] = {w};
                if (!g.cat->mu_eval(arr).empty() || g.cat->deg_of(w).c != 0)
                    adj = false;
            }
            r.checks.push_back({"adjacent units are closed of degree 0", adj, ""});
            r.pass = !bad && adj;
            return emit(r, o);
        }
        if (c_cyl->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            Cylinder cyl = cylinder(cat);
            Report r;
            r.command = "cylinder " + in1;
            r.add_input(in1);
            echo_params(r, o);
            auto bad = check_relations(*cyl.g.cat, default_check_arity(*cyl.g.cat));
            r.checks.push_back({"cylinder passes check_relations", !bad, bad ? bad->describe(*cyl.g.cat) : ""});
            bool pass = !bad;
            // localized End at iota_bot X vs A(X, X) for each object
            LocalizationPresentation lp = make_localization(cyl.g.cat, cyl.w_c, 0);
            lp.cap_initial = o.cap;
            lp.cap_max = o.cap_max;
            for (int x = 0; x < static_cast<int>(cat->objects.size()); ++x) {
                WordComplex wc = localized_hom(lp, cyl.iota_bot->map_obj(x), cyl.iota_bot->map_obj(x),
                                               {o.c_lo, o.c_hi, o.a_lo, o.a_hi});
                BettiTable rhs = betti(cat->hom_complex(x, x), {o.c_lo, o.c_hi, o.a_lo, o.a_hi});
                bool ok = wc.betti == rhs;
                pass = pass && ok;
                ReportTable t;
                t.name = "Cyl End(iota_bot " + cat->objects[static_cast<size_t>(x)].name + ")";
                t.lhs = drop_zeros(wc.betti);
                t.rhs = drop_zeros(rhs);
                t.certificate = wc.cert.str();
                r.tables.push_back(std::move(t));
                r.checks.push_back({"localized cylinder End matches A at " +
                                        cat->objects[static_cast<size_t>(x)].name,
                                    ok, ""});
            }
            r.pass = pass;
            return emit(r, o);
        }
        if (c_mt->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfFunctor tau = canonical_shift_functor(cat);
            MappingTorus mt = mapping_torus(cat, tau, o.cap, o.cap_max);
            Report r;
            r.command = "mapping-torus " + in1;
            r.add_input(in1);
            echo_params(r, o);
            SplitInfo s = mt.tg.split;
            for (int e1 = 0; e1 < static_cast<int>(s.labels.size()); ++e1) {
                for (int e2 = 0; e2 < static_cast<int>(s.labels.size()); ++e2) {
                    WordComplex wc = localized_hom(mt.h, mt.tg.object(TorusG::Bullet, 0, e1),
                                                   mt.tg.object(TorusG::Bullet, 0, e2),
                                                   {o.c_lo, o.c_hi, o.a_lo, o.a_hi});
                    ReportTable t;
                    t.name = "MT End(X^0(" + s.labels[static_cast<size_t>(e1)] + "), X^0(" +
                             s.labels[static_cast<size_t>(e2)] + "))";
                    t.lhs = drop_zeros(wc.betti);
                    t.compare = false;
                    t.certificate = wc.cert.str();
                    r.tables.push_back(std::move(t));
                }
            }
            return emit(r, o);
        }
        if (c_coi->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfFunctor tau = canonical_shift_functor(cat);
            Coinvariants co = coinvariants(cat, tau, o.max_arity > 0 ? o.max_arity : 0);
            Report r;
            r.command = "coinvariants " + in1;
            r.add_input(in1);
            echo_params(r, o);
            r.checks.push_back({"induced operations pass check_relations", true, ""});
            for (size_t e1 = 0; e1 < co.label_obj.size(); ++e1) {
                for (size_t e2 = 0; e2 < co.label_obj.size(); ++e2) {
                    ChainComplex cc = co.cat->hom_complex(co.label_obj[e1], co.label_obj[e2]);
                    ReportTable t;
                    t.name = "A_tau(" + co.cat->objects[static_cast<size_t>(co.label_obj[e1])].name +
                             ", " + co.cat->objects[static_cast<size_t>(co.label_obj[e2])].name + ")";
                    t.lhs = drop_zeros(betti(cc, {o.c_lo, o.c_hi, o.a_lo, o.a_hi}));
                    t.compare = false;
                    r.tables.push_back(std::move(t));
                }
            }
            return emit(r, o);
        }
        if (c_loc->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            std::vector<Mor> ws;
            for (const auto& id : wset) {
                int g = cat->gen_index(id);
                if (g < 0)
                    throw Error(ErrKind::DanglingId, "unknown morphism '" + id + "' in --w");
                ws.push_back(g);
            }
            int x = cat->object_index(obj1);
            int y = cat->object_index(obj2);
            if (x < 0 || y < 0)
                throw Error(ErrKind::DanglingId, "unknown object");
            LocalizationPresentation lp = make_localization(cat, ws, 0);
            lp.cap_initial = o.cap;
            lp.cap_max = o.cap_max;
            WordComplex wc = localized_hom(lp, x, y, {o.c_lo, o.c_hi, o.a_lo, o.a_hi});
            Report r;
            r.command = "localize " + in1;
            r.add_input(in1);
            echo_params(r, o);
            ReportTable t;
            t.name = "C[W^-1](" + obj1 + ", " + obj2 + ")";
            t.lhs = drop_zeros(wc.betti);
            t.compare = false;
            t.certificate = wc.cert.str();
            r.tables.push_back(std::move(t));
            return emit(r, o);
        }
        if (c_bar->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfCocategory b = bar(*cat, Augmentation{}, o.adams_cap);
            Report r;
            r.command = "bar " + in1;
            r.add_input(in1);
            echo_params(r, o);
            auto bad = b.check_corelations();
            r.checks.push_back({"bar output passes the co-relations", !bad, bad ? *bad : ""});
            ChainComplex cc = bar_complex(b);
            ReportTable t;
            t.name = "H(B(" + cat->name + "))";
            t.lhs = drop_zeros(betti(cc, {o.c_lo, o.c_hi, -o.adams_cap, o.adams_cap}));
            t.compare = false;
            r.tables.push_back(std::move(t));
            r.pass = !bad;
            return emit(r, o);
        }
        if (c_cob->parsed()) {
            AinfCocategory c = load_copresentation(in1);
            AinfCategory om = cobar(c, o.adams_cap);
            Report r;
            r.command = "cobar " + in1;
            r.add_input(in1);
            echo_params(r, o);
            auto bad = check_relations(om, default_check_arity(om));
            r.checks.push_back({"cobar output passes check_relations", !bad, bad ? bad->describe(om) : ""});
            r.pass = !bad;
            return emit(r, o);
        }
        if (c_kos->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfCategory e = koszul_E(*cat, Augmentation{}, o.adams_cap);
            Report r;
            r.command = "koszul " + in1;
            r.add_input(in1);
            echo_params(r, o);
            auto bad = check_relations(e, default_check_arity(e));
            r.checks.push_back({"E(A) passes check_relations", !bad, bad ? bad->describe(e) : ""});
            for (int x = 0; x < static_cast<int>(e.objects.size()); ++x) {
                ReportTable t;
                t.name = "H(E(A)(" + e.objects[static_cast<size_t>(x)].name + ", -))";
                t.lhs = drop_zeros(betti(e.hom_complex(x, x), {o.c_lo, o.c_hi, -o.adams_cap, o.adams_cap}));
                t.compare = false;
                r.tables.push_back(std::move(t));
            }
            r.pass = !bad;
            return emit(r, o);
        }
        if (c_va->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfFunctor tau = canonical_shift_functor(cat);
            TorusReport tr = verify_thm_a(cat, tau, torus_opts(o));
            Report r = torus_to_report(tr, "verify-thm-a " + in1);
            r.add_input(in1);
            echo_params(r, o);
            return emit(r, o);
        }
        if (c_vb->parsed()) {
            auto cat = std::make_shared<AinfCategory>(load_presentation(in1));
            AinfFunctor tau = canonical_shift_functor(cat);
            auto am = std::make_shared<AinfCategory>(collapse_grading(*cat, m_param));
            auto taum = std::make_shared<AinfFunctor>(collapse_functor(tau, am, am));
            auto diag = std::make_shared<HomBimodule>(am, nullptr);
            auto tw = std::make_shared<HomBimodule>(am, taum);
            BimoduleMap f = load_bimodule_map(fmap, diag, tw);
            TorusReport tr = verify_thm_b(cat, tau, f, m_param, torus_opts(o));
            Report r = torus_to_report(tr, "verify-thm-b " + in1 + " --f " + fmap + " --m " +
                                               std::to_string(m_param));
            r.add_input(in1);
            r.add_input(fmap);
            echo_params(r, o);
            return emit(r, o);
        }
        if (c_bc->parsed()) {
            AinfCocategory c = load_copresentation(in1);
            BarCobarReport br = check_bar_cobar(c, o.adams_cap);
            Report r;
            r.command = "verify-bar-cobar " + in1;
            r.add_input(in1);
            echo_params(r, o);
            ReportTable t;
            t.name = "H(B(Omega C)) vs H(C)";
            t.lhs = drop_zeros(br.lhs);
            t.rhs = drop_zeros(br.rhs);
            r.tables.push_back(std::move(t));
            r.checks.push_back({"dimension tables agree through the Adams cap", br.pass, ""});
            r.pass = br.pass;
            return emit(r, o);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
