#include "ainfty/duality.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ainfty {

int AinfCocategory::add_object(Object o) {
    objects.push_back(std::move(o));
    return static_cast<int>(objects.size()) - 1;
}

int AinfCocategory::add_gen(Gen g) {
    gens.push_back(std::move(g));
    return static_cast<int>(gens.size()) - 1;
}

void AinfCocategory::add_coop(Mor g, std::vector<Mor> word) {
    auto& v = coop[g];
    auto it = std::find(v.begin(), v.end(), word);
    if (it != v.end())
        v.erase(it); // F2 cancellation
    else
        v.push_back(std::move(word));
}

void AinfCocategory::finalize() {
    for (auto& [g, words] : coop) {
        const Gen& gg = gens.at(static_cast<size_t>(g));
        std::sort(words.begin(), words.end());
        for (const auto& w : words) {
            if (w.empty())
                throw Error(ErrKind::Internal, "empty cooperation word on " + gg.id);
            for (size_t i = 0; i < w.size(); ++i) {
                const Gen& wi = gens.at(static_cast<size_t>(w[i]));
                if (i + 1 < w.size() && wi.dst != gens.at(static_cast<size_t>(w[i + 1])).src)
                    throw Error(ErrKind::DegreeMismatch, "cooperation word not composable on " + gg.id);
            }
            if (gens.at(static_cast<size_t>(w.front())).src != gg.src ||
                gens.at(static_cast<size_t>(w.back())).dst != gg.dst)
                throw Error(ErrKind::DegreeMismatch, "cooperation word endpoints differ on " + gg.id);
            // degree of delta^d is (2-d)
            Bidegree sum{0, 0};
            for (Mor m : w)
                sum = sum + gens.at(static_cast<size_t>(m)).deg;
            int d = static_cast<int>(w.size());
            if (sum.c != gg.deg.c + 2 - d || sum.a != gg.deg.a)
                throw Error(ErrKind::DegreeMismatch,
                            "cooperation word of " + gg.id + " has wrong bidegree");
        }
    }
}

int AinfCocategory::object_index(const std::string& nm) const {
    for (int i = 0; i < static_cast<int>(objects.size()); ++i)
        if (objects[static_cast<size_t>(i)].name == nm)
            return i;
    return -1;
}

int AinfCocategory::gen_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        if (gens[static_cast<size_t>(i)].id == id)
            return i;
    return -1;
}

std::optional<std::string> AinfCocategory::check_corelations() const {
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
        auto it = coop.find(g);
        if (it == coop.end())
            continue;
        std::map<std::vector<Mor>, int> acc;
        for (const auto& w : it->second) {
            for (size_t i = 0; i < w.size(); ++i) {
                auto jt = coop.find(w[i]);
                if (jt == coop.end())
                    continue;
                for (const auto& v : jt->second) {
                    std::vector<Mor> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(i));
                    nw.insert(nw.end(), v.begin(), v.end());
                    nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                    acc[nw] ^= 1;
                }
            }
        }
        for (const auto& [w, parity] : acc)
            if (parity)
                return "co-relation fails on " + gens[static_cast<size_t>(g)].id;
    }
    return std::nullopt;
}

ChainComplex AinfCocategory::underlying_complex() const {
    ChainComplex cc;
    cc.total = true;
    std::map<Bidegree, std::vector<Mor>> slices;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
        slices[gens[static_cast<size_t>(g)].deg].push_back(g);
    std::map<Mor, std::pair<Bidegree, int>> pos;
    for (auto& [d, v] : slices) {
        std::vector<std::string> labels;
        for (size_t i = 0; i < v.size(); ++i) {
            pos[v[i]] = {d, static_cast<int>(i)};
            labels.push_back(gens[static_cast<size_t>(v[i])].id);
        }
        cc.basis[d] = std::move(labels);
    }
    for (auto& [d, v] : slices) {
        Bidegree next{d.c + 1, d.a};
        auto nit = slices.find(next);
        F2Matrix m(nit == slices.end() ? 0 : static_cast<int>(nit->second.size()),
                   static_cast<int>(v.size()));
        for (size_t j = 0; j < v.size(); ++j) {
            auto it = coop.find(v[j]);
            if (it == coop.end())
                continue;
            for (const auto& w : it->second) {
                if (w.size() != 1)
                    continue;
                auto [pd, pi] = pos.at(w[0]);
                if (pd != next)
                    throw Error(ErrKind::DegreeMismatch, "differential part not degree (1,0)");
                m.add_entry(pi, static_cast<int>(j));
            }
        }
        cc.diff[d] = std::move(m);
    }
    return cc;
}

/* ---- cocategory presentations ---- */

AinfCocategory parse_copresentation(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    AinfCocategory c;
    int ln = 0;
    bool header = false;
    struct CoopRow {
        int line;
        std::string id;
        std::vector<std::vector<std::string>> words;
    };
    std::vector<CoopRow> coops;
    struct GenRow {
        int line;
        std::string id, src, dst;
        int cdeg, adeg;
    };
    std::vector<GenRow> genrows;
    while (std::getline(is, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok)
            t.push_back(tok);
        if (t.empty())
            continue;
        if (!header) {
            if (t.size() < 2 || t[0] != "coainf" || t[1] != "v1")
                throw ParseError(ln, 1, "expected header 'coainf v1'");
            header = true;
            continue;
        }
        if (t[0] == "name" && t.size() == 2) {
            c.name = t[1];
        } else if (t[0] == "object" && t.size() == 2) {
            c.add_object({t[1], std::nullopt});
        } else if (t[0] == "gen" && t.size() == 6) {
            genrows.push_back({ln, t[1], t[2], t[3], std::stoi(t[4]), std::stoi(t[5])});
        } else if (t[0] == "coop" && t.size() >= 3) {
            CoopRow row;
            row.line = ln;
            row.id = t[1];
            if (t[2] != "|")
                throw ParseError(ln, 3, "expected '|'");
            std::vector<std::string> cur;
            for (size_t i = 3; i <= t.size(); ++i) {
                if (i == t.size() || t[i] == "|") {
                    if (cur.empty())
                        throw ParseError(ln, static_cast<int>(i), "empty cooperation word");
                    row.words.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(t[i]);
                }
            }
            coops.push_back(std::move(row));
        } else {
            throw ParseError(ln, 1, "unknown directive '" + t[0] + "'");
        }
    }
    for (const auto& r : genrows) {
        int s = c.object_index(r.src);
        int d = c.object_index(r.dst);
        if (s < 0 || d < 0)
            throw ParseError(r.line, 3, "unknown object in generator " + r.id);
        c.add_gen({r.id, s, d, {r.cdeg, r.adeg}});
    }
    for (const auto& r : coops) {
        int g = c.gen_index(r.id);
        if (g < 0)
            throw Error(ErrKind::DanglingId, "coop on unknown generator " + r.id);
        for (const auto& w : r.words) {
            std::vector<Mor> word;
            for (const auto& idstr : w) {
                int m = c.gen_index(idstr);
                if (m < 0)
                    throw Error(ErrKind::DanglingId, "unknown generator '" + idstr + "' in coop word");
                word.push_back(m);
            }
            c.add_coop(g, std::move(word));
        }
    }
    c.finalize();
    return c;
}

AinfCocategory load_copresentation(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrKind::Parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_copresentation(ss.str());
}

std::string print_copresentation(const AinfCocategory& c) {
    std::ostringstream os;
    os << "coainf v1\n";
    os << "name " << c.name << "\n";
    for (const auto& o : c.objects)
        os << "object " << o.name << "\n";
    for (const auto& g : c.gens)
        os << "gen " << g.id << ' ' << c.objects[static_cast<size_t>(g.src)].name << ' '
           << c.objects[static_cast<size_t>(g.dst)].name << ' ' << g.deg.c << ' ' << g.deg.a << "\n";
    for (const auto& [g, words] : c.coop) {
        os << "coop " << c.gens[static_cast<size_t>(g)].id << " |";
        bool first = true;
        for (const auto& w : words) {
            if (!first)
                os << " |";
            first = false;
            for (Mor m : w)
                os << ' ' << c.gens[static_cast<size_t>(m)].id;
        }
        os << "\n";
    }
    return os.str();
}

/* ---- augmentations ---- */

std::optional<std::string> check_augmentation(const AinfCategory& a, const Augmentation& eps) {
    for (const auto& [m, v] : eps.values) {
        if (!v)
            continue;
        const Gen& g = a.gens.at(static_cast<size_t>(m));
        if (g.src != g.dst || g.deg.c != 0 || g.deg.a != 0)
            return "epsilon is nonzero on " + g.id + " which is not a degree-(0,0) endomorphism";
    }
    // compatibility with mu^1: eps(mu^1 x) = 0; with mu^2: eps(mu^2(x,y)) =
    // eps(x) eps(y)
    auto eps_of_combo = [&](const Combo& c) {
        bool r = false;
        for (Mor m : c)
            r ^= is_unit(m) ? true : eps.of(m);
        return r;
    };
    for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
        Mor arr[1] = {g};
        if (eps_of_combo(a.mu_eval(arr)))
            return "epsilon(mu^1 " + a.gens[static_cast<size_t>(g)].id + ") != 0";
    }
    for (int g1 = 0; g1 < static_cast<int>(a.gens.size()); ++g1) {
        for (int g2 = 0; g2 < static_cast<int>(a.gens.size()); ++g2) {
            if (a.dst_of(g1) != a.src_of(g2))
                continue;
            Mor arr[2] = {g1, g2};
            bool lhs = eps_of_combo(a.mu_eval(arr));
            bool rhs = eps.of(g1) && eps.of(g2);
            if (lhs != rhs)
                return "epsilon is not multiplicative on (" + a.gens[static_cast<size_t>(g1)].id + ", " +
                       a.gens[static_cast<size_t>(g2)].id + ")";
        }
    }
    return std::nullopt;
}

/* ---- bar ---- */

namespace {

int adams_sign_of_ideal(const AinfCategory& a) {
    int sign = 0;
    for (const auto& g : a.gens) {
        int s = g.deg.a > 0 ? 1 : (g.deg.a < 0 ? -1 : 0);
        if (s == 0)
            throw Error(ErrKind::NotAdamsConnected,
                        "generator " + g.id + " has Adams degree 0; bar slices would be infinite");
        if (sign == 0)
            sign = s;
        else if (sign != s)
            throw Error(ErrKind::NotAdamsConnected,
                        "generators of mixed Adams sign; bar slices would be infinite");
    }
    return sign == 0 ? 1 : sign;
}

std::string word_id(const AinfCategory& a, const std::vector<Mor>& w) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            os << "|";
        os << a.mor_name(w[i]);
    }
    os << "]";
    return os.str();
}

} // namespace

AinfCocategory bar(const AinfCategory& a, const Augmentation& eps, int adams_cap) {
    if (auto bad = check_augmentation(a, eps))
        throw Error(ErrKind::Internal, "bar: " + *bad);
    adams_sign_of_ideal(a); // throws NotAdamsConnected
    if (adams_cap < 0)
        throw Error(ErrKind::Internal, "bar: adams_cap must be non-negative");

    AinfCocategory b;
    b.name = "B(" + a.name + ")";
    for (const auto& o : a.objects)
        b.add_object(o);

    // enumerate composable words with |total Adams| <= cap
    std::map<std::vector<Mor>, Mor> index;
    std::vector<std::vector<Mor>> words;
    std::vector<std::vector<int>> out_gens(a.objects.size());
    for (int g = 0; g < static_cast<int>(a.gens.size()); ++g)
        out_gens[static_cast<size_t>(a.gens[static_cast<size_t>(g)].src)].push_back(g);
    std::vector<Mor> cur;
    std::function<void(int, int)> rec = [&](int at, int atot) {
        if (!cur.empty()) {
            Bidegree d{0, 0};
            for (Mor m : cur)
                d = d + a.deg_of(m) - Bidegree{1, 0};
            Gen ng;
            ng.id = word_id(a, cur);
            ng.src = a.src_of(cur.front());
            ng.dst = at;
            ng.deg = d;
            index[cur] = b.add_gen(ng);
            words.push_back(cur);
        }
        auto extend = [&](int g) {
            int na = atot + std::abs(a.gens[static_cast<size_t>(g)].deg.a);
            if (na > adams_cap)
                return;
            cur.push_back(g);
            rec(a.dst_of(g), na);
            cur.pop_back();
        };
        if (cur.empty()) {
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g)
                extend(g);
        } else {
            for (int g : out_gens[static_cast<size_t>(at)])
                extend(g);
        }
    };
    rec(-1, 0);

    // differential: all mu insertions with the augmentation twist, projected
    // to the ideal (unit terms dropped, epsilon-twisted letters expanded)
    auto twisted_mu = [&](std::span<const Mor> run) {
        // sum over subsets of epsilon-1 letters replaced by units
        Combo acc;
        std::vector<Mor> seq(run.begin(), run.end());
        std::function<void(size_t)> go = [&](size_t i) {
            if (i == run.size()) {
                Combo v = a.mu_eval(seq);
                // drop unit terms (projection to the ideal)
                Combo basis_only;
                for (Mor m : v)
                    if (!is_unit(m))
                        combo_xor_one(basis_only, m);
                combo_xor_in(acc, basis_only);
                return;
            }
            seq[i] = run[i];
            go(i + 1);
            if (eps.of(run[i])) {
                seq[i] = unit_of(a.src_of(run[i]));
                go(i + 1);
                seq[i] = run[i];
            }
        };
        go(0);
        return acc;
    };

    for (const auto& w : words) {
        Mor wi = index.at(w);
        int len = static_cast<int>(w.size());
        // delta^1: insertion differential
        for (int i = 0; i < len; ++i) {
            for (int j = i + 1; j <= len; ++j) {
                Combo inner = twisted_mu(std::span<const Mor>(w.data() + i, static_cast<size_t>(j - i)));
                for (Mor m : inner) {
                    std::vector<Mor> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + i);
                    nw.push_back(m);
                    nw.insert(nw.end(), w.begin() + j, w.end());
                    auto it = index.find(nw);
                    if (it == index.end())
                        throw Error(ErrKind::Internal, "bar: differential output not enumerated");
                    b.add_coop(wi, {it->second});
                }
            }
        }
        // delta^2: deconcatenations
        for (int i = 1; i < len; ++i) {
            std::vector<Mor> w1(w.begin(), w.begin() + i);
            std::vector<Mor> w2(w.begin() + i, w.end());
            b.add_coop(wi, {index.at(w1), index.at(w2)});
        }
    }
    b.finalize();
    return b;
}

ChainComplex bar_complex(const AinfCocategory& b) {
    ChainComplex cc = b.underlying_complex();
    // adjoin the empty words (counit part), one per object at (0,0)
    auto& slice = cc.basis[{0, 0}];
    int extra = 0;
    for (const auto& o : b.objects) {
        slice.push_back("[]@" + o.name);
        ++extra;
    }
    // enlarge matrices touching (0,0)
    auto fix_out = cc.diff.find({0, 0});
    if (fix_out != cc.diff.end())
        fix_out->second.cols += extra;
    else
        cc.diff[{0, 0}] = F2Matrix(cc.dim({1, 0}), static_cast<int>(slice.size()));
    auto fix_in = cc.diff.find({-1, 0});
    if (fix_in != cc.diff.end())
        fix_in->second.rows += extra;
    return cc;
}

/* ---- cobar ---- */

AinfCategory cobar(const AinfCocategory& c, int adams_cap) {
    if (auto bad = c.check_corelations())
        throw Error(ErrKind::Internal, "cobar: " + *bad);
    AinfCategory out;
    out.name = "Omega(" + c.name + ")";
    for (const auto& o : c.objects)
        out.add_object(o);

    // letters: shifted coideal generators; words: composable products
    auto letter_deg = [&](Mor g) {
        Bidegree d = c.gens[static_cast<size_t>(g)].deg;
        return Bidegree{d.c + 1, d.a};
    };
    for (const auto& g : c.gens) {
        int s = g.deg.a > 0 ? 1 : (g.deg.a < 0 ? -1 : 0);
        if (s == 0)
            throw Error(ErrKind::NotAdamsConnected,
                        "cobar letter " + g.id + " has Adams degree 0; word basis would be infinite");
    }
    std::map<std::vector<Mor>, Mor> index;
    std::vector<std::vector<Mor>> words;
    std::vector<std::vector<int>> out_gens(c.objects.size());
    for (int g = 0; g < static_cast<int>(c.gens.size()); ++g)
        out_gens[static_cast<size_t>(c.gens[static_cast<size_t>(g)].src)].push_back(g);
    std::vector<Mor> curw;
    std::function<void(int, int)> rec = [&](int at, int atot) {
        if (!curw.empty()) {
            Bidegree d{0, 0};
            for (Mor m : curw)
                d = d + letter_deg(m);
            Gen ng;
            std::ostringstream id;
            for (size_t i = 0; i < curw.size(); ++i) {
                if (i)
                    id << ".";
                id << "s(" << c.gens[static_cast<size_t>(curw[i])].id << ")";
            }
            ng.id = id.str();
            ng.src = c.gens[static_cast<size_t>(curw.front())].src;
            ng.dst = at;
            ng.deg = d;
            index[curw] = out.add_gen(ng);
            words.push_back(curw);
        }
        auto extend = [&](int g) {
            int na = atot + std::abs(c.gens[static_cast<size_t>(g)].deg.a);
            if (na > adams_cap)
                return;
            curw.push_back(g);
            rec(c.gens[static_cast<size_t>(g)].dst, na);
            curw.pop_back();
        };
        if (curw.empty()) {
            for (int g = 0; g < static_cast<int>(c.gens.size()); ++g)
                extend(g);
        } else {
            for (int g : out_gens[static_cast<size_t>(at)])
                extend(g);
        }
    };
    rec(-1, 0);

    // differential by the Leibniz rule
    for (const auto& w : words) {
        Mor wi = index.at(w);
        Combo dacc;
        for (size_t i = 0; i < w.size(); ++i) {
            auto it = c.coop.find(w[i]);
            if (it == c.coop.end())
                continue;
            for (const auto& v : it->second) {
                std::vector<Mor> nw;
                nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(i));
                nw.insert(nw.end(), v.begin(), v.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                auto jt = index.find(nw);
                if (jt == index.end())
                    throw Error(ErrKind::Internal, "cobar: differential output not enumerated");
                combo_xor_one(dacc, jt->second);
            }
        }
        if (!dacc.empty())
            out.add_mu({wi}, dacc);
    }
    // products: concatenation within the cap
    for (const auto& w1 : words) {
        for (const auto& w2 : words) {
            if (c.gens[static_cast<size_t>(w1.back())].dst != c.gens[static_cast<size_t>(w2.front())].src)
                continue;
            int atot = 0;
            for (Mor m : w1)
                atot += std::abs(c.gens[static_cast<size_t>(m)].deg.a);
            for (Mor m : w2)
                atot += std::abs(c.gens[static_cast<size_t>(m)].deg.a);
            if (atot > adams_cap)
                continue;
            std::vector<Mor> cw = w1;
            cw.insert(cw.end(), w2.begin(), w2.end());
            out.add_mu({index.at(w1), index.at(w2)}, {index.at(cw)});
        }
    }
    out.finalize();
    return out;
}

/* ---- graded duals ---- */

AinfCategory dual_of_cocategory(const AinfCocategory& c) {
    AinfCategory out;
    out.name = c.name + "#";
    for (const auto& o : c.objects)
        out.add_object(o);
    for (const auto& g : c.gens) {
        Gen ng = g;
        ng.id = g.id + "#";
        ng.deg = {-g.deg.c, -g.deg.a};
        out.add_gen(ng);
    }
    // mu^d(x_1#, ..., x_d#) = sum over y with (x_1..x_d) in coop[y] of y#
    for (const auto& [y, words] : c.coop) {
        for (const auto& w : words)
            out.add_mu(std::vector<Mor>(w), {y});
    }
    out.finalize();
    return out;
}

AinfCocategory dual_of_category(const AinfCategory& a) {
    AinfCocategory out;
    out.name = a.name + "#";
    for (const auto& o : a.objects)
        out.add_object(o);
    for (const auto& g : a.gens) {
        Gen ng = g;
        ng.id = g.id + "#";
        ng.deg = {-g.deg.c, -g.deg.a};
        out.add_gen(ng);
    }
    for (const auto& [in, outc] : a.mu) {
        for (Mor y : outc) {
            if (is_unit(y))
                throw Error(ErrKind::Internal,
                            "dual_of_category: unit-valued operation has no reduced dual");
            out.add_coop(y, std::vector<Mor>(in));
        }
    }
    out.finalize();
    return out;
}

AinfCategory koszul_E(const AinfCategory& a, const Augmentation& eps, int adams_cap) {
    return dual_of_cocategory(bar(a, eps, adams_cap));
}

BarCobarReport check_bar_cobar(const AinfCocategory& c, int adams_cap) {
    BarCobarReport rep;
    AinfCategory omega = cobar(c, adams_cap);
    AinfCocategory bo = bar(omega, Augmentation{}, adams_cap);
    ChainComplex lhs = bar_complex(bo);
    ChainComplex rhs = c.underlying_complex();
    // compare over the support of either side, |adams| <= cap, ignoring the
    // counit row at (0,0) minus the object count on the rhs side
    std::set<Bidegree> degs;
    for (const auto& [d, b] : lhs.basis)
        degs.insert(d);
    for (const auto& [d, b] : rhs.basis)
        degs.insert(d);
    int cmin = 0, cmax = 0;
    for (Bidegree d : degs) {
        cmin = std::min(cmin, d.c);
        cmax = std::max(cmax, d.c);
    }
    rep.pass = true;
    for (int aa = -adams_cap; aa <= adams_cap; ++aa) {
        for (int cc = cmin; cc <= cmax; ++cc) {
            int l = betti_at(lhs, {cc, aa});
            int r = betti_at(rhs, {cc, aa});
            if (aa == 0 && cc == 0)
                r += static_cast<int>(c.objects.size()); // counit classes
            rep.lhs[{cc, aa}] = l;
            rep.rhs[{cc, aa}] = r;
            if (l != r)
                rep.pass = false;
        }
    }
    return rep;
}

} // namespace ainfty
