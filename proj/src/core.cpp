#include "ainfty/core.hpp"

#include <algorithm>
#include <sstream>

namespace ainfty {

Combo combo_add(const Combo& x, const Combo& y) { return xor_rows(x, y); }

void combo_xor_in(Combo& acc, const Combo& x) { acc = xor_rows(acc, x); }

void combo_xor_one(Combo& acc, Mor m) {
    auto it = std::lower_bound(acc.begin(), acc.end(), m);
    if (it != acc.end() && *it == m)
        acc.erase(it);
    else
        acc.insert(it, m);
}

std::string RelationFailure::describe(const AinfCategory& cat) const {
    std::ostringstream os;
    os << "relation d=" << arity << " fails on " << cat.describe_tuple(tuple) << ", residual =";
    for (Mor m : residual)
        os << ' ' << cat.mor_name(m);
    return os.str();
}

int AinfCategory::add_object(Object o) {
    objects.push_back(std::move(o));
    return static_cast<int>(objects.size()) - 1;
}

int AinfCategory::add_gen(Gen g) {
    gens.push_back(std::move(g));
    return static_cast<int>(gens.size()) - 1;
}

void AinfCategory::add_mu(std::vector<Mor> in, Combo out) {
    if (out.empty())
        return;
    auto it = mu.find(in);
    if (it == mu.end()) {
        max_mu_arity = std::max(max_mu_arity, static_cast<int>(in.size()));
        mu.emplace(std::move(in), std::move(out));
    } else {
        combo_xor_in(it->second, out);
        if (it->second.empty())
            mu.erase(it);
    }
}

void AinfCategory::finalize() {
    homs.clear();
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        homs[{gens[static_cast<size_t>(i)].src, gens[static_cast<size_t>(i)].dst}].push_back(i);

    max_mu_arity = 0;
    for (const auto& [in, out] : mu) {
        max_mu_arity = std::max(max_mu_arity, static_cast<int>(in.size()));
        // composability head to tail
        for (size_t i = 0; i < in.size(); ++i) {
            if (is_unit(in[i]))
                throw Error(ErrKind::Internal, "stored mu entry has a unit input in " + describe_tuple(in));
            if (i + 1 < in.size() && dst_of(in[i]) != src_of(in[i + 1]))
                throw Error(ErrKind::DegreeMismatch,
                            "mu inputs not composable: " + describe_tuple(in));
        }
        int s = src_of(in.front());
        int t = dst_of(in.back());
        Bidegree want = mu_out_deg(in);
        for (Mor m : out) {
            if (src_of(m) != s || dst_of(m) != t)
                throw Error(ErrKind::DegreeMismatch, "mu output " + mor_name(m) +
                                                         " has wrong endpoints for " + describe_tuple(in));
            Bidegree got = deg_of(m);
            if (got.c != want.c || (!collapsed && got.a != want.a))
                throw Error(ErrKind::DegreeMismatch,
                            "mu output " + mor_name(m) + " has bidegree " + got.str() + ", expected " +
                                want.str() + " for " + describe_tuple(in));
        }
    }

    if (has_split()) {
        for (const auto& o : objects)
            if (!o.split)
                throw Error(ErrKind::IncompatibleSplitting,
                            "object " + o.name + " lacks a split key in a split category");
        if (!collapsed) {
            for (const auto& g : gens) {
                int ls = objects[static_cast<size_t>(g.src)].split->level;
                int lt = objects[static_cast<size_t>(g.dst)].split->level;
                if (g.deg.a != lt - ls)
                    throw Error(ErrKind::DegreeMismatch,
                                "generator " + g.id + " has Adams degree " + std::to_string(g.deg.a) +
                                    ", splitting forces " + std::to_string(lt - ls));
            }
        }
    }
}

int AinfCategory::object_index(const std::string& nm) const {
    for (int i = 0; i < static_cast<int>(objects.size()); ++i)
        if (objects[static_cast<size_t>(i)].name == nm)
            return i;
    return -1;
}

int AinfCategory::gen_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        if (gens[static_cast<size_t>(i)].id == id)
            return i;
    return -1;
}

std::string AinfCategory::mor_name(Mor m) const {
    if (is_unit(m))
        return "e(" + objects[static_cast<size_t>(unit_obj(m))].name + ")";
    return gens[static_cast<size_t>(m)].id;
}

const std::vector<int>& AinfCategory::hom(int x, int y) const {
    static const std::vector<int> empty;
    auto it = homs.find({x, y});
    return it == homs.end() ? empty : it->second;
}

Combo AinfCategory::mu_eval(std::span<const Mor> in) const {
    if (in.empty())
        return {};
    if (in.size() == 1 && is_unit(in[0]))
        return {}; // mu^1(e) = 0
    bool any_unit = false;
    for (Mor m : in)
        if (is_unit(m)) {
            any_unit = true;
            break;
        }
    if (any_unit) {
        if (in.size() == 2) {
            if (is_unit(in[0]) && !is_unit(in[1]))
                return {in[1]};
            if (is_unit(in[1]) && !is_unit(in[0]))
                return {in[0]};
            if (is_unit(in[0]) && is_unit(in[1]))
                return {in[0]}; // mu^2(e,e) = e
        }
        return {};
    }
    std::vector<Mor> key(in.begin(), in.end());
    auto it = mu.find(key);
    return it == mu.end() ? Combo{} : it->second;
}

Combo AinfCategory::mu_eval_multi(std::span<const Combo> in) const {
    // expand multilinearly; combos are tiny in practice
    Combo acc;
    std::vector<Mor> cur(in.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == in.size()) {
            combo_xor_in(acc, mu_eval(cur));
            return;
        }
        for (Mor m : in[i]) {
            cur[i] = m;
            rec(i + 1);
        }
    };
    rec(0);
    return acc;
}

Bidegree AinfCategory::mu_out_deg(std::span<const Mor> in) const {
    Bidegree d{2 - static_cast<int>(in.size()), 0};
    for (Mor m : in)
        d = d + deg_of(m);
    return d;
}

ChainComplex AinfCategory::hom_complex(int x, int y) const {
    ChainComplex cc;
    cc.total = true;
    std::map<Bidegree, std::vector<Mor>> slices;
    for (int g : hom(x, y))
        slices[gens[static_cast<size_t>(g)].deg].push_back(g);
    if (x == y)
        slices[{0, 0}].push_back(unit_of(x));
    std::map<std::pair<Bidegree, Mor>, int> index;
    for (auto& [d, v] : slices) {
        std::sort(v.begin(), v.end());
        std::vector<std::string> labels;
        for (size_t i = 0; i < v.size(); ++i) {
            index[{d, v[i]}] = static_cast<int>(i);
            labels.push_back(mor_name(v[i]));
        }
        cc.basis[d] = std::move(labels);
    }
    for (auto& [d, v] : slices) {
        Bidegree next{d.c + 1, d.a};
        auto nit = slices.find(next);
        int nrows = nit == slices.end() ? 0 : static_cast<int>(nit->second.size());
        F2Matrix m(nrows, static_cast<int>(v.size()));
        for (size_t j = 0; j < v.size(); ++j) {
            Mor arr[1] = {v[j]};
            for (Mor o : mu_eval(arr)) {
                auto pit = index.find({next, o});
                if (pit == index.end())
                    throw Error(ErrKind::Internal, "mu^1 output outside hom complex");
                m.add_entry(pit->second, static_cast<int>(j));
            }
        }
        cc.diff[d] = std::move(m);
    }
    return cc;
}

std::string AinfCategory::describe_tuple(std::span<const Mor> in) const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < in.size(); ++i) {
        if (i)
            os << ", ";
        os << mor_name(in[i]);
    }
    os << ')';
    return os.str();
}

void for_each_composable(const AinfCategory& cat, int arity,
                         const std::function<void(const std::vector<Mor>&)>& fn) {
    std::vector<std::vector<int>> out_gens(cat.objects.size());
    for (int g = 0; g < static_cast<int>(cat.gens.size()); ++g)
        out_gens[static_cast<size_t>(cat.gens[static_cast<size_t>(g)].src)].push_back(g);
    std::vector<Mor> cur;
    std::function<void(int)> rec = [&](int end_obj) {
        if (static_cast<int>(cur.size()) == arity) {
            fn(cur);
            return;
        }
        auto extend = [&](int g) {
            cur.push_back(g);
            rec(cat.gens[static_cast<size_t>(g)].dst);
            cur.pop_back();
        };
        if (cur.empty()) {
            for (int g = 0; g < static_cast<int>(cat.gens.size()); ++g)
                extend(g);
        } else {
            for (int g : out_gens[static_cast<size_t>(end_obj)])
                extend(g);
        }
    };
    rec(-1);
}

std::optional<RelationFailure> check_relations(const AinfCategory& cat, int max_arity) {
    if (max_arity < cat.max_mu_arity + 1)
        throw Error(ErrKind::Internal, "check_relations: max_arity must exceed the mu table arity");
    std::optional<RelationFailure> fail;
    for (int d = 1; d <= max_arity && !fail; ++d) {
        for_each_composable(cat, d, [&](const std::vector<Mor>& t) {
            if (fail)
                return;
            Combo res;
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j <= d; ++j) {
                    Combo inner = cat.mu_eval(std::span<const Mor>(t.data() + i, static_cast<size_t>(j - i)));
                    if (inner.empty())
                        continue;
                    // outer tuple with the inner value substituted
                    std::vector<Combo> outer;
                    outer.reserve(static_cast<size_t>(d - (j - i) + 1));
                    for (int k = 0; k < i; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    outer.push_back(inner);
                    for (int k = j; k < d; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    combo_xor_in(res, cat.mu_eval_multi(outer));
                }
            }
            if (!res.empty())
                fail = RelationFailure{d, t, res};
        });
    }
    return fail;
}

int default_check_arity(const AinfCategory& cat) { return std::max(3, cat.max_mu_arity + 2); }

AinfCategory collapse_grading(const AinfCategory& cat, int m) {
    AinfCategory out = cat;
    out.name = cat.name + "_m" + std::to_string(m);
    out.collapsed = true;
    for (auto& g : out.gens)
        g.deg = {g.deg.c - m * g.deg.a, 0};
    out.finalize();
    return out;
}

AinfCategory poly_tensor(const AinfCategory& d, int m, int adams_cap) {
    if (!d.collapsed) {
        for (const auto& g : d.gens)
            if (g.deg.a != 0)
                throw Error(ErrKind::Internal, "poly_tensor: input must be single-graded");
    }
    if (adams_cap < 0)
        throw Error(ErrKind::Internal, "poly_tensor: adams_cap must be non-negative");
    AinfCategory out;
    out.name = "F[t_" + std::to_string(m) + "](x)" + d.name;
    out.objects = d.objects;
    for (auto& o : out.objects)
        o.split.reset();

    // gen index of t^k (x) y; for k = 0, plain y; for y = unit and k >= 1, a
    // new generator t^k e_X
    std::map<std::pair<int, Mor>, Mor> enc;
    for (int g = 0; g < static_cast<int>(d.gens.size()); ++g) {
        const Gen& gg = d.gens[static_cast<size_t>(g)];
        for (int k = 0; k <= adams_cap; ++k) {
            Gen ng;
            ng.id = k == 0 ? gg.id : "t^" + std::to_string(k) + "*" + gg.id;
            ng.src = gg.src;
            ng.dst = gg.dst;
            ng.deg = {gg.deg.c + m * k, k};
            enc[{k, g}] = out.add_gen(ng);
        }
    }
    for (int x = 0; x < static_cast<int>(d.objects.size()); ++x) {
        enc[{0, unit_of(x)}] = unit_of(x);
        for (int k = 1; k <= adams_cap; ++k) {
            Gen ng;
            ng.id = "t^" + std::to_string(k) + "*e(" + d.objects[static_cast<size_t>(x)].name + ")";
            ng.src = x;
            ng.dst = x;
            ng.deg = {m * k, k};
            enc[{k, unit_of(x)}] = out.add_gen(ng);
        }
    }

    auto encode = [&](int k, Mor y) -> Mor { return enc.at({k, y}); };

    // entries from the mu table of d
    for (const auto& [in, outc] : d.mu) {
        int arity = static_cast<int>(in.size());
        // distribute t-powers over the inputs, total <= cap
        std::vector<int> ks(static_cast<size_t>(arity), 0);
        std::function<void(int, int)> rec = [&](int pos, int total) {
            if (pos == arity) {
                std::vector<Mor> nin(static_cast<size_t>(arity));
                for (int i = 0; i < arity; ++i)
                    nin[static_cast<size_t>(i)] = encode(ks[static_cast<size_t>(i)], in[static_cast<size_t>(i)]);
                Combo nout;
                for (Mor o : outc)
                    combo_xor_one(nout, encode(total, o));
                out.add_mu(std::move(nin), std::move(nout));
                return;
            }
            for (int k = 0; total + k <= adams_cap; ++k) {
                ks[static_cast<size_t>(pos)] = k;
                rec(pos + 1, total + k);
            }
        };
        rec(0, 0);
    }
    // mu^2 entries involving t-power units: t^a e * t^b z = t^{a+b} z when
    // composable (covers z a generator or a unit), except a = b = 0
    for (int x = 0; x < static_cast<int>(d.objects.size()); ++x) {
        for (int a = 1; a <= adams_cap; ++a) {
            Mor te = encode(a, unit_of(x));
            for (int b = 0; a + b <= adams_cap; ++b) {
                // te * t^b z with z starting at x
                for (int g = 0; g < static_cast<int>(d.gens.size()); ++g) {
                    const Gen& gg = d.gens[static_cast<size_t>(g)];
                    if (gg.src == x)
                        out.add_mu({te, encode(b, g)}, {encode(a + b, g)});
                    if (gg.dst == x)
                        out.add_mu({encode(b, g), te}, {encode(a + b, g)});
                }
                if (b >= 1) {
                    Mor tb = encode(b, unit_of(x));
                    out.add_mu({te, tb}, {encode(a + b, unit_of(x))});
                }
            }
        }
    }
    out.finalize();
    return out;
}

Mor poly_tensor_gen(const AinfCategory& pt, const AinfCategory& d, int k, Mor y) {
    if (k == 0 && is_unit(y))
        return unit_of(unit_obj(y));
    std::string id;
    if (is_unit(y))
        id = "t^" + std::to_string(k) + "*e(" + d.objects[static_cast<size_t>(unit_obj(y))].name + ")";
    else
        id = k == 0 ? d.gens[static_cast<size_t>(y)].id
                    : "t^" + std::to_string(k) + "*" + d.gens[static_cast<size_t>(y)].id;
    int g = pt.gen_index(id);
    if (g < 0)
        throw Error(ErrKind::DanglingId, "poly_tensor_gen: no generator " + id + " (cap exceeded?)");
    return g;
}

} // namespace ainfty
