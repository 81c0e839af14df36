#include "ainfty/functor.hpp"

#include <algorithm>

namespace ainfty {

void AinfFunctor::add_comp(std::vector<Mor> in, Combo out) {
    if (out.empty())
        return;
    if (in.size() >= 2)
        strict = false;
    max_comp_arity = std::max(max_comp_arity, static_cast<int>(in.size()));
    auto it = comps.find(in);
    if (it == comps.end())
        comps.emplace(std::move(in), std::move(out));
    else {
        combo_xor_in(it->second, out);
        if (it->second.empty())
            comps.erase(it);
    }
}

void AinfFunctor::finalize() {
    if (obj_map.size() != src->objects.size())
        throw Error(ErrKind::ObjectMismatch, "functor " + name + ": object map has wrong size");
    strict = true;
    max_comp_arity = 1;
    for (const auto& [in, out] : comps) {
        if (in.size() >= 2)
            strict = false;
        max_comp_arity = std::max(max_comp_arity, static_cast<int>(in.size()));
        for (size_t i = 0; i < in.size(); ++i) {
            if (is_unit(in[i]))
                throw Error(ErrKind::Internal, "functor component with unit input");
            if (i + 1 < in.size() && src->dst_of(in[i]) != src->src_of(in[i + 1]))
                throw Error(ErrKind::ObjectMismatch,
                            "functor " + name + ": component inputs not composable");
        }
        int s = map_obj(src->src_of(in.front()));
        int t = map_obj(src->dst_of(in.back()));
        Bidegree want{1 - static_cast<int>(in.size()), 0};
        for (Mor m : in)
            want = want + src->deg_of(m);
        if (dst->collapsed && !src->collapsed)
            throw Error(ErrKind::Internal, "functor from graded to collapsed category not supported");
        for (Mor m : out) {
            if (dst->src_of(m) != s || dst->dst_of(m) != t)
                throw Error(ErrKind::ObjectMismatch,
                            "functor " + name + ": component output has wrong endpoints");
            Bidegree got = dst->deg_of(m);
            if (got.c != want.c || (!dst->collapsed && got.a != want.a))
                throw Error(ErrKind::DegreeMismatch,
                            "functor " + name + ": component output degree " + got.str() + ", expected " +
                                want.str());
        }
    }
}

Combo AinfFunctor::eval(std::span<const Mor> in) const {
    if (in.empty())
        return {};
    if (in.size() == 1 && is_unit(in[0]))
        return {unit_of(map_obj(unit_obj(in[0])))};
    for (Mor m : in)
        if (is_unit(m))
            return {};
    std::vector<Mor> key(in.begin(), in.end());
    auto it = comps.find(key);
    return it == comps.end() ? Combo{} : it->second;
}

Combo AinfFunctor::eval_multi(std::span<const Combo> in) const {
    Combo acc;
    std::vector<Mor> cur(in.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == in.size()) {
            combo_xor_in(acc, eval(cur));
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

Combo functor_block_sum(const AinfFunctor& f, std::span<const Mor> in) {
    int d = static_cast<int>(in.size());
    Combo acc;
    // partition (x_0..x_{d-1}) into r >= 1 consecutive nonempty blocks
    std::vector<int> cuts; // block end positions
    std::function<void(int)> rec = [&](int pos) {
        if (pos == d) {
            std::vector<Combo> blocks;
            int start = 0;
            for (int cut : cuts) {
                blocks.push_back(f.eval(std::span<const Mor>(in.data() + start, static_cast<size_t>(cut - start))));
                if (blocks.back().empty())
                    return;
                start = cut;
            }
            combo_xor_in(acc, f.dst->mu_eval_multi(blocks));
            return;
        }
        for (int next = pos + 1; next <= d; ++next) {
            cuts.push_back(next);
            rec(next);
            cuts.pop_back();
        }
    };
    rec(0);
    return acc;
}

std::optional<FunctorFailure> check_functor(const AinfFunctor& f, int max_arity) {
    std::optional<FunctorFailure> fail;
    for (int d = 1; d <= max_arity && !fail; ++d) {
        for_each_composable(*f.src, d, [&](const std::vector<Mor>& t) {
            if (fail)
                return;
            Combo res = functor_block_sum(f, t);
            // insertion side
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j <= d; ++j) {
                    Combo inner = f.src->mu_eval(std::span<const Mor>(t.data() + i, static_cast<size_t>(j - i)));
                    if (inner.empty())
                        continue;
                    std::vector<Combo> outer;
                    for (int k = 0; k < i; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    outer.push_back(inner);
                    for (int k = j; k < d; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    combo_xor_in(res, f.eval_multi(outer));
                }
            }
            if (!res.empty())
                fail = FunctorFailure{d, t, res};
        });
    }
    return fail;
}

AinfFunctor compose_functors(const AinfFunctor& f, const AinfFunctor& g, int arity_cap) {
    if (f.dst.get() != g.src.get())
        throw Error(ErrKind::ObjectMismatch,
                    "compose_functors: target of " + f.name + " is not the source of " + g.name);
    AinfFunctor out;
    out.name = g.name + "o" + f.name;
    out.src = f.src;
    out.dst = g.dst;
    out.obj_map.resize(f.src->objects.size());
    for (size_t i = 0; i < out.obj_map.size(); ++i)
        out.obj_map[i] = g.map_obj(f.map_obj(static_cast<int>(i)));
    for (int d = 1; d <= arity_cap; ++d) {
        for_each_composable(*f.src, d, [&](const std::vector<Mor>& t) {
            // (g o f)^d = sum over partitions g^r(f(block_1), ..., f(block_r))
            Combo acc;
            std::vector<int> cuts;
            std::function<void(int)> rec = [&](int pos) {
                if (pos == d) {
                    std::vector<Combo> blocks;
                    int start = 0;
                    for (int cut : cuts) {
                        blocks.push_back(
                            f.eval(std::span<const Mor>(t.data() + start, static_cast<size_t>(cut - start))));
                        if (blocks.back().empty())
                            return;
                        start = cut;
                    }
                    combo_xor_in(acc, g.eval_multi(blocks));
                    return;
                }
                for (int next = pos + 1; next <= d; ++next) {
                    cuts.push_back(next);
                    rec(next);
                    cuts.pop_back();
                }
            };
            rec(0);
            if (!acc.empty())
                out.add_comp(t, acc);
        });
    }
    out.finalize();
    return out;
}

AinfFunctor identity_functor(CatPtr c) {
    AinfFunctor f;
    f.name = "id";
    f.src = c;
    f.dst = c;
    f.obj_map.resize(c->objects.size());
    for (size_t i = 0; i < f.obj_map.size(); ++i)
        f.obj_map[i] = static_cast<int>(i);
    for (int g = 0; g < static_cast<int>(c->gens.size()); ++g)
        f.add_comp({g}, {g});
    f.finalize();
    return f;
}

AinfFunctor collapse_functor(const AinfFunctor& f, CatPtr src_collapsed, CatPtr dst_collapsed) {
    AinfFunctor out;
    out.name = f.name + "_m";
    out.src = std::move(src_collapsed);
    out.dst = std::move(dst_collapsed);
    out.obj_map = f.obj_map;
    out.comps = f.comps;
    out.finalize();
    return out;
}

AinfFunctor strict_functor(std::string name, CatPtr src, CatPtr dst, std::vector<int> obj_map,
                           std::map<Mor, Combo> on_gens) {
    AinfFunctor f;
    f.name = std::move(name);
    f.src = std::move(src);
    f.dst = std::move(dst);
    f.obj_map = std::move(obj_map);
    for (auto& [g, out] : on_gens)
        f.add_comp({g}, out);
    f.finalize();
    return f;
}

AinfFunctor adjunction_lift(const AinfFunctor& psi_m, CatPtr c_graded, CatPtr pt, int m) {
    for (const auto& g : c_graded->gens)
        if (g.deg.a < 0)
            throw Error(ErrKind::NegativeAdamsDegree,
                        "adjunction lift requires non-negative Adams degrees; " + g.id + " has " +
                            g.deg.str());
    AinfFunctor out;
    out.name = psi_m.name + "^";
    out.src = c_graded;
    out.dst = pt;
    out.obj_map = psi_m.obj_map; // poly_tensor keeps the object set
    const AinfCategory& d = *psi_m.dst;
    for (const auto& [in, outc] : psi_m.comps) {
        int k = 0;
        for (Mor mm : in)
            k += c_graded->deg_of(mm).a;
        Combo nout;
        for (Mor o : outc)
            combo_xor_one(nout, poly_tensor_gen(*pt, d, k, o));
        out.add_comp(std::vector<Mor>(in), std::move(nout));
    }
    out.finalize();
    return out;
}

Combo FunctorHomotopy::eval(std::span<const Mor> in) const {
    if (in.empty())
        return {};
    for (Mor m : in)
        if (is_unit(m))
            return {};
    std::vector<Mor> key(in.begin(), in.end());
    auto it = comps.find(key);
    return it == comps.end() ? Combo{} : it->second;
}

std::optional<FunctorFailure> check_homotopy(const FunctorHomotopy& h, int max_arity) {
    const AinfFunctor& phi = *h.from;
    const AinfFunctor& psi = *h.to;
    if (phi.obj_map != psi.obj_map)
        throw Error(ErrKind::ObjectMismatch, "homotopy requires equal object maps");
    std::optional<FunctorFailure> fail;
    const AinfCategory& src = *phi.src;
    for (int d = 1; d <= max_arity && !fail; ++d) {
        for_each_composable(src, d, [&](const std::vector<Mor>& t) {
            if (fail)
                return;
            Combo res = combo_add(phi.eval(t), psi.eval(t));
            // sum T(..., mu(...), ...)
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j <= d; ++j) {
                    Combo inner = src.mu_eval(std::span<const Mor>(t.data() + i, static_cast<size_t>(j - i)));
                    if (inner.empty())
                        continue;
                    std::vector<Combo> outer;
                    for (int k = 0; k < i; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    outer.push_back(inner);
                    for (int k = j; k < d; ++k)
                        outer.push_back({t[static_cast<size_t>(k)]});
                    // multilinear T over the inserted combo
                    Combo term;
                    std::vector<Mor> cur(outer.size());
                    std::function<void(size_t)> rec = [&](size_t q) {
                        if (q == outer.size()) {
                            combo_xor_in(term, h.eval(cur));
                            return;
                        }
                        for (Mor m : outer[q]) {
                            cur[q] = m;
                            rec(q + 1);
                        }
                    };
                    rec(0);
                    combo_xor_in(res, term);
                }
            }
            // sum mu(Phi(...), ..., T(...), ..., Psi(...)): partitions with a
            // distinguished T block, Phi blocks before it, Psi blocks after
            std::vector<std::pair<int, int>> blocks; // (start, end)
            std::function<void(int)> rec2 = [&](int pos) {
                if (pos == d) {
                    for (size_t m = 0; m < blocks.size(); ++m) {
                        std::vector<Combo> args;
                        bool dead = false;
                        for (size_t b = 0; b < blocks.size() && !dead; ++b) {
                            auto sp = std::span<const Mor>(t.data() + blocks[b].first,
                                                           static_cast<size_t>(blocks[b].second - blocks[b].first));
                            Combo v = b < m ? phi.eval(sp) : (b == m ? h.eval(sp) : psi.eval(sp));
                            if (v.empty())
                                dead = true;
                            else
                                args.push_back(std::move(v));
                        }
                        if (!dead)
                            combo_xor_in(res, phi.dst->mu_eval_multi(args));
                    }
                    return;
                }
                for (int next = pos + 1; next <= d; ++next) {
                    blocks.push_back({pos, next});
                    rec2(next);
                    blocks.pop_back();
                }
            };
            rec2(0);
            if (!res.empty())
                fail = FunctorFailure{d, t, res};
        });
    }
    return fail;
}

} // namespace ainfty
