#include "ainfty/bimodule.hpp"

#include <sstream>

namespace ainfty {

HomBimodule::HomBimodule(CatPtr cat, std::shared_ptr<const AinfFunctor> right_twist)
    : cat_(std::move(cat)), twist_(std::move(right_twist)) {
    if (twist_ && (twist_->src.get() != cat_.get() || twist_->dst.get() != cat_.get()))
        throw Error(ErrKind::ObjectMismatch, "HomBimodule: twist must be an endofunctor");
}

std::vector<Mor> HomBimodule::value(int x, int y) const {
    int ty = twist_ ? twist_->map_obj(y) : y;
    std::vector<Mor> v;
    if (x == ty)
        v.push_back(unit_of(x));
    for (int g : cat_->hom(x, ty))
        v.push_back(g);
    std::sort(v.begin(), v.end());
    return v;
}

Combo HomBimodule::act(std::span<const Mor> xs, Mor u, std::span<const Mor> zs) const {
    // strict unit rules on the letters
    for (Mor m : xs)
        if (is_unit(m))
            return (xs.size() == 1 && zs.empty()) ? Combo{u} : Combo{};
    for (Mor m : zs)
        if (is_unit(m))
            return (zs.size() == 1 && xs.empty()) ? Combo{u} : Combo{};

    if (!twist_) {
        std::vector<Mor> seq(xs.begin(), xs.end());
        seq.push_back(u);
        seq.insert(seq.end(), zs.begin(), zs.end());
        return cat_->mu_eval(seq);
    }
    // push right letters through the twist block-wise
    int q = static_cast<int>(zs.size());
    Combo acc;
    std::vector<Combo> blocks;
    std::function<void(int)> rec = [&](int pos) {
        if (pos == q) {
            std::vector<Combo> args;
            for (Mor m : xs)
                args.push_back({m});
            args.push_back({u});
            for (const auto& b : blocks)
                args.push_back(b);
            combo_xor_in(acc, cat_->mu_eval_multi(args));
            return;
        }
        for (int next = pos + 1; next <= q; ++next) {
            Combo v = twist_->eval(zs.subspan(static_cast<size_t>(pos), static_cast<size_t>(next - pos)));
            if (!v.empty()) {
                blocks.push_back(std::move(v));
                rec(next);
                blocks.pop_back();
            }
        }
    };
    rec(0);
    return acc;
}

std::string BimodFailure::describe(const AinfCategory& c) const {
    std::ostringstream os;
    os << "(" << c.describe_tuple(xs) << " | " << c.mor_name(u) << " | " << c.describe_tuple(zs) << ")";
    return os.str();
}

void BimoduleMap::add_comp(Key k, Combo out) {
    if (out.empty())
        return;
    auto it = comps_.find(k);
    if (it == comps_.end())
        comps_.emplace(std::move(k), std::move(out));
    else {
        combo_xor_in(it->second, out);
        if (it->second.empty())
            comps_.erase(it);
    }
}

Combo BimoduleMap::eval(std::span<const Mor> xs, Mor u, std::span<const Mor> zs) const {
    for (Mor m : xs)
        if (is_unit(m))
            return {};
    for (Mor m : zs)
        if (is_unit(m))
            return {};
    Key k{{xs.begin(), xs.end()}, u, {zs.begin(), zs.end()}};
    auto it = comps_.find(k);
    return it == comps_.end() ? Combo{} : it->second;
}

Combo BimoduleMap::eval_multi(std::span<const Mor> xs, const Combo& us, std::span<const Mor> zs) const {
    Combo acc;
    for (Mor u : us)
        combo_xor_in(acc, eval(xs, u, zs));
    return acc;
}

std::optional<BimodFailure> BimoduleMap::differential_nonzero(int max_arity) const {
    const AinfCategory& c = src_->cat();
    std::optional<BimodFailure> res;

    /* mu^1(t)(xs | u | zs) =
     *   sum t(.. mu(run in xs) .. | u | zs)
     * + sum t(xs | u | .. mu(run in zs) ..)
     * + sum t(x-prefix | mu_M1(x-suffix, u, z-prefix) | z-suffix)
     * + sum mu_M2(x-prefix, t(x-mid | u | z-mid), z-suffix) */
    auto test = [&](const std::vector<Mor>& xs, Mor u, const std::vector<Mor>& zs) {
        if (res)
            return;
        int p = static_cast<int>(xs.size());
        int q = static_cast<int>(zs.size());
        std::span<const Mor> xsp(xs), zsp(zs);
        Combo acc;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j <= p; ++j) {
                Combo inner = c.mu_eval(xsp.subspan(static_cast<size_t>(i), static_cast<size_t>(j - i)));
                for (Mor m : inner) {
                    std::vector<Mor> nxs;
                    nxs.insert(nxs.end(), xs.begin(), xs.begin() + i);
                    nxs.push_back(m);
                    nxs.insert(nxs.end(), xs.begin() + j, xs.end());
                    combo_xor_in(acc, eval(nxs, u, zsp));
                }
            }
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j <= q; ++j) {
                Combo inner = c.mu_eval(zsp.subspan(static_cast<size_t>(i), static_cast<size_t>(j - i)));
                for (Mor m : inner) {
                    std::vector<Mor> nzs;
                    nzs.insert(nzs.end(), zs.begin(), zs.begin() + i);
                    nzs.push_back(m);
                    nzs.insert(nzs.end(), zs.begin() + j, zs.end());
                    combo_xor_in(acc, eval(xsp, u, nzs));
                }
            }
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j) {
                Combo inner = src_->act(xsp.subspan(static_cast<size_t>(i)), u,
                                        zsp.first(static_cast<size_t>(j)));
                if (inner.empty())
                    continue;
                combo_xor_in(acc, eval_multi(xsp.first(static_cast<size_t>(i)), inner,
                                             zsp.subspan(static_cast<size_t>(j))));
            }
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j) {
                Combo inner = eval(xsp.subspan(static_cast<size_t>(i)), u, zsp.first(static_cast<size_t>(j)));
                if (inner.empty())
                    continue;
                Combo outer;
                for (Mor m : inner)
                    combo_xor_in(outer, dst_->act(xsp.first(static_cast<size_t>(i)), m,
                                                  zsp.subspan(static_cast<size_t>(j))));
                combo_xor_in(acc, outer);
            }
        if (!acc.empty())
            res = BimodFailure{xs, zs, u};
    };

    // enumerate xs (composable chain), then u, then zs, with p + q <= max_arity
    std::function<void(std::vector<Mor>&, int)> enum_xs = [&](std::vector<Mor>& cur, int depth) {
        if (res)
            return;
        auto with_u = [&](int usrc) {
            for (int y = 0; y < static_cast<int>(c.objects.size()) && !res; ++y) {
                for (Mor u : src_->value(usrc, y)) {
                    std::vector<Mor> zs;
                    std::function<void(int, int)> rec_z = [&](int zat, int q_left) {
                        if (res)
                            return;
                        test(cur, u, zs);
                        if (q_left == 0)
                            return;
                        for (int g = 0; g < static_cast<int>(c.gens.size()); ++g) {
                            if (c.src_of(g) != zat)
                                continue;
                            zs.push_back(g);
                            rec_z(c.dst_of(g), q_left - 1);
                            zs.pop_back();
                        }
                    };
                    rec_z(y, max_arity - depth);
                    if (res)
                        return;
                }
            }
        };
        if (cur.empty()) {
            for (int x = 0; x < static_cast<int>(c.objects.size()) && !res; ++x)
                with_u(x);
        } else {
            with_u(c.dst_of(cur.back()));
        }
        if (depth == max_arity || res)
            return;
        int at = cur.empty() ? -1 : c.dst_of(cur.back());
        for (int g = 0; g < static_cast<int>(c.gens.size()) && !res; ++g) {
            if (at >= 0 && c.src_of(g) != at)
                continue;
            cur.push_back(g);
            enum_xs(cur, depth + 1);
            cur.pop_back();
        }
    };
    std::vector<Mor> cur;
    enum_xs(cur, 0);
    return res;
}

} // namespace ainfty
