#include "ainfty/module.hpp"
#include "ainfty/functor.hpp"

#include <algorithm>
#include <sstream>

namespace ainfty {

namespace {

void mod_xor_one(ModCombo& acc, int v) {
    auto it = std::lower_bound(acc.begin(), acc.end(), v);
    if (it != acc.end() && *it == v)
        acc.erase(it);
    else
        acc.insert(it, v);
}

void mod_xor_in(ModCombo& acc, const ModCombo& x) { acc = xor_rows(acc, x); }

} // namespace

ModCombo Module::act(std::span<const Mor> xs, int end_obj, int u) const {
    for (Mor m : xs)
        if (is_unit(m))
            return xs.size() == 1 ? ModCombo{u} : ModCombo{};
    return act_raw(xs, end_obj, u);
}

ModCombo Module::act_multi(std::span<const Mor> xs, int end_obj, const ModCombo& us) const {
    ModCombo acc;
    for (int u : us)
        mod_xor_in(acc, act(xs, end_obj, u));
    return acc;
}

ModCombo ModuleMap::component(std::span<const Mor> xs, int end_obj, int u) const {
    for (Mor m : xs)
        if (is_unit(m))
            return {};
    return component_raw(xs, end_obj, u);
}

ModCombo ModuleMap::component_multi(std::span<const Mor> xs, int end_obj, const ModCombo& us) const {
    ModCombo acc;
    for (int u : us)
        mod_xor_in(acc, component(xs, end_obj, u));
    return acc;
}

/* ---- Yoneda ---- */

YonedaModule::YonedaModule(CatPtr cat, int y) : Module(std::move(cat)), y_(y) {
    size_t n = cat_->objects.size();
    elems_.resize(n);
    infos_.resize(n);
    for (int x = 0; x < static_cast<int>(n); ++x) {
        std::vector<Mor> v;
        if (x == y_)
            v.push_back(unit_of(x));
        for (int g : cat_->hom(x, y_))
            v.push_back(g);
        std::sort(v.begin(), v.end());
        for (Mor m : v)
            infos_[static_cast<size_t>(x)].push_back({cat_->deg_of(m), cat_->mor_name(m)});
        elems_[static_cast<size_t>(x)] = std::move(v);
    }
}

const std::vector<ModValInfo>& YonedaModule::value(int x) const { return infos_[static_cast<size_t>(x)]; }

int YonedaModule::index_of(int x, Mor m) const {
    const auto& v = elems_[static_cast<size_t>(x)];
    auto it = std::lower_bound(v.begin(), v.end(), m);
    if (it == v.end() || *it != m)
        throw Error(ErrKind::Internal, "YonedaModule: morphism not in value basis");
    return static_cast<int>(it - v.begin());
}

ModCombo YonedaModule::to_combo(int x, const Combo& c) const {
    ModCombo out;
    for (Mor m : c)
        mod_xor_one(out, index_of(x, m));
    return out;
}

ModCombo YonedaModule::act_raw(std::span<const Mor> xs, int end_obj, int u) const {
    Mor um = elems_[static_cast<size_t>(end_obj)][static_cast<size_t>(u)];
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(um);
    Combo out = cat_->mu_eval(seq);
    int front = xs.empty() ? end_obj : cat_->src_of(xs.front());
    return to_combo(front, out);
}

/* ---- direct sums ---- */

DirectSumModule::DirectSumModule(CatPtr cat, std::vector<ModPtr> parts, std::vector<Bidegree> shifts,
                                 std::vector<std::string> tags)
    : Module(std::move(cat)), parts_(std::move(parts)), shifts_(std::move(shifts)), tags_(std::move(tags)) {
    if (parts_.size() != shifts_.size() || parts_.size() != tags_.size())
        throw Error(ErrKind::Internal, "DirectSumModule: mismatched part data");
}

void DirectSumModule::build(int x) const {
    std::lock_guard<std::mutex> lock(mtx_);
    if (cache_.count(x))
        return;
    std::vector<ModValInfo> infos;
    std::vector<int> offs;
    for (size_t i = 0; i < parts_.size(); ++i) {
        offs.push_back(static_cast<int>(infos.size()));
        for (const auto& vi : parts_[i]->value(x)) {
            ModValInfo ni;
            ni.deg = vi.deg - shifts_[i];
            ni.label = tags_[i] + vi.label;
            infos.push_back(std::move(ni));
        }
    }
    offsets_[x] = std::move(offs);
    cache_[x] = std::move(infos);
}

const std::vector<ModValInfo>& DirectSumModule::value(int x) const {
    build(x);
    return cache_.at(x);
}

int DirectSumModule::to_global(int x, int part, int local) const {
    build(x);
    return offsets_.at(x)[static_cast<size_t>(part)] + local;
}

std::pair<int, int> DirectSumModule::to_local(int x, int global) const {
    build(x);
    const auto& offs = offsets_.at(x);
    int part = static_cast<int>(offs.size()) - 1;
    while (part > 0 && offs[static_cast<size_t>(part)] > global)
        --part;
    return {part, global - offs[static_cast<size_t>(part)]};
}

ModCombo DirectSumModule::inject(int x, int part, const ModCombo& local) const {
    ModCombo out;
    for (int v : local)
        mod_xor_one(out, to_global(x, part, v));
    return out;
}

ModCombo DirectSumModule::act_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = to_local(end_obj, u);
    int front = xs.empty() ? end_obj : cat_->src_of(xs.front());
    return inject(front, part, parts_[static_cast<size_t>(part)]->act(xs, end_obj, local));
}

/* ---- cone ---- */

ConeModule::ConeModule(MapPtr t) : Module(t->src().cat_ptr()), t_(std::move(t)) {}

void ConeModule::build(int x) const {
    std::lock_guard<std::mutex> lock(mtx_);
    if (cache_.count(x))
        return;
    // the shifted part also carries the Adams offset of the map, so that the
    // twisted differential is Adams-homogeneous
    Bidegree off{1, -t_->degree().a};
    std::vector<ModValInfo> infos;
    for (const auto& vi : t_->src().value(x))
        infos.push_back({vi.deg - off, vi.label + "[1]"});
    for (const auto& vi : t_->dst().value(x))
        infos.push_back(vi);
    cache_[x] = std::move(infos);
}

const std::vector<ModValInfo>& ConeModule::value(int x) const {
    build(x);
    return cache_.at(x);
}

int ConeModule::to_global(int x, int part, int local) const {
    if (part == 0)
        return local;
    return static_cast<int>(t_->src().value(x).size()) + local;
}

std::pair<int, int> ConeModule::to_local(int x, int global) const {
    int n0 = static_cast<int>(t_->src().value(x).size());
    return global < n0 ? std::make_pair(0, global) : std::make_pair(1, global - n0);
}

ModCombo ConeModule::inject(int x, int part, const ModCombo& local) const {
    ModCombo out;
    for (int v : local)
        mod_xor_one(out, to_global(x, part, v));
    return out;
}

ModCombo ConeModule::act_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = to_local(end_obj, u);
    int front = xs.empty() ? end_obj : cat_->src_of(xs.front());
    ModCombo out;
    if (part == 0) {
        mod_xor_in(out, inject(front, 0, t_->src().act(xs, end_obj, local)));
        mod_xor_in(out, inject(front, 1, t_->component(xs, end_obj, local)));
    } else {
        mod_xor_in(out, inject(front, 1, t_->dst().act(xs, end_obj, local)));
    }
    return out;
}

/* ---- pullback ---- */

PullbackModule::PullbackModule(std::shared_ptr<const AinfFunctor> phi, ModPtr n)
    : Module(phi->src), phi_(std::move(phi)), n_(std::move(n)) {}

const std::vector<ModValInfo>& PullbackModule::value(int x) const {
    return n_->value(phi_->map_obj(x));
}

namespace {

/* Sum over partitions of xs into consecutive nonempty blocks of
 * fn(Phi(b_1), ..., Phi(b_r)); used by pullback module and map. Each block
 * image is a combo; fn consumes a concrete tuple of morphisms. */
void for_each_block_image(const AinfFunctor& phi, std::span<const Mor> xs,
                          const std::function<void(const std::vector<Mor>&)>& fn) {
    int d = static_cast<int>(xs.size());
    if (d == 0) {
        fn({});
        return;
    }
    std::vector<Combo> block_vals;
    std::function<void(int)> rec = [&](int pos) {
        if (pos == d) {
            std::vector<Mor> cur(block_vals.size());
            std::function<void(size_t)> expand = [&](size_t i) {
                if (i == block_vals.size()) {
                    fn(cur);
                    return;
                }
                for (Mor m : block_vals[i]) {
                    cur[i] = m;
                    expand(i + 1);
                }
            };
            expand(0);
            return;
        }
        for (int next = pos + 1; next <= d; ++next) {
            Combo v = phi.eval(xs.subspan(static_cast<size_t>(pos), static_cast<size_t>(next - pos)));
            if (!v.empty()) {
                block_vals.push_back(std::move(v));
                rec(next);
                block_vals.pop_back();
            }
        }
    };
    rec(0);
}

} // namespace

ModCombo PullbackModule::act_raw(std::span<const Mor> xs, int end_obj, int u) const {
    ModCombo acc;
    int fe = phi_->map_obj(end_obj);
    for_each_block_image(*phi_, xs, [&](const std::vector<Mor>& blocks) {
        mod_xor_in(acc, n_->act(blocks, fe, u));
    });
    return acc;
}

/* ---- maps ---- */

SumMap::SumMap(std::vector<MapPtr> terms)
    : ModuleMap(terms.at(0)->src_ptr(), terms.at(0)->dst_ptr(), terms.at(0)->degree()),
      terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t->src_ptr().get() != src_.get() || t->dst_ptr().get() != dst_.get() ||
            t->degree() != deg_)
            throw Error(ErrKind::Internal, "SumMap: mismatched terms");
}

ModCombo SumMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    ModCombo acc;
    for (const auto& t : terms_)
        mod_xor_in(acc, t->component(xs, end_obj, u));
    return acc;
}

YonedaWordMap::YonedaWordMap(std::shared_ptr<const YonedaModule> src,
                             std::shared_ptr<const YonedaModule> dst, std::vector<Mor> word)
    : ModuleMap(src, dst, {0, 0}), ysrc_(std::move(src)), ydst_(std::move(dst)), word_(std::move(word)) {
    if (word_.empty())
        throw Error(ErrKind::Internal, "YonedaWordMap: empty word");
    const AinfCategory& c = ysrc_->cat();
    Bidegree s{1 - static_cast<int>(word_.size()), 0};
    for (Mor m : word_)
        s = s + c.deg_of(m);
    deg_ = s;
    if (c.src_of(word_.front()) != ysrc_->y() || c.dst_of(word_.back()) != ydst_->y())
        throw Error(ErrKind::ObjectMismatch, "YonedaWordMap: word endpoints do not match the modules");
}

ModCombo YonedaWordMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    const AinfCategory& c = ysrc_->cat();
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(ysrc_->mor_of(end_obj, u));
    seq.insert(seq.end(), word_.begin(), word_.end());
    Combo out = c.mu_eval(seq);
    int front = xs.empty() ? end_obj : c.src_of(xs.front());
    return ydst_->to_combo(front, out);
}

DiffMap::DiffMap(MapPtr t)
    : ModuleMap(t->src_ptr(), t->dst_ptr(), t->degree() + Bidegree{1, 0}), t_(std::move(t)) {}

ModCombo DiffMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    const AinfCategory& c = src_->cat();
    int d = static_cast<int>(xs.size());
    std::vector<int> objs(static_cast<size_t>(d) + 1);
    for (int k = 0; k < d; ++k)
        objs[static_cast<size_t>(k)] = c.src_of(xs[static_cast<size_t>(k)]);
    objs[static_cast<size_t>(d)] = end_obj;

    ModCombo acc;
    // (1) t(..., mu_C(run), ..., u)
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
            Combo inner = c.mu_eval(xs.subspan(static_cast<size_t>(i), static_cast<size_t>(j - i)));
            for (Mor m : inner) {
                std::vector<Mor> seq;
                seq.insert(seq.end(), xs.begin(), xs.begin() + i);
                seq.push_back(m);
                seq.insert(seq.end(), xs.begin() + j, xs.end());
                mod_xor_in(acc, t_->component(seq, end_obj, u));
            }
        }
    }
    // (2) t(x_0..x_{i-1}, mu_M1(x_i..x_{d-1}, u))
    for (int i = 0; i <= d; ++i) {
        ModCombo inner = t_->src().act(xs.subspan(static_cast<size_t>(i)), end_obj, u);
        if (inner.empty())
            continue;
        mod_xor_in(acc, t_->component_multi(xs.first(static_cast<size_t>(i)), objs[static_cast<size_t>(i)], inner));
    }
    // (3) mu_M2(x_0..x_{i-1}, t(x_i..x_{d-1}, u))
    for (int i = 0; i <= d; ++i) {
        ModCombo inner = t_->component(xs.subspan(static_cast<size_t>(i)), end_obj, u);
        if (inner.empty())
            continue;
        mod_xor_in(acc, t_->dst().act_multi(xs.first(static_cast<size_t>(i)), objs[static_cast<size_t>(i)], inner));
    }
    return acc;
}

ComposeMap::ComposeMap(MapPtr t1, MapPtr t2)
    : ModuleMap(t1->src_ptr(), t2->dst_ptr(), t1->degree() + t2->degree()), t1_(std::move(t1)),
      t2_(std::move(t2)) {
    if (t1_->dst_ptr().get() != t2_->src_ptr().get())
        throw Error(ErrKind::ObjectMismatch, "ComposeMap: middle modules differ");
}

ModCombo ComposeMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    const AinfCategory& c = src_->cat();
    int d = static_cast<int>(xs.size());
    ModCombo acc;
    for (int i = 0; i <= d; ++i) {
        ModCombo inner = t1_->component(xs.subspan(static_cast<size_t>(i)), end_obj, u);
        if (inner.empty())
            continue;
        int mid = i < d ? c.src_of(xs[static_cast<size_t>(i)]) : end_obj;
        mod_xor_in(acc, t2_->component_multi(xs.first(static_cast<size_t>(i)), mid, inner));
    }
    return acc;
}

PullbackMap::PullbackMap(std::shared_ptr<const AinfFunctor> phi, MapPtr t,
                         std::shared_ptr<const PullbackModule> src,
                         std::shared_ptr<const PullbackModule> dst)
    : ModuleMap(src, dst, t->degree()), phi_(std::move(phi)), t_(std::move(t)) {}

ModCombo PullbackMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    ModCombo acc;
    int fe = phi_->map_obj(end_obj);
    for_each_block_image(*phi_, xs, [&](const std::vector<Mor>& blocks) {
        mod_xor_in(acc, t_->component(blocks, fe, u));
    });
    return acc;
}

FunctorInducedMap::FunctorInducedMap(std::shared_ptr<const AinfFunctor> phi,
                                     std::shared_ptr<const YonedaModule> src,
                                     std::shared_ptr<const PullbackModule> dst)
    : ModuleMap(src, dst, {0, 0}), phi_(std::move(phi)), ysrc_(std::move(src)) {
    auto inner = dynamic_cast<const YonedaModule*>(&dynamic_cast<const PullbackModule&>(*dst_).inner());
    if (!inner)
        throw Error(ErrKind::Internal, "FunctorInducedMap: pullback must wrap a Yoneda module");
    ydst_ = std::shared_ptr<const YonedaModule>(dst_, inner);
    // keep alias of inner module alive through dst_
    if (inner->y() != phi_->map_obj(ysrc_->y()))
        throw Error(ErrKind::ObjectMismatch, "FunctorInducedMap: target module is not Phi^* D(-, Phi Y)");
}

ModCombo FunctorInducedMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(ysrc_->mor_of(end_obj, u));
    Combo out = phi_->eval(seq);
    int front = xs.empty() ? end_obj : ysrc_->cat().src_of(xs.front());
    return ydst_->to_combo(phi_->map_obj(front), out);
}

InjectMap::InjectMap(ModPtr part, std::shared_ptr<const DirectSumModule> sum, int index)
    : ModuleMap(std::move(part), sum, Bidegree{0, 0} - sum->shift(index)), sum_(std::move(sum)),
      index_(index) {
    if (sum_->part_ptr(index_).get() != src_.get())
        throw Error(ErrKind::Internal, "InjectMap: module is not that summand");
}

ModCombo InjectMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    if (!xs.empty())
        return {};
    return {sum_->to_global(end_obj, index_, u)};
}

ConeTargetInclusion::ConeTargetInclusion(ModPtr part, std::shared_ptr<const ConeModule> cone)
    : ModuleMap(std::move(part), cone, {0, 0}), cone_(std::move(cone)) {
    if (cone_->map().dst_ptr().get() != src_.get())
        throw Error(ErrKind::Internal, "ConeTargetInclusion: module is not the cone target");
}

ModCombo ConeTargetInclusion::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    if (!xs.empty())
        return {};
    return {cone_->to_global(end_obj, 1, u)};
}

BlockMap::BlockMap(std::shared_ptr<const DirectSumModule> src, std::shared_ptr<const DirectSumModule> dst,
                   std::map<std::pair<int, int>, MapPtr> blocks, Bidegree deg)
    : ModuleMap(src, dst, deg), ssrc_(std::move(src)), sdst_(std::move(dst)), blocks_(std::move(blocks)) {
    for (const auto& [ij, t] : blocks_) {
        if (ssrc_->part_ptr(ij.first).get() != t->src_ptr().get() ||
            sdst_->part_ptr(ij.second).get() != t->dst_ptr().get())
            throw Error(ErrKind::Internal, "BlockMap: block endpoints do not match the sums");
    }
}

ModCombo BlockMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = ssrc_->to_local(end_obj, u);
    ModCombo acc;
    int front = xs.empty() ? end_obj : src_->cat().src_of(xs.front());
    for (const auto& [ij, t] : blocks_) {
        if (ij.first != part)
            continue;
        ModCombo v = t->component(xs, end_obj, local);
        mod_xor_in(acc, sdst_->inject(front, ij.second, v));
    }
    return acc;
}

HomotopyConeMap::HomotopyConeMap(std::shared_ptr<const ConeModule> cone, MapPtr t2, MapPtr t2p, MapPtr h)
    : ModuleMap(cone, t2->dst_ptr(), {0, 0}), cone_(std::move(cone)), t2_(std::move(t2)),
      t2p_(std::move(t2p)), h_(std::move(h)) {}

ModCombo HomotopyConeMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = cone_->to_local(end_obj, u);
    if (part == 0)
        return h_->component(xs, end_obj, local);
    // target part is M2 (+) M2'
    auto sum = dynamic_cast<const DirectSumModule*>(&cone_->map().dst());
    if (!sum)
        throw Error(ErrKind::Internal, "HomotopyConeMap: cone target is not a two-part sum");
    auto [p2, l2] = sum->to_local(end_obj, local);
    return p2 == 0 ? t2_->component(xs, end_obj, l2) : t2p_->component(xs, end_obj, l2);
}

/* ---- operations ---- */

EvalMap::EvalMap(std::shared_ptr<const YonedaModule> src, ModPtr n, int v)
    : ModuleMap(src, n, {0, 0}), ysrc_(std::move(src)), n_(std::move(n)), v_(v) {
    int x = ysrc_->y();
    deg_ = n_->value(x)[static_cast<size_t>(v_)].deg;
}

ModCombo EvalMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(ysrc_->mor_of(end_obj, u));
    return n_->act(seq, ysrc_->y(), v_);
}

UnitInsertionHomotopy::UnitInsertionHomotopy(MapPtr phi, std::shared_ptr<const YonedaModule> src)
    : ModuleMap(src, phi->dst_ptr(), phi->degree() - Bidegree{1, 0}), phi_(std::move(phi)),
      ysrc_(std::move(src)) {
    if (phi_->src_ptr().get() != ysrc_.get())
        throw Error(ErrKind::Internal, "UnitInsertionHomotopy: map is not out of the Yoneda module");
}

ModCombo UnitInsertionHomotopy::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    Mor um = ysrc_->mor_of(end_obj, u);
    if (is_unit(um))
        return {}; // phi(.., e, e) vanishes for strictly unital phi
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(um);
    int x = ysrc_->y();
    int eidx = ysrc_->index_of(x, unit_of(x));
    return phi_->component(seq, x, eidx);
}

CurryMap::CurryMap(MapPtr t, std::shared_ptr<const YonedaModule> src, int v)
    : ModuleMap(src, t->dst_ptr(),
                t->degree() + t->src().value(src->y())[static_cast<size_t>(v)].deg - Bidegree{1, 0}),
      t_(std::move(t)), ysrc_(std::move(src)), v_(v) {}

ModCombo CurryMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    Mor um = ysrc_->mor_of(end_obj, u);
    if (is_unit(um))
        return {}; // components of strictly unital maps vanish on units
    std::vector<Mor> seq(xs.begin(), xs.end());
    seq.push_back(um);
    return t_->component(seq, ysrc_->y(), v_);
}

ConeShiftInclusion::ConeShiftInclusion(ModPtr part, std::shared_ptr<const ConeModule> cone,
                                       std::shared_ptr<const DirectSumModule> src_sum, int index)
    : ModuleMap(std::move(part), cone, {-1, 0}), cone_(std::move(cone)), sum_(std::move(src_sum)),
      index_(index) {
    if (cone_->map().src_ptr().get() != sum_.get())
        throw Error(ErrKind::Internal, "ConeShiftInclusion: sum is not the cone source");
    if (sum_->part_ptr(index_).get() != src_.get())
        throw Error(ErrKind::Internal, "ConeShiftInclusion: module is not that summand");
}

ModCombo ConeShiftInclusion::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    if (!xs.empty())
        return {};
    return cone_->inject(end_obj, 0, sum_->inject(end_obj, index_, {u}));
}

ConeCollapseMap::ConeCollapseMap(std::shared_ptr<const ConeModule> cone, MapPtr g, MapPtr h)
    : ModuleMap(cone, g->dst_ptr(), g->degree()), cone_(std::move(cone)), g_(std::move(g)),
      h_(std::move(h)) {}

ModCombo ConeCollapseMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = cone_->to_local(end_obj, u);
    if (part == 0)
        return h_ ? h_->component(xs, end_obj, local) : ModCombo{};
    return g_->component(xs, end_obj, local);
}

SumCollapseMap::SumCollapseMap(std::shared_ptr<const DirectSumModule> sum, std::vector<MapPtr> parts,
                               Bidegree deg)
    : ModuleMap(sum, parts.at(0)->dst_ptr(), deg), sum_(std::move(sum)), parts_(std::move(parts)) {
    for (const auto& p : parts_)
        if (p->dst_ptr().get() != dst_.get())
            throw Error(ErrKind::Internal, "SumCollapseMap: parts have different targets");
}

ModCombo SumCollapseMap::component_raw(std::span<const Mor> xs, int end_obj, int u) const {
    auto [part, local] = sum_->to_local(end_obj, u);
    return parts_[static_cast<size_t>(part)]->component(xs, end_obj, local);
}

MapPtr cone_collapse_map(std::shared_ptr<const ConeModule> cone, MapPtr g, MapPtr h, int check_arity) {
    MapPtr t = std::shared_ptr<const ModuleMap>(cone, &cone->map());
    auto comp = std::make_shared<ComposeMap>(t, g);
    MapPtr total;
    if (h) {
        auto dh = std::make_shared<DiffMap>(h);
        total = std::make_shared<SumMap>(std::vector<MapPtr>{dh, comp});
    } else {
        total = comp;
    }
    if (auto bad = find_nonzero(*total, check_arity))
        throw Error(ErrKind::NotAHomotopy,
                    "cone collapse: mu^1(h) != mu^2(cone map, g); residual on " + bad->describe(*cone));
    return std::make_shared<ConeCollapseMap>(cone, std::move(g), std::move(h));
}

std::string ModuleMapFailure::describe(const Module& m) const {
    std::ostringstream os;
    os << m.cat().describe_tuple(tuple) << " on value #" << u << " at object "
       << m.cat().objects[static_cast<size_t>(end_obj)].name;
    return os.str();
}

std::optional<ModuleMapFailure> find_nonzero(const ModuleMap& t, int max_arity) {
    const AinfCategory& c = t.src().cat();
    // arity 0
    for (int x = 0; x < static_cast<int>(c.objects.size()); ++x) {
        int n = static_cast<int>(t.src().value(x).size());
        for (int u = 0; u < n; ++u)
            if (!t.component({}, x, u).empty())
                return ModuleMapFailure{{}, x, u};
    }
    std::optional<ModuleMapFailure> res;
    for (int d = 1; d <= max_arity && !res; ++d) {
        for_each_composable(c, d, [&](const std::vector<Mor>& xs) {
            if (res)
                return;
            int end = c.dst_of(xs.back());
            int n = static_cast<int>(t.src().value(end).size());
            for (int u = 0; u < n && !res; ++u)
                if (!t.component(xs, end, u).empty())
                    res = ModuleMapFailure{xs, end, u};
        });
    }
    return res;
}

MapPtr module_differential(MapPtr t) { return std::make_shared<DiffMap>(std::move(t)); }

bool is_closed(const ModuleMap& t, int max_arity) {
    // wrap without ownership: build a DiffMap on a non-owning alias
    auto alias = std::shared_ptr<const ModuleMap>(&t, [](const ModuleMap*) {});
    DiffMap d(alias);
    return is_zero_map(d, max_arity);
}

std::shared_ptr<const ConeModule> cone_of_map(MapPtr t, int check_arity) {
    if (t->degree().c != 0 || t->degree().a < 0)
        throw Error(ErrKind::NotClosedDegreeZero,
                    "cone requires a map of bidegree (0, a >= 0), got " + t->degree().str());
    auto bad = find_nonzero(DiffMap(t), check_arity);
    if (bad)
        throw Error(ErrKind::NotClosed, "cone of a non-closed map; differential nonzero on " +
                                            bad->describe(t->src()));
    return std::make_shared<ConeModule>(std::move(t));
}

namespace {

class PairMap : public ModuleMap {
public:
    PairMap(MapPtr t, MapPtr tp, std::shared_ptr<const DirectSumModule> sum)
        : ModuleMap(t->src_ptr(), sum, t->degree()), t_(std::move(t)), tp_(std::move(tp)),
          sum_(std::move(sum)) {}

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override {
        int front = xs.empty() ? end_obj : src_->cat().src_of(xs.front());
        ModCombo acc = sum_->inject(front, 0, t_->component(xs, end_obj, u));
        ModCombo b = sum_->inject(front, 1, tp_->component(xs, end_obj, u));
        return xor_rows(acc, b);
    }

private:
    MapPtr t_, tp_;
    std::shared_ptr<const DirectSumModule> sum_;
};

} // namespace

std::shared_ptr<const ConeModule> cone_of_two_maps(MapPtr t, MapPtr tp, int check_arity) {
    if (t->src_ptr().get() != tp->src_ptr().get())
        throw Error(ErrKind::ObjectMismatch, "two-target cone requires a common source");
    if (t->degree() != tp->degree())
        throw Error(ErrKind::DegreeMismatch, "two-target cone requires maps of equal degree");
    auto sum = std::make_shared<DirectSumModule>(
        t->src().cat_ptr(), std::vector<ModPtr>{t->dst_ptr(), tp->dst_ptr()},
        std::vector<Bidegree>{{0, 0}, {0, 0}}, std::vector<std::string>{"L:", "R:"});
    auto pair = std::make_shared<PairMap>(t, tp, sum);
    return cone_of_map(pair, check_arity);
}

MapPtr homotopy_cone_map(MapPtr t1, MapPtr t2, MapPtr t1p, MapPtr t2p, MapPtr h,
                         std::shared_ptr<const ConeModule> cone, int check_arity) {
    // verify mu^1(h) = mu^2(t1,t2) + mu^2(t1',t2')
    auto lhs = std::make_shared<DiffMap>(h);
    auto r1 = std::make_shared<ComposeMap>(t1, t2);
    auto r2 = std::make_shared<ComposeMap>(t1p, t2p);
    auto total = std::make_shared<SumMap>(std::vector<MapPtr>{lhs, r1, r2});
    if (auto bad = find_nonzero(*total, check_arity))
        throw Error(ErrKind::NotAHomotopy,
                    "h is not a homotopy between the two composites; residual on " +
                        bad->describe(h->src()));
    auto th = std::make_shared<HomotopyConeMap>(cone, t2, t2p, h);
    return th;
}

std::optional<ModuleMapFailure> check_module(const Module& m, int max_arity) {
    const AinfCategory& c = m.cat();
    std::optional<ModuleMapFailure> res;
    auto test = [&](const std::vector<Mor>& xs, int end) {
        if (res)
            return;
        int d = static_cast<int>(xs.size());
        std::vector<int> objs(static_cast<size_t>(d) + 1);
        for (int k = 0; k < d; ++k)
            objs[static_cast<size_t>(k)] = c.src_of(xs[static_cast<size_t>(k)]);
        objs[static_cast<size_t>(d)] = end;
        int n = static_cast<int>(m.value(end).size());
        std::span<const Mor> sp(xs);
        for (int u = 0; u < n && !res; ++u) {
            ModCombo acc;
            // category insertions
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j <= d; ++j) {
                    Combo inner = c.mu_eval(sp.subspan(static_cast<size_t>(i), static_cast<size_t>(j - i)));
                    for (Mor mm : inner) {
                        std::vector<Mor> seq;
                        seq.insert(seq.end(), xs.begin(), xs.begin() + i);
                        seq.push_back(mm);
                        seq.insert(seq.end(), xs.begin() + j, xs.end());
                        mod_xor_in(acc, m.act(seq, end, u));
                    }
                }
            }
            // module tail absorptions
            for (int i = 0; i <= d; ++i) {
                ModCombo inner = m.act(sp.subspan(static_cast<size_t>(i)), end, u);
                if (inner.empty())
                    continue;
                mod_xor_in(acc, m.act_multi(sp.first(static_cast<size_t>(i)), objs[static_cast<size_t>(i)], inner));
            }
            if (!acc.empty())
                res = ModuleMapFailure{xs, end, u};
        }
    };
    for (int x = 0; x < static_cast<int>(c.objects.size()) && !res; ++x)
        test({}, x);
    for (int d = 1; d <= max_arity && !res; ++d)
        for_each_composable(c, d, [&](const std::vector<Mor>& xs) { test(xs, c.dst_of(xs.back())); });
    return res;
}

ChainComplex module_value_complex(const Module& m, int x) {
    ChainComplex cc;
    cc.total = true;
    const auto& vals = m.value(x);
    std::map<Bidegree, std::vector<int>> slices;
    for (int i = 0; i < static_cast<int>(vals.size()); ++i)
        slices[vals[static_cast<size_t>(i)].deg].push_back(i);
    std::map<int, std::pair<Bidegree, int>> pos; // value index -> (slice, position)
    for (const auto& [dg, v] : slices) {
        std::vector<std::string> labels;
        for (size_t i = 0; i < v.size(); ++i) {
            pos[v[i]] = {dg, static_cast<int>(i)};
            labels.push_back(vals[static_cast<size_t>(v[i])].label);
        }
        cc.basis[dg] = std::move(labels);
    }
    for (const auto& [dg, v] : slices) {
        Bidegree next{dg.c + 1, dg.a};
        auto nit = slices.find(next);
        F2Matrix mat(nit == slices.end() ? 0 : static_cast<int>(nit->second.size()),
                     static_cast<int>(v.size()));
        for (size_t j = 0; j < v.size(); ++j) {
            for (int o : m.act({}, x, v[j])) {
                auto [odg, opos] = pos.at(o);
                if (odg != next)
                    throw Error(ErrKind::DegreeMismatch,
                                "module differential not homogeneous at " + vals[static_cast<size_t>(v[j])].label +
                                    " -> " + vals[static_cast<size_t>(o)].label);
                mat.add_entry(opos, static_cast<int>(j));
            }
        }
        cc.diff[dg] = std::move(mat);
    }
    return cc;
}

std::map<Bidegree, F2Matrix> map_value_matrices(const ModuleMap& t, int x) {
    const auto& sv = t.src().value(x);
    const auto& dv = t.dst().value(x);
    std::map<Bidegree, std::vector<int>> sslices, dslices;
    for (int i = 0; i < static_cast<int>(sv.size()); ++i)
        sslices[sv[static_cast<size_t>(i)].deg].push_back(i);
    std::map<int, std::pair<Bidegree, int>> dpos;
    for (int i = 0; i < static_cast<int>(dv.size()); ++i) {
        auto& v = dslices[dv[static_cast<size_t>(i)].deg];
        dpos[i] = {dv[static_cast<size_t>(i)].deg, static_cast<int>(v.size())};
        v.push_back(i);
    }
    std::map<Bidegree, F2Matrix> out;
    for (const auto& [dg, v] : sslices) {
        Bidegree target = dg + t.degree();
        auto dit = dslices.find(target);
        F2Matrix mat(dit == dslices.end() ? 0 : static_cast<int>(dit->second.size()),
                     static_cast<int>(v.size()));
        for (size_t j = 0; j < v.size(); ++j) {
            for (int o : t.component({}, x, v[j])) {
                auto [odg, opos] = dpos.at(o);
                if (odg != target)
                    throw Error(ErrKind::DegreeMismatch, "map linear part not homogeneous");
                mat.add_entry(opos, static_cast<int>(j));
            }
        }
        out[dg] = std::move(mat);
    }
    return out;
}

} // namespace ainfty
