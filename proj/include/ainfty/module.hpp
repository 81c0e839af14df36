#ifndef AINFTY_MODULE_HPP
#define AINFTY_MODULE_HPP

#include "ainfty/core.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace ainfty {

struct ModValInfo {
    Bidegree deg;
    std::string label;
};

using ModCombo = std::vector<int>; // sorted value-basis indices

/* Left module over a finite A-infinity category presentation. Value spaces
 * are finite with explicit bases; the action mu_M(x_0,...,x_{d-1}, u) takes a
 * composable chain of category morphisms ending at the object carrying u.
 * Strict unitality is applied in act(): mu^2-type action of a unit is the
 * identity, any longer tuple containing a unit acts by zero. */
class Module {
public:
    virtual ~Module() = default;
    explicit Module(CatPtr cat) : cat_(std::move(cat)) {}

    const AinfCategory& cat() const { return *cat_; }
    CatPtr cat_ptr() const { return cat_; }

    virtual const std::vector<ModValInfo>& value(int x) const = 0;

    ModCombo act(std::span<const Mor> xs, int end_obj, int u) const;
    ModCombo act_multi(std::span<const Mor> xs, int end_obj, const ModCombo& us) const;

protected:
    virtual ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const = 0;
    CatPtr cat_;
};

using ModPtr = std::shared_ptr<const Module>;

/* Module map of a fixed degree with components t(x_0..x_{d-1}, u); d = 0 is
 * the linear part. Components containing a unit input vanish. */
class ModuleMap {
public:
    virtual ~ModuleMap() = default;
    ModuleMap(ModPtr src, ModPtr dst, Bidegree deg)
        : src_(std::move(src)), dst_(std::move(dst)), deg_(deg) {}

    const Module& src() const { return *src_; }
    const Module& dst() const { return *dst_; }
    ModPtr src_ptr() const { return src_; }
    ModPtr dst_ptr() const { return dst_; }
    Bidegree degree() const { return deg_; }

    ModCombo component(std::span<const Mor> xs, int end_obj, int u) const;
    ModCombo component_multi(std::span<const Mor> xs, int end_obj, const ModCombo& us) const;

protected:
    virtual ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const = 0;
    ModPtr src_, dst_;
    Bidegree deg_;
};

using MapPtr = std::shared_ptr<const ModuleMap>;

/* ---- concrete modules ---- */

// C(-, Y)
class YonedaModule : public Module {
public:
    YonedaModule(CatPtr cat, int y);
    const std::vector<ModValInfo>& value(int x) const override;
    int y() const { return y_; }
    Mor mor_of(int x, int idx) const { return elems_[static_cast<size_t>(x)][static_cast<size_t>(idx)]; }
    int index_of(int x, Mor m) const;
    ModCombo to_combo(int x, const Combo& c) const;

protected:
    ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    int y_;
    std::vector<std::vector<Mor>> elems_;
    std::vector<std::vector<ModValInfo>> infos_;
};

// finite direct sum, values concatenated in summand order
class DirectSumModule : public Module {
public:
    DirectSumModule(CatPtr cat, std::vector<ModPtr> parts, std::vector<Bidegree> shifts,
                    std::vector<std::string> tags);
    const std::vector<ModValInfo>& value(int x) const override;
    int part_count() const { return static_cast<int>(parts_.size()); }
    const Module& part(int i) const { return *parts_[static_cast<size_t>(i)]; }
    ModPtr part_ptr(int i) const { return parts_[static_cast<size_t>(i)]; }
    Bidegree shift(int i) const { return shifts_[static_cast<size_t>(i)]; }
    // translate (part, local index) <-> global index at object x
    int to_global(int x, int part, int local) const;
    std::pair<int, int> to_local(int x, int global) const;
    ModCombo inject(int x, int part, const ModCombo& local) const;

protected:
    ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::vector<ModPtr> parts_;
    std::vector<Bidegree> shifts_; // formal degree shift of each summand (labels only)
    std::vector<std::string> tags_;
    mutable std::mutex mtx_;
    mutable std::map<int, std::vector<ModValInfo>> cache_;
    mutable std::map<int, std::vector<int>> offsets_;
    void build(int x) const;
};

/* Cone(t : M1 -> M2) for a closed degree-0 map t: values M1(X)[1] (+) M2(X),
 * action twisted by t on the shifted part. Closedness of t is the caller's
 * responsibility (cone_of_map verifies it). */
class ConeModule : public Module {
public:
    explicit ConeModule(MapPtr t);
    const std::vector<ModValInfo>& value(int x) const override;
    const ModuleMap& map() const { return *t_; }
    // 0 = shifted source part, 1 = target part
    int to_global(int x, int part, int local) const;
    std::pair<int, int> to_local(int x, int global) const;
    ModCombo inject(int x, int part, const ModCombo& local) const;

protected:
    ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    MapPtr t_;
    mutable std::mutex mtx_;
    mutable std::map<int, std::vector<ModValInfo>> cache_;
    void build(int x) const;
};

// Phi^* N
class PullbackModule : public Module {
public:
    PullbackModule(std::shared_ptr<const struct AinfFunctor> phi, ModPtr n);
    const std::vector<ModValInfo>& value(int x) const override;
    const AinfFunctor& functor() const { return *phi_; }
    const Module& inner() const { return *n_; }

protected:
    ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const AinfFunctor> phi_;
    ModPtr n_;
};

/* ---- concrete maps ---- */

class ZeroMap : public ModuleMap {
public:
    ZeroMap(ModPtr s, ModPtr d, Bidegree deg) : ModuleMap(std::move(s), std::move(d), deg) {}

protected:
    ModCombo component_raw(std::span<const Mor>, int, int) const override { return {}; }
};

// strict identity
class IdentityMap : public ModuleMap {
public:
    explicit IdentityMap(ModPtr m) : ModuleMap(m, m, {0, 0}) {}

protected:
    ModCombo component_raw(std::span<const Mor> xs, int, int u) const override {
        return xs.empty() ? ModCombo{u} : ModCombo{};
    }
};

// F2 sum of maps with equal endpoints and degree
class SumMap : public ModuleMap {
public:
    SumMap(std::vector<MapPtr> terms);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::vector<MapPtr> terms_;
};

/* t_y for a word y = (y_0, ..., y_{p-1}) of composable morphisms from Y_0:
 * C(-, Y_0) -> C(-, Y_p), (xs, u) -> mu(xs, u, y_0, ..., y_{p-1}). */
class YonedaWordMap : public ModuleMap {
public:
    YonedaWordMap(std::shared_ptr<const YonedaModule> src, std::shared_ptr<const YonedaModule> dst,
                  std::vector<Mor> word);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const YonedaModule> ysrc_, ydst_;
    std::vector<Mor> word_;
};

// mu^1_Mod(t)
class DiffMap : public ModuleMap {
public:
    explicit DiffMap(MapPtr t);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    MapPtr t_;
};

// mu^2_Mod(t1, t2) : src(t1) -> dst(t2)
class ComposeMap : public ModuleMap {
public:
    ComposeMap(MapPtr t1, MapPtr t2);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    MapPtr t1_, t2_;
};

// Phi^* t for a map t of modules over the target of Phi
class PullbackMap : public ModuleMap {
public:
    PullbackMap(std::shared_ptr<const AinfFunctor> phi, MapPtr t,
                std::shared_ptr<const PullbackModule> src, std::shared_ptr<const PullbackModule> dst);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const AinfFunctor> phi_;
    MapPtr t_;
};

/* t_Phi : C(-, Y) -> Phi^* D(-, Phi Y), (xs, u) -> Phi(xs, u). The pullback
 * module must wrap the Yoneda module of Phi(Y). */
class FunctorInducedMap : public ModuleMap {
public:
    FunctorInducedMap(std::shared_ptr<const AinfFunctor> phi, std::shared_ptr<const YonedaModule> src,
                      std::shared_ptr<const PullbackModule> dst);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const AinfFunctor> phi_;
    std::shared_ptr<const YonedaModule> ysrc_;
    std::shared_ptr<const YonedaModule> ydst_; // inner module of the pullback
};

// inclusion of one summand of a DirectSumModule (strict)
class InjectMap : public ModuleMap {
public:
    InjectMap(ModPtr part, std::shared_ptr<const DirectSumModule> sum, int index);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const DirectSumModule> sum_;
    int index_;
};

// inclusion of the target part of a cone (strict)
class ConeTargetInclusion : public ModuleMap {
public:
    ConeTargetInclusion(ModPtr part, std::shared_ptr<const ConeModule> cone);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const ConeModule> cone_;
};

/* Block matrix map (+) M_i -> (+) N_j given components t_{ij}; missing
 * components are zero. */
class BlockMap : public ModuleMap {
public:
    BlockMap(std::shared_ptr<const DirectSumModule> src, std::shared_ptr<const DirectSumModule> dst,
             std::map<std::pair<int, int>, MapPtr> blocks, Bidegree deg);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const DirectSumModule> ssrc_, sdst_;
    std::map<std::pair<int, int>, MapPtr> blocks_;
};

/* t_h of the homotopy-square construction: given closed degree-0 maps
 * t2 : M2 -> M3, t2' : M2' -> M3 and a homotopy h : M1 -> M3 with
 * mu^1(h) = mu^2(t1,t2) + mu^2(t1',t2'), the map
 * Cone(M1 -> M2 (+) M2') -> M3, (xs, u1+u2+u2') -> h(xs,u1) + t2(xs,u2) + t2'(xs,u2'). */
class HomotopyConeMap : public ModuleMap {
public:
    HomotopyConeMap(std::shared_ptr<const ConeModule> cone, MapPtr t2, MapPtr t2p, MapPtr h);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const ConeModule> cone_;
    MapPtr t2_, t2p_, h_;
};

/* ev_v : C(-, X) -> N for a value v in N(X): (xs, u) -> mu_N(xs, u, v). The
 * Yoneda-lemma evaluation map; closed when v is a cycle, and
 * mu^1_Mod(ev_v) = ev_{dv} in general. */
class EvalMap : public ModuleMap {
public:
    EvalMap(std::shared_ptr<const YonedaModule> src, ModPtr n, int v);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const YonedaModule> ysrc_;
    ModPtr n_;
    int v_;
};

/* Unit-insertion homotopy of a closed map phi : C(-,X) -> N against its
 * Yoneda representative: h(xs, u) = phi(xs ++ [u], e_X); then
 * mu^1_Mod(h) = phi + ev_{phi(e_X)}. */
class UnitInsertionHomotopy : public ModuleMap {
public:
    UnitInsertionHomotopy(MapPtr phi, std::shared_ptr<const YonedaModule> src);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    MapPtr phi_;
    std::shared_ptr<const YonedaModule> ysrc_;
};

/* Curry of a map t : N -> N' against a value v in N(X):
 * k(xs, u) = t(xs ++ [u], v) as a map C(-,X) -> N'; for closed t,
 * mu^1_Mod(k) = mu^2(ev_v, t) + ev_{t(v)}. */
class CurryMap : public ModuleMap {
public:
    CurryMap(MapPtr t, std::shared_ptr<const YonedaModule> src, int v);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    MapPtr t_;
    std::shared_ptr<const YonedaModule> ysrc_;
    int v_;
};

/* Degree -1 inclusion of one shifted summand of a telescope-style cone:
 * sends u to the corresponding element of the shifted source part. */
class ConeShiftInclusion : public ModuleMap {
public:
    ConeShiftInclusion(ModPtr part, std::shared_ptr<const ConeModule> cone,
                       std::shared_ptr<const DirectSumModule> src_sum, int index);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const ConeModule> cone_;
    std::shared_ptr<const DirectSumModule> sum_;
    int index_;
};

/* Map out of a cone given g on the target part and a homotopy h on the
 * shifted source part: (xs, u0 (+) u1) -> h(xs, u0) + g(xs, u1). Closed when
 * mu^1(h) = mu^2(cone map, g); homotopy_cone_map and cone_collapse_map verify
 * this before constructing. */
class ConeCollapseMap : public ModuleMap {
public:
    ConeCollapseMap(std::shared_ptr<const ConeModule> cone, MapPtr g, MapPtr h);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const ConeModule> cone_;
    MapPtr g_, h_;
};

// sum -> N with one component per summand (no twisting)
class SumCollapseMap : public ModuleMap {
public:
    SumCollapseMap(std::shared_ptr<const DirectSumModule> sum, std::vector<MapPtr> parts, Bidegree deg);

protected:
    ModCombo component_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const DirectSumModule> sum_;
    std::vector<MapPtr> parts_;
};

/* ---- operations ---- */

struct ModuleMapFailure {
    std::vector<Mor> tuple;
    int end_obj = 0;
    int u = 0;
    std::string describe(const Module& m) const;
};

// first tuple where the map is nonzero, up to arity (exclusive of longer)
std::optional<ModuleMapFailure> find_nonzero(const ModuleMap& t, int max_arity);
inline bool is_zero_map(const ModuleMap& t, int max_arity) { return !find_nonzero(t, max_arity).has_value(); }

// mu^1_Mod(t) as a map object
MapPtr module_differential(MapPtr t);
bool is_closed(const ModuleMap& t, int max_arity);

/* Cone of a verified-closed degree-0 map, and the two-target variant. Throws
 * NotClosed when the differential of the map does not vanish up to
 * check_arity. */
std::shared_ptr<const ConeModule> cone_of_map(MapPtr t, int check_arity);
std::shared_ptr<const ConeModule> cone_of_two_maps(MapPtr t, MapPtr tp, int check_arity);

/* Verifies mu^1(h) = mu^2(t1,t2) + mu^2(t1',t2') up to check_arity, then
 * builds the induced closed map t_h on cone_of_two_maps(t1, t1'). Throws
 * NotAHomotopy. */
MapPtr homotopy_cone_map(MapPtr t1, MapPtr t2, MapPtr t1p, MapPtr t2p, MapPtr h,
                         std::shared_ptr<const ConeModule> cone, int check_arity);

/* Verifies mu^1(h) = mu^2(cone map, g) up to check_arity and builds the
 * collapse map (xs, u0+u1) -> h(xs,u0) + g(xs,u1). Throws NotAHomotopy. */
MapPtr cone_collapse_map(std::shared_ptr<const ConeModule> cone, MapPtr g, MapPtr h, int check_arity);

// module relation check: mu_M relations on all tuples up to max_arity
std::optional<ModuleMapFailure> check_module(const Module& m, int max_arity);

// value complex M(X) as a finite chain complex
ChainComplex module_value_complex(const Module& m, int x);

/* Matrix of the degree-0 linear part of t on values at x, per bidegree:
 * rows = dst slice, cols = src slice. */
std::map<Bidegree, F2Matrix> map_value_matrices(const ModuleMap& t, int x);

} // namespace ainfty

#endif
