#ifndef AINFTY_FUNCTOR_HPP
#define AINFTY_FUNCTOR_HPP

#include "ainfty/core.hpp"

#include <optional>

namespace ainfty {

struct FunctorFailure {
    int arity = 0;
    std::vector<Mor> tuple;
    Combo residual;
};

/* A-infinity functor between finite presentations. Components are stored on
 * tuples of non-unit basis morphisms; strict unitality is hard-coded:
 * F^1(e_X) = e_{F X} and any component of arity >= 2 with a unit input
 * vanishes. A strict functor has no components of arity >= 2. */
struct AinfFunctor {
    std::string name = "F";
    CatPtr src;
    CatPtr dst;
    std::vector<int> obj_map;                // source object -> target object
    std::map<std::vector<Mor>, Combo> comps; // arity = key size
    bool strict = true;
    int max_comp_arity = 1;

    void add_comp(std::vector<Mor> in, Combo out);
    void finalize(); // degree/endpoint validation

    int map_obj(int x) const { return obj_map[static_cast<size_t>(x)]; }
    // F^d on a tuple; strict unitality applied
    Combo eval(std::span<const Mor> in) const;
    Combo eval_multi(std::span<const Combo> in) const;
};

/* Functor equation up to max_arity: for every composable tuple,
 *   sum_{i<j} F(..., mu(x_i..x_{j-1}), ...) =
 *   sum_{partitions} mu_dst(F(block_1), ..., F(block_r)).
 * Returns the first failing tuple if any. */
std::optional<FunctorFailure> check_functor(const AinfFunctor& f, int max_arity);

// sum over partitions of the tuple into consecutive nonempty blocks of
// mu_dst(F(block_1), ..., F(block_r)); d = 1 gives F^1 only when... (see impl)
Combo functor_block_sum(const AinfFunctor& f, std::span<const Mor> in);

/* Composite G after F, materialized up to arity_cap. Throws ObjectMismatch
 * if the categories do not line up. */
AinfFunctor compose_functors(const AinfFunctor& f, const AinfFunctor& g, int arity_cap);

// identity and strict functors
AinfFunctor identity_functor(CatPtr c);

/* Same components over collapsed source/target presentations (generator
 * indices are preserved by collapse_grading). */
AinfFunctor collapse_functor(const AinfFunctor& f, CatPtr src_collapsed, CatPtr dst_collapsed);
AinfFunctor strict_functor(std::string name, CatPtr src, CatPtr dst, std::vector<int> obj_map,
                           std::map<Mor, Combo> on_gens);

/* Adjunction lift: for psi_m : C_m -> D and C Adams-graded concentrated in
 * non-negative Adams degree, the functor C -> F[t_m] (x) D sending a tuple to
 * t^(total Adams) (x) psi_m(tuple). `pt` must be poly_tensor(D, m, cap) with
 * a cap at least the largest total Adams degree of a nonzero component.
 * Throws NegativeAdamsDegree. */
AinfFunctor adjunction_lift(const AinfFunctor& psi_m, CatPtr c_graded, CatPtr pt, int m);

/* Homotopy between two functors with equal object maps: components T^d of
 * degree -d (cohomological degree sum + 1 - d - 1, i.e. output degree =
 * sum(deg) - d... stored and checked on tuples). */
struct FunctorHomotopy {
    const AinfFunctor* from = nullptr; // Phi
    const AinfFunctor* to = nullptr;   // Psi
    std::map<std::vector<Mor>, Combo> comps;
    Combo eval(std::span<const Mor> in) const;
};

/* Check Phi + Psi = sum T(..., mu(...), ...)
 *                 + sum mu(Phi(...), ..., Phi(...), T(...), Psi(...), ..., Psi(...))
 * on all composable tuples up to max_arity. */
std::optional<FunctorFailure> check_homotopy(const FunctorHomotopy& h, int max_arity);

} // namespace ainfty

#endif
