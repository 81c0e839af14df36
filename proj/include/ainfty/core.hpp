#ifndef AINFTY_CORE_HPP
#define AINFTY_CORE_HPP

#include "ainfty/complex.hpp"
#include "ainfty/errors.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ainfty {

/* Morphism encoding: a non-negative value g is the basis morphism with index
 * g; the value -1-x is the (implicit, strict) unit of object x. */
using Mor = int;
inline Mor unit_of(int obj) { return -1 - obj; }
inline bool is_unit(Mor m) { return m < 0; }
inline int unit_obj(Mor m) { return -1 - m; }

/* F2 combination of morphisms: sorted, duplicate-free. Sum is symmetric
 * difference. */
using Combo = std::vector<Mor>;
Combo combo_add(const Combo& x, const Combo& y);
void combo_xor_in(Combo& acc, const Combo& x);
void combo_xor_one(Combo& acc, Mor m);

struct SplitKey {
    int level = 0;
    std::string label;
};

struct Object {
    std::string name;
    std::optional<SplitKey> split;
};

struct Gen {
    std::string id;
    int src = 0;
    int dst = 0;
    Bidegree deg;
};

struct RelationFailure {
    int arity = 0;
    std::vector<Mor> tuple;
    Combo residual;
    std::string describe(const struct AinfCategory& cat) const;
};

/* Finite presentation of a strictly unital Adams-bigraded A-infinity
 * category. Units are implicit: they are never stored in `gens` and the
 * stored mu table has only non-unit inputs. Outputs may contain units.
 * Immutable after construction (treat as const once built). */
struct AinfCategory {
    std::string name = "cat";
    std::vector<Object> objects;
    std::vector<Gen> gens;
    // (src,dst) -> gen indices, ascending
    std::map<std::pair<int, int>, std::vector<int>> homs;
    // input tuple (non-unit gens) -> output combo
    std::map<std::vector<Mor>, Combo> mu;
    int max_mu_arity = 0;
    bool shift_equivariant = false;
    bool collapsed = false; // Adams grading forgotten (everything in a = 0)
    std::optional<std::pair<int, int>> window; // level range when split objects are used
    // level-shift relabeling of generators (partial: top-level gens absent);
    // present when shift_equivariant
    std::map<Mor, Mor> shift_map;

    int add_object(Object o);
    int add_gen(Gen g);
    void add_mu(std::vector<Mor> in, Combo out); // xors into any existing entry
    void finalize(); // rebuild homs index, validate composability/degrees

    bool has_split() const { return !objects.empty() && objects[0].split.has_value(); }
    int object_index(const std::string& name) const; // -1 if absent
    int gen_index(const std::string& id) const;      // -1 if absent

    int src_of(Mor m) const { return is_unit(m) ? unit_obj(m) : gens[static_cast<size_t>(m)].src; }
    int dst_of(Mor m) const { return is_unit(m) ? unit_obj(m) : gens[static_cast<size_t>(m)].dst; }
    Bidegree deg_of(Mor m) const { return is_unit(m) ? Bidegree{0, 0} : gens[static_cast<size_t>(m)].deg; }
    std::string mor_name(Mor m) const;

    const std::vector<int>& hom(int x, int y) const;

    /* Evaluate mu on a composable tuple with strict unitality: mu^2 with one
     * unit input returns the other input, any other tuple containing a unit
     * gives zero, otherwise the stored table is used (absent = zero). */
    Combo mu_eval(std::span<const Mor> in) const;
    // mu applied to a combination in one slot: linear extension
    Combo mu_eval_multi(std::span<const Combo> in) const;

    // expected output degree of mu^d on this tuple: sum deg + (2-d, 0)
    Bidegree mu_out_deg(std::span<const Mor> in) const;

    /* Hom complex C(x,y) with differential mu^1, as a finite (total) chain
     * complex. */
    ChainComplex hom_complex(int x, int y) const;

    std::string describe_tuple(std::span<const Mor> in) const;
};

using CatPtr = std::shared_ptr<const AinfCategory>;

/* A-infinity relation check: for every composable tuple of basis morphisms
 * of arity d <= max_arity, the F2 sum of all (i,j) insertions must vanish.
 * Returns the first failing instance if any. */
std::optional<RelationFailure> check_relations(const AinfCategory& cat, int max_arity);

// default arity used by pipelines and the CLI: max mu arity + 2, at least 3
int default_check_arity(const AinfCategory& cat);

// enumerate all composable tuples of non-unit basis morphisms, by arity
void for_each_composable(const AinfCategory& cat, int arity,
                         const std::function<void(const std::vector<Mor>&)>& fn);

/* Change of grading: bidegree (p,k) becomes single degree p - m*k. Objects
 * and mu entries are unchanged. */
AinfCategory collapse_grading(const AinfCategory& cat, int m);

/* F[t_m] (x) D for a single-graded D: basis t^k (x) y for 0 <= k <= adams_cap
 * (including t^k (x) unit for k >= 1), mu multiplies the t-powers. */
AinfCategory poly_tensor(const AinfCategory& d, int m, int adams_cap);

// generator index of t^k (x) y in a poly_tensor output (y may be a unit)
Mor poly_tensor_gen(const AinfCategory& pt, const AinfCategory& d, int k, Mor y);

} // namespace ainfty

#endif
