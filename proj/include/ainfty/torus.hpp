#ifndef AINFTY_TORUS_HPP
#define AINFTY_TORUS_HPP

#include "ainfty/bimodule.hpp"
#include "ainfty/localization.hpp"

namespace ainfty {

using FunPtr = std::shared_ptr<const AinfFunctor>;

/* Disjoint union of two categories, with embeddings. */
struct DisjointUnion {
    CatPtr cat;
    std::vector<int> left_obj, right_obj;  // embeddings of object indices
    std::vector<Mor> left_gen, right_gen;  // embeddings of gens
};
DisjointUnion disjoint_union(const CatPtr& a, const CatPtr& b, const std::string& ltag,
                             const std::string& rtag);

// functor out of a disjoint union assembled from functors on the two halves
AinfFunctor union_functor(const DisjointUnion& u, const AinfFunctor& f, const AinfFunctor& g,
                          const std::string& name);

/* Full subcategory on a subset of objects (gens and mu restricted). */
struct Subcategory {
    CatPtr cat;
    std::vector<int> obj_of_parent; // subcat object -> parent object
    std::vector<int> parent_to_sub; // parent object -> subcat object or -1
    std::vector<Mor> gen_of_parent; // subcat gen -> parent gen
    FunPtr inclusion;               // strict inclusion functor
};
Subcategory full_subcategory(const CatPtr& cat, const std::vector<int>& objects, const std::string& name);

struct PushoutDiagram {
    FunPtr phi1; // C -> D1
    FunPtr phi2; // C -> D2
};

/* Grothendieck construction of C -> D1, C -> D2. Objects: apex then D1 then
 * D2; cross homs from apex objects X to D_i objects Y are copies of
 * D_i(Phi_i X, Y), including the adjacent unit when Phi_i X = Y. */
struct Grothendieck {
    CatPtr cat;
    PushoutDiagram diagram;
    std::vector<int> apex_obj, d1_obj, d2_obj; // embeddings
    std::vector<Mor> apex_gen, d1_gen, d2_gen;
    // cross morphism of zone i in G(apex x, Y): base D_i morphism (or unit)
    std::map<std::tuple<int, int, Mor>, Mor> cross; // (i, apex obj, D_i mor) -> G gen
    std::vector<Mor> adj1, adj2;                    // adjacent units per apex object

    std::vector<Mor> adjacent_units() const;
    FunPtr incl_d1, incl_d2; // strict inclusions D_i -> G
};
Grothendieck grothendieck(const PushoutDiagram& d, int mu_arity_cap = 0);

/* sigma : G -> E induced by a strictly commuting square psi1 Phi1 = psi2 Phi2.
 * Throws SquareNotCommuting if the composites differ structurally. */
AinfFunctor induced_square_functor(const Grothendieck& g, const AinfFunctor& psi1,
                                   const AinfFunctor& psi2, int arity_cap);

/* Cylinder object of A: the Grothendieck construction of id, id : A -> A_top,
 * A_bot with apex A_I, its adjacent units W_C, the three inclusions and the
 * projection pi : C -> A. */
struct Cylinder {
    Grothendieck g;
    FunPtr iota_bot, iota_i, iota_top;
    FunPtr pi;
    std::vector<Mor> w_c;
};
Cylinder cylinder(const CatPtr& a, int mu_arity_cap = 0);

/* kappa : G0 -> G1 for Grothendieck constructions of homotopic legs
 * (identity on all zones, homotopy correction on mixed sequences). */
AinfFunctor homotopic_diagram_functor(const Grothendieck& g0, const Grothendieck& g1,
                                      const FunctorHomotopy& t1, const FunctorHomotopy& t2,
                                      int arity_cap);

/* ---- splitting utilities ---- */

struct SplitInfo {
    int lo = 0, hi = 0;
    std::vector<std::string> labels;
    // object index by (level, label position)
    int object(int level, int label) const;
    const AinfCategory* cat = nullptr;
};
SplitInfo split_info(const AinfCategory& cat);

/* The canonical shift functor of a shift-equivariant split presentation:
 * X^n(E) -> X^{n+1}(E) on objects, the declared shift map on generators.
 * Defined on the full category; generators without a shift image make it
 * partial (validate_shift_functor restricts the window accordingly). */
AinfFunctor canonical_shift_functor(const CatPtr& a);

/* The shift quasi-autoequivalence check: tau strict, object map sends
 * X^n(E) to X^{n+1}(E) (defined on levels lo..hi-1 of the restricted
 * subcategory). Validation helper for pipelines. */
struct ShiftData {
    Subcategory restricted;       // A on levels [lo, hi-1]
    FunPtr tau;                   // restricted -> A
    std::map<Mor, Combo> tau_inv; // inverse on generators per hom space
};
ShiftData validate_shift_functor(const CatPtr& a, const AinfFunctor& tau_full,
                                 bool need_inverse = true);

/* Coinvariant category A_tau: objects are the labels, morphism classes are
 * represented by source-level-0 generators, operations induced by lifting.
 * Throws NotStrict / NotBijectiveOnHoms / IllDefinedInducedOp. */
struct Coinvariants {
    CatPtr cat;                 // A_tau
    std::map<Mor, Combo> cls;   // A gen -> class combo in A_tau
    std::vector<int> label_obj; // label position -> A_tau object
};
Coinvariants coinvariants(const CatPtr& a, const AinfFunctor& tau, int check_arity);

/* ---- the category G of the mapping torus, and its modules ---- */

struct TorusG {
    CatPtr a;              // the input category
    AinfFunctor tau;       // shift functor (on the restricted window)
    Cylinder cyl;          // cylinder of A
    DisjointUnion apex;    // A_- u A_+ (restricted windows)
    Grothendieck g;        // the enlarged Grothendieck construction
    std::vector<Mor> w_g;  // W_G = W_C u adjacent units of G
    // zone object lookup: zone in {-, +, bullet, bot, i, top}, level, label
    enum Zone { Minus = 0, Plus, Bullet, Bot, I, Top };
    int object(Zone z, int level, int label) const;
    SplitInfo split; // of A

    std::vector<int> minus_obj, plus_obj; // per restricted object index
    std::vector<int> restricted_obj_of_level_; // restricted object -> parent object
};
TorusG build_torus_g(const CatPtr& a, const AinfFunctor& tau_full);

/* The module M_G over the collapsed G (single graded), assembled as the
 * iterated cone of the adjacency-unit edges, together with the inclusion
 * t_G of G(-, X_bullet^0(E)) and the M_star^n submodules. */
struct ModuleG {
    CatPtr g0; // collapse of G
    std::shared_ptr<const ConeModule> m_g;
    std::vector<std::shared_ptr<const ConeModule>> m_star; // per level of the I row
    MapPtr t_g;                                            // inclusion at X_bullet^0(E_label)
    std::vector<std::shared_ptr<const YonedaModule>> bullet_yonedas; // per level
    int e_label = 0;
};
ModuleG build_module_g(const TorusG& tg, int e_label, int check_arity);

/* ---- reports ---- */

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TorusReport {
    std::string theorem; // "A" or "B"
    BidegreeWindow window;
    std::vector<CheckLine> checks;
    // per object pair (labelled) the two Betti tables
    struct TablePair {
        std::string name;
        BettiTable lhs, rhs; // H side / oracle side
        Certificate cert;
    };
    std::vector<TablePair> tables;
    bool pass = false;
    std::string fail_reason;
};

struct TorusOptions {
    int adams_lo = 0, adams_hi = 4; // inspected Adams range
    int c_lo = 0, c_hi = 0;         // inspected cohomological range
    int cap_initial = 6, cap_max = 14;
    int check_arity = 0; // 0 = per-category default
    bool run_module_checks = true;
};

TorusReport verify_thm_a(const CatPtr& a, const AinfFunctor& tau_full, const TorusOptions& opt);
TorusReport verify_thm_b(const CatPtr& a, const AinfFunctor& tau_full, const BimoduleMap& f, int m,
                         const TorusOptions& opt);

/* MT(tau) as a localization presentation (the enlarged model H = G[W_G^-1]);
 * reports Betti tables of End(X_bullet^0(E)) over the window. */
struct MappingTorus {
    TorusG tg;
    LocalizationPresentation h;
};
MappingTorus mapping_torus(const CatPtr& a, const AinfFunctor& tau_full, int cap_initial = 6,
                           int cap_max = 14);

// acyclicity of M(Cone w) as a mapping cone of value complexes, on a window
bool module_cone_value_acyclic_public(const Module& m, Mor w, const BidegreeWindow& win);

} // namespace ainfty

#endif
