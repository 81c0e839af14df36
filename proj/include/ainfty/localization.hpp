#ifndef AINFTY_LOCALIZATION_HPP
#define AINFTY_LOCALIZATION_HPP

#include "ainfty/module.hpp"

namespace ainfty {

/* Base category with formal cone objects Cone(w) adjoined for a set W of
 * closed degree-(0, a>=0) morphisms. Hom spaces involving cones are
 * component-resolved length-2 twisted complexes; the extended category is
 * materialized with its full mu table.
 *
 * Slot conventions: a cone of w : X -> Y has slot 0 = X[1] (shift sigma = 1,
 * Adams offset -adams(w)) and slot 1 = Y. A component morphism from slot s
 * to slot t of base degree (c,a) has extended bidegree
 * (c + sigma_s - sigma_t, a + alpha_s - alpha_t). The diagonal unit
 * component on slot 1 of a cone endomorphism space is rewritten as
 * unit(cone) + z where z is the slot-0 diagonal unit component. */
struct ExtCategory {
    CatPtr base;
    CatPtr ext;

    struct ConeData {
        Mor w;
        int src, dst; // base objects
        int adams;    // Adams degree of w
        int obj;      // ext object index
    };
    std::vector<ConeData> cones;

    struct GenSlot {
        int front_obj, front_slot; // ext object, slot (-1 plain)
        int end_obj, end_slot;
        Mor base_m;
    };
    std::vector<GenSlot> slots; // per ext gen
    std::map<std::tuple<int, int, int, int, Mor>, int> gen_index;

    int n_base_objects = 0;
    std::vector<int> cone_of_obj; // ext object -> cone index or -1

    int cone_obj_of(Mor w) const;
    bool is_cone_obj(int ext_obj) const { return cone_of_obj[static_cast<size_t>(ext_obj)] >= 0; }
    // base object sitting at a slot of an ext object
    int slot_base_obj(int ext_obj, int slot) const;
    // ext morphism combo for a base combo placed at given slots; applies the
    // diagonal rewrite
    Combo ext_combo(int front_obj, int front_slot, int end_obj, int end_slot, const Combo& base) const;
};

/* Adjoin cones for each w in ws. Verifies each w is mu^1-closed of bidegree
 * (0, a >= 0). mu_arity_cap bounds the arity of materialized ext mu entries
 * (base max arity is the natural choice). */
ExtCategory adjoin_cones(CatPtr base, const std::vector<Mor>& ws, int mu_arity_cap);

/* Module over the extended category wrapping a module over the base:
 * values at Cone(w : X->Y) are M(Y)[1] (+) M(X) (part 0 shifted, with Adams
 * offset +adams(w)); the action resolves components and inserts w at
 * slot-(0)/part-(0) junctions. */
class ExtendedModule : public Module {
public:
    ExtendedModule(std::shared_ptr<const ExtCategory> ext, ModPtr base_mod);
    const std::vector<ModValInfo>& value(int x) const override;
    // part 0 = M(dst w) shifted, part 1 = M(src w); plain objects: part 1
    std::pair<int, int> to_local(int ext_obj, int global) const;
    int to_global(int ext_obj, int part, int local) const;

protected:
    ModCombo act_raw(std::span<const Mor> xs, int end_obj, int u) const override;

private:
    std::shared_ptr<const ExtCategory> extc_;
    ModPtr base_;
    mutable std::mutex mtx_;
    mutable std::map<int, std::vector<ModValInfo>> cache_;
    void build(int x) const;
};

enum class CertKind { Exact, Stabilized, Truncated };

struct Certificate {
    CertKind kind = CertKind::Truncated;
    int cap = 0;         // word-length cap used
    int stable_from = 0; // first cap of the stable run (Stabilized only)
    std::string str() const;
};

/* Word complex of the quotient of `target` by the cone objects, at ext
 * object x: basis (l_1[1] (x) ... (x) l_p[1] (x) u) with letters running
 * through cone objects, materialized on the window plus one cohomological
 * margin on each side, with words of length <= cap. Betti numbers of each
 * length-truncation are recorded for stabilization analysis. */
struct WordComplex {
    ChainComplex cc;
    Certificate cert;
    BettiTable betti;                     // at full cap, window cells
    std::vector<BettiTable> betti_by_len; // index = length cap 0..cap
    // smallest k such that the cell value is constant on [k, cap]; cap+1
    // when the final value only appears at the last length
    std::map<Bidegree, int> cell_stable_from;
    bool cell_stable(Bidegree d, int margin = 2) const {
        auto it = cell_stable_from.find(d);
        return it != cell_stable_from.end() && it->second + margin <= cert.cap;
    }
    long word_count = 0;
};

/* killed: ext object indices to quotient by (the cone objects for a
 * localization; possibly plain objects for a subcategory quotient). */
WordComplex quotient_word_complex(const std::shared_ptr<const ExtCategory>& ext,
                                  const std::vector<int>& killed, const ModPtr& target, int x,
                                  const BidegreeWindow& window, int cap);

/* Quotient hom complex C/A(x, y) for a full subcategory A given by base
 * object indices; Exact certificate when the letter degrees bound the word
 * length inside the window, else stabilization/truncation as for localized
 * homs. */
WordComplex quotient_hom_complex(CatPtr base, const std::vector<int>& a_objects, int x, int y,
                                 const BidegreeWindow& window, int cap);

/* Localization presentation: a base category, the killed set W, the
 * extension with cones, and cap policy. */
struct LocalizationPresentation {
    std::shared_ptr<const ExtCategory> ext;
    std::vector<Mor> ws;
    int cap_initial = 6;
    int cap_max = 14;
};

LocalizationPresentation make_localization(CatPtr base, std::vector<Mor> ws, int mu_arity_cap);

/* Localized hom complex C[W^-1](x, y) with certificate: Exact when the word
 * length is provably bounded inside the window, otherwise stabilized by
 * three consecutive length caps. Throws NoStabilization when cap_max is
 * reached without a stable run. */
WordComplex localized_hom(const LocalizationPresentation& lp, int x, int y, const BidegreeWindow& window);

// as localized_hom, but returns the last truncation instead of throwing
// NoStabilization when cap_max is reached
WordComplex localized_hom_try(const LocalizationPresentation& lp, int x, int y,
                              const BidegreeWindow& window);
WordComplex localized_module_value_try(const LocalizationPresentation& lp, const ModPtr& base_mod,
                                       int x, const BidegreeWindow& window);

// same, for a module over the base category in place of the Yoneda module
WordComplex localized_module_value(const LocalizationPresentation& lp, const ModPtr& base_mod, int x,
                                   const BidegreeWindow& window);

/* Telescope module M_A over a (collapsed) category with a Z-splitting: the
 * iterated cone over n in [lo, hi] of identity and c_n-multiplication edges,
 * with the shifted row truncated at hi - 1. Returns the module, the ambient
 * structures, and the inclusion maps t_A^n. */
struct TelescopeData {
    std::shared_ptr<const ConeModule> module;
    std::vector<std::shared_ptr<const YonedaModule>> yonedas; // per n, index n - lo
    std::vector<MapPtr> inclusions;                           // t_A^n, per n
    int lo = 0, hi = 0;
    std::string label;
};

/* c_family[n - lo] is the closed degree-0 morphism X^n -> X^{n+1} (last row
 * hi has none). Objects are the level-n objects of one label. */
TelescopeData build_telescope(CatPtr cat, const std::vector<int>& level_objects,
                              const std::vector<Mor>& c_family, int check_arity);

/* Telescope oracle: verifies the multiplication hypotheses
 * mu^2(-, c_j) and mu^2(c_j, -) are quasi-isomorphisms on the window and
 * returns the Betti table of M_A(x). Throws HypothesisFailed. */
BettiTable telescope_oracle(CatPtr cat, const std::vector<int>& level_objects,
                            const std::vector<Mor>& c_family, int x, const BidegreeWindow& window,
                            int check_arity);

/* Chain-map quasi-isomorphism test: f a degree-(0,0) chain map given by its
 * value matrices per bidegree between two total complexes; checked via
 * acyclicity of the mapping cone on the window. */
bool chain_map_is_qiso(const ChainComplex& src, const ChainComplex& dst,
                       const std::map<Bidegree, F2Matrix>& f, const BidegreeWindow& window);

// mapping cone of a chain map as a complex (cone = src[1] (+) dst)
ChainComplex mapping_cone_complex(const ChainComplex& src, const ChainComplex& dst,
                                  const std::map<Bidegree, F2Matrix>& f);

} // namespace ainfty

#endif
