#ifndef AINFTY_DUALITY_HPP
#define AINFTY_DUALITY_HPP

#include "ainfty/core.hpp"

namespace ainfty {

/* Finite presentation of a coaugmented A-infinity cocategory: generators of
 * the coaugmentation coideal with cooperations delta^d given as sums of
 * composable words (length-1 words are the differential part). */
struct AinfCocategory {
    std::string name = "cocat";
    std::vector<Object> objects;
    std::vector<Gen> gens;
    std::map<Mor, std::vector<std::vector<Mor>>> coop;

    int add_object(Object o);
    int add_gen(Gen g);
    void add_coop(Mor g, std::vector<Mor> word);
    void finalize(); // composability / degree checks

    int object_index(const std::string& name) const;
    int gen_index(const std::string& id) const;

    // co-A-infinity relation: sum (1 (x) delta (x) 1) o delta = 0 per generator
    std::optional<std::string> check_corelations() const;

    // underlying chain complex (differential = length-1 coop terms)
    ChainComplex underlying_complex() const;
};

AinfCocategory parse_copresentation(const std::string& text);
AinfCocategory load_copresentation(const std::string& path);
std::string print_copresentation(const AinfCocategory& c);

/* Augmentation: a degree-0 DG-functor to the semisimple base, recorded by
 * its values on generators (epsilon of a generator is 0 or 1; 1 only makes
 * sense on degree-(0,0) endomorphisms). Default: trivial (all zero). */
struct Augmentation {
    std::map<Mor, bool> values;
    bool of(Mor m) const {
        auto it = values.find(m);
        return it != values.end() && it->second;
    }
};

// checks epsilon is compatible with mu^1 and mu^2 (DG-functor onto the base)
std::optional<std::string> check_augmentation(const AinfCategory& a, const Augmentation& eps);

/* Reduced bar construction of an augmented category, truncated at
 * |Adams| <= adams_cap: generators are composable words of augmentation-ideal
 * letters, delta^1 is the insertion differential, delta^2 the deconcatenation.
 * Requires the ideal generators to have sign-uniform nonzero Adams degree
 * (Adams connected, possibly mirrored); throws NotAdamsConnected. */
AinfCocategory bar(const AinfCategory& a, const Augmentation& eps, int adams_cap);

// the bar chain complex including the empty words (one per object at (0,0))
ChainComplex bar_complex(const AinfCocategory& b);

/* Cobar construction of a cocategory, truncated at |Adams| <= adams_cap: the
 * free DG category on shifted coideal letters with the Leibniz differential.
 * Products that leave the cap are truncated away (a bigraded ideal). */
AinfCategory cobar(const AinfCocategory& c, int adams_cap);

/* Graded duals: bidegrees negate, structure maps transpose. */
AinfCategory dual_of_cocategory(const AinfCocategory& c);
AinfCocategory dual_of_category(const AinfCategory& a);

/* Koszul dual E(A) = dual(bar(A)). */
AinfCategory koszul_E(const AinfCategory& a, const Augmentation& eps, int adams_cap);

/* Dimension-table comparison of H(B(Omega C)) against H(C) through the cap.
 * Returns the two tables and the verdict. */
struct BarCobarReport {
    BettiTable lhs; // H(B(Omega C))
    BettiTable rhs; // H(C)
    bool pass = false;
};
BarCobarReport check_bar_cobar(const AinfCocategory& c, int adams_cap);

} // namespace ainfty

#endif
