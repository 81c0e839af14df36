#ifndef AINFTY_FIXTURES_HPP
#define AINFTY_FIXTURES_HPP

#include "ainfty/bimodule.hpp"
#include "ainfty/duality.hpp"

namespace ainfty {

/* Built-in example presentations used by the test corpus and shipped as
 * fixture files. */

// split line with only units, labels E...
AinfCategory units_line(int lo, int hi, std::vector<std::string> labels = {"E"});

/* Directed line: one-dimensional hom(X^i, X^j) = F e(i,j) for i < j with
 * strictly associative composition, Adams degree j - i. */
AinfCategory directed_line(int lo, int hi);

/* Two labels a, b: directed lines in each label plus cross morphisms
 * q(i,j) : X^i(a) -> X^j(b) for i <= j, all compositions associative. */
AinfCategory two_label_line(int lo, int hi);

// F[t_m] truncated at Adams cap (one object)
AinfCategory poly_algebra(int m, int adams_cap);

// two-generator cocategory: x (2,1), z (4,2), delta^2(z) = x (x) x
AinfCocategory two_gen_cocategory();

/* The continuation bimodule map of the directed-line corpus:
 * f(e(i,j)) = e(i,j+1), f(e_{X^n}) = e(n,n+1) = c_n. Works for both
 * directed_line and two_label_line (cross morphisms shift their target). */
BimoduleMap shift_bimodule_map(const std::shared_ptr<const HomBimodule>& diag,
                               const std::shared_ptr<const HomBimodule>& twisted);

// assembles the two hom-bimodules over collapse_grading(a, m) with the
// clamped canonical shift as twist
struct ThmBData {
    CatPtr a_m;
    std::shared_ptr<const AinfFunctor> tau_m;
    std::shared_ptr<const HomBimodule> diag, twisted;
    std::shared_ptr<BimoduleMap> f;
};
ThmBData shift_f_for(const CatPtr& a, int m);

} // namespace ainfty

#endif
