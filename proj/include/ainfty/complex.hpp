#ifndef AINFTY_COMPLEX_HPP
#define AINFTY_COMPLEX_HPP

#include "ainfty/f2.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ainfty {

/* (cohomological degree, Adams degree). Everything single-graded lives in
 * Adams degree 0. */
struct Bidegree {
    int c = 0;
    int a = 0;
    friend bool operator<(const Bidegree& x, const Bidegree& y) {
        return x.a != y.a ? x.a < y.a : x.c < y.c;
    }
    friend bool operator==(const Bidegree& x, const Bidegree& y) { return x.c == y.c && x.a == y.a; }
    friend bool operator!=(const Bidegree& x, const Bidegree& y) { return !(x == y); }
    Bidegree operator+(const Bidegree& o) const { return {c + o.c, a + o.a}; }
    Bidegree operator-(const Bidegree& o) const { return {c - o.c, a - o.a}; }
    std::string str() const { return "(" + std::to_string(c) + "," + std::to_string(a) + ")"; }
};

struct BidegreeWindow {
    int c_min = 0, c_max = 0;
    int a_min = 0, a_max = 0;
    bool contains(Bidegree d) const {
        return d.c >= c_min && d.c <= c_max && d.a >= a_min && d.a <= a_max;
    }
    std::string str() const;
};

/* Finite bigraded chain complex over F2. The differential of the (c,a) slice
 * lands in the (c+1,a) slice. `covered` lists the bidegrees whose basis is
 * certified (possibly empty); when `total` is set, any absent bidegree is
 * certified zero. */
struct ChainComplex {
    std::map<Bidegree, std::vector<std::string>> basis;
    std::map<Bidegree, F2Matrix> diff;
    std::set<Bidegree> covered;
    bool total = false;

    int dim(Bidegree d) const {
        auto it = basis.find(d);
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    }
    bool is_covered(Bidegree d) const { return total || covered.count(d) > 0; }
    const F2Matrix* differential(Bidegree d) const {
        auto it = diff.find(d);
        return it == diff.end() ? nullptr : &it->second;
    }

    // throws if d o d != 0 or if shapes are inconsistent
    void check_dd_zero() const;
};

using BettiTable = std::map<Bidegree, int>;

/* Betti numbers dim ker d_(c,a) - rank d_(c-1,a) for every bidegree in the
 * window. Throws WindowNotClosed when a required neighbour slice is not
 * certified. */
BettiTable betti(const ChainComplex& c, const BidegreeWindow& window);

// Betti number of a single bidegree
int betti_at(const ChainComplex& c, Bidegree d);

bool is_acyclic(const ChainComplex& c, const BidegreeWindow& window);

} // namespace ainfty

#endif
