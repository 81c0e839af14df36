#include "ainfty/complex.hpp"
#include "ainfty/errors.hpp"

namespace ainfty {

const char* err_kind_name(ErrKind k) {
    switch (k) {
    case ErrKind::Parse: return "ParseError";
    case ErrKind::DegreeMismatch: return "DegreeMismatch";
    case ErrKind::DanglingId: return "DanglingId";
    case ErrKind::WindowNotClosed: return "WindowNotClosed";
    case ErrKind::NotClosed: return "NotClosed";
    case ErrKind::NotClosedDegreeZero: return "NotClosedDegreeZero";
    case ErrKind::NonFiniteWordSpace: return "NonFiniteWordSpace";
    case ErrKind::CapTooSmall: return "CapTooSmall";
    case ErrKind::NoStabilization: return "NoStabilization";
    case ErrKind::NotAdamsConnected: return "NotAdamsConnected";
    case ErrKind::InfiniteSlice: return "InfiniteSlice";
    case ErrKind::NegativeAdamsDegree: return "NegativeAdamsDegree";
    case ErrKind::ObjectMismatch: return "ObjectMismatch";
    case ErrKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrKind::IncompatibleSplitting: return "IncompatibleSplitting";
    case ErrKind::NotStrict: return "NotStrict";
    case ErrKind::NotBijectiveOnHoms: return "NotBijectiveOnHoms";
    case ErrKind::IllDefinedInducedOp: return "IllDefinedInducedOp";
    case ErrKind::HypothesisFailed: return "HypothesisFailed";
    case ErrKind::NotAHomotopy: return "NotAHomotopy";
    case ErrKind::Internal: return "Internal";
    }
    return "Error";
}

std::string BidegreeWindow::str() const {
    return "c=[" + std::to_string(c_min) + ".." + std::to_string(c_max) + "], a=[" +
           std::to_string(a_min) + ".." + std::to_string(a_max) + "]";
}

void ChainComplex::check_dd_zero() const {
    for (const auto& [d, m] : diff) {
        Bidegree next{d.c + 1, d.a};
        if (m.cols != dim(d) || m.rows != dim(next))
            throw Error(ErrKind::Internal, "differential at " + d.str() + " has wrong shape");
        auto it = diff.find(next);
        if (it == diff.end()) {
            if (dim({d.c + 2, d.a}) != 0 && !m.is_zero())
                continue; // nothing to compose with
        } else {
            F2Matrix comp = it->second.mul(m);
            if (!comp.is_zero())
                throw Error(ErrKind::Internal, "d o d != 0 at bidegree " + d.str());
        }
    }
}

namespace {

int rank_at(const ChainComplex& c, Bidegree d) {
    const F2Matrix* m = c.differential(d);
    if (!m)
        return 0;
    return f2_rank(*m);
}

} // namespace

int betti_at(const ChainComplex& c, Bidegree d) {
    for (Bidegree n : {Bidegree{d.c - 1, d.a}, d, Bidegree{d.c + 1, d.a}})
        if (!c.is_covered(n))
            throw Error(ErrKind::WindowNotClosed,
                        "basis at bidegree " + n.str() + " is not certified (needed for Betti at " + d.str() + ")");
    int n = c.dim(d);
    int rk_out = rank_at(c, d);
    int rk_in = rank_at(c, {d.c - 1, d.a});
    return n - rk_out - rk_in;
}

BettiTable betti(const ChainComplex& c, const BidegreeWindow& window) {
    BettiTable t;
    for (int a = window.a_min; a <= window.a_max; ++a) {
        // one elimination per column slice would be cheaper, but windows are
        // small; reuse betti_at for clarity
        for (int cc = window.c_min; cc <= window.c_max; ++cc)
            t[{cc, a}] = betti_at(c, {cc, a});
    }
    return t;
}

bool is_acyclic(const ChainComplex& c, const BidegreeWindow& window) {
    BettiTable t = betti(c, window);
    for (const auto& [d, n] : t)
        if (n != 0)
            return false;
    return true;
}

} // namespace ainfty
