#ifndef AINFTY_BIMODULE_HPP
#define AINFTY_BIMODULE_HPP

#include "ainfty/functor.hpp"

#include <optional>

namespace ainfty {

/* Hom-valued (C,C)-bimodule C(-, T(-)): the diagonal bimodule when the right
 * twist T is the identity. Elements are category morphisms. The action takes
 * (x_0..x_{p-1} | u | z_1..z_q) with the x chain ending at the source of u
 * and the z chain continuing from T-twisted targets; it is the full mu of C
 * with the right letters pushed through T block-wise. */
class HomBimodule {
public:
    HomBimodule(CatPtr cat, std::shared_ptr<const AinfFunctor> right_twist);

    const AinfCategory& cat() const { return *cat_; }
    bool diagonal() const { return twist_ == nullptr; }
    const AinfFunctor* twist() const { return twist_.get(); }

    // value space C(x, T y) as morphisms (includes the unit when x == T y)
    std::vector<Mor> value(int x, int y) const;

    // strict unitality applied; u may be a unit
    Combo act(std::span<const Mor> xs, Mor u, std::span<const Mor> zs) const;

private:
    CatPtr cat_;
    std::shared_ptr<const AinfFunctor> twist_;
};

struct BimodFailure {
    std::vector<Mor> xs, zs;
    Mor u = 0;
    std::string describe(const AinfCategory& c) const;
};

/* Degree-s bimodule map between hom-valued bimodules, given by a component
 * table on (xs | u | zs); u may be a unit (the table may have entries on
 * units), while unit letters in xs/zs kill a component. */
class BimoduleMap {
public:
    struct Key {
        std::vector<Mor> xs;
        Mor u;
        std::vector<Mor> zs;
        friend bool operator<(const Key& a, const Key& b) {
            if (a.xs != b.xs)
                return a.xs < b.xs;
            if (a.u != b.u)
                return a.u < b.u;
            return a.zs < b.zs;
        }
    };

    BimoduleMap(std::shared_ptr<const HomBimodule> src, std::shared_ptr<const HomBimodule> dst, int degree)
        : src_(std::move(src)), dst_(std::move(dst)), degree_(degree) {}

    const HomBimodule& src() const { return *src_; }
    const HomBimodule& dst() const { return *dst_; }
    int degree() const { return degree_; }

    void add_comp(Key k, Combo out);
    Combo eval(std::span<const Mor> xs, Mor u, std::span<const Mor> zs) const;
    Combo eval_multi(std::span<const Mor> xs, const Combo& us, std::span<const Mor> zs) const;
    const std::map<Key, Combo>& comps() const { return comps_; }

    /* Differential of the map (four insertion sums); nonzero instances are
     * reported with the offending tuple. */
    std::optional<BimodFailure> differential_nonzero(int max_arity) const;

private:
    std::shared_ptr<const HomBimodule> src_, dst_;
    int degree_;
    std::map<Key, Combo> comps_;
};

} // namespace ainfty

#endif
