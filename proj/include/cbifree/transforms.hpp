#pragma once

#include <cstddef>

#include "pair_cumulants.hpp"
#include "series.hpp"

namespace cbifree {

/// Single-variable series attached to one marginal of a pair:
///   M(z) moment series, R(z) = sum kappa_{m+1} z^m, C(z) = 1 + z R(z),
/// and the conditional versions from the K family.
template <typename T>
struct marginal_series {
    series1<T> mpsi, mphi, r, rc, c, cc;
};

template <typename T>
struct pair_series {
    std::size_t degree;
    marginal_series<T> left, right;
    series2<T> mpsi2, mphi2;  // left-then-right moment series
    series2<T> r2, rc2;       // bi-free and c-bi-free partial R-transforms
};

template <typename T>
pair_series<T> series_from_pair(const pair_moment_table<T>& mom) {
    const std::size_t d = mom.degree();
    auto cum = pair_cumulants_from_moments(mom);
    auto marginal = [&](bool leftside) {
        marginal_series<T> out{series1<T>(d), series1<T>(d), series1<T>(d),
                               series1<T>(d), series1<T>(d), series1<T>(d)};
        out.mpsi.set(0, T(1));
        out.mphi.set(0, T(1));
        out.c.set(0, T(1));
        out.cc.set(0, T(1));
        for (std::size_t k = 1; k <= d; ++k) {
            out.mpsi.set(k, leftside ? mom.mpsi(k, 0) : mom.mpsi(0, k));
            out.mphi.set(k, leftside ? mom.mphi(k, 0) : mom.mphi(0, k));
            out.c.set(k, leftside ? cum.kappa(k, 0) : cum.kappa(0, k));
            out.cc.set(k, leftside ? cum.ck(k, 0) : cum.ck(0, k));
            out.r.set(k - 1, out.c.coeff(k));
            out.rc.set(k - 1, out.cc.coeff(k));
        }
        return out;
    };
    pair_series<T> out{d,          marginal(true), marginal(false), series2<T>(d),
                       series2<T>(d), series2<T>(d), series2<T>(d)};
    out.mpsi2.set(0, 0, T(1));
    out.mphi2.set(0, 0, T(1));
    for (std::size_t m = 0; m <= d; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= d; ++n) {
            out.mpsi2.set(m, n, mom.mpsi(m, n));
            out.mphi2.set(m, n, mom.mphi(m, n));
            out.r2.set(m, n, cum.kappa(m, n));
            out.rc2.set(m, n, cum.ck(m, n));
        }
    return out;
}

template <typename T>
struct cfree_residuals {
    series1<T> subordination;  // Cc(z Mpsi(z)) - (1 + Mpsi - Mpsi/Mphi)
    series1<T> inverse_form;   // Mphi(z/C(z)) - C/(1 + C - Cc)
};

/// Residuals of both c-free series relations on one marginal; identically
/// zero for any consistent moment/cumulant pair.
template <typename T>
cfree_residuals<T> cfree_series_residuals(const marginal_series<T>& m) {
    const std::size_t d = m.mpsi.order();
    auto one = series1<T>::one(d);
    auto lhs1 = series1<T>::compose(m.cc, m.mpsi.shift_up());
    auto rhs1 = one + m.mpsi - m.mpsi / m.mphi;
    auto lhs2 = series1<T>::compose(m.mphi, (one / m.c).shift_up());
    auto rhs2 = m.c / (one + m.c - m.cc);
    return {lhs1 - rhs1, lhs2 - rhs2};
}

template <typename T>
struct partial_equation_residuals {
    series2<T> functional;  // the two-variable cumulant series equation
    series2<T> reduced;     // R-transform decomposition via the Cauchy form
};

/// Residuals of the c-bi-free partial functional equation and of the
/// decomposition R^c = z R^c_l + w R^c_r + reduced part.  The reciprocal
/// Cauchy substitutions are realized pole-free through z/C(z): the Cauchy
/// transforms at (R_l(z) + 1/z, R_r(w) + 1/w) reduce to moment-series
/// compositions after clearing the zw prefactor.
template <typename T>
partial_equation_residuals<T> partial_equation_residuals_of(const pair_series<T>& ps) {
    const std::size_t d = ps.degree;
    auto one1 = series1<T>::one(d);
    auto one2 = series2<T>::one(d);
    auto lift_z = series2<T>::from_z;
    auto lift_w = series2<T>::from_w;

    // functional equation: Cc(z Mpsi_l, w Mpsi_r) + 1 = Mpsi_l + Mpsi_r
    //   + (1 - Mpsi_l/Mphi_l) + (1 - Mpsi_r/Mphi_r)
    //   - (Mpsi_l Mpsi_r / Mpsi2) (1 - Mphi2 / (Mphi_l Mphi_r))
    auto cc2 = one2 + ps.rc2;
    auto lhs = series2<T>::substitute(cc2, ps.left.mpsi.shift_up(), ps.right.mpsi.shift_up()) +
               one2;
    auto rhs = lift_z(ps.left.mpsi) + lift_w(ps.right.mpsi) +
               lift_z(one1 - ps.left.mpsi / ps.left.mphi) +
               lift_w(one1 - ps.right.mpsi / ps.right.mphi) -
               lift_z(ps.left.mpsi) * lift_w(ps.right.mpsi) / ps.mpsi2 *
                   (one2 - ps.mphi2 / (lift_z(ps.left.mphi) * lift_w(ps.right.mphi)));

    // corollary decomposition with p = z/C_l(z), q = w/C_r(w)
    auto p = (one1 / ps.left.c).shift_up();
    auto q = (one1 / ps.right.c).shift_up();
    auto abar = one1 + ps.left.c - ps.left.cc;
    auto bbar = one1 + ps.right.c - ps.right.cc;
    auto reduced = (lift_z(abar) * lift_w(bbar) * series2<T>::substitute(ps.mphi2, p, q) -
                    lift_z(ps.left.c) * lift_w(ps.right.c)) /
                   series2<T>::substitute(ps.mpsi2, p, q);
    auto decomposition =
        lift_z(ps.left.rc.shift_up()) + lift_w(ps.right.rc.shift_up()) + reduced;
    return {lhs - rhs, ps.rc2 - decomposition};
}

/// Bi-Boolean self-energy E(z, w) of the phi marginal data, as the
/// coefficient table of z^(-m) w^(-n): with psi the delta state,
///   E = E1/z + E2/w + G/(G1 G2) - 1
/// collapses to moment-series algebra in the reciprocal variables.
template <typename T>
series2<T> boolean_self_energy(const pair_moment_table<T>& mom) {
    const std::size_t d = mom.degree();
    auto one1 = series1<T>::one(d);
    auto one2 = series2<T>::one(d);
    series1<T> ml(d), mr(d);
    series2<T> m2(d);
    ml.set(0, T(1));
    mr.set(0, T(1));
    m2.set(0, 0, T(1));
    for (std::size_t k = 1; k <= d; ++k) {
        ml.set(k, mom.mphi(k, 0));
        mr.set(k, mom.mphi(0, k));
    }
    for (std::size_t m = 0; m <= d; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= d; ++n) m2.set(m, n, mom.mphi(m, n));
    return series2<T>::from_z(one1 - one1 / ml) + series2<T>::from_w(one1 - one1 / mr) +
           m2 / (series2<T>::from_z(ml) * series2<T>::from_w(mr)) - one2;
}

/// Partial Voiculescu transform as a formal coefficient table: entry (m, n)
/// multiplies z^(-m) w^(-n).
template <typename T>
series2<T> partial_voiculescu_series(const pair_cumulant_table<T>& cum) {
    series2<T> out(cum.degree());
    for (std::size_t m = 0; m <= cum.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= cum.degree(); ++n)
            out.set(m, n, cum.ck(m, n));
    return out;
}

}  // namespace cbifree
