#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "pair_cumulants.hpp"
#include "rational.hpp"

namespace cbifree {

/// The additive convolution is cumulant-side: entry-wise sums of both tables.
template <typename T>
pair_cumulant_table<T> convolve(const pair_cumulant_table<T>& x, const pair_cumulant_table<T>& y) {
    if (x.degree() != y.degree())
        throw degree_mismatch_error("convolution needs equal degrees");
    pair_cumulant_table<T> out(x.degree());
    for (std::size_t m = 0; m <= x.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= x.degree(); ++n)
            out.set(m, n, x.kappa(m, n) + y.kappa(m, n), x.ck(m, n) + y.ck(m, n));
    return out;
}

/// Convolution semigroup at the cumulant level: every entry scales by t.
template <typename T>
pair_cumulant_table<T> semigroup_power(const pair_cumulant_table<T>& x, const T& t) {
    if (t < T(0)) throw precondition_error("semigroup parameter must be nonnegative");
    pair_cumulant_table<T> out(x.degree());
    for (std::size_t m = 0; m <= x.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= x.degree(); ++n)
            out.set(m, n, t * x.kappa(m, n), t * x.ck(m, n));
    return out;
}

/// Signed atomic measure on the plane.
struct atomic_measure {
    struct atom {
        rational s, t, weight;
    };
    std::vector<atom> atoms;

    atomic_measure() = default;
    explicit atomic_measure(std::vector<atom> a) : atoms(std::move(a)) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if (atoms[i].s == atoms[j].s && atoms[i].t == atoms[j].t)
                    throw invariant_violation_error("duplicate atom");
    }

    rational moment(std::size_t m, std::size_t n) const {
        rational sum = 0;
        for (const auto& a : atoms) {
            rational term = a.weight;
            for (std::size_t i = 0; i < m; ++i) term *= a.s;
            for (std::size_t j = 0; j < n; ++j) term *= a.t;
            sum += term;
        }
        return sum;
    }

    rational mass() const { return moment(0, 0); }

    rational weight_at(const rational& s, const rational& t) const {
        for (const auto& a : atoms)
            if (a.s == s && a.t == t) return a.weight;
        return 0;
    }

    bool is_probability() const {
        if (mass() != 1) return false;
        for (const auto& a : atoms)
            if (a.weight < 0) return false;
        return true;
    }

    bool is_point_mass_at_origin() const {
        for (const auto& a : atoms)
            if (a.weight != 0 && !(a.s == 0 && a.t == 0)) return false;
        return true;
    }
};

/// Compact-normalization Lévy–Hinčin data (eta_1, eta_2, rho_1, rho_2, rho):
/// rho_1, rho_2 nonnegative, rho signed, with the atom-wise compatibilities
///   t drho_1 = s drho,   s drho_2 = t drho,
/// and |rho({0,0})|^2 <= rho_1({0,0}) rho_2({0,0}).
struct levy_hincin_quintuple {
    rational eta1, eta2;
    atomic_measure rho1, rho2, rho;

    void validate() const {
        for (const auto& a : rho1.atoms)
            if (a.weight < 0)
                throw invariant_violation_error("rho_1 must be a positive measure");
        for (const auto& a : rho2.atoms)
            if (a.weight < 0)
                throw invariant_violation_error("rho_2 must be a positive measure");
        auto check_points = [&](const atomic_measure& m) {
            for (const auto& a : m.atoms) {
                if (a.t * rho1.weight_at(a.s, a.t) != a.s * rho.weight_at(a.s, a.t))
                    throw invariant_violation_error("t drho_1 = s drho fails at an atom");
                if (a.s * rho2.weight_at(a.s, a.t) != a.t * rho.weight_at(a.s, a.t))
                    throw invariant_violation_error("s drho_2 = t drho fails at an atom");
            }
        };
        check_points(rho1);
        check_points(rho2);
        check_points(rho);
        auto r0 = rho.weight_at(0, 0);
        if (r0 * r0 > rho1.weight_at(0, 0) * rho2.weight_at(0, 0))
            throw invariant_violation_error(
                "|rho({0,0})|^2 <= rho_1({0,0}) rho_2({0,0}) fails");
    }
};

/// Cumulants of the infinitely divisible pair attached to a quintuple:
///   K_{1,0} = eta_1, K_{0,1} = eta_2,
///   K_{m,0} = int s^(m-2) drho_1 (m >= 2), K_{0,n} = int t^(n-2) drho_2,
///   K_{m,n} = int s^(m-1) t^(n-1) drho (m, n >= 1).
/// The companion triple for the accompanying distribution fills the kappa
/// side through the same expansion.
inline pair_cumulant_table<rational> lh_to_cumulants(const levy_hincin_quintuple& phi_side,
                                                     const levy_hincin_quintuple& psi_side,
                                                     std::size_t degree) {
    phi_side.validate();
    psi_side.validate();
    pair_cumulant_table<rational> out(degree);
    auto fill = [&](const levy_hincin_quintuple& q, auto&& set) {
        set(1, 0, q.eta1);
        set(0, 1, q.eta2);
        for (std::size_t m = 2; m <= degree; ++m) set(m, 0, q.rho1.moment(m - 2, 0));
        for (std::size_t n = 2; n <= degree; ++n) set(0, n, q.rho2.moment(0, n - 2));
        for (std::size_t m = 1; m <= degree; ++m)
            for (std::size_t n = 1; m + n <= degree; ++n) set(m, n, q.rho.moment(m - 1, n - 1));
    };
    fill(phi_side,
         [&](std::size_t m, std::size_t n, rational v) { out.set(m, n, out.kappa(m, n), v); });
    fill(psi_side,
         [&](std::size_t m, std::size_t n, rational v) { out.set(m, n, v, out.ck(m, n)); });
    return out;
}

inline pair_cumulant_table<rational> lh_to_cumulants(const levy_hincin_quintuple& phi_side,
                                                     std::size_t degree) {
    levy_hincin_quintuple trivial{};
    return lh_to_cumulants(phi_side, trivial, degree);
}

/// Atom-wise translation of the (1 + s^2)-weighted representation into the
/// compact normalization.  The diagonal measures stay rational; the cross
/// measure picks up sqrt(1 + s^2) sqrt(1 + t^2) and is returned as cumulant
/// contributions in double precision.
struct weighted_quintuple {
    double eta1 = 0, eta2 = 0;
    struct atom {
        double s, t, weight;
    };
    std::vector<atom> rho1, rho2, rho;
};

inline pair_cumulant_table<double> lh_weighted_to_cumulants(const weighted_quintuple& q,
                                                            std::size_t degree) {
    pair_cumulant_table<double> out(degree);
    auto moment = [](const std::vector<weighted_quintuple::atom>& atoms, int m, int n,
                     auto&& density) {
        double sum = 0;
        for (const auto& a : atoms)
            sum += density(a) * std::pow(a.s, m) * std::pow(a.t, n) * a.weight;
        return sum;
    };
    auto one_plus_s2 = [](const weighted_quintuple::atom& a) { return 1 + a.s * a.s; };
    auto one_plus_t2 = [](const weighted_quintuple::atom& a) { return 1 + a.t * a.t; };
    auto cross = [&](const weighted_quintuple::atom& a) {
        return std::sqrt((1 + a.s * a.s) * (1 + a.t * a.t));
    };
    double eta1c = q.eta1 + moment(q.rho1, 1, 0, [](const auto&) { return 1.0; });
    double eta2c = q.eta2 + moment(q.rho2, 0, 1, [](const auto&) { return 1.0; });
    out.set(1, 0, out.kappa(1, 0), eta1c);
    out.set(0, 1, out.kappa(0, 1), eta2c);
    for (std::size_t m = 2; m <= degree; ++m)
        out.set(m, 0, 0.0, moment(q.rho1, static_cast<int>(m) - 2, 0, one_plus_s2));
    for (std::size_t n = 2; n <= degree; ++n)
        out.set(0, n, 0.0, moment(q.rho2, 0, static_cast<int>(n) - 2, one_plus_t2));
    for (std::size_t m = 1; m <= degree; ++m)
        for (std::size_t n = 1; m + n <= degree; ++n)
            out.set(m, n, 0.0,
                    moment(q.rho, static_cast<int>(m) - 1, static_cast<int>(n) - 1, cross));
    return out;
}

/// Gaussian pair data: K side (eta_1, eta_2, a, b, c), kappa side primed.
inline pair_cumulant_table<rational> gaussian_cumulants(std::size_t degree, rational eta1,
                                                        rational eta2, rational a, rational b,
                                                        rational c, rational ap, rational bp,
                                                        rational cp) {
    if (degree < 2) throw precondition_error("gaussian data needs degree >= 2");
    pair_cumulant_table<rational> out(degree);
    out.set(1, 0, 0, eta1);
    out.set(0, 1, 0, eta2);
    out.set(2, 0, ap, a);
    out.set(0, 2, bp, b);
    out.set(1, 1, cp, c);
    return out;
}

/// Poisson pair data: K_{m,n} = lambda alpha^m beta^n, kappa side primed.
inline pair_cumulant_table<rational> poisson_cumulants(std::size_t degree, rational lambda,
                                                       rational alpha, rational beta,
                                                       rational lambdap, rational alphap,
                                                       rational betap) {
    pair_cumulant_table<rational> out(degree);
    for (std::size_t m = 0; m <= degree; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= degree; ++n) {
            auto powc = [](rational x, std::size_t e) {
                rational p = 1;
                for (std::size_t i = 0; i < e; ++i) p *= x;
                return p;
            };
            out.set(m, n, lambdap * powc(alphap, m) * powc(betap, n),
                    lambda * powc(alpha, m) * powc(beta, n));
        }
    return out;
}

/// Compound Poisson data: K_{m,n} = lambda M_{m,n}(sigma), kappa side primed.
inline pair_cumulant_table<rational> compound_poisson_cumulants(std::size_t degree,
                                                                rational lambda,
                                                                const atomic_measure& sigma,
                                                                rational lambdap,
                                                                const atomic_measure& sigmap) {
    pair_cumulant_table<rational> out(degree);
    for (std::size_t m = 0; m <= degree; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= degree; ++n)
            out.set(m, n, lambdap * sigmap.moment(m, n), lambda * sigma.moment(m, n));
    return out;
}

inline pair_cumulant_table<double> to_double(const pair_cumulant_table<rational>& x) {
    pair_cumulant_table<double> out(x.degree());
    for (std::size_t m = 0; m <= x.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= x.degree(); ++n)
            out.set(m, n, to_double(x.kappa(m, n)), to_double(x.ck(m, n)));
    return out;
}

struct experiment_row {
    std::size_t m, n;
    bool conditional;  // false: kappa entry, true: K entry
    double target, observed, abs_error;
};

struct experiment_report {
    pair_cumulant_table<double> observed;
    std::vector<experiment_row> rows;
};

/// Central limit experiment: the N-fold additive convolution of the
/// 1/sqrt(N)-dilated data.  Dilation scales an order-(m+n) cumulant by
/// N^(-(m+n)/2), so the convolution leaves order two invariant and damps
/// order d like N^(1 - d/2).  Targets are the Gaussian limit entries.
inline experiment_report clt_experiment(const pair_cumulant_table<double>& x, double n_fold) {
    if (x.degree() < 2) throw precondition_error("CLT experiment needs degree >= 2");
    if (x.kappa(1, 0) != 0 || x.kappa(0, 1) != 0 || x.ck(1, 0) != 0 || x.ck(0, 1) != 0)
        throw precondition_error("CLT experiment needs centred data");
    experiment_report rep{pair_cumulant_table<double>(x.degree()), {}};
    for (std::size_t m = 0; m <= x.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= x.degree(); ++n) {
            double scale = n_fold * std::pow(n_fold, -0.5 * static_cast<double>(m + n));
            double ok = x.kappa(m, n) * scale, oc = x.ck(m, n) * scale;
            rep.observed.set(m, n, ok, oc);
            double tk = (m + n == 2) ? x.kappa(m, n) : 0.0;
            double tc = (m + n == 2) ? x.ck(m, n) : 0.0;
            rep.rows.push_back({m, n, false, tk, ok, std::abs(ok - tk)});
            rep.rows.push_back({m, n, true, tc, oc, std::abs(oc - tc)});
        }
    return rep;
}

/// Compound Poisson limit experiment: (mu_N, nu_N) with
/// mu_N = (1 - lambda/N) delta + (lambda/N) sigma extracts cumulants at
/// finite N and convolves N-fold; targets are lambda M_{m,n}(sigma) on the K
/// side and the primed data on the kappa side.
inline experiment_report poisson_limit_experiment(rational lambda, const atomic_measure& sigma,
                                                  rational lambdap, const atomic_measure& sigmap,
                                                  double n_fold, std::size_t degree) {
    if (!sigma.is_probability() || !sigmap.is_probability())
        throw precondition_error("jump distributions must be probability measures");
    if (sigma.is_point_mass_at_origin() || sigmap.is_point_mass_at_origin())
        throw precondition_error("jump distributions must differ from the origin mass");
    if (lambda < 0 || lambdap < 0) throw precondition_error("rates must be nonnegative");
    if (rational(static_cast<long>(n_fold)) <= lambda ||
        rational(static_cast<long>(n_fold)) <= lambdap)
        throw precondition_error("N must exceed both rates");
    pair_moment_table<double> mom(degree);
    for (std::size_t m = 0; m <= degree; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= degree; ++n)
            mom.set(m, n, to_double(lambda * sigma.moment(m, n)) / n_fold,
                    to_double(lambdap * sigmap.moment(m, n)) / n_fold);
    auto cum = pair_cumulants_from_moments(mom);
    experiment_report rep{pair_cumulant_table<double>(degree), {}};
    for (std::size_t m = 0; m <= degree; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= degree; ++n) {
            double ok = n_fold * cum.kappa(m, n), oc = n_fold * cum.ck(m, n);
            rep.observed.set(m, n, ok, oc);
            double tk = to_double(lambdap * sigmap.moment(m, n));
            double tc = to_double(lambda * sigma.moment(m, n));
            rep.rows.push_back({m, n, false, tk, ok, std::abs(ok - tk)});
            rep.rows.push_back({m, n, true, tc, oc, std::abs(oc - tc)});
        }
    return rep;
}

/// Least-squares slope of log(err) against log(N); empty when fewer than two
/// usable points remain.
inline std::optional<double> fit_exponent(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> logs;
    for (auto [n, err] : points)
        if (err > 0) logs.emplace_back(std::log(n), std::log(err));
    if (logs.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = static_cast<double>(logs.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace cbifree
