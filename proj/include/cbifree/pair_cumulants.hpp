#pragma once

#include <cstddef>
#include <vector>

#include "bnc.hpp"
#include "errors.hpp"

namespace cbifree {

namespace detail {

/// Shape decomposition of BNC(L^m R^n): per partition, the (lefts, rights)
/// count of every block and its interior flag.  Everything downstream of the
/// commuting-pair reduction only needs these counts.
struct pair_shape {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::vector<bool> interior;
};

inline std::vector<pair_shape> pair_shapes(std::size_t m, std::size_t n) {
    std::vector<face> faces(m + n);
    for (std::size_t i = 0; i < m + n; ++i) faces[i] = i < m ? face::left : face::right;
    chi_map chi(faces);
    std::vector<pair_shape> out;
    for (const auto& pi : enumerate_bnc(chi)) {
        pair_shape s;
        s.interior = classify_interior(pi);
        for (const auto& b : pi.blocks()) {
            std::size_t lefts = 0;
            for (auto i : b)
                if (i < m) ++lefts;
            s.blocks.emplace_back(lefts, b.size() - lefts);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

/// Moments of a commuting two-faced pair: M_{m,n} for m + n <= degree with
/// M_{0,0} = 1, in both states.
template <typename T>
class pair_moment_table {
public:
    explicit pair_moment_table(std::size_t degree)
        : degree_(degree), mphi_((degree + 1) * (degree + 2) / 2, T(0)),
          mpsi_(mphi_.size(), T(0)) {
        mphi_[0] = T(1);
        mpsi_[0] = T(1);
    }

    std::size_t degree() const { return degree_; }
    const T& mphi(std::size_t m, std::size_t n) const { return mphi_[flat(m, n)]; }
    const T& mpsi(std::size_t m, std::size_t n) const { return mpsi_[flat(m, n)]; }
    void set(std::size_t m, std::size_t n, T phi, T psi) {
        if (m + n == 0 && !(phi == T(1) && psi == T(1)))
            throw invariant_violation_error("M_{0,0} must be 1 in both states");
        mphi_[flat(m, n)] = std::move(phi);
        mpsi_[flat(m, n)] = std::move(psi);
    }

private:
    std::size_t flat(std::size_t m, std::size_t n) const {
        std::size_t total = m + n;
        if (total > degree_)
            throw incomplete_table_error("pair moment index beyond the stored degree");
        return total * (total + 1) / 2 + n;
    }

    std::size_t degree_;
    std::vector<T> mphi_, mpsi_;
};

/// kappa_{m,n} and K_{m,n} for 1 <= m + n <= degree.
template <typename T>
class pair_cumulant_table {
public:
    explicit pair_cumulant_table(std::size_t degree)
        : degree_(degree), kappa_((degree + 1) * (degree + 2) / 2, T(0)),
          ck_(kappa_.size(), T(0)) {}

    std::size_t degree() const { return degree_; }
    const T& kappa(std::size_t m, std::size_t n) const { return kappa_[flat(m, n)]; }
    const T& ck(std::size_t m, std::size_t n) const { return ck_[flat(m, n)]; }
    void set(std::size_t m, std::size_t n, T kappa, T ck) {
        if (m + n == 0) throw invariant_violation_error("cumulants start at order one");
        kappa_[flat(m, n)] = std::move(kappa);
        ck_[flat(m, n)] = std::move(ck);
    }

private:
    std::size_t flat(std::size_t m, std::size_t n) const {
        std::size_t total = m + n;
        if (total > degree_)
            throw incomplete_table_error("pair cumulant index beyond the stored degree");
        return total * (total + 1) / 2 + n;
    }

    std::size_t degree_;
    std::vector<T> kappa_, ck_;
};

/// Extraction by the defining recursions, order by order:
///   kappa_{m,n} = Mpsi_{m,n} - sum over pi != 1 of prod kappa(block),
///   K_{m,n}     = Mphi_{m,n} - sum over pi != 1 of prod (interior ? kappa : K).
template <typename T>
pair_cumulant_table<T> pair_cumulants_from_moments(const pair_moment_table<T>& mom) {
    const std::size_t d = mom.degree();
    pair_cumulant_table<T> out(d);
    for (std::size_t total = 1; total <= d; ++total)
        for (std::size_t m = 0; m <= total; ++m) {
            std::size_t n = total - m;
            T kacc = mom.mpsi(m, n), cacc = mom.mphi(m, n);
            for (const auto& shape : detail::pair_shapes(m, n)) {
                if (shape.blocks.size() == 1) continue;
                T kprod(1), cprod(1);
                for (std::size_t b = 0; b < shape.blocks.size(); ++b) {
                    auto [bm, bn] = shape.blocks[b];
                    kprod = kprod * out.kappa(bm, bn);
                    cprod = cprod * (shape.interior[b] ? out.kappa(bm, bn) : out.ck(bm, bn));
                }
                kacc -= kprod;
                cacc -= cprod;
            }
            out.set(m, n, std::move(kacc), std::move(cacc));
        }
    return out;
}

/// Moment recovery: psi sums plain kappa products, phi splits interior and
/// exterior blocks.
template <typename T>
pair_moment_table<T> pair_moments_from_cumulants(const pair_cumulant_table<T>& cum) {
    const std::size_t d = cum.degree();
    pair_moment_table<T> out(d);
    for (std::size_t total = 1; total <= d; ++total)
        for (std::size_t m = 0; m <= total; ++m) {
            std::size_t n = total - m;
            T psi(0), phi(0);
            for (const auto& shape : detail::pair_shapes(m, n)) {
                T kprod(1), cprod(1);
                for (std::size_t b = 0; b < shape.blocks.size(); ++b) {
                    auto [bm, bn] = shape.blocks[b];
                    kprod = kprod * cum.kappa(bm, bn);
                    cprod = cprod * (shape.interior[b] ? cum.kappa(bm, bn) : cum.ck(bm, bn));
                }
                psi += kprod;
                phi += cprod;
            }
            out.set(m, n, std::move(phi), std::move(psi));
        }
    return out;
}

}  // namespace cbifree
