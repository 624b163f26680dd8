#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace cbifree {

/// Univariate truncated power series: coefficients c_0..c_D, arithmetic exact
/// modulo z^(D+1).
template <typename T>
class series1 {
public:
    explicit series1(std::size_t order) : order_(order), c_(order + 1, T(0)) {}

    static series1 constant(std::size_t order, T value) {
        series1 s(order);
        s.c_[0] = value;
        return s;
    }
    static series1 one(std::size_t order) { return constant(order, T(1)); }
    static series1 variable(std::size_t order) {
        series1 s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }

    std::size_t order() const { return order_; }
    const T& coeff(std::size_t k) const { return c_.at(k); }
    void set(std::size_t k, T v) { c_.at(k) = std::move(v); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!(x == T(0))) return false;
        return true;
    }

    friend series1 operator+(const series1& a, const series1& b) {
        auto s = a.aligned(b);
        for (std::size_t k = 0; k <= s.order_; ++k) s.c_[k] += b.c_[k];
        return s;
    }
    friend series1 operator-(const series1& a, const series1& b) {
        auto s = a.aligned(b);
        for (std::size_t k = 0; k <= s.order_; ++k) s.c_[k] -= b.c_[k];
        return s;
    }
    friend series1 operator*(const series1& a, const series1& b) {
        a.check_order(b);
        series1 s(a.order_);
        for (std::size_t i = 0; i <= a.order_; ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j <= a.order_; ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return s;
    }
    friend series1 operator*(const T& x, const series1& a) {
        series1 s = a;
        for (auto& v : s.c_) v = x * v;
        return s;
    }

    /// Multiplication by the variable (degree shift; the top coefficient falls off).
    series1 shift_up() const {
        series1 s(order_);
        for (std::size_t k = 1; k <= order_; ++k) s.c_[k] = c_[k - 1];
        return s;
    }

    /// a / b with b(0) a unit.
    friend series1 operator/(const series1& a, const series1& b) {
        a.check_order(b);
        if (b.c_[0] == T(0))
            throw precondition_error("series division needs a unit constant term");
        series1 q(a.order_);
        for (std::size_t k = 0; k <= a.order_; ++k) {
            T acc = a.c_[k];
            for (std::size_t j = 0; j < k; ++j) acc -= q.c_[j] * b.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

    /// f(g) with g(0) = 0.
    static series1 compose(const series1& f, const series1& g) {
        f.check_order(g);
        if (!(g.c_[0] == T(0)))
            throw precondition_error("composition needs a zero constant term");
        series1 out = constant(f.order_, f.c_[0]);
        series1 power = one(f.order_);
        for (std::size_t k = 1; k <= f.order_; ++k) {
            power = power * g;
            if (f.c_[k] == T(0)) continue;
            out = out + f.c_[k] * power;
        }
        return out;
    }

    /// Compositional inverse of f with f(0) = 0 and f'(0) a unit.
    static series1 reversion(const series1& f) {
        if (!(f.c_[0] == T(0)) || f.c_[1] == T(0))
            throw precondition_error("reversion needs f(0) = 0 and a unit slope");
        series1 g(f.order_);
        if (f.order_ >= 1) g.c_[1] = T(1) / f.c_[1];
        // solve f(g(z)) = z degree by degree
        for (std::size_t k = 2; k <= f.order_; ++k) {
            auto trial = compose(f, g);
            g.c_[k] = -trial.c_[k] / f.c_[1];
        }
        return g;
    }

private:
    void check_order(const series1& o) const {
        if (order_ != o.order_) throw degree_mismatch_error("series orders differ");
    }
    series1 aligned(const series1& o) const {
        check_order(o);
        return *this;
    }

    std::size_t order_;
    std::vector<T> c_;
};

/// Bivariate truncated power series in commuting variables, truncated by
/// total degree.
template <typename T>
class series2 {
public:
    explicit series2(std::size_t order)
        : order_(order), c_((order + 1) * (order + 2) / 2, T(0)) {}

    static series2 constant(std::size_t order, T value) {
        series2 s(order);
        s.c_[0] = value;
        return s;
    }
    static series2 one(std::size_t order) { return constant(order, T(1)); }

    std::size_t order() const { return order_; }

    const T& coeff(std::size_t m, std::size_t n) const { return c_[flat(m, n)]; }
    void set(std::size_t m, std::size_t n, T v) { c_[flat(m, n)] = std::move(v); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!(x == T(0))) return false;
        return true;
    }

    /// Embeds a univariate series as a series in the first or second variable.
    static series2 from_z(const series1<T>& f) {
        series2 s(f.order());
        for (std::size_t m = 0; m <= f.order(); ++m) s.set(m, 0, f.coeff(m));
        return s;
    }
    static series2 from_w(const series1<T>& f) {
        series2 s(f.order());
        for (std::size_t n = 0; n <= f.order(); ++n) s.set(0, n, f.coeff(n));
        return s;
    }

    friend series2 operator+(const series2& a, const series2& b) {
        a.check_order(b);
        series2 s = a;
        for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] += b.c_[i];
        return s;
    }
    friend series2 operator-(const series2& a, const series2& b) {
        a.check_order(b);
        series2 s = a;
        for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] -= b.c_[i];
        return s;
    }
    friend series2 operator*(const series2& a, const series2& b) {
        a.check_order(b);
        series2 s(a.order_);
        for (std::size_t m1 = 0; m1 <= a.order_; ++m1)
            for (std::size_t n1 = 0; m1 + n1 <= a.order_; ++n1) {
                if (a.coeff(m1, n1) == T(0)) continue;
                for (std::size_t m2 = 0; m1 + n1 + m2 <= a.order_; ++m2)
                    for (std::size_t n2 = 0; m1 + n1 + m2 + n2 <= a.order_; ++n2)
                        s.c_[s.flat(m1 + m2, n1 + n2)] += a.coeff(m1, n1) * b.coeff(m2, n2);
            }
        return s;
    }
    friend series2 operator*(const T& x, const series2& a) {
        series2 s = a;
        for (auto& v : s.c_) v = x * v;
        return s;
    }

    friend series2 operator/(const series2& a, const series2& b) {
        a.check_order(b);
        if (b.coeff(0, 0) == T(0))
            throw precondition_error("series division needs a unit constant term");
        series2 q(a.order_);
        // solve degree by degree in the total grading
        for (std::size_t total = 0; total <= a.order_; ++total)
            for (std::size_t m = 0; m <= total; ++m) {
                std::size_t n = total - m;
                T acc = a.coeff(m, n);
                for (std::size_t i = 0; i <= m; ++i)
                    for (std::size_t j = 0; j <= n; ++j) {
                        if (i == 0 && j == 0) continue;
                        acc -= b.coeff(i, j) * q.coeff(m - i, n - j);
                    }
                q.c_[q.flat(m, n)] = acc / b.coeff(0, 0);
            }
        return q;
    }

    /// F(u(z), v(w)) for univariate arguments with zero constant terms.
    static series2 substitute(const series2& f, const series1<T>& u, const series1<T>& v) {
        if (u.order() != f.order_ || v.order() != f.order_)
            throw degree_mismatch_error("substitution arguments must share the order");
        if (!(u.coeff(0) == T(0)) || !(v.coeff(0) == T(0)))
            throw precondition_error("substitution needs zero constant terms");
        const std::size_t d = f.order_;
        std::vector<series1<T>> upow{series1<T>::one(d)}, vpow{series1<T>::one(d)};
        for (std::size_t k = 1; k <= d; ++k) {
            upow.push_back(upow.back() * u);
            vpow.push_back(vpow.back() * v);
        }
        series2 out(d);
        for (std::size_t m = 0; m <= d; ++m)
            for (std::size_t n = 0; m + n <= d; ++n) {
                if (f.coeff(m, n) == T(0)) continue;
                // u^m v^n has z-order >= m and w-order >= n
                for (std::size_t a = m; a <= d; ++a)
                    for (std::size_t b = n; a + b <= d; ++b)
                        out.c_[out.flat(a, b)] += f.coeff(m, n) * upow[m].coeff(a) * vpow[n].coeff(b);
            }
        return out;
    }

private:
    std::size_t flat(std::size_t m, std::size_t n) const {
        std::size_t total = m + n;
        if (total > order_) throw degree_mismatch_error("coefficient index beyond the order");
        return total * (total + 1) / 2 + n;
    }
    void check_order(const series2& o) const {
        if (order_ != o.order_) throw degree_mismatch_error("series orders differ");
    }

    std::size_t order_;
    std::vector<T> c_;
};

}  // namespace cbifree
