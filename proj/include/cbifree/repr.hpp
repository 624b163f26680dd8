#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distribution.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace cbifree {

using matrix_t = std::vector<std::vector<rational>>;  // rows

/// Normal form of a two-state vector space with specified state-vector:
/// xi = e_0, the complement is the span of the remaining basis vectors,
/// psi = first coordinate, and phi an arbitrary covector with phi(xi) = 1
/// (its kernel need not be the complement).
struct two_state_space {
    std::size_t dim = 1;
    std::vector<rational> phi_covector;  // length dim, first entry 1

    two_state_space() : phi_covector{1} {}
    two_state_space(std::size_t d, std::vector<rational> phi) : dim(d), phi_covector(std::move(phi)) {
        if (dim == 0) throw precondition_error("space dimension must be positive");
        if (phi_covector.size() != dim || phi_covector[0] != 1)
            throw precondition_error("phi covector must have length dim and lead with 1");
    }
};

/// Basis word of the reduced free product: alternating tensor factors,
/// each a non-leading basis vector e_i (i >= 1) of factor k.
using tensor_word = std::vector<std::pair<std::size_t, std::size_t>>;  // (family, local index)

/// Sparse vector over the enumerated basis.
using sparse_vec = std::map<std::size_t, rational>;

class free_product_space {
public:
    free_product_space(std::vector<two_state_space> factors, std::size_t truncation)
        : factors_(std::move(factors)), truncation_(truncation) {
        if (truncation_ < 1) throw precondition_error("truncation must be at least 1");
        basis_.push_back({});  // xi
        std::vector<tensor_word> layer{tensor_word{}};
        for (std::size_t len = 1; len <= truncation_; ++len) {
            std::vector<tensor_word> next;
            for (const auto& w : layer)
                for (std::size_t k = 0; k < factors_.size(); ++k) {
                    if (!w.empty() && w.back().first == k) continue;  // alternation
                    for (std::size_t i = 1; i < factors_[k].dim; ++i) {
                        tensor_word e = w;
                        e.emplace_back(k, i);
                        next.push_back(std::move(e));
                    }
                }
            for (const auto& w : next) basis_.push_back(w);
            layer = std::move(next);
        }
        for (std::size_t b = 0; b < basis_.size(); ++b) index_.emplace(basis_[b], b);
    }

    const std::vector<two_state_space>& factors() const { return factors_; }
    std::size_t truncation() const { return truncation_; }
    std::size_t basis_size() const { return basis_.size(); }
    const tensor_word& basis_word(std::size_t b) const { return basis_[b]; }

    std::optional<std::size_t> index_of(const tensor_word& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// phi of a basis word is the product of local covector entries.
    rational phi_of_basis(std::size_t b) const {
        rational p = 1;
        for (auto [k, i] : basis_[b]) p *= factors_[k].phi_covector[i];
        return p;
    }

    rational phi(const sparse_vec& v) const {
        rational sum = 0;
        for (const auto& [b, coeff] : v) sum += coeff * phi_of_basis(b);
        return sum;
    }

    rational psi(const sparse_vec& v) const {
        auto it = v.find(0);
        return it == v.end() ? rational(0) : it->second;
    }

private:
    std::vector<two_state_space> factors_;
    std::size_t truncation_;
    std::vector<tensor_word> basis_;
    std::map<tensor_word, std::size_t> index_;
};

/// A lifted left or right action on the truncated free product space, stored
/// column-sparse.  Columns whose image would exceed the truncation are
/// poisoned and only fault when an evaluation actually touches them.
class lifted_operator {
public:
    lifted_operator(const free_product_space& space, std::size_t family, face side, matrix_t local)
        : family_(family), side_(side), local_(std::move(local)) {
        const auto& fac = space.factors().at(family);
        if (local_.size() != fac.dim)
            throw precondition_error("local matrix must match the factor dimension");
        for (const auto& row : local_)
            if (row.size() != fac.dim)
                throw precondition_error("local matrix must be square");
        columns_.resize(space.basis_size());
        overflow_.assign(space.basis_size(), false);
        for (std::size_t b = 0; b < space.basis_size(); ++b) build_column(space, b);
    }

    std::size_t family() const { return family_; }
    face side() const { return side_; }
    const matrix_t& local_matrix() const { return local_; }

    /// Column b as (row, value) pairs; empty when the column overflows.
    const std::vector<std::pair<std::size_t, rational>>& column(std::size_t b) const {
        return columns_[b];
    }
    bool column_overflows(std::size_t b) const { return overflow_[b]; }

    sparse_vec apply(const sparse_vec& v) const {
        sparse_vec out;
        for (const auto& [b, coeff] : v) {
            if (coeff == 0) continue;
            if (overflow_[b])
                throw truncation_overflow_error(
                    "operator image leaves the truncated free product space");
            for (const auto& [row, val] : columns_[b]) {
                auto& slot = out[row];
                slot += coeff * val;
                if (slot == 0) out.erase(row);
            }
        }
        return out;
    }

private:
    void build_column(const free_product_space& space, std::size_t b) {
        const auto& w = space.basis_word(b);
        auto& col = columns_[b];
        const std::size_t d = local_.size();
        auto add = [&](const tensor_word& tw, const rational& val) {
            if (val == 0) return;
            auto idx = space.index_of(tw);
            if (!idx) {
                overflow_[b] = true;
                return;
            }
            col.emplace_back(*idx, val);
        };
        const bool left = side_ == face::left;
        const bool attaches = !w.empty() && (left ? w.front().first : w.back().first) == family_;
        if (attaches) {
            // T acts on the adjacent factor: scalar part shortens the word,
            // the rest replaces the adjacent letter
            auto [k, i] = left ? w.front() : w.back();
            tensor_word rest = w;
            if (left)
                rest.erase(rest.begin());
            else
                rest.pop_back();
            add(rest, local_[0][i]);
            for (std::size_t j = 1; j < d; ++j) {
                if (local_[j][i] == 0) continue;
                tensor_word ext = rest;
                if (left)
                    ext.insert(ext.begin(), {family_, j});
                else
                    ext.emplace_back(family_, j);
                add(ext, local_[j][i]);
            }
        } else {
            // through the identification the word is xi_k tensor w (resp.
            // w tensor xi_k); T xi_k splits into a scalar and a new letter
            add(w, local_[0][0]);
            for (std::size_t j = 1; j < d; ++j) {
                if (local_[j][0] == 0) continue;
                tensor_word ext = w;
                if (left)
                    ext.insert(ext.begin(), {family_, j});
                else
                    ext.emplace_back(family_, j);
                add(ext, local_[j][0]);
            }
        }
        if (overflow_[b]) col.clear();
    }

    std::size_t family_;
    face side_;
    matrix_t local_;
    std::vector<std::vector<std::pair<std::size_t, rational>>> columns_;
    std::vector<bool> overflow_;
};

inline lifted_operator lift(const free_product_space& space, std::size_t family, face side,
                            matrix_t local) {
    return lifted_operator(space, family, side, std::move(local));
}

/// Applies the operator word right to left to xi and evaluates both states.
inline phi_psi oracle_moment(const free_product_space& space,
                             const std::vector<const lifted_operator*>& ops) {
    if (ops.size() > space.truncation())
        throw truncation_overflow_error("operator word longer than the truncation");
    sparse_vec v{{0, rational(1)}};
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = (*it)->apply(v);
    return {space.phi(v), space.psi(v)};
}

/// A concrete matrix model for one family: the local space plus named left
/// and right generator matrices.
struct family_model {
    two_state_space space;
    std::vector<std::pair<std::string, matrix_t>> left_generators;
    std::vector<std::pair<std::string, matrix_t>> right_generators;
};

/// Local pair-distribution of one family: moments of operator words in the
/// factor space itself.
inline two_state_distribution local_distribution(const family_model& fm, int family,
                                                 std::size_t degree) {
    std::vector<generator> alphabet;
    std::vector<const matrix_t*> mats;
    for (const auto& [sym, m] : fm.left_generators) {
        alphabet.push_back({sym, family, face::left});
        mats.push_back(&m);
    }
    for (const auto& [sym, m] : fm.right_generators) {
        alphabet.push_back({sym, family, face::right});
        mats.push_back(&m);
    }
    const std::size_t d = fm.space.dim;
    std::map<word_t, phi_psi> moments;
    for (const auto& w : all_words(alphabet.size(), degree)) {
        std::vector<rational> v(d, 0);
        v[0] = 1;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const auto& m = *mats[*it];
            std::vector<rational> nv(d, 0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) nv[i] += m[i][j] * v[j];
            v = std::move(nv);
        }
        rational ph = 0;
        for (std::size_t i = 0; i < d; ++i) ph += fm.space.phi_covector[i] * v[i];
        moments.emplace(w, phi_psi{ph, v[0]});
    }
    return two_state_distribution(std::move(alphabet), degree, std::move(moments));
}

/// Random rational model: one left and one right generator per family.
/// When skew_phi is set the covector has nonzero entries beyond the first,
/// exercising ker(phi) != complement.
inline std::vector<family_model> random_model(rng& gen, std::size_t families, std::size_t dim,
                                              bool skew_phi) {
    std::vector<family_model> out;
    for (std::size_t k = 0; k < families; ++k) {
        std::vector<rational> cov{1};
        for (std::size_t i = 1; i < dim; ++i)
            cov.push_back(skew_phi ? gen.small_rational(2, 2) : rational(0));
        family_model fm;
        fm.space = two_state_space(dim, std::move(cov));
        auto rand_matrix = [&]() {
            matrix_t m(dim, std::vector<rational>(dim));
            for (auto& row : m)
                for (auto& x : row) x = gen.small_rational(2, 2);
            return m;
        };
        fm.left_generators.emplace_back("L" + std::to_string(k), rand_matrix());
        fm.right_generators.emplace_back("R" + std::to_string(k), rand_matrix());
        out.push_back(std::move(fm));
    }
    return out;
}

}  // namespace cbifree
