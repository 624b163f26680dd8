#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "rational.hpp"

namespace cbifree {

/// Deterministic generator (splitmix64) so seeded reports are byte-identical
/// across platforms; the standard distributions are not.
class rng {
public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Small rational with numerator in [-max_num, max_num] and denominator
    /// in [1, max_den].
    rational small_rational(long max_num = 3, long max_den = 3) {
        return rational(range(-max_num, max_num), range(1, max_den));
    }

private:
    std::uint64_t state_;
};

/// Random extensional distribution over the given alphabet: unit letters get
/// the unit rule, everything else gets small random moments.
inline two_state_distribution random_distribution(rng& gen, std::vector<generator> alphabet,
                                                  std::size_t degree) {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (!alphabet[i].is_unit) live.push_back(i);
    std::map<word_t, phi_psi> moments;
    // enumerate words over the non-unit letters only; the unit rule fills the rest
    std::vector<word_t> layer{word_t{}};
    for (std::size_t len = 1; len <= degree; ++len) {
        std::vector<word_t> next;
        for (const auto& w : layer)
            for (auto a : live) {
                word_t e = w;
                e.push_back(a);
                moments.emplace(e, phi_psi{gen.small_rational(), gen.small_rational()});
                next.push_back(std::move(e));
            }
        layer = std::move(next);
    }
    return two_state_distribution(std::move(alphabet), degree, std::move(moments));
}

}  // namespace cbifree
