// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Everything rational-mode is checked for exact equality; the
// float-mode limit experiments use the stated windows.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <cbifree/cbifree.hpp>

#include "support.hpp"

using namespace cbifree;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

int failures = 0;

void run(int number, const std::string& name, const std::function<void(outcome&)>& body) {
    outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%.1f s)%s%s\n", out.pass ? "PASS" : "FAIL", number,
                name.c_str(), secs, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
}

// ---------- criterion 1: lattice suite ----------

void lattice_suite(outcome& out) {
    for (std::size_t n = 1; n <= 8; ++n)
        for (const auto& chi : testutil::all_chi_maps(n)) {
            auto lattice = enumerate_bnc(chi);
            out.expect(lattice.size() == testutil::catalan(static_cast<unsigned>(n)),
                       "|BNC| != Catalan at chi=" + chi.str());
            if (n <= 6) {
                std::size_t brute = 0;
                auto pos = chi.positions();
                for (const auto& p : testutil::all_set_partitions(n))
                    if (is_noncrossing_under(p, pos)) ++brute;
                out.expect(brute == lattice.size(), "brute-force count mismatch at " + chi.str());
            }
            if (!out.pass) return;
        }
    // Möbius convolution identity on every interval, n <= 6
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& chi : testutil::all_chi_maps(n)) {
            auto lattice = enumerate_bnc(chi);
            const std::size_t sz = lattice.size();
            std::vector<std::vector<bool>> leq(sz, std::vector<bool>(sz));
            for (std::size_t a = 0; a < sz; ++a)
                for (std::size_t b = 0; b < sz; ++b) leq[a][b] = lattice[a].leq(lattice[b]);
            std::vector<std::size_t> order(sz);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return lattice[a].num_blocks() < lattice[b].num_blocks();
            });
            for (std::size_t p = 0; p < sz; ++p) {
                // mu(tau, pi) for every tau <= pi by the descending recursion
                std::vector<rational> mu(sz);
                for (auto i : order) {
                    if (!leq[i][p]) continue;
                    rational val = (i == p) ? 1 : 0;
                    for (auto j : order)
                        if (j != i && leq[i][j] && leq[j][p]) val -= mu[j];
                    mu[i] = val;
                }
                for (std::size_t s = 0; s < sz; ++s) {
                    if (!leq[s][p]) continue;
                    rational sum = 0;
                    for (std::size_t t = 0; t < sz; ++t)
                        if (leq[s][t] && leq[t][p]) sum += mu[t];
                    out.expect(sum == (s == p ? 1 : 0),
                               "Mobius convolution fails at chi=" + chi.str());
                    if (!out.pass) return;
                }
                // spot-check the library's interval recursion
                if (p % 7 == 0)
                    for (std::size_t s = 0; s < sz; s += 5)
                        if (leq[s][p])
                            out.expect(mobius_bnc(lattice[s], lattice[p]) == mu[s],
                                       "library Mobius disagrees at chi=" + chi.str());
            }
        }
}

// ---------- criterion 2: inversion suite ----------

void inversion_suite(outcome& out) {
    rng gen(2024);
    bnc_context ctx;
    for (int trial = 0; trial < 50 && out.pass; ++trial) {
        std::vector<generator> alphabet{{"l", 0, face::left}, {"r", 0, face::right}};
        const bool with_unit = trial % 5 == 0;
        if (with_unit) alphabet.push_back({"u", 0, trial % 2 ? face::left : face::right, true});
        auto dist = random_distribution(gen, alphabet, 6);
        auto table = cumulant_table::from_distribution(dist, 6);
        for (const auto& w : all_words(2, 6)) {
            auto m = cumulants_to_moments(table, w, dist.chi_of(w), ctx);
            out.expect(m.phi == dist.phi(w) && m.psi == dist.psi(w),
                       "roundtrip fails at trial " + std::to_string(trial));
            if (!out.pass) return;
        }
        if (with_unit) {
            cumulant_calculator calc(dist);
            for (const auto& w : all_words(3, 5)) {
                bool has_unit = false;
                for (auto i : w) has_unit = has_unit || dist.alphabet()[i].is_unit;
                if (!has_unit || w.size() < 2) continue;
                out.expect(calc.kappa(w) == 0 && calc.conditional(w) == 0,
                           "unit-argument cumulant does not vanish");
                if (!out.pass) return;
            }
            // a few length-6 words around the unit
            for (const auto& w :
                 {word_t{2, 0, 1, 0, 1, 0}, word_t{0, 1, 2, 1, 0, 1}, word_t{1, 1, 0, 0, 2, 0}}) {
                out.expect(lr_cumulant(dist, w) == 0 && c_cumulant(dist, w) == 0,
                           "unit-argument cumulant does not vanish at length 6");
            }
        }
    }
}

// ---------- criterion 3: diagram suite ----------

void diagram_suite(outcome& out) {
    for (std::size_t n = 1; n <= 5 && out.pass; ++n)
        for (const auto& chi : testutil::all_chi_maps(n)) {
            for (const auto& omega : testutil::all_omega_maps(n, 3)) {
                auto lr_all = enumerate_lr(chi, omega);
                for (const auto& [d, want] : testutil::recursive_cprime(chi, omega)) {
                    auto got = coefficient_cprime_checked(d, lr_all);
                    out.expect(got.in_latcap && got.value == want,
                               "C' mismatch at chi=" + chi.str());
                    if (!out.pass) return;
                }
                // Prop identity for every pi <= omega
                auto lattice = enumerate_bnc(chi);
                const std::size_t sz = lattice.size();
                std::vector<bool> mono(sz);
                for (std::size_t i = 0; i < sz; ++i) {
                    mono[i] = true;
                    for (const auto& b : lattice[i].blocks())
                        for (auto x : b)
                            if (omega[x] != omega[b.front()]) mono[i] = false;
                }
                std::vector<std::size_t> order(sz);
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return lattice[a].num_blocks() > lattice[b].num_blocks();
                });
                for (std::size_t p = 0; p < sz; ++p) {
                    if (!mono[p]) continue;
                    lr_diagram pid(lattice[p].blocks(), {}, chi, omega);
                    rational lhs = 0;
                    for (const auto& sigma : lr_all) {
                        if (sigma.num_top() != 0 || !geq_lat(sigma, pid)) continue;
                        lhs += ((pid.weight() - sigma.weight()) % 2 == 0) ? 1 : -1;
                    }
                    // sum of mu(pi, sigma) over pi <= sigma <= omega
                    rational rhs = 0;
                    std::vector<rational> mu(sz);
                    for (auto i : order) {
                        if (!mono[i] || !lattice[p].leq(lattice[i])) continue;
                        rational val = (i == p) ? 1 : 0;
                        for (auto j : order)
                            if (j != i && mono[j] && lattice[p].leq(lattice[j]) &&
                                lattice[j].leq(lattice[i]))
                                val -= mu[j];
                        mu[i] = val;
                        rhs += val;
                    }
                    out.expect(lhs == rhs, "lateral/Mobius identity fails at chi=" + chi.str());
                    if (!out.pass) return;
                }
            }
        }
}

// ---------- criterion 4: equivalence suite ----------

void equivalence_suite(outcome& out) {
    rng gen(4242);
    const std::size_t cap = 5;
    for (int trial = 0; trial < 20 && out.pass; ++trial) {
        const std::size_t dim = 2 + trial % 2;
        const bool skew = trial % 3 != 0;  // include ker(phi) != complement models
        auto model = random_model(gen, 2, dim, skew);
        free_product_space space({model[0].space, model[1].space}, cap);
        std::vector<lifted_operator> ops;
        for (std::size_t k = 0; k < 2; ++k) {
            ops.emplace_back(space, k, face::left, model[k].left_generators[0].second);
            ops.emplace_back(space, k, face::right, model[k].right_generators[0].second);
        }
        std::vector<two_state_distribution> locals{local_distribution(model[0], 0, cap),
                                                   local_distribution(model[1], 1, cap)};
        auto joint = cbf_join(locals, cap);
        for (const auto& w : all_words(4, cap)) {
            std::vector<const lifted_operator*> seq;
            joint_word jw;
            word_t joint_w;
            for (auto letter : w) {
                seq.push_back(&ops[letter]);
                jw.push_back({letter / 2, letter % 2});
                joint_w.push_back(
                    joint.index_of(locals[letter / 2].alphabet()[letter % 2].symbol));
            }
            auto m = oracle_moment(space, seq);
            auto jm = joint.moment(joint_w);
            bool agree = m.psi == psi_moment_formula(locals, jw) &&
                         m.phi == phi_moment_formula(locals, jw) && m.phi == jm.phi &&
                         m.psi == jm.psi;
            out.expect(agree, "three-way disagreement in trial " + std::to_string(trial));
            if (!out.pass) return;
        }
    }
}

// ---------- criterion 5: series suite ----------

void series_suite(outcome& out) {
    rng gen(555);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        pair_moment_table<rational> t(6);
        for (std::size_t m = 0; m <= 6; ++m)
            for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 6; ++n)
                t.set(m, n, gen.small_rational(), gen.small_rational());
        auto ps = series_from_pair(t);
        auto left = cfree_series_residuals(ps.left);
        auto right = cfree_series_residuals(ps.right);
        auto partial = partial_equation_residuals_of(ps);
        out.expect(left.subordination.is_zero() && left.inverse_form.is_zero() &&
                       right.subordination.is_zero() && right.inverse_form.is_zero(),
                   "c-free series residual nonzero at trial " + std::to_string(trial));
        out.expect(partial.functional.is_zero(),
                   "functional equation residual nonzero at trial " + std::to_string(trial));
        out.expect(partial.reduced.is_zero(),
                   "R-transform decomposition residual nonzero at trial " +
                       std::to_string(trial));
    }
}

// ---------- criterion 6: convolution and limits ----------

void limits_suite(outcome& out) {
    rng gen(666);
    // exact additivity of the partial R-transforms extracted from moments
    for (int trial = 0; trial < 10 && out.pass; ++trial) {
        pair_cumulant_table<rational> x(5), y(5);
        for (std::size_t m = 0; m <= 5; ++m)
            for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 5; ++n) {
                x.set(m, n, gen.small_rational(), gen.small_rational());
                y.set(m, n, gen.small_rational(), gen.small_rational());
            }
        auto sx = series_from_pair(pair_moments_from_cumulants(x));
        auto sy = series_from_pair(pair_moments_from_cumulants(y));
        auto sxy = series_from_pair(pair_moments_from_cumulants(convolve(x, y)));
        out.expect((sxy.r2 - sx.r2 - sy.r2).is_zero() && (sxy.rc2 - sx.rc2 - sy.rc2).is_zero(),
                   "partial R-transforms fail to add under convolution");
        auto half = semigroup_power(x, rational(1, 2));
        auto third = semigroup_power(x, rational(1, 3));
        auto recombined = convolve(half, convolve(third, semigroup_power(x, rational(1, 6))));
        bool semigroup_ok = true;
        for (std::size_t m = 0; m <= 5; ++m)
            for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 5; ++n)
                semigroup_ok = semigroup_ok && recombined.kappa(m, n) == x.kappa(m, n) &&
                               recombined.ck(m, n) == x.ck(m, n);
        out.expect(semigroup_ok, "semigroup law fails");
    }
    // CLT scaling windows
    pair_cumulant_table<double> x(6);
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 6; ++n)
            x.set(m, n, m + n == 1 ? 0.0 : 0.3 + 0.5 * m + 0.2 * n,
                  m + n == 1 ? 0.0 : 1.1 - 0.4 * m + 0.3 * n);
    std::vector<double> grid{100, 400, 1600};
    std::vector<experiment_report> reports;
    for (double n_fold : grid) reports.push_back(clt_experiment(x, n_fold));
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 6; ++n) {
            if (m + n == 2)
                for (const auto& rep : reports)
                    out.expect(rep.observed.kappa(m, n) == x.kappa(m, n) &&
                                   rep.observed.ck(m, n) == x.ck(m, n),
                               "order-2 invariance violated");
            if (m + n == 3 || m + n == 4) {
                std::vector<std::pair<double, double>> kpts, cpts;
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    kpts.emplace_back(grid[g], std::abs(reports[g].observed.kappa(m, n)));
                    cpts.emplace_back(grid[g], std::abs(reports[g].observed.ck(m, n)));
                }
                double want = m + n == 3 ? -0.5 : -1.0;
                double window = m + n == 3 ? 0.05 : 0.1;
                for (const auto& pts : {kpts, cpts}) {
                    auto slope = fit_exponent(pts);
                    out.expect(slope && std::abs(*slope - want) <= window,
                               "CLT exponent out of window at order " + std::to_string(m + n));
                }
            }
        }
    // compound Poisson rates
    atomic_measure sigma({{1, 2, rational(1, 2)}, {-1, 0, rational(1, 2)}});
    atomic_measure sigmap({{2, 1, rational(1, 3)}, {0, 1, rational(2, 3)}});
    std::vector<double> pgrid{100, 1000, 10000};
    std::vector<std::pair<double, double>> perr;
    for (double n_fold : pgrid) {
        auto rep = poisson_limit_experiment(rational(2), sigma, rational(1, 2), sigmap, n_fold, 5);
        double worst = 0;
        for (const auto& row : rep.rows) {
            worst = std::max(worst, row.abs_error);
            // targets must be exactly lambda-weighted sigma moments
            double want = row.conditional ? to_double(rational(2) * sigma.moment(row.m, row.n))
                                          : to_double(rational(1, 2) * sigmap.moment(row.m, row.n));
            out.expect(std::abs(row.target - want) < 1e-12, "Poisson target mismatch");
        }
        perr.emplace_back(n_fold, worst);
    }
    auto pslope = fit_exponent(perr);
    out.expect(pslope && std::abs(*pslope + 1.0) <= 0.1,
               "compound Poisson exponent out of window");
}

// ---------- criterion 7: Levy-Hincin suite ----------

void levy_hincin_suite(outcome& out) {
    // Gaussian quintuple
    rational a(2), b(1), c(1);
    levy_hincin_quintuple gauss{rational(1, 2), rational(-1, 3), atomic_measure({{0, 0, a}}),
                                atomic_measure({{0, 0, b}}), atomic_measure({{0, 0, c}})};
    auto got = lh_to_cumulants(gauss, 6);
    auto want = gaussian_cumulants(6, rational(1, 2), rational(-1, 3), a, b, c, 0, 0, 0);
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 6; ++n)
            out.expect(got.ck(m, n) == want.ck(m, n) && got.kappa(m, n) == 0,
                       "Gaussian quintuple cumulants mismatch");
    // compound Poisson quintuple
    atomic_measure sigma({{1, 2, rational(1, 4)}, {-1, 1, rational(1, 2)},
                          {2, -1, rational(1, 4)}});
    rational lambda(3, 2);
    std::vector<atomic_measure::atom> r1, r2, r;
    for (const auto& at : sigma.atoms) {
        r1.push_back({at.s, at.t, lambda * at.weight * at.s * at.s});
        r2.push_back({at.s, at.t, lambda * at.weight * at.t * at.t});
        r.push_back({at.s, at.t, lambda * at.weight * at.s * at.t});
    }
    levy_hincin_quintuple comp{lambda * sigma.moment(1, 0), lambda * sigma.moment(0, 1),
                               atomic_measure(r1), atomic_measure(r2), atomic_measure(r)};
    auto cp = lh_to_cumulants(comp, 6);
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= 6; ++n)
            out.expect(cp.ck(m, n) == lambda * sigma.moment(m, n),
                       "compound Poisson quintuple cumulants mismatch");
    // invariant enforcement
    auto throws = [](levy_hincin_quintuple q) {
        try {
            lh_to_cumulants(q, 4);
            return false;
        } catch (const invariant_violation_error&) {
            return true;
        }
    };
    out.expect(throws({0, 0, atomic_measure({{1, 1, 1}}), atomic_measure({{1, 1, 1}}),
                       atomic_measure({{1, 1, 2}})}),
               "compatibility (a)/(b) violation not rejected");
    out.expect(throws({0, 0, atomic_measure({{0, 0, 1}}), atomic_measure({{0, 0, 1}}),
                       atomic_measure({{0, 0, 2}})}),
               "origin inequality violation not rejected");
    out.expect(throws({0, 0, atomic_measure({{0, 0, -1}}), atomic_measure({{0, 0, 1}}),
                       atomic_measure({{0, 0, 0}})}),
               "signed diagonal measure not rejected");
}

// ---------- criterion 8: Kac/Loeve fixture ----------

void kac_loeve_suite(outcome& out) {
    const std::size_t degree = 6;
    const rational co(3, 5), si(4, 5);
    const rational ap(1), bp(2), cp(1, 2);
    const rational A(3), B(1), C(-1, 3);
    std::map<word_t, kappa_ck> joint_vals;
    for (const auto& w : all_words(4, degree)) {
        bool mixed = false;
        for (auto i : w)
            if (i / 2 != w.front() / 2) mixed = true;
        kappa_ck v{0, 0};
        if (!mixed && w.size() == 2) {
            int lefts = (w[0] % 2 == 0) + (w[1] % 2 == 0);
            v.kappa = lefts == 2 ? ap : (lefts == 0 ? bp : cp);
            v.ck = lefts == 2 ? A : (lefts == 0 ? B : C);
        }
        joint_vals.emplace(w, v);
    }
    cumulant_table joint_table(degree, std::move(joint_vals));
    std::vector<generator> a_alpha{{"a1l", 1, face::left},
                                   {"a1r", 1, face::right},
                                   {"a2l", 2, face::left},
                                   {"a2r", 2, face::right}};
    auto chi_of = [&](const word_t& w) {
        std::vector<face> f;
        for (auto i : w) f.push_back(a_alpha[i].side);
        return chi_map(f);
    };
    bnc_context ctx;
    std::map<word_t, phi_psi> a_moments;
    for (const auto& w : all_words(4, degree))
        a_moments.emplace(w, cumulants_to_moments(joint_table, w, chi_of(w), ctx));
    two_state_distribution a_joint(a_alpha, degree, a_moments);

    std::vector<generator> b_alpha{{"b3l", 3, face::left},
                                   {"b3r", 3, face::right},
                                   {"b4l", 4, face::left},
                                   {"b4r", 4, face::right}};
    auto coeff = [&](std::size_t b_letter, std::size_t a_pair) -> rational {
        bool first = b_letter / 2 == 0;
        return first ? (a_pair == 0 ? co : si) : (a_pair == 0 ? -si : co);
    };
    std::map<word_t, phi_psi> b_moments;
    for (const auto& w : all_words(4, degree)) {
        phi_psi acc{0, 0};
        for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
            rational cmul = 1;
            word_t aw;
            for (std::size_t pos = 0; pos < w.size(); ++pos) {
                std::size_t a_pair = (mask >> pos) & 1;
                cmul *= coeff(w[pos], a_pair);
                aw.push_back(2 * a_pair + (w[pos] % 2));
            }
            if (cmul == 0) continue;
            auto mm = a_joint.moment(aw);
            acc.phi += cmul * mm.phi;
            acc.psi += cmul * mm.psi;
        }
        b_moments.emplace(w, acc);
    }
    two_state_distribution b_joint(b_alpha, degree, b_moments);
    auto r = is_cbf_independent(b_joint, degree);
    if (!r.independent) {
        std::string w = r.witness ? b_joint.word_string(r.witness->word) : "?";
        out.fail("mixed cumulant survives the rotation at word " + w);
    }
}

}  // namespace

int main() {
    run(1, "lattice suite", lattice_suite);
    run(2, "inversion suite", inversion_suite);
    run(3, "diagram suite", diagram_suite);
    run(4, "equivalence suite", equivalence_suite);
    run(5, "series suite", series_suite);
    run(6, "convolution and limits suite", limits_suite);
    run(7, "Levy-Hincin atomic suite", levy_hincin_suite);
    run(8, "Kac/Loeve rotation fixture", kac_loeve_suite);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
