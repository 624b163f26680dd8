// Batch front-end for the c-bi-free calculus: cumulant extraction, joins,
// model verification, series residual checks, and limit experiments on JSON
// inputs.  Exit codes: 0 success, 1 a check failed, 2 usage/schema error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <cbifree/cbifree.hpp>

using namespace cbifree;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw schema_error("parse error in \"" + path + "\": " + e.what());
    }
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw schema_error("cannot write \"" + out_path + "\"");
        out << text << "\n";
    }
}

int run_cumulants(const std::string& in_path, std::size_t degree, const std::string& out_path) {
    auto j = load_json(in_path);
    json result;
    if (j.contains("alphabet")) {
        auto dist = distribution_from_json(j);
        auto d = degree ? degree : dist.degree();
        if (d > dist.degree())
            throw schema_error("requested degree exceeds the stored moments");
        result = word_cumulants_to_json(dist, cumulant_table::from_distribution(dist, d));
    } else {
        auto table = pair_table_from_json(j);
        result = pair_cumulants_to_json(pair_cumulants_from_moments(table));
    }
    emit(result.dump(2), out_path);
    return 0;
}

int run_join(const std::vector<std::string>& in_paths, std::size_t degree,
             const std::string& out_path) {
    std::vector<two_state_distribution> dists;
    std::size_t d = degree;
    for (const auto& p : in_paths) {
        dists.push_back(distribution_from_json(load_json(p)));
        d = d ? std::min(d, dists.back().degree()) : dists.back().degree();
    }
    emit(distribution_to_json(cbf_join(dists, d)).dump(2), out_path);
    return 0;
}

int run_verify(const std::string& in_path, std::uint64_t seed, std::size_t families,
               std::size_t dim, std::size_t cap, bool skew_phi, bool fault_inject,
               const std::string& out_path) {
    auto start = std::chrono::steady_clock::now();
    std::vector<family_model> model;
    if (!in_path.empty()) {
        model = model_from_json(load_json(in_path));
    } else {
        rng gen(seed);
        model = random_model(gen, families, dim, skew_phi);
    }
    std::vector<two_state_space> spaces;
    for (const auto& fm : model) spaces.push_back(fm.space);
    free_product_space space(spaces, cap);
    std::vector<lifted_operator> ops;
    std::vector<joint_letter> letters;
    std::vector<std::string> symbols;
    std::vector<two_state_distribution> locals;
    for (std::size_t k = 0; k < model.size(); ++k) {
        locals.push_back(local_distribution(model[k], static_cast<int>(k), cap));
        std::size_t local_index = 0;
        for (const auto& [sym, m] : model[k].left_generators) {
            ops.emplace_back(space, k, face::left, m);
            letters.push_back({k, local_index++});
            symbols.push_back(sym);
        }
        for (const auto& [sym, m] : model[k].right_generators) {
            ops.emplace_back(space, k, face::right, m);
            letters.push_back({k, local_index++});
            symbols.push_back(sym);
        }
    }
    auto joint = cbf_join(locals, cap);
    if (fault_inject) {
        // corrupt one stored moment on the formula/join side only
        auto v = locals[0].moment({0});
        v.phi += 1;
        locals[0].set_moment({0}, v);
        auto jv = joint.moment({joint.index_of(symbols[0])});
        jv.phi += 1;
        joint.set_moment({joint.index_of(symbols[0])}, jv);
    }
    json words = json::array();
    std::size_t disagreements = 0;
    for (const auto& w : all_words(ops.size(), cap)) {
        std::vector<const lifted_operator*> seq;
        joint_word jw;
        word_t joint_w;
        std::string label;
        for (auto i : w) {
            seq.push_back(&ops[i]);
            jw.push_back(letters[i]);
            joint_w.push_back(joint.index_of(symbols[i]));
            if (!label.empty()) label += ',';
            label += symbols[i];
        }
        auto m = oracle_moment(space, seq);
        auto fpsi = psi_moment_formula(locals, jw);
        auto fphi = phi_moment_formula(locals, jw);
        auto jm = joint.moment(joint_w);
        bool agree = m.phi == fphi && m.psi == fpsi && m.phi == jm.phi && m.psi == jm.psi;
        if (!agree) ++disagreements;
        words.push_back(json{{"word", label},
                             {"agree", agree},
                             {"oracle_phi", rational_to_string(m.phi)},
                             {"oracle_psi", rational_to_string(m.psi)},
                             {"formula_phi", rational_to_string(fphi)},
                             {"formula_psi", rational_to_string(fpsi)},
                             {"join_phi", rational_to_string(jm.phi)},
                             {"join_psi", rational_to_string(jm.psi)}});
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json report{{"cap", cap},
                {"families", model.size()},
                {"fault_inject", fault_inject},
                {"all_agree", disagreements == 0},
                {"disagreements", disagreements},
                {"elapsed_seconds", elapsed},
                {"words", words}};
    emit(report.dump(2), out_path);
    return disagreements == 0 ? 0 : 1;
}

int run_residuals(const std::string& in_path, const std::string& mode,
                  const std::string& out_path) {
    auto table = pair_table_from_json(load_json(in_path));
    json report;
    bool ok = true;
    if (mode == "rational") {
        auto ps = series_from_pair(table);
        auto left = cfree_series_residuals(ps.left);
        auto right = cfree_series_residuals(ps.right);
        auto partial = partial_equation_residuals_of(ps);
        auto record = [&](const std::string& name, bool zero) {
            report[name] = zero ? "0" : "nonzero";
            ok = ok && zero;
        };
        record("cfree_subordination_left", left.subordination.is_zero());
        record("cfree_inverse_left", left.inverse_form.is_zero());
        record("cfree_subordination_right", right.subordination.is_zero());
        record("cfree_inverse_right", right.inverse_form.is_zero());
        record("partial_functional_equation", partial.functional.is_zero());
        record("partial_r_decomposition", partial.reduced.is_zero());
    } else {
        pair_moment_table<double> t(table.degree());
        for (std::size_t m = 0; m <= table.degree(); ++m)
            for (std::size_t n = (m == 0 ? 1 : 0); m + n <= table.degree(); ++n)
                t.set(m, n, to_double(table.mphi(m, n)), to_double(table.mpsi(m, n)));
        auto ps = series_from_pair(t);
        auto max1 = [](const series1<double>& s) {
            double v = 0;
            for (std::size_t k = 0; k <= s.order(); ++k) v = std::max(v, std::abs(s.coeff(k)));
            return v;
        };
        auto max2 = [](const series2<double>& s) {
            double v = 0;
            for (std::size_t m = 0; m <= s.order(); ++m)
                for (std::size_t n = 0; m + n <= s.order(); ++n)
                    v = std::max(v, std::abs(s.coeff(m, n)));
            return v;
        };
        auto left = cfree_series_residuals(ps.left);
        auto right = cfree_series_residuals(ps.right);
        auto partial = partial_equation_residuals_of(ps);
        const double tol = 1e-9;
        auto record = [&](const std::string& name, double v) {
            report[name] = v;
            ok = ok && v <= tol;
        };
        record("cfree_subordination_left", max1(left.subordination));
        record("cfree_inverse_left", max1(left.inverse_form));
        record("cfree_subordination_right", max1(right.subordination));
        record("cfree_inverse_right", max1(right.inverse_form));
        record("partial_functional_equation", max2(partial.functional));
        record("partial_r_decomposition", max2(partial.reduced));
    }
    report["mode"] = mode;
    report["degree"] = table.degree();
    report["ok"] = ok;
    emit(report.dump(2), out_path);
    return ok ? 0 : 1;
}

struct limit_rows {
    json rows = json::array();
    std::string csv = "m,n,family,target,exponent";
    std::vector<double> grid;
};

int run_limits(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
    auto cfg = load_json(in_path);
    std::string kind;
    std::vector<double> grid;
    std::size_t degree;
    try {
        kind = cfg.at("experiment").get<std::string>();
        for (const auto& x : cfg.at("N")) grid.push_back(x.get<double>());
        degree = cfg.at("degree").get<std::size_t>();
    } catch (const json::exception& e) {
        throw schema_error(std::string("experiment config: ") + e.what());
    }
    if (grid.empty()) throw schema_error("experiment needs a nonempty N grid");
    std::vector<experiment_report> reports;
    if (kind == "clt") {
        auto data = to_double(pair_cumulants_from_json(cfg.at("cumulants")));
        for (double n_fold : grid) reports.push_back(clt_experiment(data, n_fold));
    } else if (kind == "poisson") {
        auto lambda = rational_from_string(cfg.at("lambda").get<std::string>());
        auto lambdap = rational_from_string(cfg.at("lambda_prime").get<std::string>());
        auto sigma = measure_from_json(cfg.at("sigma"));
        auto sigmap = measure_from_json(cfg.at("sigma_prime"));
        for (double n_fold : grid)
            reports.push_back(
                poisson_limit_experiment(lambda, sigma, lambdap, sigmap, n_fold, degree));
    } else {
        throw schema_error("unknown experiment \"" + kind + "\"");
    }
    json rows = json::array();
    std::ostringstream csv;
    csv << "m,n,family,N,target,observed,abs_error,exponent\n";
    for (std::size_t r = 0; r < reports.front().rows.size(); ++r) {
        const auto& first = reports.front().rows[r];
        std::vector<std::pair<double, double>> pts;
        json per_n = json::array();
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto& row = reports[g].rows[r];
            pts.emplace_back(grid[g], row.abs_error);
            per_n.push_back(json{{"N", grid[g]},
                                 {"observed", row.observed},
                                 {"abs_error", row.abs_error}});
        }
        auto slope = fit_exponent(pts);
        json jrow{{"m", first.m},
                  {"n", first.n},
                  {"family", first.conditional ? "cK" : "kappa"},
                  {"target", first.target},
                  {"points", per_n}};
        if (slope) jrow["exponent"] = *slope;
        rows.push_back(jrow);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto& row = reports[g].rows[r];
            csv << first.m << ',' << first.n << ',' << (first.conditional ? "cK" : "kappa")
                << ',' << grid[g] << ',' << row.target << ',' << row.observed << ','
                << row.abs_error;
            if (slope)
                csv << ',' << *slope << '\n';
            else
                csv << ",\n";
        }
    }
    if (format == "csv") {
        emit(csv.str(), out_path);
    } else {
        emit(json{{"experiment", kind}, {"degree", degree}, {"rows", rows}}.dump(2), out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditionally bi-free combinatorics toolkit"};
    app.require_subcommand(1);

    std::vector<std::string> in_paths;
    std::string out_path, format = "json", mode = "rational";
    std::size_t degree = 0, cap = 4, families = 2, dim = 3;
    std::uint64_t seed = 42;
    bool fault_inject = false, skew_phi = false;

    auto* cumulants =
        app.add_subcommand("cumulants", "extract kappa and K tables from moments");
    cumulants->add_option("--in", in_paths, "distribution or pair moment table JSON")
        ->required();
    cumulants->add_option("--degree", degree, "truncation degree (word mode)");
    cumulants->add_option("--out", out_path, "output path (default stdout)");

    auto* join = app.add_subcommand("join", "c-bi-free join of distributions");
    join->add_option("--in", in_paths, "input distributions")->required()->expected(-1);
    join->add_option("--degree", degree, "degree of the joint distribution");
    join->add_option("--out", out_path, "output path");

    auto* verify = app.add_subcommand(
        "verify", "three-way oracle/diagram/cumulant agreement on a matrix model");
    verify->add_option("--in", in_paths, "model JSON (otherwise a random model)");
    verify->add_option("--seed", seed, "seed for the random model");
    verify->add_option("--families", families, "random model families");
    verify->add_option("--dim", dim, "random model dimension");
    verify->add_option("--cap", cap, "word length cap");
    verify->add_flag("--skew-phi", skew_phi, "random covector with ker(phi) != complement");
    verify->add_flag("--fault-inject", fault_inject, "corrupt one moment to force failure");
    verify->add_option("--out", out_path, "output path");

    auto* residuals =
        app.add_subcommand("residuals", "series functional-equation residuals");
    residuals->add_option("--in", in_paths, "pair moment table JSON")->required();
    residuals->add_option("--mode", mode, "rational | float")
        ->check(CLI::IsMember({"rational", "float"}));
    residuals->add_option("--out", out_path, "output path");

    auto* limits = app.add_subcommand("limits", "limit theorem experiments");
    limits->add_option("--in", in_paths, "experiment config JSON")->required();
    limits->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    limits->add_option("--out", out_path, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cumulants->parsed()) return run_cumulants(in_paths.at(0), degree, out_path);
        if (join->parsed()) return run_join(in_paths, degree, out_path);
        if (verify->parsed())
            return run_verify(in_paths.empty() ? "" : in_paths.at(0), seed, families, dim, cap,
                              skew_phi, fault_inject, out_path);
        if (residuals->parsed()) return run_residuals(in_paths.at(0), mode, out_path);
        if (limits->parsed()) return run_limits(in_paths.at(0), format, out_path);
    } catch (const schema_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
