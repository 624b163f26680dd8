#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "bnc.hpp"
#include "cumulants.hpp"
#include "distribution.hpp"
#include "limits.hpp"
#include "lr.hpp"
#include "pair_cumulants.hpp"
#include "repr.hpp"
#include "series.hpp"

namespace cbifree {

using json = nlohmann::json;

// ---- partitions and diagrams (1-based indices on the wire) ----

inline json partition_to_json(const bnc_partition& pi) {
    json blocks = json::array();
    for (const auto& b : pi.blocks()) {
        json jb = json::array();
        for (auto i : b) jb.push_back(i + 1);
        blocks.push_back(jb);
    }
    return json{{"blocks", blocks}, {"chi", pi.chi().str()}};
}

inline bnc_partition partition_from_json(const json& j) {
    try {
        chi_map chi(j.at("chi").get<std::string>());
        blocks_t blocks;
        for (const auto& jb : j.at("blocks")) {
            std::vector<std::size_t> b;
            for (const auto& i : jb) b.push_back(i.get<std::size_t>() - 1);
            blocks.push_back(std::move(b));
        }
        return bnc_partition(std::move(blocks), std::move(chi));
    } catch (const json::exception& e) {
        throw schema_error(std::string("partition: ") + e.what());
    }
}

inline json diagram_to_json(const lr_diagram& d) {
    json blocks = json::array();
    for (const auto& b : d.blocks()) {
        json jb = json::array();
        for (auto i : b) jb.push_back(i + 1);
        blocks.push_back(jb);
    }
    return json{{"blocks", blocks},
                {"top", d.top()},
                {"chi", d.chi().str()},
                {"omega", d.omega().colours()}};
}

// ---- distributions ----

inline json distribution_to_json(const two_state_distribution& dist) {
    json alphabet = json::array();
    for (const auto& g : dist.alphabet()) {
        json jg{{"symbol", g.symbol},
                {"family", g.family},
                {"face", g.side == face::left ? "L" : "R"}};
        if (g.is_unit) jg["unit"] = true;
        alphabet.push_back(jg);
    }
    json moments = json::object();
    for (const auto& [w, m] : dist.moments())
        moments[dist.word_string(w)] =
            json{{"phi", rational_to_string(m.phi)}, {"psi", rational_to_string(m.psi)}};
    return json{{"alphabet", alphabet}, {"degree", dist.degree()}, {"moments", moments}};
}

inline two_state_distribution distribution_from_json(const json& j) {
    try {
        std::vector<generator> alphabet;
        for (const auto& jg : j.at("alphabet")) {
            generator g;
            g.symbol = jg.at("symbol").get<std::string>();
            g.family = jg.at("family").get<int>();
            auto f = jg.at("face").get<std::string>();
            if (f != "L" && f != "R") throw schema_error("face must be \"L\" or \"R\"");
            g.side = f == "L" ? face::left : face::right;
            g.is_unit = jg.value("unit", false);
            alphabet.push_back(std::move(g));
        }
        auto degree = j.at("degree").get<std::size_t>();
        auto index_of = [&](const std::string& sym) -> std::size_t {
            for (std::size_t i = 0; i < alphabet.size(); ++i)
                if (alphabet[i].symbol == sym) return i;
            throw schema_error("moment key uses unknown symbol \"" + sym + "\"");
        };
        std::map<word_t, phi_psi> moments;
        for (const auto& [key, val] : j.at("moments").items()) {
            word_t w;
            std::size_t pos = 0;
            if (!key.empty()) {
                for (;;) {
                    auto comma = key.find(',', pos);
                    w.push_back(index_of(key.substr(pos, comma - pos)));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            if (w.empty()) continue;  // the empty word is implicit
            moments[w] = phi_psi{rational_from_string(val.at("phi").get<std::string>()),
                                 rational_from_string(val.at("psi").get<std::string>())};
        }
        return two_state_distribution(std::move(alphabet), degree, std::move(moments));
    } catch (const json::exception& e) {
        throw schema_error(std::string("distribution: ") + e.what());
    }
}

// ---- pair moment and cumulant tables ----

inline std::string mn_key(std::size_t m, std::size_t n) {
    return std::to_string(m) + "," + std::to_string(n);
}

inline std::pair<std::size_t, std::size_t> parse_mn(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw schema_error("expected an \"m,n\" key");
    try {
        return {std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))};
    } catch (const std::exception&) {
        throw schema_error("malformed \"m,n\" key \"" + key + "\"");
    }
}

inline json pair_table_to_json(const pair_moment_table<rational>& t) {
    json moments = json::object();
    for (std::size_t m = 0; m <= t.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= t.degree(); ++n)
            moments[mn_key(m, n)] = json{{"phi", rational_to_string(t.mphi(m, n))},
                                         {"psi", rational_to_string(t.mpsi(m, n))}};
    return json{{"degree", t.degree()}, {"moments", moments}};
}

inline pair_moment_table<rational> pair_table_from_json(const json& j) {
    try {
        pair_moment_table<rational> t(j.at("degree").get<std::size_t>());
        for (const auto& [key, val] : j.at("moments").items()) {
            auto [m, n] = parse_mn(key);
            if (m + n == 0) continue;
            t.set(m, n, rational_from_string(val.at("phi").get<std::string>()),
                  rational_from_string(val.at("psi").get<std::string>()));
        }
        return t;
    } catch (const json::exception& e) {
        throw schema_error(std::string("pair moment table: ") + e.what());
    }
}

inline json pair_cumulants_to_json(const pair_cumulant_table<rational>& t) {
    json cumulants = json::object();
    for (std::size_t m = 0; m <= t.degree(); ++m)
        for (std::size_t n = (m == 0 ? 1 : 0); m + n <= t.degree(); ++n)
            cumulants[mn_key(m, n)] = json{{"kappa", rational_to_string(t.kappa(m, n))},
                                           {"cK", rational_to_string(t.ck(m, n))}};
    return json{{"degree", t.degree()}, {"cumulants", cumulants}};
}

inline pair_cumulant_table<rational> pair_cumulants_from_json(const json& j) {
    try {
        pair_cumulant_table<rational> t(j.at("degree").get<std::size_t>());
        for (const auto& [key, val] : j.at("cumulants").items()) {
            auto [m, n] = parse_mn(key);
            t.set(m, n, rational_from_string(val.at("kappa").get<std::string>()),
                  rational_from_string(val.at("cK").get<std::string>()));
        }
        return t;
    } catch (const json::exception& e) {
        throw schema_error(std::string("pair cumulant table: ") + e.what());
    }
}

inline json word_cumulants_to_json(const two_state_distribution& dist,
                                   const cumulant_table& table) {
    json cumulants = json::object();
    for (const auto& [w, v] : table.values())
        cumulants[dist.word_string(w)] = json{{"kappa", rational_to_string(v.kappa)},
                                              {"cK", rational_to_string(v.ck)}};
    return json{{"degree", table.degree()}, {"cumulants", cumulants}};
}

// ---- series ----

inline json series_to_json(const series2<rational>& s) {
    json coeffs = json::object();
    for (std::size_t m = 0; m <= s.order(); ++m)
        for (std::size_t n = 0; m + n <= s.order(); ++n)
            if (s.coeff(m, n) != 0) coeffs[mn_key(m, n)] = rational_to_string(s.coeff(m, n));
    return json{{"order", s.order()}, {"coeffs", coeffs}};
}

inline json series_to_json(const series1<rational>& s) {
    json coeffs = json::object();
    for (std::size_t k = 0; k <= s.order(); ++k)
        if (s.coeff(k) != 0) coeffs[mn_key(k, 0)] = rational_to_string(s.coeff(k));
    return json{{"order", s.order()}, {"coeffs", coeffs}};
}

// ---- matrix models ----

inline json model_to_json(const std::vector<family_model>& model) {
    json families = json::array();
    for (const auto& fm : model) {
        json cov = json::array();
        for (const auto& x : fm.space.phi_covector) cov.push_back(rational_to_string(x));
        auto gens = [](const std::vector<std::pair<std::string, matrix_t>>& v) {
            json out = json::object();
            for (const auto& [sym, m] : v) {
                json rows = json::array();
                for (const auto& row : m) {
                    json jr = json::array();
                    for (const auto& x : row) jr.push_back(rational_to_string(x));
                    rows.push_back(jr);
                }
                out[sym] = rows;
            }
            return out;
        };
        families.push_back(json{{"dim", fm.space.dim},
                                {"phi_covector", cov},
                                {"left_generators", gens(fm.left_generators)},
                                {"right_generators", gens(fm.right_generators)}});
    }
    return json{{"families", families}};
}

inline std::vector<family_model> model_from_json(const json& j) {
    try {
        std::vector<family_model> model;
        for (const auto& jf : j.at("families")) {
            family_model fm;
            auto dim = jf.at("dim").get<std::size_t>();
            std::vector<rational> cov;
            for (const auto& x : jf.at("phi_covector"))
                cov.push_back(rational_from_string(x.get<std::string>()));
            fm.space = two_state_space(dim, std::move(cov));
            auto gens = [&](const json& src) {
                std::vector<std::pair<std::string, matrix_t>> out;
                for (const auto& [sym, rows] : src.items()) {
                    matrix_t m;
                    for (const auto& jr : rows) {
                        std::vector<rational> row;
                        for (const auto& x : jr)
                            row.push_back(rational_from_string(x.get<std::string>()));
                        m.push_back(std::move(row));
                    }
                    if (m.size() != dim)
                        throw schema_error("matrix for \"" + sym + "\" must be " +
                                           std::to_string(dim) + "x" + std::to_string(dim));
                    for (const auto& row : m)
                        if (row.size() != dim)
                            throw schema_error("matrix for \"" + sym + "\" must be square");
                    out.emplace_back(sym, std::move(m));
                }
                return out;
            };
            fm.left_generators = gens(jf.at("left_generators"));
            fm.right_generators = gens(jf.at("right_generators"));
            model.push_back(std::move(fm));
        }
        if (model.empty()) throw schema_error("model needs at least one family");
        return model;
    } catch (const json::exception& e) {
        throw schema_error(std::string("model: ") + e.what());
    }
}

// ---- measures and experiment configs ----

inline atomic_measure measure_from_json(const json& j) {
    try {
        std::vector<atomic_measure::atom> atoms;
        for (const auto& ja : j.at("atoms"))
            atoms.push_back({rational_from_string(ja.at(0).get<std::string>()),
                             rational_from_string(ja.at(1).get<std::string>()),
                             rational_from_string(ja.at(2).get<std::string>())});
        return atomic_measure(std::move(atoms));
    } catch (const json::exception& e) {
        throw schema_error(std::string("measure: ") + e.what());
    }
}

inline json measure_to_json(const atomic_measure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms)
        atoms.push_back(json::array({rational_to_string(a.s), rational_to_string(a.t),
                                     rational_to_string(a.weight)}));
    return json{{"atoms", atoms}};
}

}  // namespace cbifree
