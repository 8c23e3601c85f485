#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fucik/analysis.hpp"
#include "fucik/presets.hpp"
#include "fucik/problem.hpp"
#include "fucik/spectrum.hpp"

namespace fucik {

using json = nlohmann::ordered_json;

/// Shortest-round-trip style formatting used in all text outputs, so runs
/// with identical configuration produce byte-identical files.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline const char* branch_name(Branch b) { return b == Branch::Gt ? "gt" : "lt"; }

inline Branch parse_branch(const std::string& s) {
    if (s == "gt") return Branch::Gt;
    if (s == "lt") return Branch::Lt;
    throw std::invalid_argument("branch must be 'gt' or 'lt', got '" + s + "'");
}

inline const char* quadrant_name(Quadrant q) {
    switch (q) {
        case Quadrant::PP: return "pp";
        case Quadrant::MM: return "mm";
        case Quadrant::PM: return "pm";
        default: return "mp";
    }
}

inline Quadrant parse_quadrant(const std::string& s) {
    if (s == "pp") return Quadrant::PP;
    if (s == "mm") return Quadrant::MM;
    if (s == "pm") return Quadrant::PM;
    if (s == "mp") return Quadrant::MP;
    throw std::invalid_argument("quadrant must be one of pp, mm, pm, mp; got '" + s + "'");
}

namespace detail {

inline Weight weight_from_json(const json& j, double t1, double t2, const char* name) {
    if (!j.is_object())
        throw std::invalid_argument(std::string(name) + ": expected an object");
    if (j.contains("preset")) {
        const std::string p = j.at("preset").get<std::string>();
        if (p == "constant") {
            const double v = j.contains("arg") ? j.at("arg").get<double>() : 1.0;
            return Weight::constant(t1, t2, v);
        }
        if (p == "zero") return Weight::zero(t1, t2);
        if (p == "sine") {
            if (j.contains("arg")) {
                const double arg = j.at("arg").get<double>();
                if (std::abs(arg - t2) > 1e-3 * std::max(1.0, std::abs(t2)))
                    throw std::invalid_argument(
                        std::string(name) + ": sine arg disagrees with the interval end");
            }
            Problem s = preset_sine(t2);
            if (std::abs(t1) > 1e-12 * std::max(1.0, std::abs(t2)))
                throw std::invalid_argument(
                    std::string(name) + ": sine preset needs an interval starting at 0");
            return s.m();
        }
        throw std::invalid_argument(std::string(name) + ": unknown function preset '" + p + "'");
    }
    if (!j.contains("breakpoints") || !j.contains("coeffs"))
        throw std::invalid_argument(std::string(name) +
                                    ": need breakpoints+coeffs or a preset");
    const auto breaks = j.at("breakpoints").get<std::vector<double>>();
    std::vector<PolyCoeffs> pieces;
    for (const auto& row : j.at("coeffs")) {
        const auto cs = row.get<std::vector<double>>();
        if (cs.size() > kMaxPolyDegree + 1)
            throw std::invalid_argument(std::string(name) + ": piece degree above " +
                                        std::to_string(kMaxPolyDegree));
        PolyCoeffs c{};
        for (std::size_t i = 0; i < cs.size(); ++i) c[i] = cs[i];
        pieces.push_back(c);
    }
    return Weight(breaks, pieces);
}

}  // namespace detail

/// Problem description schema: {"interval":[T1,T2], "p":F, "q":F, "m":F, "n":F}
/// where each F is {"breakpoints":[...], "coeffs":[[...],...]} with coefficient
/// rows in ascending degree of (t - breakpoint[i]), or a function preset
/// {"preset":"constant"|"zero"|"sine", "arg":...}. p defaults to 1, q to 0;
/// omitting n makes it a one-weight problem (n = m).
inline Problem problem_from_json(const json& j) {
    if (!j.is_object() || !j.contains("interval"))
        throw std::invalid_argument("problem: expected an object with an 'interval'");
    const auto iv = j.at("interval").get<std::vector<double>>();
    if (iv.size() != 2) throw std::invalid_argument("problem: interval must be [T1, T2]");
    const double t1 = iv[0], t2 = iv[1];
    const Weight p = j.contains("p") ? detail::weight_from_json(j.at("p"), t1, t2, "p")
                                     : Weight::constant(t1, t2, 1.0);
    const Weight q = j.contains("q") ? detail::weight_from_json(j.at("q"), t1, t2, "q")
                                     : Weight::zero(t1, t2);
    if (!j.contains("m")) throw std::invalid_argument("problem: missing weight 'm'");
    const Weight m = detail::weight_from_json(j.at("m"), t1, t2, "m");
    if (!j.contains("n")) return Problem::one_weight(p, q, m);
    return Problem(p, q, m, detail::weight_from_json(j.at("n"), t1, t2, "n"));
}

inline Problem problem_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("could not open problem file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument("problem file " + path + ": " + e.what());
    }
    return problem_from_json(j);
}

/// Sample table for one or more traced branches.
/// Columns: k,branch,quadrant,a,b with branch gt/lt and quadrant pp/mm/pm/mp.
inline void write_curve_csv(std::ostream& os, const std::vector<CurveBranch>& curves) {
    os << "k,branch,quadrant,a,b\n";
    for (const auto& c : curves) {
        if (c.status != CurveStatus::Nonempty) continue;
        for (const auto& [a, b] : c.samples)
            os << c.k << ',' << branch_name(c.branch) << ',' << quadrant_name(c.quadrant) << ','
               << format_double(a) << ',' << format_double(b) << '\n';
    }
}

inline json curve_to_json(const CurveBranch& c) {
    json j;
    j["k"] = c.k;
    j["branch"] = branch_name(c.branch);
    j["quadrant"] = quadrant_name(c.quadrant);
    j["status"] = c.status == CurveStatus::Nonempty ? "nonempty" : "empty_at_resolution";
    j["a_max"] = c.a_max;
    if (c.status == CurveStatus::Nonempty) {
        j["nu"] = c.nu;
        j["mu"] = c.mu;
        json samples = json::array();
        for (const auto& [a, b] : c.samples) samples.push_back(json::array({a, b}));
        j["samples"] = samples;
    }
    return j;
}

inline json curves_to_json(const std::vector<CurveBranch>& curves) {
    json arr = json::array();
    for (const auto& c : curves) arr.push_back(curve_to_json(c));
    return arr;
}

inline json count_to_json(const QuadrantCount& qc) {
    json j;
    j["quadrant"] = quadrant_name(qc.quadrant);
    j["k_stop"] = qc.k_stop;
    j["a_max"] = qc.a_max;
    json entries = json::array();
    for (const auto& e : qc.entries) {
        json je;
        je["k"] = e.k;
        je["branch"] = branch_name(e.branch);
        je["nonempty"] = e.nonempty;
        entries.push_back(je);
    }
    j["entries"] = entries;
    j["total"] = qc.total;
    j["at_least"] = qc.at_least;
    j["symbolically_infinite"] = qc.symbolically_infinite;
    return j;
}

inline json report_to_json(const SpectrumReport& rep) {
    json j;
    j["trivial_lines"] = {{"vertical", rep.trivial.vertical},
                          {"horizontal", rep.trivial.horizontal}};
    j["m_sign_changes"] = rep.m_sign_changes;
    j["n_sign_changes"] = rep.n_sign_changes;
    json quad = json::array();
    for (const auto& qc : rep.per_quadrant) quad.push_back(count_to_json(qc));
    j["quadrants"] = quad;
    json asy = json::array();
    for (const auto& a : rep.asymptotes) {
        json ja;
        ja["quadrant"] = quadrant_name(a.quadrant);
        ja["branch"] = branch_name(a.branch);
        ja["horizontal"] = a.horizontal;
        ja["vertical"] = a.vertical;
        asy.push_back(ja);
    }
    j["first_curve_asymptotes"] = asy;
    return j;
}

}  // namespace fucik
