// Command-line frontend: load a problem (file or preset), run the solvers,
// emit plot data and reports.
//
// Exit codes: 0 success, 1 configuration error, 2 computation failed or
// nothing found, 3 requested curve empty at the working resolution.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fucik/fucik.hpp"

namespace {

struct GlobalOpts {
    std::string problem_file;
    std::string preset_spec;
    double tol_rel = 0.0;  // 0 = library default
    double tol_abs = 0.0;
    double a_max = 1e4;
    int grid_per_decade = 64;
    std::string out_file;
    std::string format;  // "", "csv", "json"
};

fucik::Problem load_problem(const GlobalOpts& g) {
    const bool has_file = !g.problem_file.empty();
    const bool has_preset = !g.preset_spec.empty();
    if (has_file == has_preset)
        throw std::invalid_argument("need exactly one of --problem FILE or --preset NAME[:ARG]");
    if (has_file) return fucik::problem_from_file(g.problem_file);
    const auto colon = g.preset_spec.find(':');
    const std::string name = g.preset_spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? std::string() : g.preset_spec.substr(colon + 1);
    return fucik::preset_problem(name, arg);
}

void check_tol(double v, const char* name) {
    if (v < 0.0 || v > 1e-2)
        throw std::invalid_argument(std::string(name) + " must be positive and at most 1e-2");
}

fucik::Tolerances shooting_tol(const GlobalOpts& g) {
    fucik::Tolerances t;
    if (g.tol_rel > 0.0) t.rel = g.tol_rel;
    if (g.tol_abs > 0.0) t.abs = g.tol_abs;
    return t;
}

fucik::Tolerances eigen_tol(const GlobalOpts& g) {
    fucik::Tolerances t = fucik::eigen_default_tol();
    if (g.tol_rel > 0.0) t.rel = g.tol_rel;
    if (g.tol_abs > 0.0) t.abs = g.tol_abs;
    return t;
}

/// Stream to --out FILE or stdout.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("could not open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string pick_format(const GlobalOpts& g, const char* dflt) {
    if (g.format.empty()) return dflt;
    if (g.format != "csv" && g.format != "json")
        throw std::invalid_argument("--format must be csv or json");
    return g.format;
}

/// k list syntax: comma-separated integers or A..B ranges, e.g. "1..4,-1".
std::vector<int> parse_k_list(const std::string& spec) {
    std::vector<int> ks;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dots = tok.find("..", 1);  // allow a leading minus
        try {
            if (dots == std::string::npos) {
                std::size_t pos = 0;
                const int v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                ks.push_back(v);
            } else {
                const int a = std::stoi(tok.substr(0, dots));
                const int b = std::stoi(tok.substr(dots + 2));
                const int step = b >= a ? 1 : -1;
                for (int v = a;; v += step) {
                    ks.push_back(v);
                    if (v == b) break;
                }
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad k list entry: '" + tok + "'");
        }
    }
    if (ks.empty()) throw std::invalid_argument("empty k list");
    return ks;
}

int cmd_eigen(const GlobalOpts& g, const std::string& k_spec, const std::string& which_s,
              double sub_t1, double sub_t2) {
    const fucik::Problem prob = load_problem(g);
    const auto ks = parse_k_list(k_spec);
    const auto which =
        which_s == "n" ? fucik::WeightSelector::N : fucik::WeightSelector::M;
    if (which_s != "m" && which_s != "n")
        throw std::invalid_argument("--which must be m or n");
    const double t1 = std::isnan(sub_t1) ? prob.t1() : sub_t1;
    const double t2 = std::isnan(sub_t2) ? prob.t2() : sub_t2;
    const auto tol = eigen_tol(g);

    std::vector<std::pair<int, std::optional<double>>> rows;
    for (int k : ks)
        rows.emplace_back(k, fucik::eigenvalue(prob, {which, t1, t2, k}, tol));

    Output out(g.out_file);
    if (pick_format(g, "csv") == "csv") {
        out.os() << "k,lambda\n";
        for (const auto& [k, lam] : rows)
            out.os() << k << ',' << (lam ? fucik::format_double(*lam) : "none") << '\n';
    } else {
        fucik::json j;
        j["which"] = which_s;
        j["t1"] = t1;
        j["t2"] = t2;
        fucik::json vals = fucik::json::array();
        for (const auto& [k, lam] : rows) {
            fucik::json r;
            r["k"] = k;
            if (lam)
                r["lambda"] = *lam;
            else
                r["lambda"] = nullptr;
            vals.push_back(r);
        }
        j["values"] = vals;
        out.os() << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_zerofn(const GlobalOpts& g, double a, double s_in, const std::string& which_s,
               bool inverse, const std::string& trace_file) {
    const fucik::Problem prob = load_problem(g);
    if (which_s != "m" && which_s != "n")
        throw std::invalid_argument("--which must be m or n");
    const auto which =
        which_s == "n" ? fucik::WeightSelector::N : fucik::WeightSelector::M;
    const auto tol = shooting_tol(g);
    const double s = std::isnan(s_in) ? (inverse ? prob.t2() : prob.t1()) : s_in;

    const fucik::CrossingTime ct =
        inverse ? fucik::zero_function_inverse(prob, which, a, s, tol)
                : fucik::zero_function(prob, which, a, s, tol);

    if (!trace_file.empty()) {
        if (inverse)
            throw std::invalid_argument("--trace is only available for the forward evaluation");
        std::ofstream tf(trace_file);
        if (!tf) throw std::invalid_argument("could not open trace file: " + trace_file);
        tf << "t,u,v\n";
        for (const auto& st : fucik::shot_trace(prob, which, a, s, tol))
            tf << fucik::format_double(st.t) << ',' << fucik::format_double(st.u) << ','
               << fucik::format_double(st.v) << '\n';
    }

    Output out(g.out_file);
    if (pick_format(g, "csv") == "csv") {
        out.os() << "a,s,result\n"
                 << fucik::format_double(a) << ',' << fucik::format_double(s) << ','
                 << (ct.is_finite() ? fucik::format_double(ct.value()) : "beyond_horizon")
                 << '\n';
    } else {
        fucik::json j;
        j["a"] = a;
        j["s"] = s;
        j["inverse"] = inverse;
        if (ct.is_finite())
            j["result"] = ct.value();
        else
            j["result"] = nullptr;
        j["beyond_horizon"] = ct.is_beyond();
        out.os() << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_trace(const GlobalOpts& g, int k, const std::string& branch_s,
              const std::string& quadrant_s) {
    const fucik::Problem prob = load_problem(g);
    const fucik::Quadrant quad = fucik::parse_quadrant(quadrant_s);
    std::vector<fucik::Branch> branches;
    if (branch_s == "gt" || branch_s == "lt")
        branches.push_back(fucik::parse_branch(branch_s));
    else if (branch_s == "both")
        branches = {fucik::Branch::Gt, fucik::Branch::Lt};
    else
        throw std::invalid_argument("--branch must be gt, lt or both");

    fucik::TraceOptions opts;
    opts.a_max = g.a_max;
    opts.points_per_decade = g.grid_per_decade;
    const auto tol = shooting_tol(g);

    std::vector<fucik::CurveBranch> curves;
    bool any_nonempty = false;
    for (const auto br : branches) {
        curves.push_back(fucik::trace_curve(prob, k, br, quad, opts, tol));
        if (curves.back().status == fucik::CurveStatus::Nonempty) any_nonempty = true;
        else
            std::cerr << "status: C_" << k << " " << fucik::branch_name(br) << " "
                      << fucik::quadrant_name(quad) << " empty at resolution A_max="
                      << fucik::format_double(g.a_max) << "\n";
    }

    Output out(g.out_file);
    if (pick_format(g, "csv") == "csv")
        fucik::write_curve_csv(out.os(), curves);
    else
        out.os() << fucik::curves_to_json(curves).dump(2) << '\n';
    return any_nonempty ? 0 : 3;
}

int cmd_report(const GlobalOpts& g, const std::string& quadrant_s, int k_stop) {
    const fucik::Problem prob = load_problem(g);
    const auto tol = shooting_tol(g);
    fucik::SpectrumReport rep;
    if (quadrant_s.empty()) {
        rep = fucik::build_report(prob, k_stop, g.a_max, tol);
    } else {
        // narrowed report: counts and asymptotes for one quadrant only
        const fucik::Quadrant quad = fucik::parse_quadrant(quadrant_s);
        rep.trivial = fucik::trivial_lines(prob);
        rep.m_sign_changes = fucik::sign_profile(prob.m()).sign_changes;
        rep.n_sign_changes = fucik::sign_profile(prob.n()).sign_changes;
        rep.per_quadrant.push_back(fucik::count_quadrant(prob, quad, k_stop, g.a_max, tol));
        const auto& qc = rep.per_quadrant.back();
        for (const auto br : {fucik::Branch::Gt, fucik::Branch::Lt}) {
            if (!qc.nonempty_at(2, br)) continue;
            const auto ap = fucik::first_curve_asymptotes(prob, quad, br);
            if (!ap.horizontal || !ap.vertical)
                throw std::runtime_error("asymptote undefined for a nonempty first curve");
            rep.asymptotes.push_back({quad, br, *ap.horizontal, *ap.vertical});
        }
    }
    Output out(g.out_file);
    if (pick_format(g, "json") != "json")
        throw std::invalid_argument("report supports --format json only");
    out.os() << fucik::report_to_json(rep).dump(2) << '\n';
    return 0;
}

int cmd_count(const GlobalOpts& g, const std::string& quadrant_s, int k_stop) {
    const fucik::Problem prob = load_problem(g);
    const auto tol = shooting_tol(g);
    std::vector<fucik::Quadrant> quads;
    if (quadrant_s.empty())
        quads = {fucik::Quadrant::PP, fucik::Quadrant::MM, fucik::Quadrant::PM,
                 fucik::Quadrant::MP};
    else
        quads.push_back(fucik::parse_quadrant(quadrant_s));

    fucik::json arr = fucik::json::array();
    for (const auto q : quads)
        arr.push_back(fucik::count_to_json(fucik::count_quadrant(prob, q, k_stop, g.a_max, tol)));

    Output out(g.out_file);
    if (pick_format(g, "json") != "json")
        throw std::invalid_argument("count supports --format json only");
    out.os() << arr.dump(2) << '\n';
    return 0;
}

int cmd_asymptote(const GlobalOpts& g, const std::string& quadrant_s,
                  const std::string& branch_s, double a_probe) {
    const fucik::Problem prob = load_problem(g);
    const fucik::Quadrant quad = fucik::parse_quadrant(quadrant_s);
    const fucik::Branch br = fucik::parse_branch(branch_s);
    const auto rep = fucik::asymptote_consistency(prob, quad, br, a_probe, shooting_tol(g));

    Output out(g.out_file);
    if (pick_format(g, "json") != "json")
        throw std::invalid_argument("asymptote supports --format json only");
    fucik::json j;
    j["quadrant"] = fucik::quadrant_name(quad);
    j["branch"] = fucik::branch_name(br);
    j["level"] = rep.level;
    fucik::json probes = fucik::json::array();
    for (const auto& p : rep.probes) {
        fucik::json jp;
        jp["a"] = p.a;
        jp["b"] = p.b;
        jp["residual"] = p.residual;
        probes.push_back(jp);
    }
    j["probes"] = probes;
    j["monotone_decreasing"] = rep.monotone_decreasing;
    out.os() << j.dump(2) << '\n';
    return 0;
}

int cmd_presets(const GlobalOpts& g) {
    Output out(g.out_file);
    if (pick_format(g, "csv") == "json") {
        fucik::json arr = fucik::json::array();
        for (const auto& p : fucik::preset_list()) {
            fucik::json j;
            j["name"] = p.name;
            j["arg"] = p.arg;
            j["summary"] = p.summary;
            arr.push_back(j);
        }
        out.os() << arr.dump(2) << '\n';
    } else {
        for (const auto& p : fucik::preset_list()) {
            out.os() << p.name;
            if (p.arg[0] != '\0') out.os() << ':' << p.arg;
            out.os() << "\n    " << p.summary << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fucik spectrum toolkit: eigenvalues, zero functions, curve traces and reports"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--problem", g.problem_file, "problem description JSON file")
        ->check(CLI::ExistingFile);
    app.add_option("--preset", g.preset_spec, "built-in problem NAME[:ARG] (see 'presets')");
    app.add_option("--tol-rel", g.tol_rel, "relative integration tolerance override");
    app.add_option("--tol-abs", g.tol_abs, "absolute integration tolerance override");
    app.add_option("--a-max", g.a_max, "horizontal search cutoff A_max (>= 1e3)");
    app.add_option("--grid-per-decade", g.grid_per_decade, "trace grid points per decade")
        ->check(CLI::Range(1, 4096));
    app.add_option("--out", g.out_file, "write output to FILE instead of stdout");
    app.add_option("--format", g.format, "output format: csv or json");

    auto* sc_eigen = app.add_subcommand("eigen", "weighted Dirichlet eigenvalues");
    std::string k_spec = "1..4", which = "m";
    double sub_t1 = std::nan(""), sub_t2 = std::nan("");
    sc_eigen->add_option("--k", k_spec, "index list, e.g. 1..4 or -1,1,2");
    sc_eigen->add_option("--which", which, "weight to use: m or n");
    sc_eigen->add_option("--t1", sub_t1, "subinterval start (default: problem start)");
    sc_eigen->add_option("--t2", sub_t2, "subinterval end (default: problem end)");

    auto* sc_zerofn = app.add_subcommand("zerofn", "single zero-function evaluation");
    double zf_a = 1.0, zf_s = std::nan("");
    std::string zf_which = "m", zf_trace;
    bool zf_inverse = false;
    sc_zerofn->add_option("--a", zf_a, "spectral parameter")->required();
    sc_zerofn->add_option("--s", zf_s, "start point (default: interval end matching direction)");
    sc_zerofn->add_option("--which", zf_which, "weight to use: m or n");
    sc_zerofn->add_flag("--inverse", zf_inverse, "backward variant (first zero before s)");
    sc_zerofn->add_option("--trace", zf_trace, "also write the shot trajectory CSV to FILE");

    auto* sc_trace = app.add_subcommand("trace", "trace a spectral curve");
    int tr_k = 2;
    std::string tr_branch = "both", tr_quad = "pp";
    sc_trace->add_option("--k", tr_k, "curve index (>= 2)");
    sc_trace->add_option("--branch", tr_branch, "gt, lt or both");
    sc_trace->add_option("--quadrant", tr_quad, "pp, mm, pm or mp");

    auto* sc_report = app.add_subcommand("report", "full spectrum report");
    std::string rp_quad;
    int rp_kstop = 6;
    sc_report->add_option("--quadrant", rp_quad, "restrict to one quadrant");
    sc_report->add_option("--k-stop", rp_kstop, "count curves up to this index")
        ->check(CLI::Range(2, 64));

    auto* sc_count = app.add_subcommand("count", "nonempty curve counts per quadrant");
    std::string ct_quad;
    int ct_kstop = 6;
    sc_count->add_option("--quadrant", ct_quad, "restrict to one quadrant");
    sc_count->add_option("--k-stop", ct_kstop, "count curves up to this index")
        ->check(CLI::Range(2, 64));

    auto* sc_asym = app.add_subcommand("asymptote", "first-curve asymptote consistency probes");
    std::string as_quad = "pp", as_branch = "gt";
    double as_aprobe = 1e3;
    sc_asym->add_option("--quadrant", as_quad, "pp, mm, pm or mp");
    sc_asym->add_option("--branch", as_branch, "gt or lt");
    sc_asym->add_option("--a-probe", as_aprobe, "smallest probe value of a");

    auto* sc_presets = app.add_subcommand("presets", "list built-in problems");

    // global options (--out, --format, ...) may also follow the subcommand
    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        check_tol(g.tol_rel, "--tol-rel");
        check_tol(g.tol_abs, "--tol-abs");
        if (sc_eigen->parsed()) return cmd_eigen(g, k_spec, which, sub_t1, sub_t2);
        if (sc_zerofn->parsed()) return cmd_zerofn(g, zf_a, zf_s, zf_which, zf_inverse, zf_trace);
        if (sc_trace->parsed()) return cmd_trace(g, tr_k, tr_branch, tr_quad);
        if (sc_report->parsed()) return cmd_report(g, rp_quad, rp_kstop);
        if (sc_count->parsed()) return cmd_count(g, ct_quad, ct_kstop);
        if (sc_asym->parsed()) return cmd_asymptote(g, as_quad, as_branch, as_aprobe);
        if (sc_presets->parsed()) return cmd_presets(g);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fucik::BracketError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
