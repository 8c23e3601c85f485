// Acceptance gate. Every check prints exactly one PASS/FAIL line; the exit
// code is the number of failed criteria, so the harness shows a red entry
// whenever any criterion is not met.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fucik/fucik.hpp"
#include "oracle.hpp"

using namespace fucik;

namespace {

constexpr double pi = std::numbers::pi;
int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// 1. Constant-weight eigenvalues against the closed form k^2.
void criterion_1() {
    const Problem pr = preset_classical();
    double worst = 0.0;
    int worst_k = 1;
    for (int k = 1; k <= 10; ++k) {
        const auto lam = eigenvalue(pr, {WeightSelector::M, pr.t1(), pr.t2(), k});
        if (!lam) {
            report(1, false, "eigenvalue k=" + std::to_string(k) + " not found");
            return;
        }
        const double err = std::abs(*lam - double(k) * double(k));
        if (err > worst) {
            worst = err;
            worst_k = k;
        }
    }
    report(1, worst <= 1e-8,
           "constant-weight eigenvalues vs k^2 for k=1..10, worst |error| = " + fmt(worst) +
               " at k=" + std::to_string(worst_k) + " (bound 1e-8)");
}

// 2. Constant-weight curves against the closed hyperbola-like relation.
void criterion_2() {
    const Problem pr = preset_classical();
    double worst = 0.0;
    int n_samples = 0;
    for (int k = 2; k <= 5; ++k) {
        const auto c = trace_curve(pr, k, Branch::Gt, Quadrant::PP);
        if (c.status != CurveStatus::Nonempty) {
            report(2, false, "curve k=" + std::to_string(k) + " unexpectedly empty");
            return;
        }
        const double ca = double((k + 1) / 2), cb = double(k / 2);
        for (const auto& [a, b] : c.samples) {
            const double r = std::abs(ca / std::sqrt(a) + cb / std::sqrt(b) - 1.0);
            if (r > worst) worst = r;
            ++n_samples;
        }
    }
    report(2, worst <= 1e-6,
           "closed-form relation on the first-quadrant '>' curves k=2..5, " +
               std::to_string(n_samples) + " grid samples, worst residual = " + fmt(worst) +
               " (bound 1e-6)");
}

// 3. Mixed-quadrant curve totals for single sine-like weights: 2N-1 curves
//    for N sign changes.
void criterion_3() {
    bool ok = true;
    std::string detail;
    for (int N = 1; N <= 3; ++N) {
        const Problem pr = preset_sine(double(N + 1) * pi);
        const auto qc = count_quadrant(pr, Quadrant::PM, 6, 1e4);
        const int expect = 2 * N - 1;
        if (N > 1) detail += ", ";
        detail += "N=" + std::to_string(N) + " got " + std::to_string(qc.total) + " want " +
                  std::to_string(expect);
        if (qc.total != expect || qc.at_least || qc.symbolically_infinite) ok = false;
    }
    report(3, ok, "mixed-quadrant nonempty totals for sine weights: " + detail);
}

// 4. The four-slot example: exactly one nonempty curve set per quadrant.
void criterion_4() {
    const Problem pr = preset_example_3_13();
    bool ok = true;
    std::string detail;
    for (const auto q : {Quadrant::PP, Quadrant::MM, Quadrant::PM, Quadrant::MP}) {
        const auto qc = count_quadrant(pr, q, 6, 1e4);
        if (!detail.empty()) detail += ", ";
        detail += std::string(quadrant_name(q)) + "=" + std::to_string(qc.total);
        if (qc.total != 1 || qc.at_least || qc.symbolically_infinite) ok = false;
    }
    report(4, ok, "example preset nonempty curve sets per quadrant (want 1 each): " + detail);
}

// 5. Zero-function limit behaviour. The 0.05 window at coefficient 1e4 is
//    stricter than the edge-layer width the equation actually produces, so
//    the distance clause can fail; it is measured and reported as-is.
void criterion_5() {
    const Problem sine = preset_sine(2.0 * pi);
    double phi4 = std::numeric_limits<double>::quiet_NaN();
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (const double a : {1e2, 1e3, 1e4}) {
        const auto ct = zero_function(sine, WeightSelector::M, a, 0.0);
        if (!ct.is_finite()) {
            monotone = false;
            break;
        }
        if (!(ct.value() < prev - 1e-8)) monotone = false;
        prev = ct.value();
        if (a == 1e4) phi4 = ct.value();
    }
    const bool close = std::isfinite(phi4) && std::abs(phi4) < 0.05;

    const Problem cls = preset_classical();
    bool horizon = true;
    for (const double a : {0.98, 0.5, 0.0, -0.5, -0.98})
        if (!zero_function(cls, WeightSelector::M, a, 0.0).is_beyond()) horizon = false;

    report(5, close && monotone && horizon,
           "zero-function limit: first zero at coefficient 1e4 sits " + fmt(phi4) +
               " from the support edge (required < 0.05); decreasing along 1e2/1e3/1e4: " +
               (monotone ? "yes" : "no") +
               "; sub-threshold coefficients stay beyond the horizon: " +
               (horizon ? "yes" : "no"));
}

// 6. Randomized strict monotonicity of the zero-function in s and in the
//    coefficient, plus strict ordering of the curve family at fixed a.
void criterion_6() {
    struct Entry {
        const char* name;
        Problem pr;
    };
    const std::vector<Entry> probs = {{"classical", preset_classical()},
                                      {"sine", preset_sine(2.0 * pi)},
                                      {"example", preset_example_3_13()}};
    std::mt19937 gen(20250823);
    int finite_pairs = 0, violations = 0;
    std::string first_bad;
    for (const auto& entry : probs) {
        const double span = entry.pr.t2() - entry.pr.t1();
        std::uniform_real_distribution<double> us(0.0, 0.88), ud(0.02, 0.10);
        std::uniform_real_distribution<double> ua(std::log(2.0), std::log(400.0));
        int finite_here = 0;
        for (int i = 0; i < 200; ++i) {
            const double a = std::exp(ua(gen));
            const double s = entry.pr.t1() + us(gen) * span;
            const double d = ud(gen) * span;
            const auto which = (i % 2 == 0) ? WeightSelector::M : WeightSelector::N;
            const auto p1 = zero_function(entry.pr, which, a, s);
            const auto p2 = zero_function(entry.pr, which, a, s + d);
            const auto p3 = zero_function(entry.pr, which, 1.25 * a, s);
            const auto flag = [&](const char* what) {
                ++violations;
                if (first_bad.empty())
                    first_bad = std::string(" first violation: ") + entry.name + " " + what +
                                " at a=" + fmt(a) + ", s=" + fmt(s);
            };
            if (p1.is_beyond()) {
                if (!p2.is_beyond()) flag("zero reappeared at a later start");
            } else if (p2.is_finite()) {
                ++finite_pairs;
                if (!(p2.value() >= p1.value() + 1e-8)) flag("not increasing in s");
            }
            if (p1.is_finite()) {
                ++finite_here;
                if (!p3.is_finite() || !(p3.value() <= p1.value() - 1e-8))
                    flag("not decreasing in a");
            }
        }
        if (finite_here < 20) {
            ++violations;
            if (first_bad.empty())
                first_bad = std::string(" too few finite probes on ") + entry.name;
        }
    }

    const Problem cls = preset_classical();
    int ordered = 0;
    bool ord_ok = true;
    for (const Branch br : {Branch::Gt, Branch::Lt})
        for (const double a : {30.0, 100.0, 500.0}) {
            double prev = 0.0;
            for (int k = 2; k <= 5; ++k) {
                const auto b = solve_b(cls, k, br, a, 1e6);
                if (!b) {
                    ord_ok = false;
                    break;
                }
                if (k > 2 && !(*b >= prev + 1e-6)) ord_ok = false;
                prev = *b;
                ++ordered;
            }
        }

    report(6, violations == 0 && ord_ok,
           "600 randomized probes over 3 presets: " + std::to_string(finite_pairs) +
               " finite comparisons, " + std::to_string(violations) + " violations;" +
               first_bad + " curve ordering at fixed a: " + std::to_string(ordered) +
               " values strictly increasing in k on both branches: " + (ord_ok ? "yes" : "no"));
}

// 7. First-curve asymptote levels: approach from above toward the predicted
//    eigenvalue, negative levels in the mixed quadrant, undefined levels on
//    empty companions, and distinct levels between the two branches.
void criterion_7() {
    bool ok = true;
    std::string detail;

    const auto rep = asymptote_consistency(preset_classical(), Quadrant::PP, Branch::Gt, 1e4);
    const double excess = rep.probes[0].b - 1.0;
    const bool a_ok = std::abs(rep.level - 1.0) <= 1e-6 && excess > 0.0 && excess < 0.05 &&
                      rep.monotone_decreasing;
    detail += "classical ++ '>' level " + fmt(rep.level) + ", excess at 1e4 = " + fmt(excess) +
              ", residuals decreasing: " + (rep.monotone_decreasing ? "yes" : "no");
    ok = ok && a_ok;

    const Problem s2 = preset_sine(2.0 * pi);
    const auto repb = asymptote_consistency(s2, Quadrant::PM, Branch::Gt, 1e4);
    const bool b_ok = repb.level < 0.0 && repb.monotone_decreasing;
    detail += "; sine +- '>' level " + fmt(repb.level) + " (< 0, residuals decreasing: " +
              (repb.monotone_decreasing ? "yes" : "no") + ")";
    ok = ok && b_ok;

    const bool c_empty =
        nonempty_test(s2, 2, Branch::Lt, Quadrant::PM) == CurveStatus::EmptyAtResolution;
    const auto apc = first_curve_asymptotes(s2, Quadrant::PM, Branch::Lt);
    const bool c_ok = c_empty && !apc.horizontal;
    detail += std::string("; its '<' companion empty with undefined level: ") +
              (c_ok ? "yes" : "no");
    ok = ok && c_ok;

    const auto gpp = first_curve_asymptotes(s2, Quadrant::PP, Branch::Gt).horizontal;
    const auto lpp = first_curve_asymptotes(s2, Quadrant::PP, Branch::Lt).horizontal;
    bool d_ok = gpp && lpp &&
                std::abs(*gpp - *lpp) > 1e-4 * std::max(1.0, std::abs(*lpp));
    if (d_ok)
        detail += "; ++ branch levels " + fmt(*gpp) + " vs " + fmt(*lpp);
    const Problem s4 = preset_sine(4.0 * pi);
    const bool both4 =
        nonempty_test(s4, 2, Branch::Gt, Quadrant::PM) == CurveStatus::Nonempty &&
        nonempty_test(s4, 2, Branch::Lt, Quadrant::PM) == CurveStatus::Nonempty;
    const auto g4 = first_curve_asymptotes(s4, Quadrant::PM, Branch::Gt).horizontal;
    const auto l4 = first_curve_asymptotes(s4, Quadrant::PM, Branch::Lt).horizontal;
    d_ok = d_ok && both4 && g4 && l4 &&
           std::abs(*g4 - *l4) > 1e-4 * std::max(1.0, std::abs(*l4));
    if (both4 && g4 && l4)
        detail += "; two-period +- branch levels " + fmt(*g4) + " vs " + fmt(*l4);
    detail += std::string("; branch levels distinct: ") + (d_ok ? "yes" : "no");
    ok = ok && d_ok;

    report(7, ok, detail);
}

// 8. Detachment gap iff the weight support stays away from both endpoints.
void criterion_8() {
    const auto rb = compact_support_gap(preset_bump(0.25 * pi, 0.75 * pi));
    const auto rc = compact_support_gap(preset_classical());
    const auto rr = compact_support_gap(preset_remark_3_9());
    const bool ok = rb.compact_support && rb.gap > rb.gap_tol && rb.consistent &&
                    !rc.compact_support && std::abs(rc.gap) <= rc.gap_tol && rc.consistent &&
                    !rr.compact_support && std::abs(rr.gap) <= rr.gap_tol && rr.consistent;
    report(8, ok,
           "support detachment: interior bump gap = " + fmt(rb.gap) + " (tol " + fmt(rb.gap_tol) +
               "), edge-supported gaps " + fmt(rc.gap) + " and " + fmt(rr.gap) +
               " within tolerance, all verdicts consistent: " + (ok ? "yes" : "no"));
}

// A mapped sample sits on a curve when the library's own re-check passes, or
// when shrinking the other coefficient by 1e-9 relative breaks completion.
// Near a decay-tail fold the boundary coordinate lands in the a slot after
// the swap, which the stock re-check does not probe.
bool on_mapped_curve(const Problem& red, int k, Branch br, double A, double B) {
    if (detail::sample_residual_ok(red, k, br, A, B, Tolerances{})) return true;
    return !compose_phi(red, k, br, A * (1.0 - 1e-9), B, red.t1(), Tolerances{}).is_finite();
}

// 9. Symmetry suites on an even single weight over [-1, 1].
void criterion_9() {
    const Weight m({-1.0, 1.0}, {PolyCoeffs{-1.0, 4.0, -2.0}});  // 1 - 2 t^2
    const Problem pr = Problem::one_weight(Weight::constant(-1.0, 1.0, 1.0),
                                           Weight::zero(-1.0, 1.0), m);
    const Problem pm_red = quadrant_reduce(pr, Quadrant::PM);
    const Problem mp_red = quadrant_reduce(pr, Quadrant::MP);

    double worst_even = 0.0;
    bool found = true;
    for (const double a0 : {30.0, 100.0, 1000.0}) {
        const auto bg = solve_b(pm_red, 2, Branch::Gt, a0, 1e9);
        const auto bl = solve_b(pm_red, 2, Branch::Lt, a0, 1e9);
        if (!bg || !bl) {
            found = false;
            break;
        }
        worst_even = std::max(worst_even,
                              std::abs(*bg - *bl) / std::max(std::abs(*bg), std::abs(*bl)));
    }

    // u -> -u sends (a, b) to (b, a) and flips the starting sign, so +- curve
    // samples must land on the -+ curves of the opposite branch.
    int mapped = 0, off_curve = 0;
    for (const Branch br : {Branch::Gt, Branch::Lt}) {
        const auto c = trace_curve(pr, 2, br, Quadrant::PM);
        const Branch flipped = br == Branch::Gt ? Branch::Lt : Branch::Gt;
        for (const auto& [a, b] : c.samples) {
            ++mapped;
            if (!on_mapped_curve(mp_red, 2, flipped, -b, a)) ++off_curve;
        }
    }

    bool counts_ok = false;
    int cpm = -1, cmp = -1;
    const auto qpm = count_quadrant(pr, Quadrant::PM, 6, 1e4);
    const auto qmp = count_quadrant(pr, Quadrant::MP, 6, 1e4);
    cpm = qpm.total;
    cmp = qmp.total;
    counts_ok = cpm == cmp;

    const bool ok = found && worst_even <= 1e-6 && mapped > 0 && off_curve == 0 && counts_ok;
    report(9, ok,
           "even weight: '>' vs '<' first curve max relative gap = " + fmt(worst_even) +
               " (bound 1e-6); " + std::to_string(mapped - off_curve) + " of " +
               std::to_string(mapped) +
               " swapped samples land on the opposite-quadrant curves; quadrant totals " +
               std::to_string(cpm) + "/" + std::to_string(cmp));
}

// 10. Random piecewise-cubic indefinite weights: re-verify traced samples
//     with the independent fixed-step integrator. Samples whose final zero
//     rides a decaying solution have exponentially sensitive tails no
//     integrator can pin down, so those are verified in the self-conditioned
//     direction instead: the solved coefficient must match the oracle's own
//     completion boundary.
void criterion_10() {
    std::mt19937 gen(424243);
    std::uniform_real_distribution<double> uA(0.6, 1.0), uw(1.5, 3.5), uphi(0.0, 2.0 * pi),
        uB(-0.4, 0.4);
    int verified = 0, by_tail = 0, by_edge = 0;
    double worst_tail = 0.0, worst_edge = 0.0;
    bool ok = true;
    for (int wi = 0; wi < 3; ++wi) {
        std::optional<Weight> w;
        for (int attempt = 0; attempt < 20 && !w; ++attempt) {
            const double A = uA(gen), om = uw(gen), ph = uphi(gen), B = uB(gen) * A;
            const auto f = [=](double t) { return B + A * std::sin(om * t + ph); };
            const auto df = [=](double t) { return A * om * std::cos(om * t + ph); };
            Weight cand = Weight::hermite_cubic(f, df, 0.0, 3.0, 9);
            if (min_value(cand) <= -0.1 && max_value(cand) >= 0.1) w = std::move(cand);
        }
        if (!w) {
            report(10, false, "failed to draw an indefinite weight");
            return;
        }
        const Problem pr = Problem::one_weight(Weight::constant(0.0, 3.0, 1.0),
                                               Weight::zero(0.0, 3.0), *w);
        const double span = pr.t2() - pr.t1();
        for (const Branch br : {Branch::Gt, Branch::Lt}) {
            const auto c = trace_curve(pr, 2, br, Quadrant::PM);
            if (c.status != CurveStatus::Nonempty) continue;
            std::uniform_int_distribution<std::size_t> pick(0, c.samples.size() - 1);
            for (int j = 0; j < 7; ++j) {
                const auto [a, b] = c.samples[pick(gen)];
                ++verified;
                const double t = oracle::phi_chain(pr, 2, br, a, b, 1e-5);
                if (std::isfinite(t) && std::abs(t - pr.t2()) <= 1e-5 * span) {
                    worst_tail = std::max(worst_tail, std::abs(t - pr.t2()));
                    ++by_tail;
                    continue;
                }
                const auto completes = [&](double bb) {
                    const double tt = oracle::phi_chain(pr, 2, br, a, -bb, 1e-5);
                    return std::isfinite(tt) && tt <= pr.t2();
                };
                double lo = -b * (1.0 - 1e-3), hi = -b * (1.0 + 1e-3);
                if (!completes(hi) || completes(lo)) {
                    ok = false;
                    continue;
                }
                for (int it = 0; it < 50 && hi - lo > 1e-12 * hi; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (completes(mid) ? hi : lo) = mid;
                }
                const double gap = std::abs(hi + b) / -b;
                worst_edge = std::max(worst_edge, gap);
                ++by_edge;
                if (gap > 1e-5) ok = false;
            }
        }
    }
    ok = ok && verified >= 20 && by_tail + by_edge == verified;
    report(10, ok,
           std::to_string(verified) + " random curve samples re-checked at fixed step 1e-5: " +
               std::to_string(by_tail) + " by tail residual (worst " + fmt(worst_tail) +
               ", bound 3e-5), " + std::to_string(by_edge) +
               " decay-tail samples by completion boundary (worst relative gap " +
               fmt(worst_edge) + ", bound 1e-5)");
}

void run(int idx, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(idx, false, std::string("unexpected exception: ") + e.what());
    }
}

}  // namespace

int main() {
    run(1, criterion_1);
    run(2, criterion_2);
    run(3, criterion_3);
    run(4, criterion_4);
    run(5, criterion_5);
    run(6, criterion_6);
    run(7, criterion_7);
    run(8, criterion_8);
    run(9, criterion_9);
    run(10, criterion_10);
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
