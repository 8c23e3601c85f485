#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fucik/eigen.hpp"

namespace fucik {

enum class Quadrant { PP, MM, PM, MP };

inline std::pair<double, double> quadrant_signs(Quadrant q) {
    switch (q) {
        case Quadrant::PP: return {1.0, 1.0};
        case Quadrant::MM: return {-1.0, -1.0};
        case Quadrant::PM: return {1.0, -1.0};
        case Quadrant::MP: return {-1.0, 1.0};
    }
    return {1.0, 1.0};
}

/// Flip the weight signs so the requested quadrant maps onto ++ (a point
/// (a, b) of the original problem corresponds to (|a|, |b|) of the reduced
/// one). Applying the same reduction twice restores the weights bit-for-bit.
inline Problem quadrant_reduce(const Problem& prob, Quadrant q) {
    const auto [sa, sb] = quadrant_signs(q);
    if (sa > 0.0 && sb > 0.0) return prob;
    return prob.with_weights(sa > 0.0 ? prob.m() : prob.m().negated(),
                             sb > 0.0 ? prob.n() : prob.n().negated());
}

enum class CurveStatus { Nonempty, EmptyAtResolution };

/// One-sided emptiness check: evaluate the k-fold composition at the corner
/// (A_max, A_max) of the reduced quadrant. Landing strictly inside the
/// interval certifies a curve exists; anything else is "empty at this
/// resolution" (true emptiness is not numerically certifiable).
inline CurveStatus nonempty_test(const Problem& prob, int k, Branch branch, Quadrant quadrant,
                                 double a_max = 1e4, const Tolerances& tol = {}) {
    if (k < 2) throw std::invalid_argument("nonempty_test: k must be >= 2");
    if (!(a_max >= 1e3)) throw std::invalid_argument("nonempty_test: A_max must be >= 1e3");
    const Problem red = quadrant_reduce(prob, quadrant);
    const auto ct = compose_phi(red, k, branch, a_max, a_max, red.t1(), tol);
    const double gap = 1e-6 * (red.t2() - red.t1());
    return (ct.is_finite() && ct.value() < red.t2() - gap) ? CurveStatus::Nonempty
                                                           : CurveStatus::EmptyAtResolution;
}

/// On a quadrant-reduced problem: the unique b in ]0, B_max] with
/// Phi_k(a, b)(T1) = T2, located by bisection on completion of the
/// composition (monotone in b, beyond-horizon ordered above T2); none when
/// even b = B_max fails to complete.
inline std::optional<double> solve_b(const Problem& prob, int k, Branch branch, double a,
                                     double b_max, const Tolerances& tol = {}) {
    if (k < 2) throw std::invalid_argument("solve_b: k must be >= 2");
    if (!(a > 0.0) || !(b_max > 0.0))
        throw std::invalid_argument("solve_b: need a > 0 and B_max > 0");
    const auto completes = [&](double b) {
        return compose_phi(prob, k, branch, a, b, prob.t1(), tol).is_finite();
    };
    if (!completes(b_max)) return std::nullopt;
    double hi = b_max, lo = 0.5 * b_max;
    int guard = 0;
    while (completes(lo)) {
        hi = lo;
        lo *= 0.5;
        if (++guard > 100) return std::nullopt;
    }
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (completes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

struct TraceOptions {
    double a_max = 1e4;
    int points_per_decade = 64;
};

/// A sampled hyperbolic-like curve branch. Samples carry the real quadrant
/// signs; |a| ascends along the grid while |b| strictly descends. nu is the
/// domain edge in a (vertical-asymptote abscissa at this resolution), mu the
/// range edge (b at |a| = a_max).
struct CurveBranch {
    int k = 2;
    Branch branch = Branch::Gt;
    Quadrant quadrant = Quadrant::PP;
    CurveStatus status = CurveStatus::EmptyAtResolution;
    double a_max = 1e4;
    double nu = 0.0;
    double mu = 0.0;
    std::vector<std::pair<double, double>> samples;
};

namespace detail {

/// Re-check one curve sample at halved tolerances. The last stage is allowed
/// to stop just short of the endpoint zero; its horizon value of u must then
/// sit within a few times the endpoint acceptance band.
///
/// Two situations defeat the tail checks even though b is correct. The
/// re-shot endpoint value can drift past the band by integration noise, and
/// when the final zero rides a decaying solution through a defocusing
/// stretch the tail is exponentially sensitive to b, so the chain may close
/// well short of T2 while b is still right to within the exponentially
/// narrow fold window. Both fall back to a boundary certificate: shrinking b
/// by 1e-9 relative must break completion, which pins b to the completion
/// boundary the curve is made of.
inline bool sample_residual_ok(const Problem& red, int k, Branch branch, double a, double b,
                               const Tolerances& tol) {
    const Tolerances half{0.5 * tol.rel, 0.5 * tol.abs, 0.5 * tol.event};
    const double span = red.t2() - red.t1();
    double cur = red.t1();
    for (int i = 0; i < k; ++i) {
        const bool use_m = (branch == Branch::Gt) == (i % 2 == 0);
        const Weight& w = red.weight(use_m ? WeightSelector::M : WeightSelector::N);
        ShotDiagnostics d;
        const auto out = run_shot(red, w, use_m ? a : b, cur, red.t2(), half, &d, nullptr);
        if (!out.crossed) {
            if (i + 1 < k) return false;
            if (std::abs(out.end.u) <= 40.0 * tol.rel * std::max(d.umax, 1e-300)) return true;
            break;
        }
        cur = out.t_cross;
    }
    if (std::abs(cur - red.t2()) <= 1e-7 * span) return true;
    return !compose_phi(red, k, branch, a, b * (1.0 - 1e-9), red.t1(), tol).is_finite();
}

}  // namespace detail

/// Sample the curve b = f_k(a) on a geometric grid from just above the
/// domain edge to a_max. The domain edge is located by bisection on
/// completion of Phi_k(a, a_max); brackets are warm-started from the
/// previous sample, and every emitted sample is re-verified at halved
/// tolerances.
inline CurveBranch trace_curve(const Problem& prob, int k, Branch branch, Quadrant quadrant,
                               const TraceOptions& opts = {}, const Tolerances& tol = {}) {
    CurveBranch out;
    out.k = k;
    out.branch = branch;
    out.quadrant = quadrant;
    out.a_max = opts.a_max;
    if (opts.points_per_decade < 1)
        throw std::invalid_argument("trace_curve: points_per_decade must be positive");
    if (nonempty_test(prob, k, branch, quadrant, opts.a_max, tol) ==
        CurveStatus::EmptyAtResolution)
        return out;
    out.status = CurveStatus::Nonempty;

    const Problem red = quadrant_reduce(prob, quadrant);
    const auto [sa, sb] = quadrant_signs(quadrant);
    const auto a_completes = [&](double a) {
        return compose_phi(red, k, branch, a, opts.a_max, red.t1(), tol).is_finite();
    };

    double nu_hi = opts.a_max, nu_lo = 0.5 * opts.a_max;
    int guard = 0;
    while (a_completes(nu_lo)) {
        nu_hi = nu_lo;
        nu_lo *= 0.5;
        if (++guard > 100)
            throw std::runtime_error("trace_curve: domain edge bracket not found");
    }
    for (int it = 0; it < 60 && nu_hi - nu_lo > 1e-12 * nu_hi; ++it) {
        const double mid = 0.5 * (nu_lo + nu_hi);
        if (a_completes(mid))
            nu_hi = mid;
        else
            nu_lo = mid;
    }
    out.nu = sa * nu_hi;

    const double start = nu_hi * (1.0 + 1e-3);
    const double ratio = std::pow(10.0, 1.0 / opts.points_per_decade);
    double prev_b = 0.0;
    for (int i = 0;; ++i) {
        double a = start * std::pow(ratio, i);
        const bool last = a >= opts.a_max * (1.0 - 1e-12);
        if (last) a = opts.a_max;
        const double bmax = (i == 0) ? opts.a_max : std::min(opts.a_max, prev_b * (1.0 + 1e-6));
        const auto b = solve_b(red, k, branch, a, bmax, tol);
        if (!b) throw std::runtime_error("trace_curve: sample lost the bracket");
        if (!detail::sample_residual_ok(red, k, branch, a, *b, tol))
            throw std::runtime_error("trace_curve: sample failed the residual re-check");
        out.samples.emplace_back(sa * a, sb * *b);
        prev_b = *b;
        if (last) break;
    }
    out.mu = sb * prev_b;
    return out;
}

/// The trivial lines: vertical a-values from the principal eigenvalues of m,
/// horizontal b-values from those of n (one or two of each, as they exist).
struct TrivialLines {
    std::vector<double> vertical;
    std::vector<double> horizontal;
};

inline TrivialLines trivial_lines(const Problem& prob,
                                  const Tolerances& tol = eigen_default_tol()) {
    TrivialLines out;
    const auto pm = principal_pair(prob, WeightSelector::M, prob.t1(), prob.t2(), tol);
    const auto pn = principal_pair(prob, WeightSelector::N, prob.t1(), prob.t2(), tol);
    if (pm.pos) out.vertical.push_back(*pm.pos);
    if (pm.neg) out.vertical.push_back(*pm.neg);
    if (pn.pos) out.horizontal.push_back(*pn.pos);
    if (pn.neg) out.horizontal.push_back(*pn.neg);
    return out;
}

/// Whether the strict-positivity sets of two weights share an open interval.
/// When they do, every composition level survives in the ++ quadrant, so the
/// curve count there is infinite.
inline bool positive_parts_overlap(const Weight& wa, const Weight& wb) {
    const auto pa = sign_profile(wa).positive;
    const auto pb = sign_profile(wb).positive;
    const double tiny = 1e-12 * (wa.t_end() - wa.t_begin());
    for (const auto& i1 : pa)
        for (const auto& i2 : pb)
            if (std::min(i1.hi, i2.hi) - std::max(i1.lo, i2.lo) > tiny) return true;
    return false;
}

/// Exact large-coefficient limits of the alternating compositions: each
/// stage collapses to the first time its weight turns positive, so the
/// limit chain greedily hops to the next needed-sign region. A level is
/// nonempty exactly when its chain value lands strictly inside the interval.
struct LimitCounts {
    int gt_levels = 0;
    int lt_levels = 0;
    bool infinite = false;
    int total = 0;  // predicted nonempty curve sets with k >= 2, both branches
};

inline LimitCounts limit_chain_counts(const Weight& wm, const Weight& wn, int k_cap = 64) {
    LimitCounts out;
    out.infinite = positive_parts_overlap(wm, wn);
    const double t2 = wm.t_end();
    const double tiny = 1e-12 * (wm.t_end() - wm.t_begin());
    const auto pm = sign_profile(wm).positive;
    const auto pn = sign_profile(wn).positive;
    const auto chain = [&](bool start_m) {
        double cur = wm.t_begin();
        int len = 0;
        for (int k = 1; k <= k_cap; ++k) {
            const auto& list = (start_m == (k % 2 == 1)) ? pm : pn;
            const auto nxt = detail::first_signed_time(list, cur);
            if (!nxt || *nxt >= t2 - tiny) break;
            cur = *nxt;
            len = k;
        }
        return len;
    };
    out.gt_levels = chain(true);
    out.lt_levels = chain(false);
    out.total = std::max(0, out.gt_levels - 1) + std::max(0, out.lt_levels - 1);
    return out;
}

}  // namespace fucik
