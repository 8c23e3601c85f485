#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fucik/spectrum.hpp"

namespace fucik {

struct CountEntry {
    int k = 2;
    Branch branch = Branch::Gt;
    bool nonempty = false;
};

/// Per-quadrant census of the curve sets with k >= 2. total counts nonempty
/// (k, branch) sets up to k_stop; at_least marks a truncated count (the last
/// level probed is still occupied). The infinite case is certified
/// symbolically from overlapping positive parts, independently of A_max.
struct QuadrantCount {
    Quadrant quadrant = Quadrant::PP;
    int k_stop = 6;
    double a_max = 1e4;
    std::vector<CountEntry> entries;
    int total = 0;
    bool at_least = false;
    bool symbolically_infinite = false;

    bool nonempty_at(int k, Branch br) const {
        for (const auto& e : entries)
            if (e.k == k && e.branch == br) return e.nonempty;
        return false;
    }
};

/// Probe every level k = 2..k_stop on both branches. Levels must form a
/// ladder: an occupied level k+1 requires both branches occupied at k; a
/// violation signals a tolerance failure, not mathematics, and throws.
inline QuadrantCount count_quadrant(const Problem& prob, Quadrant quadrant, int k_stop = 6,
                                    double a_max = 1e4, const Tolerances& tol = {}) {
    if (k_stop < 2) throw std::invalid_argument("count_quadrant: k_stop must be >= 2");
    QuadrantCount out;
    out.quadrant = quadrant;
    out.k_stop = k_stop;
    out.a_max = a_max;
    const Problem red = quadrant_reduce(prob, quadrant);
    out.symbolically_infinite = positive_parts_overlap(red.m(), red.n());
    for (int k = 2; k <= k_stop; ++k) {
        for (Branch br : {Branch::Gt, Branch::Lt}) {
            const bool ne =
                nonempty_test(prob, k, br, quadrant, a_max, tol) == CurveStatus::Nonempty;
            out.entries.push_back({k, br, ne});
            if (ne) ++out.total;
        }
    }
    for (int k = 2; k < k_stop; ++k) {
        const bool above = out.nonempty_at(k + 1, Branch::Gt) || out.nonempty_at(k + 1, Branch::Lt);
        if (above && !(out.nonempty_at(k, Branch::Gt) && out.nonempty_at(k, Branch::Lt)))
            throw std::runtime_error("count_quadrant: occupied level above a hole in the ladder");
    }
    out.at_least = out.nonempty_at(k_stop, Branch::Gt) || out.nonempty_at(k_stop, Branch::Lt);
    return out;
}

struct AsymptotePair {
    std::optional<double> horizontal, vertical;
};

/// Asymptote levels of a first curve (k = 2). The curve's horizontal level
/// is an eigenvalue of n on the interval truncated by the support edge of m
/// on the side matching the sign of a, and symmetrically for the vertical
/// level; the eigenvalue sign follows the quadrant. Branch Gt truncates at
/// the left edge for the horizontal level, branch Lt at the right (the
/// roles swap for the vertical one). Entries are none when the truncated
/// interval misses the needed signed part.
inline AsymptotePair first_curve_asymptotes(const Problem& prob, Quadrant quadrant, Branch branch,
                                            const Tolerances& tol = eigen_default_tol()) {
    const auto [sa, sb] = quadrant_signs(quadrant);
    const auto em = support_edges(prob.m());
    const auto en = support_edges(prob.n());
    const auto m_begin = sa > 0.0 ? em.positive_begin : em.negative_begin;
    const auto m_end = sa > 0.0 ? em.positive_end : em.negative_end;
    const auto n_begin = sb > 0.0 ? en.positive_begin : en.negative_begin;
    const auto n_end = sb > 0.0 ? en.positive_end : en.negative_end;
    const int kb = sb > 0.0 ? 1 : -1;
    const int ka = sa > 0.0 ? 1 : -1;

    AsymptotePair out;
    if (branch == Branch::Gt) {
        if (m_begin)
            out.horizontal =
                eigenvalue(prob, {WeightSelector::N, *m_begin, prob.t2(), kb}, tol);
        if (n_end)
            out.vertical = eigenvalue(prob, {WeightSelector::M, prob.t1(), *n_end, ka}, tol);
    } else {
        if (m_end)
            out.horizontal = eigenvalue(prob, {WeightSelector::N, prob.t1(), *m_end, kb}, tol);
        if (n_begin)
            out.vertical = eigenvalue(prob, {WeightSelector::M, *n_begin, prob.t2(), ka}, tol);
    }
    return out;
}

struct AsymptoteProbe {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;
};

struct AsymptoteReport {
    double level = 0.0;  // signed horizontal asymptote the probes approach
    std::vector<AsymptoteProbe> probes;
    bool monotone_decreasing = false;
};

/// Sample the first curve at a_probe and two doublings and measure the
/// distance of b to the predicted horizontal asymptote; the residuals must
/// shrink monotonically.
inline AsymptoteReport asymptote_consistency(const Problem& prob, Quadrant quadrant, Branch branch,
                                             double a_probe, const Tolerances& tol = {}) {
    if (!(a_probe > 0.0))
        throw std::invalid_argument("asymptote_consistency: a_probe must be positive");
    const auto level = first_curve_asymptotes(prob, quadrant, branch).horizontal;
    if (!level)
        throw std::runtime_error("asymptote_consistency: horizontal asymptote undefined");
    AsymptoteReport out;
    out.level = *level;
    const Problem red = quadrant_reduce(prob, quadrant);
    const auto [sa, sb] = quadrant_signs(quadrant);
    const double level_red = sb * *level;
    const double bmax = std::max(1e4, 100.0 * std::abs(level_red));
    for (int j = 0; j < 3; ++j) {
        const double a = a_probe * static_cast<double>(1 << j);
        const auto b = solve_b(red, 2, branch, a, bmax, tol);
        if (!b) throw std::runtime_error("asymptote_consistency: probe lost the curve");
        out.probes.push_back({sa * a, sb * *b, std::abs(*b - level_red)});
    }
    out.monotone_decreasing = out.probes[0].residual > out.probes[1].residual &&
                              out.probes[1].residual > out.probes[2].residual;
    return out;
}

/// Compact-support diagnostic for the first weight: the spectrum detaches
/// from the trivial lines (positive gap between every first-curve asymptote
/// and the principal eigenvalue) exactly when the support of m stays away
/// from both endpoints.
struct SupportGapReport {
    bool compact_support = false;
    double gap = 0.0;
    double lambda_ref = 0.0;
    double gap_tol = 0.0;
    bool consistent = false;
};

inline SupportGapReport compact_support_gap(const Problem& prob,
                                            const Tolerances& tol = eigen_default_tol()) {
    SupportGapReport out;
    const double t1 = prob.t1(), t2 = prob.t2();
    const double tiny = 1e-12 * (t2 - t1);
    const auto e = support_edges(prob.m());
    bool interior = true;
    if (e.positive_begin)
        interior = interior && *e.positive_begin > t1 + tiny && *e.positive_end < t2 - tiny;
    if (e.negative_begin)
        interior = interior && *e.negative_begin > t1 + tiny && *e.negative_end < t2 - tiny;
    out.compact_support = interior;

    const auto l1 = eigenvalue(prob, {WeightSelector::M, t1, t2, 1}, tol);
    if (!l1) throw std::runtime_error("compact_support_gap: m has no positive part");
    out.lambda_ref = *l1;
    double min_level = std::numeric_limits<double>::infinity();
    for (Branch br : {Branch::Gt, Branch::Lt}) {
        const auto ap = first_curve_asymptotes(prob, Quadrant::PP, br, tol);
        if (ap.horizontal) min_level = std::min(min_level, *ap.horizontal);
        if (ap.vertical) min_level = std::min(min_level, *ap.vertical);
    }
    out.gap = std::isfinite(min_level) ? min_level - *l1 : 0.0;
    out.gap_tol = 1e-4 * std::abs(*l1);
    out.consistent = (out.gap > out.gap_tol) == out.compact_support;
    return out;
}

/// Everything at once: trivial lines, per-quadrant counts, first-curve
/// asymptotes for every nonempty first curve, and the sign-change counts of
/// the weights.
struct SpectrumReport {
    TrivialLines trivial;
    int m_sign_changes = 0;
    int n_sign_changes = 0;
    std::vector<QuadrantCount> per_quadrant;  // PP, MM, PM, MP order
    struct AsymptoteEntry {
        Quadrant quadrant = Quadrant::PP;
        Branch branch = Branch::Gt;
        double horizontal = 0.0;
        double vertical = 0.0;
    };
    std::vector<AsymptoteEntry> asymptotes;
};

inline SpectrumReport build_report(const Problem& prob, int k_stop = 6, double a_max = 1e4,
                                   const Tolerances& tol = {}) {
    SpectrumReport rep;
    rep.trivial = trivial_lines(prob);
    rep.m_sign_changes = sign_profile(prob.m()).sign_changes;
    rep.n_sign_changes = sign_profile(prob.n()).sign_changes;
    for (Quadrant q : {Quadrant::PP, Quadrant::MM, Quadrant::PM, Quadrant::MP}) {
        rep.per_quadrant.push_back(count_quadrant(prob, q, k_stop, a_max, tol));
        for (Branch br : {Branch::Gt, Branch::Lt}) {
            if (!rep.per_quadrant.back().nonempty_at(2, br)) continue;
            const auto ap = first_curve_asymptotes(prob, q, br);
            if (!ap.horizontal || !ap.vertical)
                throw std::runtime_error(
                    "report: asymptote undefined although the first curve is nonempty");
            rep.asymptotes.push_back({q, br, *ap.horizontal, *ap.vertical});
        }
    }
    return rep;
}

}  // namespace fucik
