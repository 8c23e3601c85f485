#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fucik/problem.hpp"

namespace fucik {

enum class Branch { Gt, Lt };

/// Time of the next zero of a shot, or the marker that no zero occurred
/// before the horizon. Beyond-horizon orders above every finite time.
class CrossingTime {
  public:
    static CrossingTime at(double t) { return CrossingTime(t, false); }
    static CrossingTime beyond_horizon() { return CrossingTime(0.0, true); }
    bool is_finite() const { return !beyond_; }
    bool is_beyond() const { return beyond_; }
    double value() const {
        if (beyond_) throw std::logic_error("crossing time is beyond the horizon");
        return t_;
    }
    double order_value() const {
        return beyond_ ? std::numeric_limits<double>::infinity() : t_;
    }

  private:
    CrossingTime(double t, bool b) : t_(t), beyond_(b) {}
    double t_;
    bool beyond_;
};

struct ShotState {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;  // v = p u'
};

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& msg, ShotState at)
        : std::runtime_error(msg + " at t=" + std::to_string(at.t) + " u=" + std::to_string(at.u) +
                             " v=" + std::to_string(at.v)),
          state_(at) {}
    const ShotState& state() const { return state_; }

  private:
    ShotState state_;
};

struct ShotDiagnostics {
    double umax = 0.0;          // largest |u| over the shot, in the current scaling
    double u_at_result = 0.0;   // interpolated u at the reported crossing
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

namespace detail {

struct LocalPoly {
    PolyCoeffs c{};
    double t0 = 0.0;
    double operator()(double t) const { return poly_eval(c, t - t0); }
};

inline LocalPoly local_poly_at(const Weight& w, double t) {
    const std::size_t i = w.piece_index(t);
    return {w.pieces()[i], w.breakpoints()[i]};
}

/// Right-hand side of u' = v/p, v' = (q - a w) u on one breakpoint-free
/// segment, with the covering polynomial pieces resolved once.
struct SegmentRhs {
    LocalPoly p, q, w;
    double a = 0.0;
    std::array<double, 2> operator()(double t, const std::array<double, 2>& y) const {
        return {y[1] / p(t), (q(t) - a * w(t)) * y[0]};
    }
};

// Dormand-Prince 5(4) tableau, embedded-error weights, and the quartic
// dense-output correction weights.
inline constexpr double dp_c2 = 1.0 / 5.0, dp_c3 = 3.0 / 10.0, dp_c4 = 4.0 / 5.0,
                        dp_c5 = 8.0 / 9.0;
inline constexpr double dp_a21 = 1.0 / 5.0;
inline constexpr double dp_a31 = 3.0 / 40.0, dp_a32 = 9.0 / 40.0;
inline constexpr double dp_a41 = 44.0 / 45.0, dp_a42 = -56.0 / 15.0, dp_a43 = 32.0 / 9.0;
inline constexpr double dp_a51 = 19372.0 / 6561.0, dp_a52 = -25360.0 / 2187.0,
                        dp_a53 = 64448.0 / 6561.0, dp_a54 = -212.0 / 729.0;
inline constexpr double dp_a61 = 9017.0 / 3168.0, dp_a62 = -355.0 / 33.0,
                        dp_a63 = 46732.0 / 5247.0, dp_a64 = 49.0 / 176.0,
                        dp_a65 = -5103.0 / 18656.0;
inline constexpr double dp_a71 = 35.0 / 384.0, dp_a73 = 500.0 / 1113.0, dp_a74 = 125.0 / 192.0,
                        dp_a75 = -2187.0 / 6784.0, dp_a76 = 11.0 / 84.0;
inline constexpr double dp_e1 = 71.0 / 57600.0, dp_e3 = -71.0 / 16695.0, dp_e4 = 71.0 / 1920.0,
                        dp_e5 = -17253.0 / 339200.0, dp_e6 = 22.0 / 525.0, dp_e7 = -1.0 / 40.0;
inline constexpr double dp_d1 = -12715105075.0 / 11282082432.0,
                        dp_d3 = 87487479700.0 / 32700410799.0,
                        dp_d4 = -10690763975.0 / 1880347072.0,
                        dp_d5 = 701980252875.0 / 199316789632.0,
                        dp_d6 = -1453857185.0 / 822651844.0,
                        dp_d7 = 69997945.0 / 29380423.0;

/// One accepted step with its interpolating polynomial:
/// y(t0 + th*h) = r1 + th*(r2 + (1-th)*(r3 + th*(r4 + (1-th)*r5))).
struct DenseStep {
    double t0 = 0.0, h = 0.0;
    std::array<double, 2> r1{}, r2{}, r3{}, r4{}, r5{};

    double u(double th) const {
        const double om = 1.0 - th;
        return r1[0] + th * (r2[0] + om * (r3[0] + th * (r4[0] + om * r5[0])));
    }
    std::array<double, 2> state(double th) const {
        const double om = 1.0 - th;
        return {r1[0] + th * (r2[0] + om * (r3[0] + th * (r4[0] + om * r5[0]))),
                r1[1] + th * (r2[1] + om * (r3[1] + th * (r4[1] + om * r5[1])))};
    }
};

/// Locate the zero of the dense interpolant in [th_lo, th_hi] where
/// u(th_lo) >= 0 >= u(th_hi): bisection for the bracket, a secant candidate
/// for the reported point so |u| at the report is driven well below
/// 1e-10 * umax, not just the bracket width below tol.event.
inline std::pair<double, double> refine_crossing(const DenseStep& ds, double th_lo, double u_lo,
                                                 double th_hi, double u_hi, double umax,
                                                 const Tolerances& tol) {
    const double utol = 1e-11 * std::max(umax, 1e-300);
    const double wfloor =
        8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(ds.t0));
    double th_rep = th_hi, u_rep = u_hi;
    for (int it = 0; it < 160; ++it) {
        const double den = u_lo - u_hi;
        double cand = 0.5 * (th_lo + th_hi);
        if (std::isfinite(den) && den > 0.0) {
            const double sec = th_lo + (th_hi - th_lo) * (u_lo / den);
            if (sec > th_lo && sec < th_hi) cand = sec;
        }
        const double u_cand = ds.u(cand);
        if (std::abs(u_cand) <= std::abs(u_rep)) {
            th_rep = cand;
            u_rep = u_cand;
        }
        const double width = (th_hi - th_lo) * std::abs(ds.h);
        if ((width <= tol.event && std::abs(u_rep) <= utol) || width <= wfloor) break;
        const double mid = 0.5 * (th_lo + th_hi);
        const double um = ds.u(mid);
        if (um > 0.0) {
            th_lo = mid;
            u_lo = um;
        } else {
            th_hi = mid;
            u_hi = um;
        }
    }
    return {ds.t0 + th_rep * ds.h, u_rep};
}

struct ShotOutcome {
    bool crossed = false;
    double t_cross = 0.0;
    ShotState end{};
};

/// Integrate one shot from s toward the horizon (either direction), starting
/// at u = 0 with unit |v| signed so u > 0 in the direction of travel, and
/// stop at the first return of u to zero. Restarts at coefficient
/// breakpoints, renormalizes the (linear) state when it grows huge, and
/// accepts a zero at the horizon itself when u lands within the integration
/// accuracy of zero.
inline ShotOutcome run_shot(const Problem& prob, const Weight& w, double a, double s,
                            double horizon, const Tolerances& tol, ShotDiagnostics* diag_out,
                            std::vector<ShotState>* trace) {
    if (!std::isfinite(a)) throw std::invalid_argument("shot: coefficient must be finite");
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0) || !(tol.event > 0.0))
        throw std::invalid_argument("shot: tolerances must be positive");

    const double dir = horizon >= s ? 1.0 : -1.0;
    const double span = prob.t2() - prob.t1();
    // Segments narrower than the step-size underflow floor cannot be integrated,
    // so the zero-width guard must be at least as wide as that floor.
    const double eps_floor = 128.0 * std::numeric_limits<double>::epsilon() *
                             std::max({1.0, std::abs(prob.t1()), std::abs(prob.t2())});
    const double tiny = std::max(1e-14 * span, eps_floor);
    ShotOutcome out;
    out.end = {s, 0.0, dir};
    if ((horizon - s) * dir <= tiny) return out;

    // Travel-ordered cut points: breakpoints strictly inside, then the horizon.
    std::vector<double> cuts;
    if (dir > 0) {
        for (double tm : prob.mesh())
            if (tm > s + tiny && tm < horizon - tiny) cuts.push_back(tm);
    } else {
        for (auto it = prob.mesh().rbegin(); it != prob.mesh().rend(); ++it)
            if (*it < s - tiny && *it > horizon + tiny) cuts.push_back(*it);
    }
    cuts.push_back(horizon);

    ShotDiagnostics diag;
    std::array<double, 2> y{0.0, dir};
    double t = s;
    double umax = 0.0;
    double h_mag = 0.0;
    bool at_start = true;
    bool last_rejected = false;
    bool have_cross = false;
    double cross_t = 0.0, cross_u = 0.0;

    if (trace) trace->push_back({t, y[0], y[1]});

    const double eta_end = std::max(10.0 * tol.rel, 1e-13);

    for (double cut : cuts) {
        if (have_cross) break;
        if ((cut - t) * dir <= tiny) continue;
        const SegmentRhs rhs{local_poly_at(prob.p(), 0.5 * (t + cut)),
                             local_poly_at(prob.q(), 0.5 * (t + cut)),
                             local_poly_at(w, 0.5 * (t + cut)), a};
        std::array<double, 2> k1 = rhs(t, y);

        if (h_mag == 0.0) {
            double s0 = 0.0, s1 = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double sc = tol.abs + tol.rel * std::abs(y[i]);
                s0 += (y[i] / sc) * (y[i] / sc);
                s1 += (k1[i] / sc) * (k1[i] / sc);
            }
            const double d0 = std::sqrt(0.5 * s0), d1 = std::sqrt(0.5 * s1);
            h_mag = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 * span : 0.01 * d0 / d1;
        }

        while (true) {
            const double remaining = (cut - t) * dir;
            if (remaining <= tiny) {
                t = cut;
                break;
            }
            if (diag.accepted + diag.rejected > 5000000)
                throw IntegrationError("shot: step budget exhausted", {t, y[0], y[1]});
            double h_use = std::min(h_mag, remaining);
            const bool hit_end = h_use >= remaining * (1.0 - 1e-12);
            if (hit_end) h_use = remaining;
            if (h_use < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
                throw IntegrationError("shot: step size underflow", {t, y[0], y[1]});
            const double h = dir * h_use;

            std::array<double, 2> y2, y3, y4, y5, y6, y7;
            for (int i = 0; i < 2; ++i) y2[i] = y[i] + h * dp_a21 * k1[i];
            const auto k2 = rhs(t + dp_c2 * h, y2);
            for (int i = 0; i < 2; ++i) y3[i] = y[i] + h * (dp_a31 * k1[i] + dp_a32 * k2[i]);
            const auto k3 = rhs(t + dp_c3 * h, y3);
            for (int i = 0; i < 2; ++i)
                y4[i] = y[i] + h * (dp_a41 * k1[i] + dp_a42 * k2[i] + dp_a43 * k3[i]);
            const auto k4 = rhs(t + dp_c4 * h, y4);
            for (int i = 0; i < 2; ++i)
                y5[i] = y[i] +
                        h * (dp_a51 * k1[i] + dp_a52 * k2[i] + dp_a53 * k3[i] + dp_a54 * k4[i]);
            const auto k5 = rhs(t + dp_c5 * h, y5);
            for (int i = 0; i < 2; ++i)
                y6[i] = y[i] + h * (dp_a61 * k1[i] + dp_a62 * k2[i] + dp_a63 * k3[i] +
                                    dp_a64 * k4[i] + dp_a65 * k5[i]);
            const auto k6 = rhs(t + h, y6);
            for (int i = 0; i < 2; ++i)
                y7[i] = y[i] + h * (dp_a71 * k1[i] + dp_a73 * k3[i] + dp_a74 * k4[i] +
                                    dp_a75 * k5[i] + dp_a76 * k6[i]);
            const auto k7 = rhs(t + h, y7);

            double errsum = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double e = h * (dp_e1 * k1[i] + dp_e3 * k3[i] + dp_e4 * k4[i] +
                                      dp_e5 * k5[i] + dp_e6 * k6[i] + dp_e7 * k7[i]);
                const double sc = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y7[i]));
                errsum += (e / sc) * (e / sc);
            }
            double err = std::sqrt(0.5 * errsum);
            if (!std::isfinite(err)) err = 10.0;

            if (err > 1.0) {
                ++diag.rejected;
                h_mag = h_use * std::min(0.5, std::max(0.1, 0.9 * std::pow(err, -0.2)));
                last_rejected = true;
                continue;
            }

            ++diag.accepted;
            DenseStep ds;
            ds.t0 = t;
            ds.h = h;
            for (int i = 0; i < 2; ++i) {
                const double ydiff = y7[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                ds.r1[i] = y[i];
                ds.r2[i] = ydiff;
                ds.r3[i] = bspl;
                ds.r4[i] = ydiff - h * k7[i] - bspl;
                ds.r5[i] = h * (dp_d1 * k1[i] + dp_d3 * k3[i] + dp_d4 * k4[i] + dp_d5 * k5[i] +
                                dp_d6 * k6[i] + dp_d7 * k7[i]);
            }

            // Sample u at the quarter points and the endpoint, track its
            // magnitude, and bracket the first descent through zero.
            const double th_grid[4] = {0.25, 0.5, 0.75, 1.0};
            double uu[4];
            for (int j = 0; j < 4; ++j) {
                uu[j] = (j == 3) ? y7[0] : ds.u(th_grid[j]);
                umax = std::max(umax, std::abs(uu[j]));
            }
            double th_prev = 0.0;
            double u_prev = y[0];
            bool prev_pos = at_start || u_prev > 0.0;
            for (int j = 0; j < 4 && !have_cross; ++j) {
                if (prev_pos && uu[j] <= 0.0) {
                    const auto res = refine_crossing(ds, th_prev, std::max(u_prev, 0.0),
                                                     th_grid[j], uu[j], umax, tol);
                    have_cross = true;
                    cross_t = res.first;
                    cross_u = res.second;
                }
                th_prev = th_grid[j];
                u_prev = uu[j];
                prev_pos = u_prev > 0.0;
            }
            if (have_cross && (cross_t - s) * dir <= tiny) have_cross = false;
            at_start = false;

            t = hit_end ? cut : t + h;
            y = y7;
            k1 = k7;
            if (have_cross) {
                // the crossing entry below replaces the step endpoint
                diag.u_at_result = cross_u;
                break;
            }
            if (trace) trace->push_back({t, y[0], y[1]});

            // The system is linear, so rescaling the state (and the cached
            // derivative) leaves every zero in place.
            const double mag = std::max(std::abs(y[0]), std::abs(y[1]));
            if (mag > 1e50) {
                for (int i = 0; i < 2; ++i) {
                    y[i] /= mag;
                    k1[i] /= mag;
                }
                umax /= mag;
            }

            double fac = 0.9 * std::pow(std::max(err, 1e-30), -0.2);
            fac = std::min(last_rejected ? 1.0 : 10.0, std::max(0.2, fac));
            h_mag = h_use * fac;
            last_rejected = false;
        }
    }

    diag.umax = umax;
    if (have_cross) {
        out.crossed = true;
        out.t_cross = cross_t;
        out.end = {cross_t, cross_u, y[1]};
    } else {
        out.end = {t, y[0], y[1]};
        if (umax > 0.0 && std::abs(y[0]) <= eta_end * umax) {
            out.crossed = true;
            out.t_cross = horizon;
            diag.u_at_result = y[0];
        }
    }
    if (trace && out.crossed) trace->push_back({out.t_cross, diag.u_at_result, out.end.v});
    if (diag_out) *diag_out = diag;
    return out;
}

}  // namespace detail

/// First zero after s of the solution of u' = v/p, v' = (q - a w) u with
/// u(s) = 0, v(s) = 1, or beyond-horizon when u stays positive up to T2.
inline CrossingTime zero_function(const Problem& prob, WeightSelector which, double a, double s,
                                  const Tolerances& tol = {}, ShotDiagnostics* diag = nullptr) {
    const double span = prob.t2() - prob.t1();
    if (s < prob.t1() - 1e-9 * span || s > prob.t2() + 1e-9 * span)
        throw std::domain_error("zero_function: s outside the interval");
    s = std::min(std::max(s, prob.t1()), prob.t2());
    const auto out = detail::run_shot(prob, prob.weight(which), a, s, prob.t2(), tol, diag, nullptr);
    if (!out.crossed) return CrossingTime::beyond_horizon();
    return CrossingTime::at(std::min(out.t_cross, prob.t2()));
}

/// First zero strictly left of y of the solution shot backward from y
/// (u(y) = 0, v(y) = -1), or beyond-horizon when none exists down to T1.
inline CrossingTime zero_function_inverse(const Problem& prob, WeightSelector which, double a,
                                          double y, const Tolerances& tol = {},
                                          ShotDiagnostics* diag = nullptr) {
    const double span = prob.t2() - prob.t1();
    if (y < prob.t1() - 1e-9 * span || y > prob.t2() + 1e-9 * span)
        throw std::domain_error("zero_function_inverse: y outside the interval");
    y = std::min(std::max(y, prob.t1()), prob.t2());
    const auto out = detail::run_shot(prob, prob.weight(which), a, y, prob.t1(), tol, diag, nullptr);
    if (!out.crossed) return CrossingTime::beyond_horizon();
    return CrossingTime::at(std::max(out.t_cross, prob.t1()));
}

/// k-fold alternating composition of the zero-functions, branch Gt starting
/// with (m, a) and branch Lt with (n, b); collapses to beyond-horizon as soon
/// as one stage fails to cross.
inline CrossingTime compose_phi(const Problem& prob, int k, Branch branch, double a, double b,
                                double s, const Tolerances& tol = {}) {
    if (k < 1) throw std::invalid_argument("compose_phi: k must be at least 1");
    double cur = s;
    for (int i = 0; i < k; ++i) {
        const bool use_m = (branch == Branch::Gt) == (i % 2 == 0);
        const CrossingTime ct = zero_function(prob, use_m ? WeightSelector::M : WeightSelector::N,
                                              use_m ? a : b, cur, tol);
        if (ct.is_beyond()) return CrossingTime::beyond_horizon();
        cur = ct.value();
    }
    return CrossingTime::at(cur);
}

/// Accepted-step states of a single forward shot, for CSV debugging output.
inline std::vector<ShotState> shot_trace(const Problem& prob, WeightSelector which, double a,
                                         double s, const Tolerances& tol = {}) {
    std::vector<ShotState> tr;
    const double span = prob.t2() - prob.t1();
    if (s < prob.t1() - 1e-9 * span || s > prob.t2() + 1e-9 * span)
        throw std::domain_error("shot_trace: s outside the interval");
    s = std::min(std::max(s, prob.t1()), prob.t2());
    detail::run_shot(prob, prob.weight(which), a, s, prob.t2(), tol, nullptr, &tr);
    return tr;
}

}  // namespace fucik
