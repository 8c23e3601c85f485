#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "fucik/shooting.hpp"

namespace fucik {

/// Eigenvalue query for L u = lambda w u on a subinterval: k > 0 selects the
/// k-th positive eigenvalue, k < 0 the |k|-th negative one; the eigenfunction
/// has |k| - 1 interior zeros.
struct EigenRequest {
    WeightSelector which = WeightSelector::M;
    double t1 = 0.0;
    double t2 = 0.0;
    int k = 1;
};

/// Eigenvalue bisection runs tighter than the general shooting defaults so
/// the located values carry ~1e-8 absolute accuracy.
inline Tolerances eigen_default_tol() { return Tolerances{1e-12, 1e-14, 1e-12}; }

/// Bracket expansion hit the hard cap without enclosing the eigenvalue:
/// "not found", as opposed to "does not exist".
class BracketError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool signed_part_present(const Weight& w, bool positive, double t1, double t2) {
    const auto sp = sign_profile(w);
    const auto& list = positive ? sp.positive : sp.negative;
    const double tiny = 1e-12 * (w.t_end() - w.t_begin());
    for (const auto& iv : list)
        if (iv.lo < t2 - tiny && iv.hi > t1 + tiny) return true;
    return false;
}

}  // namespace detail

/// The signed value a for which the |k|-fold self-composition of the
/// zero-function of w maps t1 to t2; none when the needed signed part of the
/// weight vanishes on the subinterval (then no eigenvalue of that sign
/// exists). Monotone bisection: the composition completes for every |a|
/// beyond the eigenvalue and for no smaller |a|.
inline std::optional<double> eigenvalue(const Problem& prob, const EigenRequest& req,
                                        const Tolerances& tol = eigen_default_tol()) {
    if (req.k == 0) throw std::invalid_argument("eigenvalue: index must be nonzero");
    const double span = prob.t2() - prob.t1();
    if (!(req.t1 < req.t2))
        throw std::invalid_argument("eigenvalue: subinterval must have t1 < t2");
    if (req.t1 < prob.t1() - 1e-9 * span || req.t2 > prob.t2() + 1e-9 * span)
        throw std::invalid_argument("eigenvalue: subinterval outside the problem interval");
    const double lo_t = std::max(req.t1, prob.t1());
    const double hi_t = std::min(req.t2, prob.t2());
    const Weight& w = prob.weight(req.which);
    const bool positive = req.k > 0;
    if (!detail::signed_part_present(w, positive, lo_t, hi_t)) return std::nullopt;

    const int kk = std::abs(req.k);
    const double dir = positive ? 1.0 : -1.0;
    const auto completes = [&](double mag) {
        double cur = lo_t;
        for (int i = 0; i < kk; ++i) {
            const auto out = detail::run_shot(prob, w, dir * mag, cur, hi_t, tol, nullptr, nullptr);
            if (!out.crossed) return false;
            cur = out.t_cross;
        }
        return true;
    };

    double lo_mag, hi_mag;
    if (completes(1.0)) {
        hi_mag = 1.0;
        lo_mag = 0.5;
        int guard = 0;
        while (completes(lo_mag)) {
            hi_mag = lo_mag;
            lo_mag *= 0.5;
            if (++guard > 100) throw BracketError("eigenvalue: no failing lower bracket");
        }
    } else {
        lo_mag = 1.0;
        hi_mag = 2.0;
        while (!completes(hi_mag)) {
            lo_mag = hi_mag;
            hi_mag *= 2.0;
            if (hi_mag > 1e12) throw BracketError("eigenvalue: bracket expansion exceeded 1e12");
        }
    }
    for (int it = 0; it < 80 && hi_mag - lo_mag > 1e-12 * hi_mag; ++it) {
        const double mid = 0.5 * (lo_mag + hi_mag);
        if (completes(mid))
            hi_mag = mid;
        else
            lo_mag = mid;
    }
    // hi_mag is the verified side: the composition at the returned value
    // actually reaches t2.
    return dir * hi_mag;
}

struct PrincipalPair {
    std::optional<double> pos, neg;
};

/// First positive and first negative eigenvalue on a subinterval.
inline PrincipalPair principal_pair(const Problem& prob, WeightSelector which, double t1, double t2,
                                    const Tolerances& tol = eigen_default_tol()) {
    return {eigenvalue(prob, {which, t1, t2, 1}, tol), eigenvalue(prob, {which, t1, t2, -1}, tol)};
}

}  // namespace fucik
