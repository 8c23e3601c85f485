#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fucik/poly.hpp"

namespace fucik {

/// Piecewise-polynomial coefficient function on a closed interval.
///
/// Breakpoints t_0 < t_1 < ... < t_r cover the interval, piece i holds the
/// coefficients of a polynomial (degree <= 5) in the local variable
/// x = t - t_i. Pieces must join continuously; at an interior breakpoint the
/// left piece's value is used. Immutable after construction.
class Weight {
  public:
    Weight(std::vector<double> breakpoints, std::vector<PolyCoeffs> pieces)
        : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
            throw std::invalid_argument("weight: need r+1 breakpoints for r >= 1 pieces");
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
            if (!std::isfinite(breaks_[i]) || !(breaks_[i] < breaks_[i + 1]))
                throw std::invalid_argument("weight: breakpoints must be finite and strictly increasing");
        }
        for (const auto& c : pieces_)
            for (double v : c)
                if (!std::isfinite(v)) throw std::invalid_argument("weight: non-finite coefficient");
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
            const double h = breaks_[i + 1] - breaks_[i];
            const double left = poly_eval(pieces_[i], h);
            const double right = poly_eval(pieces_[i + 1], 0.0);
            const double tol = 1e-12 * std::max({1.0, std::abs(left), std::abs(right)});
            if (std::abs(left - right) > tol)
                throw std::invalid_argument("weight: discontinuity at breakpoint t=" +
                                            std::to_string(breaks_[i + 1]));
        }
    }

    double t_begin() const { return breaks_.front(); }
    double t_end() const { return breaks_.back(); }
    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<PolyCoeffs>& pieces() const { return pieces_; }

    /// Index of the piece evaluated at t (left piece at interior breakpoints).
    std::size_t piece_index(double t) const {
        std::size_t lo = 0, hi = breaks_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (breaks_[mid] < t)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    double operator()(double t) const {
        const double slack = 1e-9 * (t_end() - t_begin());
        if (t < t_begin() - slack || t > t_end() + slack)
            throw std::domain_error("weight: evaluation outside interval");
        t = std::min(std::max(t, t_begin()), t_end());
        const std::size_t i = piece_index(t);
        return poly_eval(pieces_[i], t - breaks_[i]);
    }

    Weight negated() const {
        std::vector<PolyCoeffs> p;
        p.reserve(pieces_.size());
        for (const auto& c : pieces_) p.push_back(poly_negated(c));
        return Weight(breaks_, std::move(p));
    }

    Weight scaled(double s) const {
        std::vector<PolyCoeffs> p;
        p.reserve(pieces_.size());
        for (const auto& c : pieces_) p.push_back(poly_scaled(c, s));
        return Weight(breaks_, std::move(p));
    }

    /// Reflection about the interval midpoint: w~(t) = w(T1 + T2 - t).
    Weight mirrored() const {
        const double sum = t_begin() + t_end();
        std::vector<double> b(breaks_.size());
        std::vector<PolyCoeffs> p(pieces_.size());
        for (std::size_t i = 0; i < breaks_.size(); ++i) b[i] = sum - breaks_[breaks_.size() - 1 - i];
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const std::size_t j = pieces_.size() - 1 - i;
            p[i] = poly_reflected(pieces_[j], breaks_[j + 1] - breaks_[j]);
        }
        return Weight(std::move(b), std::move(p));
    }

    static Weight constant(double t1, double t2, double value) {
        PolyCoeffs c{};
        c[0] = value;
        return Weight({t1, t2}, {c});
    }

    static Weight zero(double t1, double t2) { return constant(t1, t2, 0.0); }

    /// Piecewise-cubic interpolant matching f and f' at n+1 uniform nodes.
    template <class F, class DF>
    static Weight hermite_cubic(F f, DF df, double t1, double t2, int n) {
        return hermite_impl(f, df, [](double) { return 0.0; }, t1, t2, n, false);
    }

    /// Piecewise-quintic interpolant matching f, f', f'' at n+1 uniform nodes.
    template <class F, class DF, class D2F>
    static Weight hermite_quintic(F f, DF df, D2F d2f, double t1, double t2, int n) {
        return hermite_impl(f, df, d2f, t1, t2, n, true);
    }

  private:
    template <class F, class DF, class D2F>
    static Weight hermite_impl(F f, DF df, D2F d2f, double t1, double t2, int n, bool quintic) {
        if (n < 1) throw std::invalid_argument("weight: need at least one piece");
        std::vector<double> b(n + 1);
        std::vector<PolyCoeffs> p(n);
        for (int i = 0; i <= n; ++i) b[i] = t1 + (t2 - t1) * i / n;
        b[n] = t2;
        for (int i = 0; i < n; ++i) {
            const double h = b[i + 1] - b[i];
            const double f0 = f(b[i]), f1 = f(b[i + 1]);
            const double d0 = df(b[i]), d1 = df(b[i + 1]);
            PolyCoeffs c{};
            c[0] = f0;
            c[1] = d0;
            if (quintic) {
                const double s0 = d2f(b[i]), s1 = d2f(b[i + 1]);
                const double A = f1 - f0 - d0 * h - 0.5 * s0 * h * h;
                const double B = d1 - d0 - s0 * h;
                const double C = s1 - s0;
                c[2] = 0.5 * s0;
                c[3] = (10.0 * A - 4.0 * B * h + 0.5 * C * h * h) / (h * h * h);
                c[4] = (-15.0 * A + 7.0 * B * h - C * h * h) / (h * h * h * h);
                c[5] = (6.0 * A - 3.0 * B * h + 0.5 * C * h * h) / (h * h * h * h * h);
            } else {
                const double A = f1 - f0 - d0 * h;
                const double B = d1 - d0;
                c[2] = (3.0 * A - B * h) / (h * h);
                c[3] = (B * h - 2.0 * A) / (h * h * h);
            }
            p[i] = c;
        }
        return Weight(std::move(b), std::move(p));
    }

    std::vector<double> breaks_;
    std::vector<PolyCoeffs> pieces_;
};

/// Join weights whose intervals abut; junction values must agree.
inline Weight concat_weights(const std::vector<Weight>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_weights: empty");
    std::vector<double> b;
    std::vector<PolyCoeffs> p;
    b.push_back(parts.front().t_begin());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k > 0 && std::abs(parts[k].t_begin() - b.back()) >
                         1e-12 * std::max(1.0, std::abs(b.back())))
            throw std::invalid_argument("concat_weights: intervals do not abut");
        for (std::size_t i = 0; i < parts[k].piece_count(); ++i) {
            p.push_back(parts[k].pieces()[i]);
            b.push_back(parts[k].breakpoints()[i + 1]);
        }
    }
    return Weight(std::move(b), std::move(p));
}

inline bool is_identically_zero(const Weight& w) {
    for (const auto& c : w.pieces())
        if (!poly_is_zero(c)) return false;
    return true;
}

inline double min_value(const Weight& w) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.piece_count(); ++i)
        m = std::min(m, poly_min_on(w.pieces()[i], w.breakpoints()[i + 1] - w.breakpoints()[i]));
    return m;
}

inline double max_value(const Weight& w) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.piece_count(); ++i)
        m = std::max(m, poly_max_on(w.pieces()[i], w.breakpoints()[i + 1] - w.breakpoints()[i]));
    return m;
}

struct SignInterval {
    double lo, hi;
};

enum class SignCountKind { Finite, Infinite, Unsupported };

/// Sign structure of a weight: maximal intervals of strict sign, the number of
/// sign changes, and where they happen. A change separated from the opposite
/// sign by a zero plateau is reported at the right edge of the plateau.
/// Piecewise polynomials always yield Finite; the other kinds are reserved.
struct SignProfile {
    std::vector<SignInterval> positive;
    std::vector<SignInterval> negative;
    SignCountKind kind = SignCountKind::Finite;
    int sign_changes = 0;
    std::vector<double> change_points;
};

namespace detail {

struct SignBlock {
    int sign;  // +1, -1, 0
    double lo, hi;
};

inline std::vector<SignBlock> sign_partition(const Weight& w) {
    const double span = w.t_end() - w.t_begin();
    const double ptol = 1e-12 * std::max(1.0, span);
    std::vector<double> pts(w.breakpoints());
    for (std::size_t i = 0; i < w.piece_count(); ++i) {
        const double h = w.breakpoints()[i + 1] - w.breakpoints()[i];
        for (double r : poly_roots_in(w.pieces()[i], h)) pts.push_back(w.breakpoints()[i] + r);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> uniq;
    for (double t : pts)
        if (uniq.empty() || t - uniq.back() > ptol) uniq.push_back(t);
    if (uniq.back() < w.t_end() - ptol) uniq.push_back(w.t_end());
    uniq.back() = w.t_end();
    uniq.front() = w.t_begin();

    std::vector<SignBlock> blocks;
    for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
        const double lo = uniq[i], hi = uniq[i + 1];
        const std::size_t pi = w.piece_index(0.5 * (lo + hi));
        int sign;
        if (poly_is_zero(w.pieces()[pi])) {
            sign = 0;
        } else {
            const double v = poly_eval(w.pieces()[pi], 0.5 * (lo + hi) - w.breakpoints()[pi]);
            sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        }
        blocks.push_back({sign, lo, hi});
    }
    return blocks;
}

}  // namespace detail

inline SignProfile sign_profile(const Weight& w) {
    const auto part = detail::sign_partition(w);
    const double wscale = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < w.piece_count(); ++i)
            s = std::max(s, poly_scale_on(w.pieces()[i], w.breakpoints()[i + 1] - w.breakpoints()[i]));
        return s;
    }();
    const double vtol = 1e-13 * std::max(wscale, 1e-300);

    SignProfile out;
    // Signed intervals: merge neighbours of equal sign only across junctions
    // where the weight does not vanish (a touch point splits the interval).
    auto push_signed = [&](int sign, double lo, double hi) {
        auto& list = sign > 0 ? out.positive : out.negative;
        if (!list.empty() && list.back().hi == lo && std::abs(w(lo)) > vtol)
            list.back().hi = hi;
        else
            list.push_back({lo, hi});
    };
    for (const auto& b : part)
        if (b.sign != 0) push_signed(b.sign, b.lo, b.hi);

    // Sign changes: scan merged blocks; zero plateaus push the change point to
    // their right edge, a direct junction reports the shared point.
    std::vector<detail::SignBlock> merged;
    for (const auto& b : part) {
        if (!merged.empty() && merged.back().sign == b.sign)
            merged.back().hi = b.hi;
        else
            merged.push_back(b);
    }
    int prev_sign = 0;
    for (const auto& b : merged) {
        if (b.sign == 0) continue;
        if (prev_sign != 0 && b.sign != prev_sign) {
            out.change_points.push_back(b.lo);
            ++out.sign_changes;
        }
        prev_sign = b.sign;
    }
    return out;
}

/// Edges of the positive and negative parts: the first/last times the weight
/// takes each strict sign, none when the sign never occurs.
struct SupportEdges {
    std::optional<double> positive_begin, positive_end;
    std::optional<double> negative_begin, negative_end;
};

inline SupportEdges support_edges(const Weight& w) {
    const auto sp = sign_profile(w);
    SupportEdges e;
    if (!sp.positive.empty()) {
        e.positive_begin = sp.positive.front().lo;
        e.positive_end = sp.positive.back().hi;
    }
    if (!sp.negative.empty()) {
        e.negative_begin = sp.negative.front().lo;
        e.negative_end = sp.negative.back().hi;
    }
    return e;
}

namespace detail {

inline std::optional<double> first_signed_time(const std::vector<SignInterval>& list, double s) {
    for (const auto& iv : list)
        if (iv.hi > s) return std::max(iv.lo, s);
    return std::nullopt;
}

}  // namespace detail

/// inf{ t > s : w(t) > 0 } within the interval, none if the set is empty.
inline std::optional<double> first_positive_time(const Weight& w, double s) {
    if (s < w.t_begin() - 1e-9 || s > w.t_end() + 1e-9)
        throw std::domain_error("first_positive_time: s outside interval");
    return detail::first_signed_time(sign_profile(w).positive, s);
}

/// inf{ t > s : w(t) < 0 } within the interval, none if the set is empty.
inline std::optional<double> first_negative_time(const Weight& w, double s) {
    if (s < w.t_begin() - 1e-9 || s > w.t_end() + 1e-9)
        throw std::domain_error("first_negative_time: s outside interval");
    return detail::first_signed_time(sign_profile(w).negative, s);
}

}  // namespace fucik
