#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fucik {

// Polynomials are stored densely in ascending degree, at most quintic.
// Pieces of a weight keep their coefficients in the local variable
// x = t - piece_start, which makes translation free.
inline constexpr int kMaxPolyDegree = 5;
using PolyCoeffs = std::array<double, kMaxPolyDegree + 1>;

inline double poly_eval(const PolyCoeffs& c, double x) {
    double r = c[kMaxPolyDegree];
    for (int i = kMaxPolyDegree - 1; i >= 0; --i) r = r * x + c[i];
    return r;
}

inline int poly_degree(const PolyCoeffs& c) {
    for (int i = kMaxPolyDegree; i > 0; --i)
        if (c[i] != 0.0) return i;
    return 0;
}

inline bool poly_is_zero(const PolyCoeffs& c) {
    for (double v : c)
        if (v != 0.0) return false;
    return true;
}

inline PolyCoeffs poly_derivative(const PolyCoeffs& c) {
    PolyCoeffs d{};
    for (int i = 1; i <= kMaxPolyDegree; ++i) d[i - 1] = i * c[i];
    return d;
}

inline PolyCoeffs poly_negated(const PolyCoeffs& c) {
    PolyCoeffs r{};
    for (int i = 0; i <= kMaxPolyDegree; ++i) r[i] = -c[i];
    return r;
}

inline PolyCoeffs poly_scaled(const PolyCoeffs& c, double s) {
    PolyCoeffs r{};
    for (int i = 0; i <= kMaxPolyDegree; ++i) r[i] = s * c[i];
    return r;
}

// Coefficients of p(h - x) given p(x); used to mirror a piece in time.
inline PolyCoeffs poly_reflected(const PolyCoeffs& c, double h) {
    // Expand sum_j c_j (h - x)^j via binomials.
    PolyCoeffs r{};
    for (int j = 0; j <= kMaxPolyDegree; ++j) {
        if (c[j] == 0.0) continue;
        double binom = 1.0;  // C(j, i)
        double hp = std::pow(h, j);
        double sign = 1.0;
        for (int i = 0; i <= j; ++i) {
            // term: c_j * C(j,i) * h^(j-i) * (-1)^i * x^i
            r[i] += c[j] * binom * (i == 0 ? hp : std::pow(h, j - i)) * sign;
            binom = binom * (j - i) / (i + 1);
            sign = -sign;
        }
    }
    return r;
}

// A bound on |p| over [0, h]; cheap scale used for tolerance decisions.
inline double poly_scale_on(const PolyCoeffs& c, double h) {
    double s = 0.0, hp = 1.0;
    double hh = std::max(h, 1e-300);
    for (int i = 0; i <= kMaxPolyDegree; ++i) {
        s += std::abs(c[i]) * hp;
        hp *= hh;
    }
    return s;
}

namespace detail {

// One root of a strictly monotone stretch [lo, hi] with a sign change.
inline double poly_bisect_root(const PolyCoeffs& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    double fhi = poly_eval(c, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 90 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = poly_eval(c, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline void poly_roots_rec(const PolyCoeffs& c, double hi, std::vector<double>& out) {
    int deg = poly_degree(c);
    if (deg == 0) return;  // constants (incl. zero) contribute no isolated roots
    if (deg == 1) {
        double r = -c[0] / c[1];
        if (r >= 0.0 && r <= hi) out.push_back(r);
        return;
    }
    std::vector<double> crit;
    poly_roots_rec(poly_derivative(c), hi, crit);
    crit.push_back(0.0);
    crit.push_back(hi);
    std::sort(crit.begin(), crit.end());
    const double vtol = 1e-13 * (poly_scale_on(c, hi) + 1e-300);
    double prev = crit.front();
    double fprev = poly_eval(c, prev);
    if (std::abs(fprev) <= vtol) out.push_back(prev);
    for (std::size_t i = 1; i < crit.size(); ++i) {
        double cur = crit[i];
        if (cur <= prev) continue;
        double fcur = poly_eval(c, cur);
        if (std::abs(fcur) <= vtol) {
            out.push_back(cur);  // touch or crossing at a critical point / endpoint
        } else if (std::abs(fprev) > vtol && (fprev > 0.0) != (fcur > 0.0)) {
            out.push_back(poly_bisect_root(c, prev, cur));
        }
        prev = cur;
        fprev = fcur;
    }
}

}  // namespace detail

// All roots of p in [0, hi], ascending, deduplicated to ~1e-12 absolute.
// Roots of even multiplicity (touch points) are included.
inline std::vector<double> poly_roots_in(const PolyCoeffs& c, double hi) {
    std::vector<double> out;
    detail::poly_roots_rec(c, hi, out);
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    for (double r : out) {
        if (uniq.empty() || r - uniq.back() > 1e-12 * std::max(1.0, hi)) uniq.push_back(r);
    }
    return uniq;
}

// Exact extrema over [0, hi] via critical points.
inline double poly_min_on(const PolyCoeffs& c, double hi) {
    double best = std::min(poly_eval(c, 0.0), poly_eval(c, hi));
    std::vector<double> crit;
    detail::poly_roots_rec(poly_derivative(c), hi, crit);
    for (double x : crit) best = std::min(best, poly_eval(c, x));
    return best;
}

inline double poly_max_on(const PolyCoeffs& c, double hi) {
    double best = std::max(poly_eval(c, 0.0), poly_eval(c, hi));
    std::vector<double> crit;
    detail::poly_roots_rec(poly_derivative(c), hi, crit);
    for (double x : crit) best = std::max(best, poly_eval(c, x));
    return best;
}

}  // namespace fucik
