#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fucik/weight.hpp"

namespace fucik {

/// Integration accuracy knobs. `rel`/`abs` control the step controller,
/// `event` bounds the time width of a refined zero crossing.
struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
    double event = 1e-10;
};

enum class WeightSelector { M, N };

/// The boundary value problem -(p u')' + q u = a m u+ - b n u- on [t1, t2]
/// with u(t1) = u(t2) = 0. Holds the coefficient functions p > 0, q >= 0 and
/// the two weights m, n (possibly identical), all piecewise polynomial on the
/// same interval, plus the merged breakpoint mesh the integrator restarts on.
class Problem {
  public:
    Problem(Weight p, Weight q, Weight m, Weight n)
        : p_(std::move(p)), q_(std::move(q)), m_(std::move(m)), n_(std::move(n)) {
        const double t1 = p_.t_begin(), t2 = p_.t_end();
        for (const Weight* w : {&q_, &m_, &n_}) {
            if (std::abs(w->t_begin() - t1) > 1e-12 * std::max(1.0, std::abs(t1)) ||
                std::abs(w->t_end() - t2) > 1e-12 * std::max(1.0, std::abs(t2)))
                throw std::invalid_argument("problem: coefficient intervals disagree");
        }
        if (!(min_value(p_) > 0.0)) throw std::invalid_argument("problem: p must be strictly positive");
        if (min_value(q_) < -1e-12 * std::max(1.0, max_value(q_)))
            throw std::invalid_argument("problem: q must be nonnegative");
        if (is_identically_zero(m_)) throw std::invalid_argument("problem: m vanishes identically");
        if (is_identically_zero(n_)) throw std::invalid_argument("problem: n vanishes identically");
        build_mesh();
    }

    static Problem one_weight(Weight p, Weight q, Weight m) {
        Weight n = m;
        return Problem(std::move(p), std::move(q), std::move(m), std::move(n));
    }

    double t1() const { return p_.t_begin(); }
    double t2() const { return p_.t_end(); }
    const Weight& p() const { return p_; }
    const Weight& q() const { return q_; }
    const Weight& m() const { return m_; }
    const Weight& n() const { return n_; }
    const Weight& weight(WeightSelector s) const { return s == WeightSelector::M ? m_ : n_; }

    /// Union of all coefficient breakpoints, sorted, endpoints included.
    const std::vector<double>& mesh() const { return mesh_; }

    /// Same p, q with both weights replaced (used for quadrant reduction).
    Problem with_weights(Weight m, Weight n) const {
        return Problem(p_, q_, std::move(m), std::move(n));
    }

  private:
    void build_mesh() {
        std::vector<double> pts;
        for (const Weight* w : {&p_, &q_, &m_, &n_})
            pts.insert(pts.end(), w->breakpoints().begin(), w->breakpoints().end());
        std::sort(pts.begin(), pts.end());
        const double ptol = 1e-12 * std::max(1.0, t2() - t1());
        for (double t : pts)
            if (mesh_.empty() || t - mesh_.back() > ptol) mesh_.push_back(t);
        mesh_.front() = t1();
        mesh_.back() = t2();
    }

    Weight p_, q_, m_, n_;
    std::vector<double> mesh_;
};

}  // namespace fucik
