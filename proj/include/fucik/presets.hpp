#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fucik/problem.hpp"
#include "fucik/spectrum.hpp"

namespace fucik {

/// One slot of an interleaved-bump layout: which weight owns the slot's
/// half-sine bump and with which sign (the other weight is zero there).
enum class BumpLetter { MP, NP, MM, NM };

struct WordCounts {
    int pp = 0, mm = 0, pm = 0, mp = 0;
};

namespace detail {

/// Longest alternating chain through the word: each step takes the first
/// slot at or after the cursor carrying the wanted letter, then moves the
/// cursor past it. This mirrors the large-coefficient limit of the
/// compositions on the realized weights, where every stage collapses onto
/// the left edge of the next needed bump.
inline int bump_chain_len(const std::vector<BumpLetter>& word, BumpLetter first,
                          BumpLetter second) {
    std::size_t next_min = 0;
    int len = 0;
    for (int step = 0;; ++step) {
        const BumpLetter want = (step % 2 == 0) ? first : second;
        std::size_t j = next_min;
        while (j < word.size() && word[j] != want) ++j;
        if (j == word.size()) break;
        ++len;
        next_min = j + 1;
    }
    return len;
}

}  // namespace detail

/// Predicted number of nonempty curve sets (k >= 2, both branches) in each
/// quadrant for the weights realized from the word.
inline WordCounts bump_word_counts(const std::vector<BumpLetter>& word) {
    const auto total = [&](BumpLetter x, BumpLetter y) {
        return std::max(0, detail::bump_chain_len(word, x, y) - 1) +
               std::max(0, detail::bump_chain_len(word, y, x) - 1);
    };
    return {total(BumpLetter::MP, BumpLetter::NP), total(BumpLetter::MM, BumpLetter::NM),
            total(BumpLetter::MP, BumpLetter::NM), total(BumpLetter::MM, BumpLetter::NP)};
}

namespace detail {

inline const std::array<std::array<int, 4>, 24>& all_orders() {
    static const auto orders = [] {
        std::array<std::array<int, 4>, 24> out{};
        std::array<int, 4> p{0, 1, 2, 3};
        int i = 0;
        do {
            out[i++] = p;
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return orders;
}

}  // namespace detail

/// Deterministic search for a slot word realizing the per-quadrant totals
/// (2K+1, 2L+1, 2M+1, 2N+1). Candidates are concatenations of one
/// alternating two-letter run per quadrant, over all block orders, starting
/// letters and a small range of run lengths; the shortest word whose exact
/// chain counts match wins. Counts are verified symbolically here and again
/// on the realized weights by the caller.
inline std::vector<BumpLetter> alternating_bump_word(int K, int L, int M, int N) {
    for (int v : {K, L, M, N})
        if (v < 0 || v > 4)
            throw std::invalid_argument("alternating_bumps: counts must lie in 0..4");
    static std::map<std::array<int, 4>, std::vector<BumpLetter>> cache;
    const std::array<int, 4> key{K, L, M, N};
    if (const auto it = cache.find(key); it != cache.end()) return it->second;

    const WordCounts target{2 * K + 1, 2 * L + 1, 2 * M + 1, 2 * N + 1};
    // Letter pairs per quadrant, ordered with the m-letter first.
    static constexpr std::array<std::array<BumpLetter, 2>, 4> pairs{{
        {BumpLetter::MP, BumpLetter::NP},
        {BumpLetter::MM, BumpLetter::NM},
        {BumpLetter::MP, BumpLetter::NM},
        {BumpLetter::MM, BumpLetter::NP},
    }};
    const std::array<int, 4> params{K, L, M, N};

    std::vector<BumpLetter> best;
    const auto try_family = [&](int extra) {
        for (const auto& order : detail::all_orders()) {
            for (int bits = 0; bits < 16; ++bits) {
                // run length options per quadrant, around 2P+1
                std::array<std::vector<int>, 4> lens;
                for (int q = 0; q < 4; ++q) {
                    const int p = params[q];
                    for (int d = -2; d <= 1 + extra; ++d) {
                        const int c = std::max(1, 2 * p + 1 + d);
                        if (lens[q].empty() || lens[q].back() != c) lens[q].push_back(c);
                    }
                }
                std::array<std::size_t, 4> idx{0, 0, 0, 0};
                while (true) {
                    std::vector<BumpLetter> word;
                    for (int pos = 0; pos < 4; ++pos) {
                        const int q = order[pos];
                        const int start = (bits >> q) & 1;
                        const int c = lens[q][idx[q]];
                        for (int j = 0; j < c; ++j)
                            word.push_back(pairs[q][(start + j) % 2]);
                    }
                    const auto wc = bump_word_counts(word);
                    if (wc.pp == target.pp && wc.mm == target.mm && wc.pm == target.pm &&
                        wc.mp == target.mp) {
                        if (best.empty() || word.size() < best.size()) best = word;
                    }
                    int q = 0;
                    while (q < 4 && ++idx[q] == lens[q].size()) idx[q++] = 0;
                    if (q == 4) break;
                }
            }
        }
    };
    try_family(0);
    if (best.empty()) try_family(3);
    if (best.empty())
        throw std::logic_error("alternating_bumps: no word found for the requested counts");
    cache.emplace(key, best);
    return best;
}

namespace detail {

inline double snapped_sin(double x) {
    const double v = std::sin(x);
    return std::abs(v) < 1e-13 ? 0.0 : v;
}

/// Half-sine arch on [lo, hi]: quintic interpolant of sin(pi (t-lo)/(hi-lo))
/// over 12 pieces, with exact zeros at both ends.
inline Weight half_sine_arch(double lo, double hi) {
    const double om = std::numbers::pi / (hi - lo);
    const auto f = [=](double t) { return snapped_sin(om * (t - lo)); };
    const auto df = [=](double t) { return om * std::cos(om * (t - lo)); };
    const auto d2f = [=](double t) { return -om * om * snapped_sin(om * (t - lo)); };
    return Weight::hermite_quintic(f, df, d2f, lo, hi, 12);
}

}  // namespace detail

/// Weights on [0, W pi] from a slot word: slot j carries a half-sine bump of
/// the designated sign for its owner, the other weight is zero across it.
inline Problem realize_bump_word(const std::vector<BumpLetter>& word) {
    if (word.empty()) throw std::invalid_argument("realize_bump_word: empty word");
    const double pi = std::numbers::pi;
    const double t2 = static_cast<double>(word.size()) * pi;
    std::vector<Weight> mparts, nparts;
    for (std::size_t j = 0; j < word.size(); ++j) {
        const double lo = static_cast<double>(j) * pi;
        const double hi = (j + 1 == word.size()) ? t2 : static_cast<double>(j + 1) * pi;
        const BumpLetter c = word[j];
        const Weight arch = detail::half_sine_arch(lo, hi);
        mparts.push_back(c == BumpLetter::MP   ? arch
                         : c == BumpLetter::MM ? arch.negated()
                                               : Weight::zero(lo, hi));
        nparts.push_back(c == BumpLetter::NP   ? arch
                         : c == BumpLetter::NM ? arch.negated()
                                               : Weight::zero(lo, hi));
    }
    return Problem(Weight::constant(0.0, t2, 1.0), Weight::zero(0.0, t2),
                   concat_weights(mparts), concat_weights(nparts));
}

inline Problem preset_classical() {
    const double pi = std::numbers::pi;
    return Problem::one_weight(Weight::constant(0.0, pi, 1.0), Weight::zero(0.0, pi),
                               Weight::constant(0.0, pi, 1.0));
}

/// Single weight ~ sin t on [0, T2], 12 interpolation pieces per half-period.
inline Problem preset_sine(double t2) {
    if (!std::isfinite(t2) || !(t2 > 0.0))
        throw std::invalid_argument("sine preset: need a finite T2 > 0");
    const int n = std::max(1, static_cast<int>(std::lround(12.0 * t2 / std::numbers::pi)));
    const auto f = [](double t) { return detail::snapped_sin(t); };
    const auto df = [](double t) { return std::cos(t); };
    const auto d2f = [](double t) { return -detail::snapped_sin(t); };
    const Weight m = Weight::hermite_quintic(f, df, d2f, 0.0, t2, n);
    return Problem::one_weight(Weight::constant(0.0, t2, 1.0), Weight::zero(0.0, t2), m);
}

inline Problem preset_example_3_13() {
    return realize_bump_word(
        {BumpLetter::MP, BumpLetter::NP, BumpLetter::MM, BumpLetter::NM});
}

/// Word search plus realization, with the realized weights re-validated
/// against the requested counts through the exact limit chains.
inline Problem preset_alternating_bumps(int K, int L, int M, int N) {
    const auto word = alternating_bump_word(K, L, M, N);
    Problem prob = realize_bump_word(word);
    const std::array<int, 4> want{2 * K + 1, 2 * L + 1, 2 * M + 1, 2 * N + 1};
    const std::array<Quadrant, 4> quads{Quadrant::PP, Quadrant::MM, Quadrant::PM, Quadrant::MP};
    for (int i = 0; i < 4; ++i) {
        const Problem red = quadrant_reduce(prob, quads[i]);
        const auto lc = limit_chain_counts(red.m(), red.n());
        if (lc.infinite || lc.total != want[i])
            throw std::logic_error("alternating_bumps: realized weights disagree with the word");
    }
    return prob;
}

/// Single nonnegative bump supported on [lo, hi] inside [0, pi].
inline Problem preset_bump(double lo, double hi) {
    const double pi = std::numbers::pi;
    if (!(lo >= 0.0) || !(lo < hi) || !(hi <= pi + 1e-12))
        throw std::invalid_argument("bump preset: need 0 <= lo < hi <= pi");
    std::vector<Weight> parts;
    if (lo > 0.0) parts.push_back(Weight::zero(0.0, lo));
    parts.push_back(detail::half_sine_arch(lo, std::min(hi, pi)));
    if (hi < pi) parts.push_back(Weight::zero(hi, pi));
    return Problem::one_weight(Weight::constant(0.0, pi, 1.0), Weight::zero(0.0, pi),
                               concat_weights(parts));
}

/// Half-sine on [0, pi] extended by zero to 2 pi, one weight.
inline Problem preset_remark_3_9() {
    const double pi = std::numbers::pi;
    const Weight m =
        concat_weights({detail::half_sine_arch(0.0, pi), Weight::zero(pi, 2.0 * pi)});
    return Problem::one_weight(Weight::constant(0.0, 2.0 * pi, 1.0),
                               Weight::zero(0.0, 2.0 * pi), m);
}

struct PresetInfo {
    const char* name;
    const char* arg;
    const char* summary;
};

inline const std::vector<PresetInfo>& preset_list() {
    static const std::vector<PresetInfo> list{
        {"classical", "", "p = q' = 0 style baseline: m = n = 1 on [0, pi]"},
        {"sine", "T2", "one weight ~ sin t on [0, T2] (default T2 = 2 pi)"},
        {"example_3_13", "",
         "four pi-wide slots on [0, 4 pi]: m bump +, n bump +, m bump -, n bump -"},
        {"alternating_bumps", "K,L,M,N",
         "interleaved signed bumps with per-quadrant curve totals 2K+1, 2L+1, 2M+1, 2N+1"},
        {"bump", "lo,hi",
         "one nonnegative half-sine bump supported on [lo, hi] inside [0, pi] "
         "(default pi/4, 3 pi/4)"},
        {"remark_3_9", "", "one weight: half-sine on [0, pi], zero on [pi, 2 pi]"},
    };
    return list;
}

namespace detail {

inline std::vector<std::string> split_arg(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("could not parse ") + what + ": '" + s + "'");
    }
}

inline int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("could not parse ") + what + ": '" + s + "'");
    }
}

}  // namespace detail

/// Build a preset problem from its name and optional argument string (the
/// part after ':' in NAME:ARG).
inline Problem preset_problem(const std::string& name, const std::string& arg = "") {
    const double pi = std::numbers::pi;
    if (name == "classical") return preset_classical();
    if (name == "sine") return preset_sine(arg.empty() ? 2.0 * pi : detail::parse_real(arg, "T2"));
    if (name == "example_3_13") return preset_example_3_13();
    if (name == "alternating_bumps") {
        const auto parts = detail::split_arg(arg);
        if (parts.size() != 4)
            throw std::invalid_argument("alternating_bumps preset: expected K,L,M,N");
        return preset_alternating_bumps(
            detail::parse_int(parts[0], "K"), detail::parse_int(parts[1], "L"),
            detail::parse_int(parts[2], "M"), detail::parse_int(parts[3], "N"));
    }
    if (name == "bump") {
        if (arg.empty()) return preset_bump(0.25 * pi, 0.75 * pi);
        const auto parts = detail::split_arg(arg);
        if (parts.size() != 2) throw std::invalid_argument("bump preset: expected lo,hi");
        return preset_bump(detail::parse_real(parts[0], "lo"), detail::parse_real(parts[1], "hi"));
    }
    if (name == "remark_3_9") return preset_remark_3_9();
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace fucik
