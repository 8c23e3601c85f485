#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <optional>

#include "fucik/analysis.hpp"
#include "fucik/presets.hpp"

using namespace fucik;
using std::numbers::pi;

namespace {
const Problem& classical() {
    static const Problem p = preset_classical();
    return p;
}
const Problem& sine2pi() {
    static const Problem p = preset_sine(2.0 * pi);
    return p;
}
const Problem& example() {
    static const Problem p = preset_problem("example_3_13");
    return p;
}
}  // namespace

TEST_CASE("classical quadrant counts") {
    const auto pp = count_quadrant(classical(), Quadrant::PP, 4);
    CHECK(pp.total == 6);  // k = 2..4, both branches
    CHECK(pp.at_least);
    CHECK(pp.symbolically_infinite);
    CHECK(pp.nonempty_at(3, Branch::Lt));

    const auto pm = count_quadrant(classical(), Quadrant::PM, 4);
    CHECK(pm.total == 0);
    CHECK_FALSE(pm.at_least);
    CHECK_FALSE(pm.symbolically_infinite);
}

TEST_CASE("mixed quadrant count for sine on three half-periods") {
    const Problem s3 = preset_sine(3.0 * pi);
    const auto qc = count_quadrant(s3, Quadrant::PM, 5);
    CHECK(qc.total == 3);  // 2N-1 with N = 2
    CHECK_FALSE(qc.at_least);
    CHECK_FALSE(qc.symbolically_infinite);
    CHECK(qc.nonempty_at(2, Branch::Gt));
    CHECK(qc.nonempty_at(2, Branch::Lt));
    CHECK(qc.nonempty_at(3, Branch::Gt));
    CHECK_FALSE(qc.nonempty_at(3, Branch::Lt));
    CHECK_FALSE(qc.nonempty_at(4, Branch::Gt));
}

TEST_CASE("example preset: one curve per quadrant on the expected branch") {
    const auto pp = count_quadrant(example(), Quadrant::PP, 3);
    CHECK(pp.total == 1);
    CHECK(pp.nonempty_at(2, Branch::Gt));
    CHECK_FALSE(pp.nonempty_at(2, Branch::Lt));
    const auto mp = count_quadrant(example(), Quadrant::MP, 3);
    CHECK(mp.total == 1);
    CHECK(mp.nonempty_at(2, Branch::Lt));
    CHECK_FALSE(mp.nonempty_at(2, Branch::Gt));
}

// Asymptote table for the example weights, written out by hand. Sign parts:
// m+ = ]0,pi[, m- = ]2pi,3pi[, n+ = ]pi,2pi[, n- = ]3pi,4pi[.
TEST_CASE("asymptote table, all eight cases") {
    const Problem& ex = example();
    const double T2 = 4.0 * pi;
    const auto lam = [&](WeightSelector wsel, double lo, double hi, int k) {
        return eigenvalue(ex, {wsel, lo, hi, k});
    };
    struct Case {
        Quadrant q;
        Branch br;
        std::optional<double> h, v;
    };
    const Case table[] = {
        {Quadrant::PP, Branch::Gt, lam(WeightSelector::N, 0.0, T2, 1),
         lam(WeightSelector::M, 0.0, 2.0 * pi, 1)},
        {Quadrant::PP, Branch::Lt, std::nullopt, std::nullopt},
        {Quadrant::PM, Branch::Gt, lam(WeightSelector::N, 0.0, T2, -1),
         lam(WeightSelector::M, 0.0, T2, 1)},
        {Quadrant::PM, Branch::Lt, std::nullopt, std::nullopt},
        {Quadrant::MM, Branch::Gt, lam(WeightSelector::N, 2.0 * pi, T2, -1),
         lam(WeightSelector::M, 0.0, T2, -1)},
        {Quadrant::MM, Branch::Lt, std::nullopt, std::nullopt},
        {Quadrant::MP, Branch::Gt, std::nullopt, std::nullopt},
        {Quadrant::MP, Branch::Lt, lam(WeightSelector::N, 0.0, 3.0 * pi, 1),
         lam(WeightSelector::M, pi, T2, -1)},
    };
    for (const auto& c : table) {
        const auto got = first_curve_asymptotes(ex, c.q, c.br);
        INFO("quadrant " << int(c.q) << " branch " << (c.br == Branch::Gt ? ">" : "<"));
        REQUIRE(got.horizontal.has_value() == c.h.has_value());
        REQUIRE(got.vertical.has_value() == c.v.has_value());
        if (c.h) CHECK(*got.horizontal == Catch::Approx(*c.h).epsilon(1e-9));
        if (c.v) CHECK(*got.vertical == Catch::Approx(*c.v).epsilon(1e-9));
    }
}

TEST_CASE("asymptote probes approach the level from above") {
    const auto rep = asymptote_consistency(classical(), Quadrant::PP, Branch::Gt, 1e3);
    CHECK(rep.level == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(rep.probes.size() == 3);
    CHECK(rep.monotone_decreasing);
    for (std::size_t i = 0; i < rep.probes.size(); ++i) {
        CHECK(rep.probes[i].b > rep.level);
        if (i > 0) CHECK(rep.probes[i].residual < rep.probes[i - 1].residual);
    }
    // closed form at the first probe: b = (1 - 1/sqrt(1000))^{-2}
    CHECK(rep.probes[0].b == Catch::Approx(std::pow(1.0 - 1.0 / std::sqrt(1e3), -2.0))
                                 .epsilon(1e-6));
}

TEST_CASE("asymptote probes in a mixed quadrant") {
    const auto rep = asymptote_consistency(sine2pi(), Quadrant::PM, Branch::Gt, 500.0);
    CHECK(rep.level < 0.0);
    CHECK(rep.monotone_decreasing);
    // undefined level on the empty < branch
    CHECK_THROWS_AS(asymptote_consistency(sine2pi(), Quadrant::PM, Branch::Lt, 500.0),
                    std::runtime_error);
}

TEST_CASE("support gap reports") {
    const auto gb = compact_support_gap(preset_problem("bump"));
    CHECK(gb.compact_support);
    CHECK(gb.gap > gb.gap_tol);
    CHECK(gb.consistent);

    const auto gc = compact_support_gap(classical());
    CHECK_FALSE(gc.compact_support);
    CHECK(std::abs(gc.gap) <= gc.gap_tol);
    CHECK(gc.consistent);

    const auto gr = compact_support_gap(preset_problem("remark_3_9"));
    CHECK_FALSE(gr.compact_support);
    CHECK(gr.gap <= gr.gap_tol);
    CHECK(gr.consistent);
}

TEST_CASE("full report composition") {
    const auto rep = build_report(sine2pi(), 4, 1e4);
    CHECK(rep.m_sign_changes == 1);
    CHECK(rep.n_sign_changes == 1);
    CHECK(rep.trivial.vertical.size() == 2);
    CHECK(rep.trivial.horizontal.size() == 2);
    REQUIRE(rep.per_quadrant.size() == 4);
    CHECK(rep.per_quadrant[0].quadrant == Quadrant::PP);
    CHECK(rep.per_quadrant[2].quadrant == Quadrant::PM);
    CHECK(rep.per_quadrant[0].symbolically_infinite);
    CHECK(rep.per_quadrant[2].total == 1);
    CHECK(rep.per_quadrant[3].total == 1);
    CHECK(rep.asymptotes.size() == 6);
    for (const auto& e : rep.asymptotes) {
        CHECK(std::isfinite(e.horizontal));
        CHECK(std::isfinite(e.vertical));
    }
}
