#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "lmthresh/alrsm.hpp"
#include "lmthresh/gpd.hpp"
#include "lmthresh/hybrid.hpp"
#include "oracles.hpp"

using namespace lmthresh;

TEST(EmpiricalQuantile, LinearInterpolation) {
    const SortedSample s({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(empirical_quantile(s, 1.0), 10.0);
    EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.25), 3.25);
    EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.5), 5.5);
    EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.925), 9.325);
    EXPECT_THROW((void)empirical_quantile(s, 1.5), std::domain_error);
}

TEST(SchemeProbabilities, FixedLevels) {
    const auto i10 = scheme_probabilities(GridScheme::I10);
    ASSERT_EQ(i10.size(), 10u);
    EXPECT_DOUBLE_EQ(i10.front(), 0.25);
    EXPECT_DOUBLE_EQ(i10[5], 0.625);
    EXPECT_DOUBLE_EQ(i10.back(), 0.925);
    const auto i20 = scheme_probabilities(GridScheme::I20);
    ASSERT_EQ(i20.size(), 20u);
    EXPECT_DOUBLE_EQ(i20[1], 0.287);
    EXPECT_DOUBLE_EQ(i20.back(), 0.953);
    EXPECT_THROW((void)scheme_probabilities(GridScheme::all_points), std::invalid_argument);
}

TEST(CandidateGrid, FixedSchemesUseSampleQuantiles) {
    const SortedSample s(hybrid_sample(300, {0.75, 0.2}, 4));
    const auto g = candidate_grid(s, GridScheme::I20);
    ASSERT_EQ(g.entries.size(), 20u);
    EXPECT_TRUE(g.warnings.empty());
    for (const auto& c : g.entries) EXPECT_DOUBLE_EQ(c.u, empirical_quantile(s, c.prob));
}

TEST(CandidateGrid, ConstantSampleIsAnError) {
    const SortedSample s(std::vector<double>(20, 3.0));
    EXPECT_THROW((void)candidate_grid(s, GridScheme::I10), std::invalid_argument);
    EXPECT_THROW((void)candidate_grid(s, GridScheme::I20), std::invalid_argument);
}

TEST(CandidateGrid, TopCandidatesWithTooFewExcessesAreDropped) {
    std::vector<double> x;
    for (int i = 0; i < 30; ++i) x.push_back(i);
    const SortedSample s(x);
    const auto g = candidate_grid(s, GridScheme::I20);
    EXPECT_LT(g.entries.size(), 20u);
    EXPECT_FALSE(g.warnings.empty());
    for (const auto& c : g.entries) EXPECT_GE(s.count_above(c.u), kMinExcesses);
}

TEST(CandidateGrid, AllPointsExcludesTopTen) {
    std::vector<double> x;
    for (int i = 0; i < 40; ++i) x.push_back(i * 0.5);
    x.push_back(3.0);  // duplicate value appears once
    const SortedSample s(x);
    const auto g = candidate_grid(s, GridScheme::all_points);
    EXPECT_EQ(g.entries.size(), 30u);
    EXPECT_DOUBLE_EQ(g.entries.front().u, 0.0);
    EXPECT_DOUBLE_EQ(g.entries.back().u, s[30]);
    EXPECT_THROW((void)candidate_grid(SortedSample({1, 2, 3}), GridScheme::all_points),
                 std::invalid_argument);
}

TEST(CandidateGrid, CustomLevels) {
    const SortedSample s(hybrid_sample(200, {0.5, 0.2}, 1));
    const std::vector<double> levels{0.3, 0.6, 0.9};
    const auto g = candidate_grid(s, levels);
    ASSERT_EQ(g.entries.size(), 3u);
    EXPECT_EQ(g.scheme, GridScheme::custom);
    const std::vector<double> bad{0.6, 0.3};
    EXPECT_THROW((void)candidate_grid(s, bad), std::invalid_argument);
    const std::vector<double> out_of_range{0.5, 1.0};
    EXPECT_THROW((void)candidate_grid(s, out_of_range), std::invalid_argument);
}

TEST(MinDistance, PointsOnTheCurve) {
    const double t3 = 1.2 / 2.8;
    const auto a = min_distance_to_curve(t3, gpd_tau4_of_tau3(t3));
    EXPECT_LT(a.distance, 1e-9);
    EXPECT_NEAR(a.tau3_nearest, 0.428571, 1e-6);
    EXPECT_LT(min_distance_to_curve(0.0, 0.0).distance, 1e-9);
    EXPECT_LT(min_distance_to_curve(0.428571, 0.248120).distance, 1e-6);
    for (double tau = -0.95; tau < 0.96; tau += 0.05) {
        EXPECT_LT(min_distance_to_curve(tau, gpd_tau4_of_tau3(tau)).distance, 1e-9);
    }
}

TEST(MinDistance, MatchesDenseGrid) {
    const auto ref = oracle::curve_distance_by_grid(0.43, 0.35);
    const auto got = min_distance_to_curve(0.43, 0.35);
    EXPECT_NEAR(got.distance, ref.distance, 1e-6);
    EXPECT_NEAR(got.tau3_nearest, ref.tau3, 1e-5);

    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int i = 0; i < 100; ++i) {
        const double t3 = u(gen), t4 = u(gen);
        EXPECT_NEAR(min_distance_to_curve(t3, t4).distance,
                    oracle::curve_distance_by_grid(t3, t4, 1e-5).distance, 1e-6)
            << t3 << ", " << t4;
    }
}

TEST(MinDistance, FarPointsStayInsideOpenInterval) {
    const auto d = min_distance_to_curve(5.0, 5.0);
    EXPECT_LT(d.tau3_nearest, 1.0);
    EXPECT_GT(d.tau3_nearest, -1.0);
    EXPECT_GT(d.distance, 0.0);
}

TEST(SelectThreshold, SingleCandidate) {
    const SortedSample s(hybrid_sample(200, {0.75, 0.2}, 2));
    const std::vector<double> one{0.6};
    const auto r = select_threshold(s, candidate_grid(s, one));
    EXPECT_EQ(r.index, 1u);
    EXPECT_DOUBLE_EQ(r.u_star, empirical_quantile(s, 0.6));
    EXPECT_EQ(r.n_star, s.count_above(r.u_star));
}

TEST(SelectThreshold, PicksMinimumDistanceLowestIndexOnTies) {
    const SortedSample s(hybrid_sample(500, {0.75, 0.2}, 3));
    const auto r = select_threshold(s, candidate_grid(s, GridScheme::I20));
    ASSERT_EQ(r.diagnostics.size(), 20u);
    double best = INFINITY;
    std::size_t idx = 0;
    for (const auto& d : r.diagnostics) {
        if (d.distance < best) {
            best = d.distance;
            idx = d.index;
        }
        EXPECT_EQ(d.n_excess, s.count_above(d.u));
    }
    EXPECT_EQ(r.index, idx);

    // Duplicate candidates have identical distances; the first one wins.
    CandidateGrid dup;
    dup.entries = {{0.5, empirical_quantile(s, 0.5)}, {0.5, empirical_quantile(s, 0.5)}};
    EXPECT_EQ(select_threshold(s, dup).index, 1u);
}

TEST(SelectThreshold, SkipsUnusableCandidates) {
    CandidateGrid g;
    const SortedSample s({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    g.entries = {{0.1, 2.0}, {0.99, 10.0}};
    const auto r = select_threshold(s, g);
    EXPECT_EQ(r.diagnostics.size(), 1u);
    EXPECT_FALSE(r.warnings.empty());
    g.entries = {{0.99, 10.0}};
    EXPECT_THROW((void)select_threshold(s, g), std::runtime_error);
}

TEST(SelectThreshold, AffineEquivariance) {
    const auto x = hybrid_sample(500, {0.75, 0.2}, 21);
    const double a = 3.7, b = -12.0;
    std::vector<double> y(x);
    for (auto& v : y) v = a * v + b;
    const SortedSample sx(x), sy(y);
    const auto rx = select_threshold(sx, candidate_grid(sx, GridScheme::I20));
    const auto ry = select_threshold(sy, candidate_grid(sy, GridScheme::I20));
    EXPECT_EQ(rx.index, ry.index);
    EXPECT_EQ(rx.n_star, ry.n_star);
    EXPECT_NEAR(ry.u_star, a * rx.u_star + b, 1e-10);
    ASSERT_EQ(rx.diagnostics.size(), ry.diagnostics.size());
    for (std::size_t i = 0; i < rx.diagnostics.size(); ++i) {
        EXPECT_NEAR(rx.diagnostics[i].distance, ry.diagnostics[i].distance, 1e-9);
    }
}

TEST(SelectThreshold, Deterministic) {
    const SortedSample s(hybrid_sample(300, {0.5, -0.2}, 8));
    const auto g = candidate_grid(s, GridScheme::I10);
    const auto a = select_threshold(s, g);
    const auto b = select_threshold(s, g);
    EXPECT_EQ(a.index, b.index);
    EXPECT_EQ(a.u_star, b.u_star);
    ASSERT_EQ(a.diagnostics.size(), b.diagnostics.size());
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
        EXPECT_EQ(a.diagnostics[i].distance, b.diagnostics[i].distance);
    }
}

TEST(SelectThreshold, PureGpdSampleIsSelfConsistent) {
    const SortedSample s(gpd_sample(10000, {0.2, 1.0}, 31));
    const auto r = select_threshold(s, candidate_grid(s, GridScheme::I10));
    for (const auto& d : r.diagnostics) EXPECT_LT(d.distance, 0.05);
    const auto fit = fit_ml(s.excesses_over(r.u_star));
    ASSERT_TRUE(fit.converged);
    EXPECT_GT(fit.params.xi, 0.1);
    EXPECT_LT(fit.params.xi, 0.3);
}

TEST(SelectThreshold, HybridMeanThresholdNearTruth) {
    double sum = 0.0;
    const int reps = 500;
    for (int rep = 0; rep < reps; ++rep) {
        CounterRng rng(2718, static_cast<std::uint64_t>(rep));
        const SortedSample s(hybrid_sample(500, {0.75, 0.2}, rng));
        sum += select_threshold(s, candidate_grid(s, GridScheme::I20)).u_star;
    }
    EXPECT_NEAR(sum / reps, 0.75, 0.1);
}

TEST(LmrdExport, CurveBoundAndCandidates) {
    const SortedSample s(hybrid_sample(400, {0.75, 0.2}, 6));
    const auto r = select_threshold(s, candidate_grid(s, GridScheme::I10));
    const auto rows = lmrd_export(r, 101);
    std::size_t curve = 0, bound = 0, cand = 0, selected = 0;
    for (const auto& row : rows) {
        switch (row.kind) {
            case LmrdKind::curve:
                ++curve;
                EXPECT_NEAR(row.tau4, gpd_tau4_of_tau3(row.tau3), 1e-12);
                EXPECT_GE(row.tau3, 0.0);
                EXPECT_LT(row.tau3, 1.0);
                break;
            case LmrdKind::bound:
                ++bound;
                EXPECT_NEAR(row.tau4, general_lower_bound(row.tau3), 1e-12);
                break;
            case LmrdKind::candidate: ++cand; break;
            case LmrdKind::selected:
                ++selected;
                EXPECT_EQ(row.index, r.index);
                EXPECT_DOUBLE_EQ(row.u, r.u_star);
                break;
        }
    }
    EXPECT_EQ(curve, 101u);
    EXPECT_EQ(bound, 101u);
    EXPECT_EQ(selected, 1u);
    EXPECT_EQ(cand + selected, r.diagnostics.size());
    EXPECT_EQ(rows.front().tau3, 0.0);
    EXPECT_EQ(rows.front().tau4, 0.0);
}

TEST(LmrdExport, CurvePassesThroughTheShapePointTwoTenths) {
    const SelectionResult empty;
    const auto rows = lmrd_export(empty, 7);
    EXPECT_NEAR(rows[3].tau3, 0.428571, 1e-6);
    EXPECT_NEAR(rows[3].tau4, 0.248120, 1e-6);
}

TEST(LmrdExport, WritesHeaderAndSvg) {
    const SortedSample s(hybrid_sample(400, {0.75, 0.2}, 6));
    const auto rows = lmrd_export(select_threshold(s, candidate_grid(s, GridScheme::I10)), 11);
    std::ostringstream csv, svg;
    write_lmrd(csv, rows);
    const std::string text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "kind,tau3,tau4,index,u,n_excess,distance");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(rows.size() + 1));
    EXPECT_NE(text.find("\nselected,"), std::string::npos);
    render_lmrd_svg(svg, rows);
    EXPECT_NE(svg.str().find("<svg"), std::string::npos);
    EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
}
