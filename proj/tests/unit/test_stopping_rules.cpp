#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "lmthresh/stopping_rules.hpp"

using namespace lmthresh;

namespace {

PValueSequence table_sequence() {
    std::ifstream in(LMTHRESH_TEST_DATA_DIR "/forwardstop_pvalues.csv");
    return read_pvalue_sequence(in);
}

PValueSequence of(std::vector<double> p) {
    PValueSequence s;
    s.pvalues = std::move(p);
    for (std::size_t i = 0; i < s.pvalues.size(); ++i) s.labels.push_back(i + 1);
    return s;
}

}  // namespace

TEST(ForwardStop, ReproducesReferenceSequence) {
    const std::vector<double> expected{0.000000, 0.000000, 0.000000, 0.000004, 0.000004,
                                       0.000004, 0.000003, 0.000005, 0.000151, 0.000613,
                                       0.010877, 0.090855, 0.107147, 0.153929, 0.176358,
                                       0.173027, 0.201570, 0.208002, 0.209602, 0.200746};
    const auto seq = table_sequence();
    ASSERT_EQ(seq.pvalues.size(), 20u);
    const auto r = forward_stop(seq, 0.05);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(r.transformed[k], expected[k], 5e-6) << "k=" << k + 1;
    }
    EXPECT_EQ(r.k_hat, 11u);
    ASSERT_TRUE(r.selected_index);
    EXPECT_EQ(*r.selected_index, 12u);
    EXPECT_FALSE(r.no_acceptable_threshold());
}

TEST(ForwardStop, AllZeroRejectsEverything) {
    const auto r = forward_stop(of({0, 0, 0, 0}), 0.05);
    for (double t : r.transformed) EXPECT_EQ(t, 0.0);
    EXPECT_EQ(r.k_hat, 4u);
    EXPECT_TRUE(r.no_acceptable_threshold());
}

TEST(ForwardStop, AllOneRejectsNothing) {
    const auto r = forward_stop(of({1, 1, 1}), 0.05);
    EXPECT_EQ(r.k_hat, 0u);
    ASSERT_TRUE(r.selected_index);
    EXPECT_EQ(*r.selected_index, 1u);
    for (double t : r.transformed) EXPECT_TRUE(std::isfinite(t));
}

TEST(ForwardStop, SingleZero) {
    const auto r = forward_stop(of({0.0}), 0.05);
    EXPECT_EQ(r.k_hat, 1u);
    EXPECT_TRUE(r.no_acceptable_threshold());
}

TEST(ForwardStop, BoundaryIsInclusive) {
    const double alpha = 0.05;
    const auto r = forward_stop(of({-std::expm1(-alpha)}), alpha);
    EXPECT_NEAR(r.transformed[0], alpha, 1e-15);
    EXPECT_EQ(r.k_hat, 1u);
}

TEST(ForwardStop, RunningAverageIdentity) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(50);
    for (auto& v : p) v = u(gen);
    const auto r = forward_stop(of(p), 0.05);
    for (std::size_t k = 1; k < p.size(); ++k) {
        const double lhs = (k + 1) * r.transformed[k] - k * r.transformed[k - 1];
        EXPECT_NEAR(lhs, -std::log1p(-p[k]), 1e-12 * (k + 1));
    }
}

TEST(ForwardStop, MonotoneInEachPValue) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    std::vector<double> p(20);
    for (auto& v : p) v = u(gen);
    const auto base = forward_stop(of(p), 0.1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto q = p;
        q[i] += 0.05;
        const auto r = forward_stop(of(q), 0.1);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k >= i) {
                EXPECT_GE(r.transformed[k], base.transformed[k]);
            } else {
                EXPECT_EQ(r.transformed[k], base.transformed[k]);
            }
        }
        EXPECT_LE(r.k_hat, base.k_hat);
    }
}

TEST(ForwardStop, RejectsBadInput) {
    EXPECT_THROW((void)forward_stop(of({}), 0.05), std::invalid_argument);
    EXPECT_THROW((void)forward_stop(of({0.5, 1.5}), 0.05), std::invalid_argument);
    EXPECT_THROW((void)forward_stop(of({0.5}), 0.0), std::invalid_argument);
    EXPECT_THROW((void)forward_stop(of({0.5}), 1.0), std::invalid_argument);
}

TEST(PValueFile, ParsesHeaderCommentsAndSeparators) {
    std::istringstream in("# comment\ni p\n\n1;0.5\n2\t0.25\n3 0.125\n");
    const auto s = read_pvalue_sequence(in);
    EXPECT_EQ(s.pvalues, (std::vector<double>{0.5, 0.25, 0.125}));
    EXPECT_EQ(s.labels, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(PValueFile, ErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            (void)read_pvalue_sequence(in);
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("1,0.5\n2,abc\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("1,0.5\n2,0.1,7\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("1,0.5\n\n3,1.5\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("# only a comment\n").find("no data"), std::string::npos);
}
