#include <gtest/gtest.h>

#include <cmath>

#include "noma_pairlab/bounds.hpp"
#include "noma_pairlab/sweeps.hpp"

using namespace noma;

namespace {
const double kGs = db_to_linear(10.48);
const double kGw = db_to_linear(4.69);
}  // namespace

TEST(Range, InclusiveEndpoints) {
    EXPECT_EQ((Range{0.0, 1.0, 0.25}.values()), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ((Range{0.0, 0.3, 0.1}.values()).size(), 4u);
    EXPECT_THROW((Range{1.0, 0.0, 0.1}.values()), ConfigError);
    EXPECT_THROW((Range{0.0, 1.0, 0.0}.values()), ConfigError);
}

TEST(BetaSweep, SumRateCrossesAtBound) {
    const auto rows = beta_sweep(kGs, kGw, 0.32, Range{0.0, 1.0, 0.001}.values(), RateModel::LR);
    ASSERT_EQ(rows.size(), 1001u);
    const double cross = sign_change(rows, [](const SweepRow& r) { return r.asr_noma - r.asr_oma; });
    EXPECT_NEAR(cross, beta_upper_at_alpha(kGs, kGw, 0.32), 1e-3);
    for (const auto& r : rows) EXPECT_EQ(r.r_w_noma, rows.front().r_w_noma);
}

TEST(AlphaSweep, IndividualRatesCrossAtBounds) {
    const auto rows = alpha_sweep(kGs, kGw, 0.02, Range{0.0, 1.0, 0.0005}.values(), RateModel::LR);
    EXPECT_EQ(rows.front().value, 0.0005);  // 0 and 1 dropped
    const double weak = sign_change(rows, [](const SweepRow& r) { return r.r_w_noma - r.r_w_oma; });
    const double strong = sign_change(rows, [](const SweepRow& r) { return r.r_s_noma - r.r_s_oma; });
    EXPECT_NEAR(weak, alpha_upper(kGw), 1e-3);
    EXPECT_NEAR(strong, alpha_lower_strong(kGs, 0.02), 1e-3);
}

TEST(SignChange, NoneFound) {
    const auto rows = beta_sweep(kGs, kGw, 0.32, {0.0, 0.01}, RateModel::LR);
    EXPECT_TRUE(std::isnan(sign_change(rows, [](const SweepRow& r) { return r.asr_noma - r.asr_oma; })));
}

TEST(DrSweep, UsesStaircase) {
    const auto rows = beta_sweep(kGs, kGw, 0.32, {0.0}, RateModel::DR);
    const auto table = DrTable::cqi_default();
    EXPECT_EQ(rows[0].r_s_oma, dr_rate(kGs, table, true));
    EXPECT_EQ(rows[0].r_w_oma, dr_rate(kGw, table, true));
}

TEST(UsersSweep, RowsPerCountAndAlgorithm) {
    SimConfig c;
    c.realizations = 2;
    c.split_policy = SplitPolicy::midpoint();
    const auto rows = users_sweep(c, {4, 6}, {Algorithm::AUP, Algorithm::OMA});
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].n_users, 4);
    EXPECT_EQ(rows[3].n_users, 6);
    EXPECT_EQ(rows[3].algorithm, Algorithm::OMA);
    EXPECT_THROW(users_sweep(c, {0}, {Algorithm::AUP}), ConfigError);
}
