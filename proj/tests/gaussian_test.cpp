// Copyright 2026 The qlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "qlan/gaussian.hpp"
#include "qlan/report.hpp"
#include "test_util.hpp"

using namespace qlan;
using namespace qlan::testing;

namespace {

GaussianLimitModel model_of(std::initializer_list<double> mu, int d) {
    return build_model(CenterState::diagonal(real_vec(mu), d));
}

// Oracle for the minimax constant straight from its definition.
double minimax_oracle(const RealVector &mu, int d) {
    int r = (int)mu.size();
    double total = 0;
    for (int i = 0; i < r; i++) {
        total += mu[i] * (1 - mu[i]);
        total += 2 * mu[i] * (d - 1 - i);
    }
    return total;
}

}  // namespace

TEST(Model, QubitExamples) {
    GaussianLimitModel m = model_of({0.75, 0.25}, 2);
    ASSERT_EQ(m.variances.size(), 1u);
    EXPECT_NEAR(m.temperatures[0], std::log(3.0), 1e-14);
    EXPECT_NEAR(m.variances[0], 1.0, 1e-12);
    ASSERT_EQ(m.classical_cov.rows(), 1);
    EXPECT_NEAR(m.classical_cov(0, 0), 3.0 / 16.0, 1e-15);

    GaussianLimitModel p = model_of({1.0}, 2);
    EXPECT_EQ(p.classical_cov.rows(), 0);
    ASSERT_EQ(p.variances.size(), 1u);
    EXPECT_TRUE(std::isinf(p.temperatures[0]));
    EXPECT_EQ(p.variances[0], 0.5);

    EXPECT_NEAR(thermal_variance(std::log(2.0)), 1.5, 1e-12);
    EXPECT_EQ(thermal_variance(std::numeric_limits<double>::infinity()), 0.5);
}

TEST(Model, VarianceNotationsAgree) {
    Rng rng = make_rng(41);
    for (int k = 0; k < 50; k++) {
        double beta = std::uniform_real_distribution<double>(0.01, 10)(rng);
        EXPECT_NEAR((2 * thermal_variance(beta) + 1) / 2, 1 / (1 - std::exp(-beta)), 1e-12 * (1 / (1 - std::exp(-beta))));
    }
}

TEST(Model, MultinomialInverseIdentity) {
    Rng rng = make_rng(42);
    for (int trial = 0; trial < 30; trial++) {
        int r = 2 + trial % 5;
        RealVector mu(r);
        for (int k = 0; k < r; k++) {
            mu[k] = std::uniform_real_distribution<double>(0.1, 1)(rng);
        }
        mu /= mu.sum();
        RealMatrix v = multinomial_covariance(mu);
        ASSERT_EQ(v.rows(), r - 1);
        RealMatrix expected = RealMatrix::Constant(r - 1, r - 1, 1 / mu[r - 1]);
        for (int i = 0; i < r - 1; i++) {
            expected(i, i) += 1 / mu[i];
        }
        EXPECT_LT((v.inverse() - expected).cwiseAbs().maxCoeff(), 1e-10 * expected.cwiseAbs().maxCoeff());
    }
}

TEST(Model, ModeWeightIdentity) {
    GaussianLimitModel m = model_of({0.5, 0.3, 0.2}, 4);
    for (size_t k = 0; k < m.mode_index.size(); k++) {
        const auto &p = m.mode_index[k];
        double mi = m.mu[p.i];
        double mj = p.j < m.r ? m.mu[p.j] : 0.0;
        EXPECT_NEAR(2 * m.variances[k] + 1, 2 * mi / (mi - mj), 1e-12);
    }
}

TEST(Minimax, ConstantExamplesAndOracle) {
    EXPECT_NEAR(minimax_constant(model_of({0.75, 0.25}, 2)), 1.875, 1e-14);
    EXPECT_NEAR(minimax_constant(model_of({1.0}, 2)), 2.0, 1e-14);
    std::vector<std::pair<std::vector<double>, int>> cases{{{0.5, 0.3, 0.2}, 4}, {{0.5, 0.3, 0.2}, 3}, {{0.6, 0.4}, 5}};
    for (const auto &[mu, d] : cases) {
        RealVector m = Eigen::Map<const RealVector>(mu.data(), (int)mu.size());
        EXPECT_NEAR(minimax_constant(build_model(CenterState::diagonal(m, d))), minimax_oracle(m, d), 1e-12);
    }
}

TEST(Sampling, VacuumAndThermalMoments) {
    GaussianLimitModel m = model_of({0.75, 0.25}, 2);
    LocalParams theta = LocalParams::zero(2, 2);
    theta.z[0] = Complex(0.4, -0.3);
    Pair target = z_to_xi(theta.z[0]);
    Rng rng = make_rng(43);
    McStats x0, x1, u;
    for (int k = 0; k < 200000; k++) {
        GaussianSample s = sample_covariant(m, theta, rng);
        x0.add(s.modes[0][0]);
        x1.add(s.modes[0][1]);
        u.add(s.classical[0]);
    }
    EXPECT_NEAR(x0.sample_variance(), 1.5, 0.015);
    EXPECT_NEAR(x1.sample_variance(), 1.5, 0.015);
    EXPECT_NEAR(u.sample_variance(), 3.0 / 16.0, 0.01 * 3.0 / 16.0 * 3);
    EXPECT_LT(std::abs(x0.mean() - target[0]), 5 * x0.stderr_of_mean());
    EXPECT_LT(std::abs(x1.mean() - target[1]), 5 * x1.stderr_of_mean());
    EXPECT_LT(std::abs(u.mean()), 5 * u.stderr_of_mean());

    GaussianLimitModel pure = model_of({1.0}, 2);
    McStats v0, v1, cross;
    for (int k = 0; k < 200000; k++) {
        GaussianSample s = sample_covariant(pure, LocalParams::zero(2, 1), rng);
        v0.add(s.modes[0][0] * s.modes[0][0]);
        v1.add(s.modes[0][1] * s.modes[0][1]);
        cross.add(s.modes[0][0] * s.modes[0][1]);
    }
    EXPECT_NEAR(v0.mean(), 1.0, 0.01);
    EXPECT_NEAR(v1.mean(), 1.0, 0.01);
    EXPECT_NEAR(cross.mean(), 0.0, 0.01);
}

TEST(Sampling, XiRoundTripAndIndexCheck) {
    Complex z(0.3, -1.2);
    Pair xi = z_to_xi(z);
    EXPECT_NEAR(xi[0], std::sqrt(2.0) * 0.3, 1e-15);
    EXPECT_NEAR(std::abs(xi_to_z(xi) - z), 0.0, 1e-15);
    GaussianLimitModel m = model_of({0.75, 0.25}, 2);
    EXPECT_QLAN_ERROR(sample_covariant(m, LocalParams::zero(3, 2), (uint64_t)1), ErrorCode::IndexMismatch);
}

TEST(Covariant, RiskMatchesConstantAndIsShiftInvariant) {
    std::vector<std::pair<std::vector<double>, int>> cases{{{0.75, 0.25}, 2}, {{1.0}, 2}, {{0.5, 0.3, 0.2}, 4}};
    for (const auto &[mu, d] : cases) {
        RealVector m = Eigen::Map<const RealVector>(mu.data(), (int)mu.size());
        CenterState c = CenterState::diagonal(m, d);
        GaussianLimitModel model = build_model(c);
        Rng rng = make_rng(44);
        LocalParams far = random_local_params(d, (int)mu.size(), 10.0, rng);
        for (const LocalParams &theta : {LocalParams::zero(d, (int)mu.size()), far}) {
            McStats risk;
            for (int k = 0; k < 100000; k++) {
                risk.add(theta_loss(c, theta, covariant_estimate(sample_covariant(model, theta, rng))));
            }
            EXPECT_LT(std::abs(risk.mean() - minimax_oracle(m, d)), 4 * risk.stderr_of_mean());
        }
    }
}

TEST(Bayes, ShrinkageAndRiskExamples) {
    Pair x{2.0, -4.0};
    EXPECT_NEAR(bayes_shrinkage(x, 0.5, 1.0)[0], 1.0, 1e-15);
    EXPECT_NEAR(bayes_shrinkage(x, 1.5, 1.0)[1], -4.0 / 3.0, 1e-15);
    EXPECT_NEAR(bayes_shrinkage(x, 0.5, 1e12)[0], 2.0, 1e-9);
    EXPECT_NEAR(bayes_risk_mode(0.5, 1.0), 1.0, 1e-15);
    EXPECT_NEAR(bayes_risk_mode(1.5, 1.0), 4.0 / 3.0, 1e-15);
    for (double s0 : {0.01, 0.5, 1.0, 2.0, 100.0}) {
        EXPECT_NEAR(bayes_risk_mode(0.5, s0), 2 * s0 / (s0 + 1), 1e-14);
        EXPECT_GT(bayes_risk_mode(0.5, s0), 2 * s0 / (2 * s0 + 1));
    }
}

TEST(Bayes, ModeRiskMonteCarlo) {
    Rng rng = make_rng(45);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double s2 : {0.5, 1.5}) {
        double s0 = 2.0;
        McStats loss, unshrunk;
        for (int k = 0; k < 200000; k++) {
            Pair xi{std::sqrt(s0) * g(rng), std::sqrt(s0) * g(rng)};
            double sd = std::sqrt((2 * s2 + 1) / 2);
            Pair x{xi[0] + sd * g(rng), xi[1] + sd * g(rng)};
            Pair est = bayes_shrinkage(x, s2, s0);
            loss.add(std::pow(est[0] - xi[0], 2) + std::pow(est[1] - xi[1], 2));
            unshrunk.add(std::pow(x[0] - xi[0], 2) + std::pow(x[1] - xi[1], 2));
        }
        EXPECT_LT(std::abs(loss.mean() - bayes_risk_mode(s2, s0)), 3 * loss.stderr_of_mean());
        EXPECT_LT(loss.mean(), unshrunk.mean());
    }
}

TEST(Bayes, ClassicalRisk) {
    RealMatrix a(1, 1), b(1, 1);
    a << 2.0;
    b << 3.0;
    EXPECT_NEAR(classical_bayes_risk(a, b), 6.0 / 5.0, 1e-14);
    RealMatrix v = multinomial_covariance(real_vec({0.5, 0.3, 0.2}));
    EXPECT_NEAR(classical_bayes_risk(v, 1e12 * RealMatrix::Identity(2, 2)), v.trace(), 1e-9);
    RealMatrix bad = RealMatrix::Identity(2, 2);
    bad(1, 1) = -1;
    EXPECT_QLAN_ERROR(classical_bayes_risk(v, bad), ErrorCode::NotSPD);

    // Conjugate Gaussian model by simulation.
    RealMatrix prior = 10 * RealMatrix::Identity(2, 2);
    RealMatrix post = (v.inverse() + prior.inverse()).inverse();
    RealMatrix gain = post * v.inverse();
    Eigen::LLT<RealMatrix> lv(v);
    Rng rng = make_rng(46);
    std::normal_distribution<double> g(0.0, 1.0);
    McStats loss;
    for (int k = 0; k < 200000; k++) {
        RealVector u(2), e(2);
        u << std::sqrt(10.0) * g(rng), std::sqrt(10.0) * g(rng);
        e << g(rng), g(rng);
        RealVector x = u + lv.matrixL() * e;
        loss.add((gain * x - u).squaredNorm());
    }
    EXPECT_NEAR(loss.mean(), classical_bayes_risk(v, prior), 0.01 * classical_bayes_risk(v, prior));
}

TEST(Bayes, OneDimensional) {
    RealVector e1 = real_vec({1.0, 0.0});
    RealMatrix id = RealMatrix::Identity(2, 2);
    EXPECT_NEAR(bayes_risk_1d(e1, id, 1.0), 0.5, 1e-15);
    double inf = std::numeric_limits<double>::infinity();
    RealVector tau = real_vec({0.3, -0.7});
    RealMatrix s(2, 2);
    s << 2.0, 0.3, 0.3, 1.0;
    double a0 = 1 / tau.dot(s.inverse() * tau);
    EXPECT_NEAR(bayes_risk_1d(tau, s, inf), a0, 1e-12);
    EXPECT_NEAR(bayes_risk_1d(tau, s, 1e12), a0, 1e-9);
    EXPECT_NEAR(bayes_risk_1d(2 * tau, s, inf), a0 / 4, 1e-12);
}
