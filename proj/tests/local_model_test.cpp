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

#include "qlan/local_model.hpp"
#include "test_util.hpp"

using namespace qlan;
using namespace qlan::testing;

namespace {

LocalParams params(int d, int r, std::initializer_list<double> u, std::initializer_list<Complex> z) {
    LocalParams p = LocalParams::zero(d, r);
    int k = 0;
    for (double x : u) {
        p.u[k++] = x;
    }
    k = 0;
    for (Complex x : z) {
        p.z[k++] = x;
    }
    return p;
}

CenterState random_center(int d, int r, Rng &rng) {
    // Well separated spectrum so the gap checks never bite.
    RealVector mu(r);
    for (int k = 0; k < r; k++) {
        mu[k] = (double)(r - k) + std::uniform_real_distribution<double>(0, 0.5)(rng);
    }
    mu /= mu.sum();
    return CenterState(mu, random_unitary(d, rng));
}

}  // namespace

TEST(ModePairs, OrderAndCount) {
    auto pairs = mode_pairs(4, 2);
    std::vector<ModePair> expected{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    EXPECT_EQ(pairs, expected);
    EXPECT_EQ(mode_pairs(3, 3).size(), 3u);
}

TEST(Generators, QubitExample) {
    auto g = su_generators(2);
    ASSERT_EQ(g.size(), 3u);
    const Complex i1(0, 1);
    Matrix h(2, 2), t12(2, 2), t21(2, 2);
    h << 1, 0, 0, -1;
    t12 << 0, i1, -i1, 0;
    t21 << 0, 1, 1, 0;
    EXPECT_LT((g[0].entries() - h).norm(), 1e-15);
    EXPECT_LT((g[1].entries() - t12).norm(), 1e-15);
    EXPECT_LT((g[2].entries() - t21).norm(), 1e-15);
}

TEST(Generators, CountTraceAndOrthogonality) {
    for (int d = 2; d <= 6; d++) {
        auto g = su_generators(d);
        EXPECT_EQ((int)g.size(), (d - 1) + d * (d - 1));
        for (size_t a = 0; a < g.size(); a++) {
            EXPECT_NEAR(std::abs(g[a].entries().trace()), 0.0, 1e-14);
        }
        // T pairs are orthogonal to everything else and square-trace to 2.
        for (size_t a = d - 1; a < g.size(); a++) {
            for (size_t b = 0; b < g.size(); b++) {
                Complex t = (g[a].entries() * g[b].entries()).trace();
                EXPECT_NEAR(std::abs(t), a == b ? 2.0 : 0.0, 1e-13);
            }
        }
    }
}

TEST(Rotation, ZeroIsIdentityAndUnitary) {
    Rng rng = make_rng(4);
    CenterState c = random_center(4, 3, rng);
    EXPECT_LT((rotation(c, LocalParams::zero(4, 3), 0.1) - Matrix::Identity(4, 4)).norm(), 1e-14);
    for (int trial = 0; trial < 20; trial++) {
        Matrix u = rotation(c, random_local_params(4, 3, 1.0, rng), 0.3);
        EXPECT_LT((u * u.adjoint() - Matrix::Identity(4, 4)).norm(), 1e-10);
    }
}

TEST(Rotation, QubitClosedForm) {
    CenterState c = CenterState::diagonal(real_vec({1.0}), 2);
    double z = 0.7, scale = 0.4;
    Matrix u = rotation(c, params(2, 1, {}, {Complex(z, 0)}), scale);
    double a = z * scale;
    Matrix expected(2, 2);
    expected << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    EXPECT_LT((u - expected).norm(), 1e-12);
}

TEST(Center, RejectsDegenerateSpectrum) {
    EXPECT_QLAN_ERROR(CenterState::diagonal(real_vec({0.5, 0.5}), 2), ErrorCode::GapTooSmall);
    EXPECT_QLAN_ERROR(CenterState::diagonal(real_vec({0.6, 0.3}), 2), ErrorCode::NotUnitTrace);
}

TEST(LocalState, Examples) {
    CenterState c = CenterState::diagonal(real_vec({0.6, 0.4}), 2);
    EXPECT_LT((local_state(c, LocalParams::zero(2, 2), 1.0).entries() - c.density()).norm(), 1e-15);
    Matrix shifted = local_state(c, params(2, 2, {0.1}, {0.0}), 1.0).entries();
    EXPECT_LT((shifted - diag_state({0.7, 0.3})).norm(), 1e-14);
    EXPECT_QLAN_ERROR(local_state(c, params(2, 2, {1.0}, {0.0}), 1.0), ErrorCode::DiagonalOutOfRange);
}

TEST(LocalState, SpectrumAndRankPreserved) {
    Rng rng = make_rng(8);
    for (int trial = 0; trial < 30; trial++) {
        int d = 2 + trial % 4;
        int r = 1 + trial % d;
        CenterState c = random_center(d, r, rng);
        LocalParams t = random_local_params(d, r, 1.0, rng);
        double scale = 0.02;
        DensityMatrix rho = local_state(c, t, scale);
        EXPECT_EQ(rho.rank(), r);
        RealVector expected = RealVector::Zero(d);
        expected.head(r) = c.mu() + scale * t.full_u();
        std::sort(expected.data(), expected.data() + d, std::greater<double>());
        EXPECT_LT((rho.eigen().values - expected).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(FirstOrder, ZeroBlockAndConvergenceOrder) {
    Rng rng = make_rng(9);
    CenterState c = CenterState::diagonal(real_vec({0.5, 0.3, 0.2}), 5);
    LocalParams t = random_local_params(5, 3, 1.0, rng);
    Matrix f = first_order_state(c, t, 0.05);
    EXPECT_EQ(f.bottomRightCorner(2, 2).norm(), 0.0);
    EXPECT_LT((first_order_state(c, LocalParams::zero(5, 3), 0.05) - c.density()).norm(), 1e-15);
    // Halving the scale quarters the second-order remainder.
    double prev = 0;
    for (int k = 0; k < 5; k++) {
        double scale = 0.04 / std::pow(2.0, k);
        double err = (local_state(c, t, scale).entries() - first_order_state(c, t, scale)).norm();
        if (k > 0) {
            EXPECT_NEAR(prev / err, 4.0, 0.3);
        }
        prev = err;
    }
}

TEST(Extract, InvertsFirstOrderState) {
    Rng rng = make_rng(10);
    for (int trial = 0; trial < 30; trial++) {
        int d = 2 + trial % 4;
        int r = 1 + trial % d;
        CenterState c = random_center(d, r, rng);
        EXPECT_LT(extract_local_params(c.density(), c, 0.01).norm(), 1e-12);
        LocalParams t = random_local_params(d, r, 1.0, rng);
        LocalParams back = extract_local_params(first_order_state(c, t, 0.01), c, 0.01);
        EXPECT_LT((back.to_real() - t.to_real()).norm(), 1e-10);
    }
}

TEST(Extract, SecondOrderResidualOnLocalState) {
    Rng rng = make_rng(12);
    CenterState c = random_center(3, 2, rng);
    LocalParams t = random_local_params(3, 2, 1.0, rng);
    double prev = 0;
    for (int k = 0; k < 4; k++) {
        double scale = 0.02 / std::pow(2.0, k);
        double err = (extract_local_params(local_state(c, t, scale), c, scale).to_real() - t.to_real()).norm();
        if (k > 0) {
            EXPECT_NEAR(prev / err, 2.0, 0.2);
        }
        prev = err;
    }
}

TEST(Extract, RejectsFarStates) {
    CenterState c = CenterState::diagonal(real_vec({0.9, 0.1}), 2);
    EXPECT_QLAN_ERROR(extract_local_params(diag_state({0.1, 0.9}), c, 0.01), ErrorCode::NotLocal);
}

TEST(Solve, InvertsLocalStateExactly) {
    Rng rng = make_rng(13);
    for (int trial = 0; trial < 30; trial++) {
        int d = 2 + trial % 4;
        int r = 1 + trial % d;
        CenterState c = random_center(d, r, rng);
        LocalParams t = random_local_params(d, r, 3.0, rng);
        double scale = 0.01;
        LocalParams back = solve_local_params(local_state(c, t, scale).entries(), c, scale);
        EXPECT_LT((back.to_real() - t.to_real()).norm(), 1e-8);
    }
}

TEST(Solve, RejectsStateOfWrongRank) {
    CenterState c = CenterState::diagonal(real_vec({1.0}), 2);
    EXPECT_QLAN_ERROR(solve_local_params(diag_state({0.9, 0.1}), c, 0.01), ErrorCode::NotLocal);
}

TEST(ThetaLoss, Examples) {
    CenterState c2 = CenterState::diagonal(real_vec({0.6, 0.4}), 2);
    LocalParams zero2 = LocalParams::zero(2, 2);
    EXPECT_NEAR(theta_loss(c2, zero2, zero2), 0.0, 1e-15);
    EXPECT_NEAR(theta_loss(c2, params(2, 2, {1.0}, {0.0}), zero2), 2.0, 1e-14);
    CenterState c1 = CenterState::diagonal(real_vec({1.0}), 2);
    EXPECT_NEAR(theta_loss(c1, params(2, 1, {}, {Complex(1, 0)}), LocalParams::zero(2, 1)), 2.0, 1e-14);
}

TEST(ThetaLoss, BothFormsAgree) {
    Rng rng = make_rng(14);
    for (int trial = 0; trial < 50; trial++) {
        int d = 2 + trial % 4;
        int r = 1 + trial % d;
        CenterState c = random_center(d, r, rng);
        LocalParams a = random_local_params(d, r, 2.0, rng);
        LocalParams b = random_local_params(d, r, 2.0, rng);
        EXPECT_NEAR(theta_loss(c, a, b), theta_loss_r_form(c, a, b), 1e-12);
        EXPECT_NEAR(theta_loss(c, a, b), theta_loss(c, b, a), 1e-12);
    }
}

TEST(QuadraticLoss, DiagonalIsExactAndRandomConverges) {
    CenterState c = CenterState::diagonal(real_vec({0.5, 0.3, 0.2}), 3);
    std::vector<double> ns{1e2, 1e4, 1e6};
    auto diag_rows = quadratic_loss_check(c, params(3, 3, {0.3, -0.2}, {0, 0, 0}),
                                          params(3, 3, {-0.1, 0.4}, {0, 0, 0}), ns);
    for (const auto &row : diag_rows) {
        EXPECT_NEAR(row.ratio, 1.0, 1e-10);
    }
    Rng rng = make_rng(15);
    LocalParams a = random_local_params(3, 3, 1.0, rng);
    LocalParams b = random_local_params(3, 3, 1.0, rng);
    auto rows = quadratic_loss_check(c, a, a, ns);
    for (const auto &row : rows) {
        EXPECT_EQ(row.hs2, 0.0);
        EXPECT_EQ(row.loss_over_n, 0.0);
    }
    rows = quadratic_loss_check(c, a, b, ns);
    for (size_t k = 1; k < rows.size(); k++) {
        EXPECT_LT(std::abs(rows[k].ratio - 1), std::abs(rows[k - 1].ratio - 1));
    }
    EXPECT_LT(std::abs(rows.back().ratio - 1), 1e-2);
}

TEST(Params, RealRoundTripAndBall) {
    Rng rng = make_rng(16);
    for (int trial = 0; trial < 20; trial++) {
        LocalParams t = random_local_params(4, 2, 0.5, rng);
        EXPECT_LE(t.norm(), 0.5 + 1e-15);
        LocalParams back = LocalParams::from_real(4, 2, t.to_real());
        EXPECT_EQ(back.to_real(), t.to_real());
        EXPECT_EQ(t.real_dim(), 1u + 2 * mode_pairs(4, 2).size());
    }
}
