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

#ifndef QLAN_GAUSSIAN_HPP
#define QLAN_GAUSSIAN_HPP

#include <array>
#include <vector>

#include "qlan/core.hpp"
#include "qlan/local_model.hpp"

namespace qlan {

using Pair = std::array<double, 2>;

/// Classical block N(u, V_mu) tensored with one displaced thermal or pure mode per ModePair.
struct GaussianLimitModel {
    int d = 0;
    int r = 0;
    RealVector mu;
    RealMatrix classical_cov;
    std::vector<ModePair> mode_index;
    /// ln(mu_i / mu_j); +infinity for j >= r.
    std::vector<double> temperatures;
    /// coth(beta / 2) / 2; 1/2 for pure modes.
    std::vector<double> variances;
};

struct GaussianSample {
    int d = 0;
    int r = 0;
    RealVector classical;
    /// Heterodyne outcomes in xi coordinates.
    std::vector<Pair> modes;
};

GaussianLimitModel build_model(const CenterState &center);

/// diag(mu_1..mu_{r-1}) - mu mu^T on the first r - 1 coordinates.
RealMatrix multinomial_covariance(const RealVector &mu);
double thermal_variance(double beta);

/// xi = sqrt(2) (Re z, Im z) and back.
Pair z_to_xi(Complex z);
Complex xi_to_z(const Pair &xi);

GaussianSample sample_covariant(const GaussianLimitModel &model, const LocalParams &theta, uint64_t seed);
GaussianSample sample_covariant(const GaussianLimitModel &model, const LocalParams &theta, Rng &rng);

/// u = Z, z = (X1 + i X2) / sqrt(2).
LocalParams covariant_estimate(const GaussianSample &sample);

/// sum_{i<=r} mu_i (1 - mu_i) + sum_{i<=r, i<j<=d} 2 mu_i.
double minimax_constant(const GaussianLimitModel &model);

/// c X with c = 2 s0 / (2 s0 + 2 s + 1).
Pair bayes_shrinkage(const Pair &x, double sigma2, double sigma0_2);
double bayes_risk_mode(double sigma2, double sigma0_2);
/// Tr((S1^-1 + S2^-1)^-1).
double classical_bayes_risk(const RealMatrix &cov1, const RealMatrix &cov2);
/// a0 b / (a0 + b) with a0 = (tau^T S^-1 tau)^-1.
double bayes_risk_1d(const RealVector &tau, const RealMatrix &sigma, double b);

}  // namespace qlan

#endif
