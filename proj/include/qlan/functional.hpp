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

#ifndef QLAN_FUNCTIONAL_HPP
#define QLAN_FUNCTIONAL_HPP

#include "qlan/core.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/local_model.hpp"
#include "qlan/report.hpp"

namespace qlan {

/// Estimation of Tr(A rho) near a center. All fields below are in the center's eigenbasis.
struct FunctionalProblem {
    CenterState center;
    Observable a;
    Matrix a_local;
    /// <A> at the center.
    double x;
    /// Variance of A at the center, from the explicit eigenbasis sum.
    double y;
};

FunctionalProblem make_functional_problem(const CenterState &center, const Observable &a);

double functional_value(const DensityMatrix &rho, const Observable &a);

/// Mean eigenvalue over n draws of the eigenprojector measurement of A.
double sample_mean_estimator(const DensityMatrix &rho_true, const Observable &a, uint64_t n, uint64_t seed);

struct LeastFavorable {
    Observable hhat;
    LocalParams theta_dir;
    /// zeta_ij per mode before conversion to z.
    std::vector<Complex> zeta_dir;
};
LeastFavorable least_favorable_family(const FunctionalProblem &problem);

struct LowerBoundIdentity {
    RealVector tau;
    RealMatrix sigma;
    double qform;
};
LowerBoundIdentity lower_bound_identity(const FunctionalProblem &problem);

/// n E(Xbar - Psi)^2 at the center by Monte Carlo; theory is y.
RiskReport functional_minimax_check(
    const FunctionalProblem &problem, uint64_t n, uint64_t reps, uint64_t seed, double prior_b = 1.0);

/// 2 (||A^2|| + 2 ||A||^2) * radius, operator norms.
double variance_stability_bound(const Observable &a, double radius);

}  // namespace qlan

#endif
