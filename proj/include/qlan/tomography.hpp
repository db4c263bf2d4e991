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

#ifndef QLAN_TOMOGRAPHY_HPP
#define QLAN_TOMOGRAPHY_HPP

#include <vector>

#include "qlan/core.hpp"

namespace qlan {

/// Unit vectors whose rank-1 projectors form a projective 2-design.
struct TwoDesign {
    int dim = 0;
    std::vector<Vector> vectors;

    size_t size() const {
        return vectors.size();
    }
    /// {(d/m)|v><v|}.
    Povm povm(const Tolerance &tol = {}) const;
};

/// Complete set of mutually unbiased bases. Supported: d = 2, 4 (Pauli
/// stabiliser bases) and odd primes (quadratic-phase Fourier bases).
TwoDesign make_two_design(int d);

/// max-abs entry of (1/m) sum (|v><v|)^{(x)2} - P_sym / C(d+1, 2).
double design_residual(const TwoDesign &design);

/// (d+1) sum f_i |v_i><v_i| - I.
Matrix least_squares(const TwoDesign &design, const std::vector<double> &frequencies, const Tolerance &tol = {});

struct ThresholdResult {
    DensityMatrix estimate;
    int detected_rank;
    /// Eigenvalue vector before the loop and after every zeroing step.
    std::vector<RealVector> eigen_trace;
};

ThresholdResult spectral_threshold(const Matrix &lhat, double eps, const Tolerance &tol = {});

/// n outcomes of the design POVM under rho_true, then least squares and thresholding.
ThresholdResult preliminary_estimate(
    const DensityMatrix &rho_true, const TwoDesign &design, uint64_t n, double eps, uint64_t seed);
ThresholdResult preliminary_estimate(
    const DensityMatrix &rho_true, const TwoDesign &design, uint64_t n, double eps, Rng &rng);
ThresholdResult preliminary_estimate(const DensityMatrix &rho_true, uint64_t n, double eps, uint64_t seed);
/// Same pipeline with the exact Born probabilities in place of frequencies.
ThresholdResult preliminary_estimate_exact(const DensityMatrix &rho_true, const TwoDesign &design, double eps);

/// d exp(-3 n eps^2 / (16 d)).
double concentration_bound(int d, double n, double eps);

}  // namespace qlan

#endif
