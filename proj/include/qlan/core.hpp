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

#ifndef QLAN_CORE_HPP
#define QLAN_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qlan/error.hpp"

namespace qlan {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Numerical thresholds shared by every constructor that validates input.
struct Tolerance {
    double tol = 1e-8;
    double rank_cutoff = 1e-9;
    double gap_min = 1e-6;
    double loc_radius = 0.1;
    double design_tol = 1e-12;
};

/// Generator for `seed`. The seed is spread through a seed_seq so that
/// neighbouring seeds (seed_base + worker_index) give unrelated streams.
Rng make_rng(uint64_t seed);

/// Hermitian eigendecomposition, eigenvalues descending. Each eigenvector is
/// rephased so that its largest-magnitude component is real and positive.
struct EigenDecomposition {
    RealVector values;
    Matrix vectors;
};
EigenDecomposition eigh(const Matrix &m);

/// max |m_ij - conj(m_ji)|.
double hermiticity_defect(const Matrix &m);

class DensityMatrix {
   public:
    /// Validates `m` against `tol` and records its spectrum and numerical rank.
    static DensityMatrix validate(const Matrix &m, const Tolerance &tol = {});

    int dim() const {
        return (int)entries_.rows();
    }
    const Matrix &entries() const {
        return entries_;
    }
    const Tolerance &tolerance() const {
        return tol_;
    }
    /// #{eigenvalues > rank_cutoff}.
    int rank() const {
        return rank_;
    }
    const EigenDecomposition &eigen() const {
        return eig_;
    }

   private:
    DensityMatrix() = default;
    Matrix entries_;
    Tolerance tol_;
    EigenDecomposition eig_;
    int rank_ = 0;
};

DensityMatrix validate_state(const Matrix &m, const Tolerance &tol = {});

class Observable {
   public:
    static Observable validate(const Matrix &m, const Tolerance &tol = {});
    int dim() const {
        return (int)entries_.rows();
    }
    const Matrix &entries() const {
        return entries_;
    }

   private:
    Observable() = default;
    Matrix entries_;
};

class Povm {
   public:
    /// Checks each element is PSD and that they sum to the identity.
    Povm(std::vector<Matrix> elements, std::vector<std::string> labels = {}, const Tolerance &tol = {});

    /// Rank-1 projective measurement onto the columns of a unitary.
    static Povm from_basis(const Matrix &basis, const Tolerance &tol = {});

    int dim() const {
        return dim_;
    }
    size_t size() const {
        return elements_.size();
    }
    const std::vector<Matrix> &elements() const {
        return elements_;
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const Tolerance &tolerance() const {
        return tol_;
    }

   private:
    std::vector<Matrix> elements_;
    std::vector<std::string> labels_;
    Tolerance tol_;
    int dim_ = 0;
};

/// Tr(rho M_i) with no clamping.
std::vector<double> born_probabilities_raw(const DensityMatrix &rho, const Povm &povm);
/// Tr(rho M_i); entries in [-tol, 0) are clamped to zero and the vector renormalised.
std::vector<double> born_probabilities(const DensityMatrix &rho, const Povm &povm);

/// Multinomial counts of size n over `probs` (binomial chain).
std::vector<uint64_t> sample_multinomial(const std::vector<double> &probs, uint64_t n, Rng &rng);
std::vector<uint64_t> sample_outcomes(const DensityMatrix &rho, const Povm &povm, uint64_t n, uint64_t seed);

double expectation(const DensityMatrix &rho, const Observable &obs);
double variance(const DensityMatrix &rho, const Observable &obs);

/// Trace norm of a - b (sum of absolute eigenvalues).
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
/// Hilbert-Schmidt norm of a - b.
double hs_distance(const DensityMatrix &a, const DensityMatrix &b);
double hs_distance(const Matrix &a, const Matrix &b);

// Random objects for tests and experiments.
Matrix random_unitary(int d, Rng &rng);
Matrix random_hermitian(int d, Rng &rng);
/// Random state of the given rank: Haar basis, spectrum from a flat Dirichlet.
Matrix random_density(int d, int rank, Rng &rng);
Vector random_pure(int d, Rng &rng);

}  // namespace qlan

#endif
