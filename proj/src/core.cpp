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

#include "qlan/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlan {

Rng make_rng(uint64_t seed) {
    std::seed_seq seq{(uint32_t)(seed & 0xffffffffu), (uint32_t)(seed >> 32)};
    return Rng(seq);
}

EigenDecomposition eigh(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidArgument, "eigendecomposition did not converge");
    }
    int d = (int)m.rows();
    EigenDecomposition out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    // Eigen returns ascending order.
    for (int k = 0; k < d; k++) {
        out.values[k] = solver.eigenvalues()[d - 1 - k];
        out.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
    }
    for (int k = 0; k < d; k++) {
        auto col = out.vectors.col(k);
        double best = col.cwiseAbs().maxCoeff();
        int pivot = 0;
        while (std::abs(col[pivot]) < best * (1 - 1e-12)) {
            pivot++;
        }
        Complex phase = std::conj(col[pivot]) / std::abs(col[pivot]);
        col *= phase;
        col[pivot] = Complex(col[pivot].real(), 0.0);
    }
    return out;
}

double hermiticity_defect(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

static void require_square(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

static void require_hermitian(const Matrix &m, double tol) {
    double defect = hermiticity_defect(m);
    if (defect > tol) {
        std::ostringstream msg;
        msg << "Hermitian invariant violated: max |m_ij - conj(m_ji)| = " << defect << " > tol " << tol;
        throw Error(ErrorCode::NotHermitian, msg.str(), defect);
    }
}

DensityMatrix DensityMatrix::validate(const Matrix &m, const Tolerance &tol) {
    require_square(m);
    require_hermitian(m, tol.tol);
    double trace_defect = std::abs(m.trace() - 1.0);
    if (trace_defect > tol.tol) {
        std::ostringstream msg;
        msg << "unit-trace invariant violated: |trace - 1| = " << trace_defect;
        throw Error(ErrorCode::NotUnitTrace, msg.str(), trace_defect);
    }
    DensityMatrix out;
    // Symmetrise so that downstream code sees an exactly Hermitian matrix.
    out.entries_ = (m + m.adjoint()) / 2.0;
    out.tol_ = tol;
    out.eig_ = eigh(out.entries_);
    double smallest = out.eig_.values[out.eig_.values.size() - 1];
    if (smallest < -tol.tol) {
        std::ostringstream msg;
        msg << "positivity invariant violated: smallest eigenvalue = " << smallest;
        throw Error(ErrorCode::NotPSD, msg.str(), -smallest);
    }
    out.rank_ = (int)(out.eig_.values.array() > tol.rank_cutoff).count();
    return out;
}

DensityMatrix validate_state(const Matrix &m, const Tolerance &tol) {
    return DensityMatrix::validate(m, tol);
}

Observable Observable::validate(const Matrix &m, const Tolerance &tol) {
    require_square(m);
    require_hermitian(m, tol.tol);
    Observable out;
    out.entries_ = (m + m.adjoint()) / 2.0;
    return out;
}

Povm::Povm(std::vector<Matrix> elements, std::vector<std::string> labels, const Tolerance &tol)
    : elements_(std::move(elements)), labels_(std::move(labels)), tol_(tol) {
    if (elements_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "POVM needs at least one element");
    }
    dim_ = (int)elements_[0].rows();
    Matrix total = Matrix::Zero(dim_, dim_);
    for (size_t k = 0; k < elements_.size(); k++) {
        const Matrix &e = elements_[k];
        if (e.rows() != dim_ || e.cols() != dim_) {
            throw Error(ErrorCode::DimensionMismatch, "POVM elements differ in dimension");
        }
        require_hermitian(e, tol.tol);
        double smallest = eigh(e).values[dim_ - 1];
        if (smallest < -tol.tol) {
            std::ostringstream msg;
            msg << "POVM element " << k << " is not PSD: smallest eigenvalue = " << smallest;
            throw Error(ErrorCode::NotPSD, msg.str(), -smallest);
        }
        total += e;
    }
    double defect = (total - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (defect > tol.tol) {
        std::ostringstream msg;
        msg << "POVM elements do not sum to identity: max deviation = " << defect;
        throw Error(ErrorCode::InvalidArgument, msg.str(), defect);
    }
    if (labels_.empty()) {
        for (size_t k = 0; k < elements_.size(); k++) {
            labels_.push_back(std::to_string(k));
        }
    } else if (labels_.size() != elements_.size()) {
        throw Error(ErrorCode::LengthMismatch, "POVM labels and elements differ in length");
    }
}

Povm Povm::from_basis(const Matrix &basis, const Tolerance &tol) {
    std::vector<Matrix> elements;
    for (int k = 0; k < basis.cols(); k++) {
        elements.push_back(basis.col(k) * basis.col(k).adjoint());
    }
    return Povm(std::move(elements), {}, tol);
}

static void require_same_dim(int a, int b) {
    if (a != b) {
        std::ostringstream msg;
        msg << "dimensions differ: " << a << " vs " << b;
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

static double trace_product(const Matrix &a, const Matrix &b) {
    // Tr(ab) = sum_ij a_ij b_ji
    return (a.cwiseProduct(b.transpose())).sum().real();
}

std::vector<double> born_probabilities_raw(const DensityMatrix &rho, const Povm &povm) {
    require_same_dim(rho.dim(), povm.dim());
    std::vector<double> p;
    p.reserve(povm.size());
    for (const auto &e : povm.elements()) {
        p.push_back(trace_product(rho.entries(), e));
    }
    return p;
}

std::vector<double> born_probabilities(const DensityMatrix &rho, const Povm &povm) {
    std::vector<double> p = born_probabilities_raw(rho, povm);
    double tol = std::max(rho.tolerance().tol, povm.tolerance().tol);
    double total = 0;
    for (size_t k = 0; k < p.size(); k++) {
        if (p[k] < 0) {
            if (p[k] < -tol) {
                std::ostringstream msg;
                msg << "Born probability " << k << " = " << p[k] << " is below -tol";
                throw Error(ErrorCode::NotPSD, msg.str(), -p[k]);
            }
            p[k] = 0;
        }
        total += p[k];
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

std::vector<uint64_t> sample_multinomial(const std::vector<double> &probs, uint64_t n, Rng &rng) {
    std::vector<uint64_t> counts(probs.size(), 0);
    uint64_t remaining = n;
    double mass = 0;
    for (double p : probs) {
        mass += p;
    }
    for (size_t k = 0; k + 1 < probs.size() && remaining > 0; k++) {
        double q = mass > 0 ? std::clamp(probs[k] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<long long> draw((long long)remaining, q);
        uint64_t c = (uint64_t)draw(rng);
        counts[k] = c;
        remaining -= c;
        mass -= probs[k];
    }
    if (!probs.empty()) {
        counts.back() += remaining;
    }
    return counts;
}

std::vector<uint64_t> sample_outcomes(const DensityMatrix &rho, const Povm &povm, uint64_t n, uint64_t seed) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
    }
    auto probs = born_probabilities(rho, povm);
    Rng rng = make_rng(seed);
    return sample_multinomial(probs, n, rng);
}

double expectation(const DensityMatrix &rho, const Observable &obs) {
    require_same_dim(rho.dim(), obs.dim());
    return trace_product(rho.entries(), obs.entries());
}

double variance(const DensityMatrix &rho, const Observable &obs) {
    require_same_dim(rho.dim(), obs.dim());
    double mean = expectation(rho, obs);
    Matrix sq = obs.entries() * obs.entries();
    return trace_product(rho.entries(), sq) - mean * mean;
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dim(a.dim(), b.dim());
    Matrix diff = a.entries() - b.entries();
    return eigh(diff).values.cwiseAbs().sum();
}

double hs_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
    }
    return (a - b).norm();
}

double hs_distance(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dim(a.dim(), b.dim());
    return hs_distance(a.entries(), b.entries());
}

Matrix random_unitary(int d, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            z(i, j) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases so the distribution is Haar.
    for (int k = 0; k < d; k++) {
        Complex diag = r(k, k);
        q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

Matrix random_hermitian(int d, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            z(i, j) = Complex(g(rng), g(rng));
        }
    }
    return (z + z.adjoint()) / 2.0;
}

Matrix random_density(int d, int rank, Rng &rng) {
    if (rank < 1 || rank > d) {
        throw Error(ErrorCode::InvalidArgument, "rank must lie in [1, d]");
    }
    std::exponential_distribution<double> e(1.0);
    RealVector spec = RealVector::Zero(d);
    for (int k = 0; k < rank; k++) {
        spec[k] = e(rng);
    }
    spec /= spec.sum();
    Matrix u = random_unitary(d, rng);
    return u * spec.cast<Complex>().asDiagonal() * u.adjoint();
}

Vector random_pure(int d, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; i++) {
        v[i] = Complex(g(rng), g(rng));
    }
    return v / v.norm();
}

}  // namespace qlan
