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

#include "qlan/tomography.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qlan {

namespace {

Matrix pauli(char c) {
    Matrix p = Matrix::Zero(2, 2);
    const Complex i1(0, 1);
    switch (c) {
        case 'I':
            p(0, 0) = p(1, 1) = 1;
            break;
        case 'X':
            p(0, 1) = p(1, 0) = 1;
            break;
        case 'Y':
            p(0, 1) = -i1;
            p(1, 0) = i1;
            break;
        case 'Z':
            p(0, 0) = 1;
            p(1, 1) = -1;
            break;
    }
    return p;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); i++) {
        for (int j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix pauli_string(const std::string &s) {
    Matrix out = pauli(s[0]);
    for (size_t k = 1; k < s.size(); k++) {
        out = kron(out, pauli(s[k]));
    }
    return out;
}

// Joint eigenbasis of two commuting Pauli strings; P + 2Q has a simple spectrum.
void append_stabilizer_basis(TwoDesign &out, const std::string &p, const std::string &q) {
    Matrix h = pauli_string(p);
    if (!q.empty()) {
        h += 2.0 * pauli_string(q);
    }
    EigenDecomposition eig = eigh(h);
    for (int k = 0; k < eig.vectors.cols(); k++) {
        out.vectors.push_back(eig.vectors.col(k));
    }
}

bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) {
        return false;
    }
    for (int k = 3; k * k <= d; k += 2) {
        if (d % k == 0) {
            return false;
        }
    }
    return true;
}

std::vector<double> design_probabilities(const TwoDesign &design, const DensityMatrix &rho) {
    if (rho.dim() != design.dim) {
        throw Error(ErrorCode::DimensionMismatch, "state and design dimensions differ");
    }
    double w = (double)design.dim / (double)design.size();
    std::vector<double> p;
    p.reserve(design.size());
    double total = 0;
    for (const auto &v : design.vectors) {
        double x = w * (v.adjoint() * rho.entries() * v)(0, 0).real();
        if (x < 0) {
            if (x < -rho.tolerance().tol) {
                throw Error(ErrorCode::NotPSD, "negative design probability", -x);
            }
            x = 0;
        }
        p.push_back(x);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

}  // namespace

Povm TwoDesign::povm(const Tolerance &tol) const {
    double w = (double)dim / (double)size();
    std::vector<Matrix> elements;
    for (const auto &v : vectors) {
        elements.push_back(w * v * v.adjoint());
    }
    return Povm(std::move(elements), {}, tol);
}

TwoDesign make_two_design(int d) {
    TwoDesign out;
    out.dim = d;
    if (d == 2) {
        for (const char *p : {"Z", "X", "Y"}) {
            append_stabilizer_basis(out, p, "");
        }
    } else if (d == 4) {
        // The 15 non-identity two-qubit Paulis split into 5 commuting triples.
        const char *sets[5][2] = {{"ZI", "IZ"}, {"XI", "IX"}, {"YI", "IY"}, {"XZ", "ZY"}, {"ZX", "YZ"}};
        for (auto &s : sets) {
            append_stabilizer_basis(out, s[0], s[1]);
        }
    } else if (is_odd_prime(d)) {
        for (int k = 0; k < d; k++) {
            Vector e = Vector::Zero(d);
            e[k] = 1;
            out.vectors.push_back(e);
        }
        const double inv = 1 / std::sqrt((double)d);
        for (int b = 0; b < d; b++) {
            for (int m = 0; m < d; m++) {
                Vector v(d);
                for (int k = 0; k < d; k++) {
                    int phase = (int)(((long long)b * k * k + (long long)m * k) % d);
                    v[k] = std::polar(inv, 2 * std::numbers::pi * phase / d);
                }
                out.vectors.push_back(v);
            }
        }
    } else {
        std::ostringstream msg;
        msg << "no 2-design construction for d = " << d << " (supported: 2, 4, odd primes)";
        throw Error(ErrorCode::UnsupportedDimension, msg.str(), d);
    }
    return out;
}

double design_residual(const TwoDesign &design) {
    int d = design.dim;
    int d2 = d * d;
    Matrix acc = Matrix::Zero(d2, d2);
    for (const auto &v : design.vectors) {
        Vector vv(d2);
        for (int a = 0; a < d; a++) {
            for (int b = 0; b < d; b++) {
                vv[a * d + b] = v[a] * v[b];
            }
        }
        acc += vv * vv.adjoint();
    }
    acc /= (double)design.size();
    Matrix sym = Matrix::Identity(d2, d2);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            sym(a * d + b, b * d + a) += 1;
        }
    }
    sym /= 2.0;
    double binom = d * (d + 1) / 2.0;
    return (acc - sym / binom).cwiseAbs().maxCoeff();
}

Matrix least_squares(const TwoDesign &design, const std::vector<double> &frequencies, const Tolerance &tol) {
    if (frequencies.size() != design.size()) {
        std::ostringstream msg;
        msg << "expected " << design.size() << " frequencies, got " << frequencies.size();
        throw Error(ErrorCode::LengthMismatch, msg.str());
    }
    double total = 0;
    for (double f : frequencies) {
        total += f;
    }
    if (std::abs(total - 1) > tol.tol) {
        throw Error(ErrorCode::InvalidArgument, "frequencies do not sum to one", std::abs(total - 1));
    }
    int d = design.dim;
    Matrix out = Matrix::Zero(d, d);
    for (size_t k = 0; k < design.size(); k++) {
        out += frequencies[k] * design.vectors[k] * design.vectors[k].adjoint();
    }
    return (double)(d + 1) * out - Matrix::Identity(d, d);
}

ThresholdResult spectral_threshold(const Matrix &lhat, double eps, const Tolerance &tol) {
    double defect = hermiticity_defect(lhat);
    if (defect > tol.tol) {
        throw Error(ErrorCode::NotHermitian, "thresholding input is not Hermitian", defect);
    }
    if (!(eps > 0)) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    double trace_defect = std::abs(lhat.trace() - 1.0);
    if (trace_defect > tol.tol) {
        throw Error(ErrorCode::NotUnitTrace, "thresholding input must have unit trace", trace_defect);
    }
    EigenDecomposition eig = eigh((lhat + lhat.adjoint()) / 2.0);
    int d = (int)lhat.rows();
    RealVector lam = eig.values;
    std::vector<RealVector> trace{lam};
    int k = 1;
    // alive = d - k + 1 entries; the smallest sits at index d - k.
    while (k < d) {
        double smallest = lam[d - k];
        if (smallest > 2 * eps) {
            break;
        }
        lam[d - k] = 0;
        for (int s = 0; s < d - k; s++) {
            lam[s] += smallest / (double)(d - k);
        }
        trace.push_back(lam);
        k++;
    }
    int rank = d - k + 1;
    Matrix est = eig.vectors * lam.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return ThresholdResult{DensityMatrix::validate(est, tol), rank, std::move(trace)};
}

static void check_hypothesis(const DensityMatrix &rho_true, double eps) {
    const RealVector &spec = rho_true.eigen().values;
    double smallest = spec[rho_true.rank() - 1];
    if (!(smallest > 6 * eps)) {
        std::ostringstream msg;
        msg << "smallest nonzero eigenvalue " << smallest << " must exceed 6 eps = " << 6 * eps;
        throw Error(ErrorCode::InvalidArgument, msg.str(), smallest);
    }
}

ThresholdResult preliminary_estimate(
    const DensityMatrix &rho_true, const TwoDesign &design, uint64_t n, double eps, Rng &rng) {
    check_hypothesis(rho_true, eps);
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
    }
    auto probs = design_probabilities(design, rho_true);
    auto counts = sample_multinomial(probs, n, rng);
    std::vector<double> freq(counts.size());
    for (size_t k = 0; k < counts.size(); k++) {
        freq[k] = (double)counts[k] / (double)n;
    }
    return spectral_threshold(least_squares(design, freq, rho_true.tolerance()), eps, rho_true.tolerance());
}

ThresholdResult preliminary_estimate(
    const DensityMatrix &rho_true, const TwoDesign &design, uint64_t n, double eps, uint64_t seed) {
    Rng rng = make_rng(seed);
    return preliminary_estimate(rho_true, design, n, eps, rng);
}

ThresholdResult preliminary_estimate(const DensityMatrix &rho_true, uint64_t n, double eps, uint64_t seed) {
    return preliminary_estimate(rho_true, make_two_design(rho_true.dim()), n, eps, seed);
}

ThresholdResult preliminary_estimate_exact(const DensityMatrix &rho_true, const TwoDesign &design, double eps) {
    auto probs = design_probabilities(design, rho_true);
    return spectral_threshold(least_squares(design, probs, rho_true.tolerance()), eps, rho_true.tolerance());
}

double concentration_bound(int d, double n, double eps) {
    return d * std::exp(-3 * n * eps * eps / (16.0 * d));
}

}  // namespace qlan
