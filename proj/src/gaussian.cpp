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

#include "qlan/gaussian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qlan {

RealMatrix multinomial_covariance(const RealVector &mu) {
    int k = (int)mu.size() - 1;
    RealMatrix v(k, k);
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < k; j++) {
            v(i, j) = (i == j ? mu[i] : 0.0) - mu[i] * mu[j];
        }
    }
    return v;
}

double thermal_variance(double beta) {
    if (std::isinf(beta)) {
        return 0.5;
    }
    return 0.5 / std::tanh(beta / 2);
}

GaussianLimitModel build_model(const CenterState &center) {
    GaussianLimitModel m;
    m.d = center.dim();
    m.r = center.rank();
    m.mu = center.mu();
    m.classical_cov = multinomial_covariance(m.mu);
    m.mode_index = mode_pairs(m.d, m.r);
    for (const auto &p : m.mode_index) {
        double beta = p.j < m.r ? std::log(m.mu[p.i] / m.mu[p.j]) : std::numeric_limits<double>::infinity();
        m.temperatures.push_back(beta);
        m.variances.push_back(thermal_variance(beta));
    }
    return m;
}

Pair z_to_xi(Complex z) {
    return {std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag()};
}

Complex xi_to_z(const Pair &xi) {
    return Complex(xi[0], xi[1]) / std::sqrt(2.0);
}

GaussianSample sample_covariant(const GaussianLimitModel &model, const LocalParams &theta, Rng &rng) {
    if (theta.d != model.d || theta.r != model.r || theta.u.size() != model.r - 1 ||
        theta.z.size() != model.mode_index.size()) {
        throw Error(ErrorCode::IndexMismatch, "local parameters do not match the Gaussian model");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    GaussianSample s;
    s.d = model.d;
    s.r = model.r;
    int k = model.r - 1;
    s.classical = theta.u;
    if (k > 0) {
        Eigen::LLT<RealMatrix> chol(model.classical_cov);
        RealVector w(k);
        for (int i = 0; i < k; i++) {
            w[i] = g(rng);
        }
        s.classical += chol.matrixL() * w;
    }
    for (size_t m = 0; m < model.mode_index.size(); m++) {
        Pair nu = z_to_xi(theta.z[m]);
        double sd = std::sqrt((2 * model.variances[m] + 1) / 2);
        double x1 = nu[0] + sd * g(rng);
        double x2 = nu[1] + sd * g(rng);
        s.modes.push_back({x1, x2});
    }
    return s;
}

GaussianSample sample_covariant(const GaussianLimitModel &model, const LocalParams &theta, uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample_covariant(model, theta, rng);
}

LocalParams covariant_estimate(const GaussianSample &sample) {
    LocalParams out = LocalParams::zero(sample.d, sample.r);
    if (out.z.size() != sample.modes.size() || sample.classical.size() != out.u.size()) {
        throw Error(ErrorCode::IndexMismatch, "sample does not match its declared (d, r)");
    }
    out.u = sample.classical;
    for (size_t m = 0; m < sample.modes.size(); m++) {
        out.z[m] = xi_to_z(sample.modes[m]);
    }
    return out;
}

double minimax_constant(const GaussianLimitModel &model) {
    double total = 0;
    for (int i = 0; i < model.r; i++) {
        total += model.mu[i] * (1 - model.mu[i]);
    }
    for (const auto &p : model.mode_index) {
        total += 2 * model.mu[p.i];
    }
    return total;
}

Pair bayes_shrinkage(const Pair &x, double sigma2, double sigma0_2) {
    if (!(sigma0_2 > 0)) {
        throw Error(ErrorCode::InvalidArgument, "prior variance must be positive");
    }
    double c = 2 * sigma0_2 / (2 * sigma0_2 + 2 * sigma2 + 1);
    return {c * x[0], c * x[1]};
}

double bayes_risk_mode(double sigma2, double sigma0_2) {
    if (!(sigma0_2 > 0) || sigma2 < 0.5) {
        throw Error(ErrorCode::InvalidArgument, "need sigma0^2 > 0 and sigma^2 >= 1/2");
    }
    return 2 * sigma0_2 * (2 * sigma2 + 1) / (2 * (sigma0_2 + sigma2) + 1);
}

static Eigen::LLT<RealMatrix> spd_factor(const RealMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not square");
    }
    double asym = m.rows() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
    Eigen::LLT<RealMatrix> llt(m);
    if (asym > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()) || llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotSPD, std::string(what) + " is not symmetric positive definite");
    }
    return llt;
}

double classical_bayes_risk(const RealMatrix &cov1, const RealMatrix &cov2) {
    if (cov1.rows() != cov2.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "covariances differ in dimension");
    }
    int k = (int)cov1.rows();
    RealMatrix id = RealMatrix::Identity(k, k);
    RealMatrix p = spd_factor(cov1, "cov1").solve(id) + spd_factor(cov2, "cov2").solve(id);
    return spd_factor(p, "precision sum").solve(id).trace();
}

double bayes_risk_1d(const RealVector &tau, const RealMatrix &sigma, double b) {
    if (!(b > 0)) {
        throw Error(ErrorCode::InvalidArgument, "prior variance b must be positive");
    }
    if (tau.size() != sigma.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "tau and sigma differ in dimension");
    }
    double q = tau.dot(spd_factor(sigma, "sigma").solve(tau));
    double a0 = 1 / q;
    if (std::isinf(b)) {
        return a0;
    }
    return a0 * b / (a0 + b);
}

}  // namespace qlan
