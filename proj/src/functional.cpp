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

#include "qlan/functional.hpp"

#include <chrono>
#include <cmath>

namespace qlan {

FunctionalProblem make_functional_problem(const CenterState &center, const Observable &a) {
    if (a.dim() != center.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "observable and center differ in dimension");
    }
    Matrix al = center.to_local(a.entries());
    int r = center.rank();
    double x = 0;
    for (int i = 0; i < r; i++) {
        x += center.mu()[i] * al(i, i).real();
    }
    double y = 0;
    for (int i = 0; i < r; i++) {
        double dev = al(i, i).real() - x;
        y += center.mu()[i] * dev * dev;
    }
    for (const auto &p : mode_pairs(center.dim(), r)) {
        y += std::norm(al(p.j, p.i)) * (center.mu_at(p.i) + center.mu_at(p.j));
    }
    return FunctionalProblem{center, a, al, x, y};
}

double functional_value(const DensityMatrix &rho, const Observable &a) {
    return expectation(rho, a);
}

namespace {

// Outcome values and probabilities of the eigenprojector measurement of A.
struct SpectralSampler {
    std::vector<double> values;
    std::vector<double> probs;

    SpectralSampler(const Matrix &rho, const Observable &a) {
        EigenDecomposition eig = eigh(a.entries());
        double total = 0;
        for (int k = 0; k < eig.values.size(); k++) {
            double p = (eig.vectors.col(k).adjoint() * rho * eig.vectors.col(k))(0, 0).real();
            p = std::max(p, 0.0);
            values.push_back(eig.values[k]);
            probs.push_back(p);
            total += p;
        }
        for (auto &p : probs) {
            p /= total;
        }
    }

    double draw_mean(uint64_t n, Rng &rng) const {
        auto counts = sample_multinomial(probs, n, rng);
        double acc = 0;
        for (size_t k = 0; k < counts.size(); k++) {
            acc += (double)counts[k] * values[k];
        }
        return acc / (double)n;
    }
};

}  // namespace

double sample_mean_estimator(const DensityMatrix &rho_true, const Observable &a, uint64_t n, uint64_t seed) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
    }
    if (rho_true.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and observable differ in dimension");
    }
    SpectralSampler sampler(rho_true.entries(), a);
    Rng rng = make_rng(seed);
    return sampler.draw_mean(n, rng);
}

static void require_informative(const FunctionalProblem &problem) {
    if (problem.y <= 1e-12) {
        throw Error(ErrorCode::DegenerateFunctional, "A is constant on the support of the center", problem.y);
    }
}

LeastFavorable least_favorable_family(const FunctionalProblem &problem) {
    require_informative(problem);
    const CenterState &c = problem.center;
    int d = c.dim();
    int r = c.rank();
    double y = problem.y;
    Matrix a_tilde = problem.a.entries() - problem.x * Matrix::Identity(d, d);
    Matrix rho0 = c.density();
    Matrix h = (a_tilde * rho0 + rho0 * a_tilde) / (2 * y);

    LocalParams dir = LocalParams::zero(d, r);
    for (int i = 0; i + 1 < r; i++) {
        dir.u[i] = (problem.a_local(i, i).real() - problem.x) * c.mu()[i] / y;
    }
    auto pairs = mode_pairs(d, r);
    std::vector<Complex> zeta(pairs.size());
    for (size_t k = 0; k < pairs.size(); k++) {
        const auto &p = pairs[k];
        zeta[k] = problem.a_local(p.j, p.i) * (c.mu_at(p.i) + c.mu_at(p.j)) / (2 * y);
        dir.z[k] = zeta[k] / std::sqrt(c.mu_at(p.i) - c.mu_at(p.j));
    }
    return LeastFavorable{Observable::validate(h, c.tolerance()), dir, zeta};
}

LowerBoundIdentity lower_bound_identity(const FunctionalProblem &problem) {
    LeastFavorable lf = least_favorable_family(problem);
    GaussianLimitModel model = build_model(problem.center);
    int k = model.r - 1;
    int dim = k + 2 * (int)model.mode_index.size();
    RealVector tau = RealVector::Zero(dim);
    RealMatrix sigma = RealMatrix::Zero(dim, dim);
    tau.head(k) = lf.theta_dir.u;
    sigma.topLeftCorner(k, k) = model.classical_cov;
    for (size_t m = 0; m < model.mode_index.size(); m++) {
        const auto &p = model.mode_index[m];
        double gap = model.mu[p.i] - problem.center.mu_at(p.j);
        double w = std::sqrt(2 / gap);
        int at = k + 2 * (int)m;
        tau[at] = w * lf.zeta_dir[m].real();
        tau[at + 1] = w * lf.zeta_dir[m].imag();
        sigma(at, at) = model.variances[m];
        sigma(at + 1, at + 1) = model.variances[m];
    }
    double qform = tau.dot(sigma.llt().solve(tau));
    return LowerBoundIdentity{tau, sigma, qform};
}

RiskReport functional_minimax_check(
    const FunctionalProblem &problem, uint64_t n, uint64_t reps, uint64_t seed, double prior_b) {
    auto start = std::chrono::steady_clock::now();
    Matrix rho0 = problem.center.density();
    SpectralSampler sampler(rho0, problem.a);
    double psi = problem.x;
    McStats loss;
    McStats mean;
    for (uint64_t rep = 0; rep < reps; rep++) {
        Rng rng = make_rng(seed + rep);
        double xbar = sampler.draw_mean(n, rng);
        mean.add(xbar - psi);
        loss.add((double)n * (xbar - psi) * (xbar - psi));
    }
    RiskReport report;
    report.experiment = "functional";
    report.mc_estimate = loss.mean();
    report.mc_stderr = loss.stderr_of_mean();
    report.theory = problem.y;
    report.reps = reps;
    report.seed = seed;
    report.extras["n"] = n;
    report.extras["mean_bias"] = mean.mean();
    report.extras["mean_bias_stderr"] = mean.stderr_of_mean();
    if (problem.y > 1e-12) {
        LowerBoundIdentity lb = lower_bound_identity(problem);
        report.extras["qform_times_y"] = lb.qform * problem.y;
        report.extras["prior_b"] = prior_b;
        report.extras["bayes_risk_1d"] = bayes_risk_1d(lb.tau, lb.sigma, prior_b);
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double variance_stability_bound(const Observable &a, double radius) {
    auto opnorm = [](const Matrix &m) {
        return eigh(m).values.cwiseAbs().maxCoeff();
    };
    double na = opnorm(a.entries());
    double na2 = opnorm(a.entries() * a.entries());
    return 2 * (na2 + 2 * na * na) * radius;
}

}  // namespace qlan
