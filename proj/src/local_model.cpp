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

#include "qlan/local_model.hpp"

#include <cmath>
#include <sstream>

namespace qlan {

std::vector<ModePair> mode_pairs(int d, int r) {
    std::vector<ModePair> out;
    for (int i = 0; i < r; i++) {
        for (int j = i + 1; j < d; j++) {
            out.push_back({i, j});
        }
    }
    return out;
}

CenterState::CenterState(const RealVector &mu, const Matrix &basis, const Tolerance &tol)
    : mu_(mu), basis_(basis), tol_(tol) {
    int d = (int)basis.rows();
    int r = (int)mu.size();
    if (basis.cols() != d || d < 1) {
        throw Error(ErrorCode::DimensionMismatch, "center basis must be square");
    }
    if (r < 1 || r > d) {
        std::ostringstream msg;
        msg << "center rank " << r << " outside [1, " << d << "]";
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    double unitarity = (basis.adjoint() * basis - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (unitarity > tol.tol) {
        throw Error(ErrorCode::InvalidArgument, "center basis is not unitary", unitarity);
    }
    double sum_defect = std::abs(mu.sum() - 1.0);
    if (sum_defect > tol.tol) {
        throw Error(ErrorCode::NotUnitTrace, "center eigenvalues do not sum to one", sum_defect);
    }
    for (int k = 0; k < r; k++) {
        double next = k + 1 < r ? mu[k + 1] : 0.0;
        if (k + 1 == r && r == d) {
            if (mu[k] <= 0) {
                throw Error(ErrorCode::GapTooSmall, "center eigenvalues must be positive", mu[k]);
            }
            continue;
        }
        double gap = mu[k] - next;
        if (gap < tol.gap_min) {
            std::ostringstream msg;
            msg << "eigenvalue gap " << gap << " at position " << k << " is below gap_min " << tol.gap_min;
            throw Error(ErrorCode::GapTooSmall, msg.str(), gap);
        }
    }
}

CenterState CenterState::diagonal(const RealVector &mu, int d, const Tolerance &tol) {
    return CenterState(mu, Matrix::Identity(d, d), tol);
}

CenterState CenterState::from_state(const DensityMatrix &rho, int r, const Tolerance &tol) {
    const auto &eig = rho.eigen();
    RealVector mu = eig.values.head(r);
    mu /= mu.sum();
    return CenterState(mu, eig.vectors, tol);
}

Matrix CenterState::density() const {
    int d = dim();
    RealVector full = RealVector::Zero(d);
    full.head(rank()) = mu_;
    return to_lab(full.cast<Complex>().asDiagonal());
}

Matrix CenterState::to_lab(const Matrix &m) const {
    return basis_ * m * basis_.adjoint();
}

Matrix CenterState::to_local(const Matrix &m) const {
    return basis_.adjoint() * m * basis_;
}

LocalParams LocalParams::zero(int d, int r) {
    LocalParams out;
    out.d = d;
    out.r = r;
    out.u = RealVector::Zero(r - 1);
    out.z.assign(mode_pairs(d, r).size(), Complex(0, 0));
    return out;
}

RealVector LocalParams::to_real() const {
    RealVector x(real_dim());
    x.head(u.size()) = u;
    for (size_t k = 0; k < z.size(); k++) {
        x[u.size() + 2 * k] = z[k].real();
        x[u.size() + 2 * k + 1] = z[k].imag();
    }
    return x;
}

LocalParams LocalParams::from_real(int d, int r, const RealVector &x) {
    LocalParams out = zero(d, r);
    if ((size_t)x.size() != out.real_dim()) {
        throw Error(ErrorCode::IndexMismatch, "real coordinate vector has the wrong length");
    }
    out.u = x.head(r - 1);
    for (size_t k = 0; k < out.z.size(); k++) {
        out.z[k] = Complex(x[r - 1 + 2 * k], x[r - 1 + 2 * k + 1]);
    }
    return out;
}

double LocalParams::norm() const {
    return to_real().norm();
}

RealVector LocalParams::full_u() const {
    RealVector out(r);
    out.head(r - 1) = u;
    out[r - 1] = -u.sum();
    return out;
}

static void require_same_shape(const LocalParams &a, const LocalParams &b) {
    if (a.d != b.d || a.r != b.r || a.u.size() != b.u.size() || a.z.size() != b.z.size()) {
        throw Error(ErrorCode::IndexMismatch, "local parameters have different index sets");
    }
}

static void require_matches(const CenterState &center, const LocalParams &theta) {
    if (theta.d != center.dim() || theta.r != center.rank() || theta.u.size() != center.rank() - 1 ||
        theta.z.size() != mode_pairs(center.dim(), center.rank()).size()) {
        throw Error(ErrorCode::IndexMismatch, "local parameters do not match the center's (d, r)");
    }
}

LocalParams operator+(const LocalParams &a, const LocalParams &b) {
    require_same_shape(a, b);
    LocalParams out = a;
    out.u += b.u;
    for (size_t k = 0; k < out.z.size(); k++) {
        out.z[k] += b.z[k];
    }
    return out;
}

LocalParams operator*(double s, const LocalParams &a) {
    LocalParams out = a;
    out.u *= s;
    for (auto &z : out.z) {
        z *= s;
    }
    return out;
}

Matrix generator_t(int d, int j, int k) {
    Matrix t = Matrix::Zero(d, d);
    const Complex i1(0, 1);
    if (j < k) {
        t(j, k) = i1;
        t(k, j) = -i1;
    } else {
        t(k, j) = 1;
        t(j, k) = 1;
    }
    return t;
}

std::vector<Observable> su_generators(int d) {
    if (d < 2) {
        throw Error(ErrorCode::InvalidArgument, "su(d) needs d >= 2");
    }
    std::vector<Observable> out;
    for (int j = 0; j + 1 < d; j++) {
        Matrix h = Matrix::Zero(d, d);
        h(j, j) = 1;
        h(j + 1, j + 1) = -1;
        out.push_back(Observable::validate(h));
    }
    for (int j = 0; j < d; j++) {
        for (int k = j + 1; k < d; k++) {
            out.push_back(Observable::validate(generator_t(d, j, k)));
            out.push_back(Observable::validate(generator_t(d, k, j)));
        }
    }
    return out;
}

static double pair_gap(const CenterState &center, const ModePair &p) {
    return center.mu_at(p.i) - center.mu_at(p.j);
}

Matrix rotation(const CenterState &center, const LocalParams &theta, double scale) {
    require_matches(center, theta);
    if (!(scale > 0)) {
        throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    }
    int d = center.dim();
    auto pairs = mode_pairs(d, center.rank());
    Matrix x = Matrix::Zero(d, d);
    const Complex i1(0, 1);
    for (size_t k = 0; k < pairs.size(); k++) {
        const auto &p = pairs[k];
        double gap = pair_gap(center, p);
        if (gap < center.tolerance().gap_min) {
            throw Error(ErrorCode::GapTooSmall, "eigenvalue gap below gap_min", gap);
        }
        Complex zp = scale * theta.z[k] * std::sqrt(gap);
        // Re(z') T_{ij} + Im(z') T_{ji}, divided by the gap.
        x(p.i, p.j) += i1 * std::conj(zp) / gap;
        x(p.j, p.i) += -i1 * zp / gap;
    }
    EigenDecomposition eig = eigh(x);
    Vector phases(d);
    for (int k = 0; k < d; k++) {
        phases[k] = std::exp(i1 * eig.values[k]);
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

static RealVector shifted_diagonal(const CenterState &center, const LocalParams &theta, double scale) {
    RealVector diag = center.mu() + scale * theta.full_u();
    double tol = center.tolerance().tol;
    for (int k = 0; k < diag.size(); k++) {
        if (diag[k] < -tol) {
            std::ostringstream msg;
            msg << "diagonal entry " << k << " = " << diag[k] << " leaves the probability simplex";
            throw Error(ErrorCode::DiagonalOutOfRange, msg.str(), -diag[k]);
        }
    }
    return diag;
}

DensityMatrix local_state(const CenterState &center, const LocalParams &theta, double scale) {
    require_matches(center, theta);
    int d = center.dim();
    RealVector diag = RealVector::Zero(d);
    diag.head(center.rank()) = shifted_diagonal(center, theta, scale);
    Matrix u = rotation(center, theta, scale);
    Matrix local = u * diag.cast<Complex>().asDiagonal() * u.adjoint();
    return DensityMatrix::validate(center.to_lab(local), center.tolerance());
}

Matrix first_order_state(const CenterState &center, const LocalParams &theta, double scale) {
    require_matches(center, theta);
    int d = center.dim();
    Matrix local = Matrix::Zero(d, d);
    RealVector diag = shifted_diagonal(center, theta, scale);
    for (int k = 0; k < center.rank(); k++) {
        local(k, k) = diag[k];
    }
    auto pairs = mode_pairs(d, center.rank());
    for (size_t k = 0; k < pairs.size(); k++) {
        const auto &p = pairs[k];
        Complex zeta = scale * theta.z[k] * std::sqrt(pair_gap(center, p));
        local(p.j, p.i) = zeta;
        local(p.i, p.j) = std::conj(zeta);
    }
    return center.to_lab(local);
}

static LocalParams linear_extract(const Matrix &rho, const CenterState &center, double scale) {
    int d = center.dim();
    int r = center.rank();
    Matrix local = center.to_local(rho);
    LocalParams out = LocalParams::zero(d, r);
    for (int k = 0; k + 1 < r; k++) {
        out.u[k] = (local(k, k).real() - center.mu()[k]) / scale;
    }
    auto pairs = mode_pairs(d, r);
    for (size_t k = 0; k < pairs.size(); k++) {
        const auto &p = pairs[k];
        out.z[k] = local(p.j, p.i) / (scale * std::sqrt(pair_gap(center, p)));
    }
    return out;
}

LocalParams extract_local_params(const Matrix &rho, const CenterState &center, double scale) {
    double dist = hs_distance(rho, center.density());
    if (dist > center.tolerance().loc_radius) {
        std::ostringstream msg;
        msg << "state is at HS distance " << dist << " from the center, beyond loc_radius "
            << center.tolerance().loc_radius;
        throw Error(ErrorCode::NotLocal, msg.str(), dist);
    }
    return linear_extract(rho, center, scale);
}

LocalParams extract_local_params(const DensityMatrix &rho, const CenterState &center, double scale) {
    return extract_local_params(rho.entries(), center, scale);
}

namespace {

// Real stacking of the Hermitian residual: diagonal, then Re/Im of the strict upper triangle.
RealVector hermitian_coords(const Matrix &m) {
    int d = (int)m.rows();
    RealVector out(d * d);
    int at = 0;
    for (int i = 0; i < d; i++) {
        out[at++] = m(i, i).real();
    }
    for (int i = 0; i < d; i++) {
        for (int j = i + 1; j < d; j++) {
            out[at++] = m(i, j).real();
            out[at++] = m(i, j).imag();
        }
    }
    return out;
}

}  // namespace

LocalParams solve_local_params(const Matrix &rho, const CenterState &center, double scale, int max_iter) {
    int d = center.dim();
    int r = center.rank();
    // Work in y = scale * theta so the step sizes do not depend on n.
    auto state_at = [&](const RealVector &y) {
        return local_state(center, LocalParams::from_real(d, r, y / scale), scale).entries();
    };
    RealVector y = scale * linear_extract(rho, center, scale).to_real();
    const double h = 1e-7;
    double tol = center.tolerance().tol;
    double res_norm = 0;
    for (int it = 0; it < max_iter; it++) {
        RealVector res = hermitian_coords(state_at(y) - rho);
        res_norm = res.norm();
        if (res_norm < 1e-14) {
            break;
        }
        RealMatrix jac(res.size(), y.size());
        for (int k = 0; k < y.size(); k++) {
            RealVector yp = y, ym = y;
            yp[k] += h;
            ym[k] -= h;
            jac.col(k) = (hermitian_coords(state_at(yp)) - hermitian_coords(state_at(ym))) / (2 * h);
        }
        RealVector step = jac.colPivHouseholderQr().solve(res);
        y -= step;
        if (step.norm() < 1e-15) {
            res_norm = hermitian_coords(state_at(y) - rho).norm();
            break;
        }
    }
    if (!(res_norm <= tol)) {
        std::ostringstream msg;
        msg << "local_state inverse did not converge, residual " << res_norm;
        throw Error(ErrorCode::NotLocal, msg.str(), res_norm);
    }
    return LocalParams::from_real(d, r, y / scale);
}

static double mode_part(const CenterState &center, const LocalParams &a, const LocalParams &b) {
    auto pairs = mode_pairs(center.dim(), center.rank());
    double total = 0;
    for (size_t k = 0; k < pairs.size(); k++) {
        total += 2 * pair_gap(center, pairs[k]) * std::norm(a.z[k] - b.z[k]);
    }
    return total;
}

double theta_loss(const CenterState &center, const LocalParams &a, const LocalParams &b) {
    require_matches(center, a);
    require_matches(center, b);
    RealVector du = a.u - b.u;
    double s = du.sum();
    return du.squaredNorm() + s * s + mode_part(center, a, b);
}

double theta_loss_r_form(const CenterState &center, const LocalParams &a, const LocalParams &b) {
    require_matches(center, a);
    require_matches(center, b);
    return (a.full_u() - b.full_u()).squaredNorm() + mode_part(center, a, b);
}

std::vector<LossRow> quadratic_loss_check(
    const CenterState &center, const LocalParams &a, const LocalParams &b, const std::vector<double> &n_list) {
    double loss = theta_loss(center, a, b);
    std::vector<LossRow> rows;
    for (double n : n_list) {
        double scale = 1 / std::sqrt(n);
        Matrix pa = local_state(center, a, scale).entries();
        Matrix pb = local_state(center, b, scale).entries();
        LossRow row;
        row.n = n;
        row.hs2 = (pa - pb).squaredNorm();
        row.loss_over_n = loss / n;
        // Both columns vanish when a == b; report exact agreement.
        row.ratio = loss > 0 ? n * row.hs2 / loss : (row.hs2 == 0 ? 1.0 : INFINITY);
        rows.push_back(row);
    }
    return rows;
}

LocalParams random_local_params(int d, int r, double radius, Rng &rng) {
    LocalParams out = LocalParams::zero(d, r);
    size_t k = out.real_dim();
    if (k == 0) {
        return out;
    }
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RealVector x(k);
    for (size_t i = 0; i < k; i++) {
        x[i] = g(rng);
    }
    double len = radius * std::pow(unif(rng), 1.0 / (double)k);
    x *= len / x.norm();
    return LocalParams::from_real(d, r, x);
}

}  // namespace qlan
