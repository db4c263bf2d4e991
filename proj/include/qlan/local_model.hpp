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

#ifndef QLAN_LOCAL_MODEL_HPP
#define QLAN_LOCAL_MODEL_HPP

#include <vector>

#include "qlan/core.hpp"

namespace qlan {

/// Off-diagonal slot (i, j) with i < r and i < j < d, zero-based.
struct ModePair {
    int i;
    int j;
    bool operator==(const ModePair &) const = default;
};

/// Canonical order of the rotation parameters: i ascending, then j ascending.
std::vector<ModePair> mode_pairs(int d, int r);

/// A rank-r state with strictly decreasing nonzero spectrum mu and eigenbasis `basis`
/// (columns 0..r-1 span the support).
class CenterState {
   public:
    CenterState(const RealVector &mu, const Matrix &basis, const Tolerance &tol = {});
    /// diag(mu, 0, ..., 0) in the computational basis.
    static CenterState diagonal(const RealVector &mu, int d, const Tolerance &tol = {});
    /// Top-r eigenpairs of `rho`; the kept eigenvalues are rescaled to sum to one.
    static CenterState from_state(const DensityMatrix &rho, int r, const Tolerance &tol = {});

    int dim() const {
        return (int)basis_.rows();
    }
    int rank() const {
        return (int)mu_.size();
    }
    const RealVector &mu() const {
        return mu_;
    }
    /// mu padded with zeros to length d.
    double mu_at(int k) const {
        return k < rank() ? mu_[k] : 0.0;
    }
    const Matrix &basis() const {
        return basis_;
    }
    const Tolerance &tolerance() const {
        return tol_;
    }
    /// The center as a matrix in the computational frame.
    Matrix density() const;
    /// B m B* and B* m B.
    Matrix to_lab(const Matrix &m) const;
    Matrix to_local(const Matrix &m) const;

   private:
    RealVector mu_;
    Matrix basis_;
    Tolerance tol_;
};

/// theta = (u, z). u has r - 1 entries; z follows mode_pairs(d, r).
struct LocalParams {
    int d = 0;
    int r = 0;
    RealVector u;
    std::vector<Complex> z;

    static LocalParams zero(int d, int r);
    /// Flat real coordinates: u then (Re z, Im z) per mode.
    RealVector to_real() const;
    static LocalParams from_real(int d, int r, const RealVector &x);
    size_t real_dim() const {
        return (size_t)u.size() + 2 * z.size();
    }
    double norm() const;
    /// u padded with u_r = -sum(u).
    RealVector full_u() const;
};

LocalParams operator+(const LocalParams &a, const LocalParams &b);
LocalParams operator*(double s, const LocalParams &a);

/// H_j (j = 1..d-1), then for each j < k the pair T_{j,k}, T_{k,j}.
std::vector<Observable> su_generators(int d);
/// i E_jk - i E_kj for j < k and E_jk + E_kj for j > k (zero-based indices).
Matrix generator_t(int d, int j, int k);

/// exp(i sum_{(i,j)} [Re z' T_{ij} + Im z' T_{ji}] / (mu_i - mu_j)), z' = scale z sqrt(mu_i - mu_j),
/// in the center's eigenbasis.
Matrix rotation(const CenterState &center, const LocalParams &theta, double scale);

/// U diag(mu + scale u, 0) U* mapped to the computational frame.
DensityMatrix local_state(const CenterState &center, const LocalParams &theta, double scale);

/// Linearisation of local_state: zeta_ij at (j, i), its conjugate at (i, j), zero lower-right block.
Matrix first_order_state(const CenterState &center, const LocalParams &theta, double scale);

/// Left inverse of first_order_state.
LocalParams extract_local_params(const DensityMatrix &rho, const CenterState &center, double scale);
LocalParams extract_local_params(const Matrix &rho, const CenterState &center, double scale);

/// Inverse of local_state itself: Gauss-Newton from the first-order extraction.
/// No loc_radius check; throws NotLocal if rho is not reached to within tol (e.g. wrong rank).
LocalParams solve_local_params(const Matrix &rho, const CenterState &center, double scale, int max_iter = 30);

/// sum_{i<r} du_i^2 + (sum du)^2 + 2 sum (mu_i - mu_j) |dz_ij|^2.
double theta_loss(const CenterState &center, const LocalParams &a, const LocalParams &b);
/// Same loss with the classical part written as sum_{i<=r} du_i^2, du_r = -sum du.
double theta_loss_r_form(const CenterState &center, const LocalParams &a, const LocalParams &b);

struct LossRow {
    double n;
    double hs2;
    double loss_over_n;
    double ratio;
};
std::vector<LossRow> quadratic_loss_check(
    const CenterState &center, const LocalParams &a, const LocalParams &b, const std::vector<double> &n_list);

/// Uniform draw from the ball of the given radius in the real coordinates of theta.
LocalParams random_local_params(int d, int r, double radius, Rng &rng);

}  // namespace qlan

#endif
