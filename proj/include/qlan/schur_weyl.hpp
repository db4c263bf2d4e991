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

#ifndef QLAN_SCHUR_WEYL_HPP
#define QLAN_SCHUR_WEYL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlan/core.hpp"
#include "qlan/local_model.hpp"
#include "qlan/report.hpp"

namespace qlan {

struct SchurWeylLimits {
    int n_max = 8;
    int64_t dim_max = 6561;
    /// Largest orbit count_v0 is willing to enumerate.
    int64_t orbit_max = 5000000;
};

struct YoungDiagram {
    /// Weakly decreasing, trailing zeros removed.
    std::vector<int> rows;

    static YoungDiagram make(std::vector<int> rows);
    int n() const;
    int num_rows() const {
        return (int)rows.size();
    }
    int row(int i) const {
        return i < num_rows() ? rows[i] : 0;
    }
    int num_cols() const {
        return rows.empty() ? 0 : rows[0];
    }
    int col_len(int c) const;
    /// Box position (row-major) of (row, col).
    int box(int row, int col) const;
    std::string str() const;
    bool operator==(const YoungDiagram &) const = default;
};

/// Partitions of n with at most max_rows parts, in reverse lexicographic order.
std::vector<YoungDiagram> partitions(int n, int max_rows);

/// m(i, j) = number of j's in row i, for i < j (zero-based).
struct MultiplicityMatrix {
    int d = 0;
    std::vector<int> m;

    static MultiplicityMatrix zero(int d);
    int at(int i, int j) const {
        return m[(size_t)i * d + j];
    }
    int &at(int i, int j) {
        return m[(size_t)i * d + j];
    }
    int total() const;
    bool operator==(const MultiplicityMatrix &) const = default;
};

/// One entry in [0, d) per box, boxes in row-major order. Box k is tensor factor k.
using Filling = std::vector<int>;

Filling filling_from_multiplicity(const YoungDiagram &lambda, const MultiplicityMatrix &m);
bool is_semistandard(const YoungDiagram &lambda, const Filling &a);
/// Requires a filling that is nondecreasing along rows with row i holding entries >= i.
MultiplicityMatrix multiplicity_of(const YoungDiagram &lambda, const Filling &a, int d);
/// Number of occurrences of each value 0..d-1.
std::vector<int> content(const Filling &a, int d);

std::vector<MultiplicityMatrix> enumerate_ssyt(
    const YoungDiagram &lambda, int d, const SchurWeylLimits &limits = {});

/// prod_{i<j<=d} (l_i - l_j + j - i) / (j - i).
int64_t weyl_dimension(const YoungDiagram &lambda, int d);
/// Hook length formula.
int64_t hook_dimension(const YoungDiagram &lambda);
/// n! prod_{l<k} (l_l - l_k + k - l) / prod_l (l_l + r - l)!, with r rows.
double frobenius_dimension(const YoungDiagram &lambda, int r);

/// Little-endian mixed radix: factor 0 is the lowest digit.
uint64_t tensor_index(const Filling &a, int d);
Filling tensor_digits(uint64_t index, int d, int n);
Vector basis_tensor(const Filling &a, int d);

/// A product of group-algebra factors and local maps on (C^d)^{(x)n}, applied
/// lazily. Factors act in insertion order.
class TensorOperator {
   public:
    TensorOperator(int d, int n, const SchurWeylLimits &limits = {});

    /// Sum over all permutations of `slots`, signed when `antisymmetric`.
    TensorOperator &then_symmetrize(const std::vector<int> &slots, bool antisymmetric);
    /// u on every tensor factor.
    TensorOperator &then_local(const Matrix &u);
    TensorOperator &then(const TensorOperator &other);

    int d() const {
        return d_;
    }
    int n() const {
        return n_;
    }
    int64_t dim() const {
        return dim_;
    }
    Vector apply(const Vector &v) const;
    Matrix to_dense() const;
    /// Rank, for operators that preserve the weight (content) of basis vectors.
    int weight_preserving_rank(double rel_cutoff = 1e-9) const;

   private:
    struct Factor {
        std::vector<int> slots;
        bool antisymmetric = false;
        std::vector<std::vector<int>> perms;
        std::vector<int> signs;
        Matrix local;
        bool is_local = false;
    };
    Vector apply_factor(const Factor &f, const Vector &v) const;

    int d_;
    int n_;
    int64_t dim_;
    SchurWeylLimits limits_;
    std::vector<Factor> factors_;
    std::vector<uint64_t> pow_;
};

enum class ProjectorKind { Rows, Columns, Young };

/// p_lambda (rows), q_lambda (columns) or y_lambda = q_lambda p_lambda.
TensorOperator projector(const YoungDiagram &lambda, int d, ProjectorKind kind, const SchurWeylLimits &limits = {});
/// p^2 = row_scale p and q^2 = column_scale q.
double row_scale(const YoungDiagram &lambda);
double column_scale(const YoungDiagram &lambda);

/// y_lambda f_m / ||y_lambda f_m||.
Vector basis_vector(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits = {});
/// y_lambda f_0 / (prod lambda_i! sqrt(prod (i!)^{lambda_i - lambda_{i+1}})).
Vector vacuum_closed_form(const YoungDiagram &lambda, int d, const SchurWeylLimits &limits = {});

/// (u f_{b_1}) (x) ... (x) (u f_{b_n}).
Vector product_vector(const Matrix &u, const Filling &b);

struct DeterminantCheck {
    Complex lhs;
    Complex rhs;
};
/// prod over columns of det(U[t_a^c, t_b^c]).
Complex column_determinant_product(const YoungDiagram &lambda, const Filling &a, const Filling &b, const Matrix &u);
DeterminantCheck inner_product_determinant_check(const YoungDiagram &lambda, const Filling &a, const Filling &b,
                                                 const Matrix &u, const SchurWeylLimits &limits = {});

/// Row rearrangements of f_m.
std::vector<Filling> orbit(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits = {});
/// No column repeats an entry.
bool is_admissible(const YoungDiagram &lambda, const Filling &a);
/// |m| minus the number of columns that differ from the identity column.
int gamma_of(const YoungDiagram &lambda, const MultiplicityMatrix &m, const Filling &a);
/// Admissible orbit elements with gamma = 0.
std::vector<Filling> v0_set(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits = {});
int64_t count_v0(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits = {});
/// prod (l_i - l_j)^{m_ij} / m_ij!.
double formula_v0(const YoungDiagram &lambda, const MultiplicityMatrix &m);
/// <f_a | q_lambda sum_{b in orbit(m)} f_b> via column determinants at U = I.
double orbit_overlap(const YoungDiagram &lambda, const Filling &a, const MultiplicityMatrix &m,
                     const SchurWeylLimits &limits = {});

struct QuasiOrthogonality {
    /// Row balances sum_{j>i} m_ij - sum_{j<i} m_ji differ for some row i of lambda.
    bool forced;
    /// Contents differ for some value in [0, d); a weaker sufficient condition for zero.
    bool weight_forced;
    Complex inner_product;
};
QuasiOrthogonality quasi_orthogonality_zero(const YoungDiagram &lambda, const MultiplicityMatrix &m,
                                            const MultiplicityMatrix &l, const SchurWeylLimits &limits = {});

/// Schur polynomial as a sum over semistandard tableaux with entries < x.size().
double schur_polynomial(const YoungDiagram &lambda, const RealVector &x, const SchurWeylLimits &limits = {});

struct BlockProbability {
    YoungDiagram lambda;
    double p;
};
/// s_lambda(mu + u / sqrt(n), 0, ...) dim K_lambda over all lambda with at most d rows.
std::vector<BlockProbability> block_probabilities(
    const CenterState &center, const RealVector &u, int n, const SchurWeylLimits &limits = {});

/// Every asserted check for d and n = 1..n_max.
VerificationReport schur_weyl_suite(int d, int n_max, uint64_t seed, const SchurWeylLimits &limits = {});

}  // namespace qlan

#endif
