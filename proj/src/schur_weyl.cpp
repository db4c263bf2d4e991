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

#include "qlan/schur_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace qlan {

YoungDiagram YoungDiagram::make(std::vector<int> rows) {
    for (size_t i = 0; i < rows.size(); i++) {
        if (rows[i] < 0 || (i > 0 && rows[i] > rows[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "Young diagram rows must be weakly decreasing and nonnegative");
        }
    }
    while (!rows.empty() && rows.back() == 0) {
        rows.pop_back();
    }
    return YoungDiagram{std::move(rows)};
}

int YoungDiagram::n() const {
    return std::accumulate(rows.begin(), rows.end(), 0);
}

int YoungDiagram::col_len(int c) const {
    int len = 0;
    while (len < num_rows() && rows[len] > c) {
        len++;
    }
    return len;
}

int YoungDiagram::box(int row, int col) const {
    int k = 0;
    for (int i = 0; i < row; i++) {
        k += rows[i];
    }
    return k + col;
}

std::string YoungDiagram::str() const {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < rows.size(); i++) {
        out << (i ? "," : "") << rows[i];
    }
    out << ")";
    return out.str();
}

std::vector<YoungDiagram> partitions(int n, int max_rows) {
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(YoungDiagram{cur});
            return;
        }
        if ((int)cur.size() == max_rows) {
            return;
        }
        for (int part = std::min(left, cap); part >= 1; part--) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

MultiplicityMatrix MultiplicityMatrix::zero(int d) {
    return MultiplicityMatrix{d, std::vector<int>((size_t)d * d, 0)};
}

int MultiplicityMatrix::total() const {
    int t = 0;
    for (int i = 0; i < d; i++) {
        for (int j = i + 1; j < d; j++) {
            t += at(i, j);
        }
    }
    return t;
}

Filling filling_from_multiplicity(const YoungDiagram &lambda, const MultiplicityMatrix &m) {
    if (lambda.num_rows() > m.d) {
        throw Error(ErrorCode::NotSemistandard, "diagram has more rows than the local dimension");
    }
    Filling a;
    for (int i = 0; i < lambda.num_rows(); i++) {
        int moved = 0;
        for (int j = i + 1; j < m.d; j++) {
            if (m.at(i, j) < 0) {
                throw Error(ErrorCode::NotSemistandard, "negative multiplicity");
            }
            moved += m.at(i, j);
        }
        int own = lambda.rows[i] - moved;
        if (own < 0) {
            throw Error(ErrorCode::NotSemistandard, "row multiplicities exceed the row length");
        }
        a.insert(a.end(), own, i);
        for (int j = i + 1; j < m.d; j++) {
            a.insert(a.end(), m.at(i, j), j);
        }
    }
    for (int i = lambda.num_rows(); i < m.d; i++) {
        for (int j = i + 1; j < m.d; j++) {
            if (m.at(i, j) != 0) {
                throw Error(ErrorCode::NotSemistandard, "multiplicity set on a row the diagram does not have");
            }
        }
    }
    return a;
}

bool is_semistandard(const YoungDiagram &lambda, const Filling &a) {
    if ((int)a.size() != lambda.n()) {
        return false;
    }
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int c = 0; c < lambda.rows[i]; c++) {
            int v = a[lambda.box(i, c)];
            if (c > 0 && v < a[lambda.box(i, c - 1)]) {
                return false;
            }
            if (i > 0 && v <= a[lambda.box(i - 1, c)]) {
                return false;
            }
        }
    }
    return true;
}

MultiplicityMatrix multiplicity_of(const YoungDiagram &lambda, const Filling &a, int d) {
    MultiplicityMatrix m = MultiplicityMatrix::zero(d);
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int c = 0; c < lambda.rows[i]; c++) {
            int v = a[lambda.box(i, c)];
            if (v < i || v >= d) {
                throw Error(ErrorCode::NotSemistandard, "entry below its row index");
            }
            if (v > i) {
                m.at(i, v)++;
            }
        }
    }
    return m;
}

std::vector<int> content(const Filling &a, int d) {
    std::vector<int> c(d, 0);
    for (int v : a) {
        c[v]++;
    }
    return c;
}

static void require_small(const YoungDiagram &lambda, const SchurWeylLimits &limits) {
    if (lambda.n() > limits.n_max) {
        std::ostringstream msg;
        msg << "n = " << lambda.n() << " exceeds n_max = " << limits.n_max;
        throw Error(ErrorCode::TooLarge, msg.str(), lambda.n());
    }
}

static std::vector<Filling> ssyt_fillings(const YoungDiagram &lambda, int d) {
    std::vector<Filling> out;
    int n = lambda.n();
    Filling a(n, 0);
    std::vector<int> row_of(n), col_of(n);
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int c = 0; c < lambda.rows[i]; c++) {
            row_of[lambda.box(i, c)] = i;
            col_of[lambda.box(i, c)] = c;
        }
    }
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            out.push_back(a);
            return;
        }
        int lo = 0;
        if (col_of[k] > 0) {
            lo = std::max(lo, a[k - 1]);
        }
        if (row_of[k] > 0) {
            lo = std::max(lo, a[lambda.box(row_of[k] - 1, col_of[k])] + 1);
        }
        for (int v = lo; v < d; v++) {
            a[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<MultiplicityMatrix> enumerate_ssyt(const YoungDiagram &lambda, int d, const SchurWeylLimits &limits) {
    require_small(lambda, limits);
    std::vector<MultiplicityMatrix> out;
    for (const auto &a : ssyt_fillings(lambda, d)) {
        out.push_back(multiplicity_of(lambda, a, d));
    }
    return out;
}

int64_t weyl_dimension(const YoungDiagram &lambda, int d) {
    if (lambda.num_rows() > d) {
        return 0;
    }
    long double num = 1, den = 1;
    for (int i = 0; i < d; i++) {
        for (int j = i + 1; j < d; j++) {
            num *= (long double)(lambda.row(i) - lambda.row(j) + j - i);
            den *= (long double)(j - i);
        }
    }
    return (int64_t)std::llround(num / den);
}

static long double factorial(int k) {
    long double f = 1;
    for (int i = 2; i <= k; i++) {
        f *= i;
    }
    return f;
}

int64_t hook_dimension(const YoungDiagram &lambda) {
    long double hooks = 1;
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int c = 0; c < lambda.rows[i]; c++) {
            int arm = lambda.rows[i] - c - 1;
            int leg = lambda.col_len(c) - i - 1;
            hooks *= (long double)(arm + leg + 1);
        }
    }
    return (int64_t)std::llround(factorial(lambda.n()) / hooks);
}

double frobenius_dimension(const YoungDiagram &lambda, int r) {
    if (lambda.num_rows() > r) {
        throw Error(ErrorCode::InvalidArgument, "diagram has more rows than r");
    }
    // Shifted lengths l_i = lambda_i + r - i (one-based i).
    std::vector<int> l(r);
    for (int i = 0; i < r; i++) {
        l[i] = lambda.row(i) + r - (i + 1);
    }
    long double num = factorial(lambda.n());
    for (int i = 0; i < r; i++) {
        for (int j = i + 1; j < r; j++) {
            num *= (long double)(l[i] - l[j]);
        }
    }
    long double den = 1;
    for (int i = 0; i < r; i++) {
        den *= factorial(l[i]);
    }
    return (double)(num / den);
}

uint64_t tensor_index(const Filling &a, int d) {
    uint64_t idx = 0;
    uint64_t p = 1;
    for (int v : a) {
        idx += (uint64_t)v * p;
        p *= (uint64_t)d;
    }
    return idx;
}

Filling tensor_digits(uint64_t index, int d, int n) {
    Filling a(n);
    for (int k = 0; k < n; k++) {
        a[k] = (int)(index % (uint64_t)d);
        index /= (uint64_t)d;
    }
    return a;
}

static int64_t checked_power(int d, int n, const SchurWeylLimits &limits) {
    if (n > limits.n_max) {
        std::ostringstream msg;
        msg << "n = " << n << " exceeds n_max = " << limits.n_max;
        throw Error(ErrorCode::TooLarge, msg.str(), n);
    }
    int64_t dim = 1;
    for (int k = 0; k < n; k++) {
        dim *= d;
        if (dim > limits.dim_max) {
            std::ostringstream msg;
            msg << "tensor dimension " << d << "^" << n << " exceeds dim_max = " << limits.dim_max;
            throw Error(ErrorCode::TooLarge, msg.str(), (double)dim);
        }
    }
    return dim;
}

Vector basis_tensor(const Filling &a, int d) {
    int64_t dim = 1;
    for (size_t k = 0; k < a.size(); k++) {
        dim *= d;
    }
    Vector v = Vector::Zero(dim);
    v[(int64_t)tensor_index(a, d)] = 1;
    return v;
}

TensorOperator::TensorOperator(int d, int n, const SchurWeylLimits &limits)
    : d_(d), n_(n), dim_(checked_power(d, n, limits)), limits_(limits) {
    pow_.resize(n + 1);
    pow_[0] = 1;
    for (int k = 1; k <= n; k++) {
        pow_[k] = pow_[k - 1] * (uint64_t)d;
    }
}

TensorOperator &TensorOperator::then_symmetrize(const std::vector<int> &slots, bool antisymmetric) {
    if (slots.size() < 2) {
        return *this;
    }
    Factor f;
    f.slots = slots;
    f.antisymmetric = antisymmetric;
    std::vector<int> p(slots.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        int inversions = 0;
        for (size_t i = 0; i < p.size(); i++) {
            for (size_t j = i + 1; j < p.size(); j++) {
                inversions += p[i] > p[j];
            }
        }
        f.perms.push_back(p);
        f.signs.push_back(antisymmetric && (inversions % 2) ? -1 : 1);
    } while (std::next_permutation(p.begin(), p.end()));
    factors_.push_back(std::move(f));
    return *this;
}

TensorOperator &TensorOperator::then_local(const Matrix &u) {
    if (u.rows() != d_ || u.cols() != d_) {
        throw Error(ErrorCode::DimensionMismatch, "local map does not match the tensor factor dimension");
    }
    Factor f;
    f.is_local = true;
    f.local = u;
    factors_.push_back(std::move(f));
    return *this;
}

TensorOperator &TensorOperator::then(const TensorOperator &other) {
    if (other.d_ != d_ || other.n_ != n_) {
        throw Error(ErrorCode::DimensionMismatch, "tensor operators act on different spaces");
    }
    factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
    return *this;
}

Vector TensorOperator::apply_factor(const Factor &f, const Vector &v) const {
    if (f.is_local) {
        Vector cur = v;
        for (int k = 0; k < n_; k++) {
            Vector next = Vector::Zero(dim_);
            uint64_t p = pow_[k];
            for (int64_t idx = 0; idx < dim_; idx++) {
                Complex x = cur[idx];
                if (x == Complex(0, 0)) {
                    continue;
                }
                int b = (int)(((uint64_t)idx / p) % (uint64_t)d_);
                int64_t base = idx - (int64_t)((uint64_t)b * p);
                for (int a = 0; a < d_; a++) {
                    next[base + (int64_t)((uint64_t)a * p)] += f.local(a, b) * x;
                }
            }
            cur = std::move(next);
        }
        return cur;
    }
    Vector out = Vector::Zero(dim_);
    size_t len = f.slots.size();
    std::vector<uint64_t> digit(len);
    for (int64_t idx = 0; idx < dim_; idx++) {
        Complex x = v[idx];
        if (x == Complex(0, 0)) {
            continue;
        }
        uint64_t base = (uint64_t)idx;
        for (size_t t = 0; t < len; t++) {
            digit[t] = ((uint64_t)idx / pow_[f.slots[t]]) % (uint64_t)d_;
            base -= digit[t] * pow_[f.slots[t]];
        }
        // The content of slot t moves to slot perm[t].
        for (size_t s = 0; s < f.perms.size(); s++) {
            const auto &perm = f.perms[s];
            uint64_t target = base;
            for (size_t t = 0; t < len; t++) {
                target += digit[t] * pow_[f.slots[perm[t]]];
            }
            out[(int64_t)target] += (double)f.signs[s] * x;
        }
    }
    return out;
}

Vector TensorOperator::apply(const Vector &v) const {
    if (v.size() != dim_) {
        throw Error(ErrorCode::DimensionMismatch, "vector does not match the tensor space");
    }
    Vector cur = v;
    for (const auto &f : factors_) {
        cur = apply_factor(f, cur);
    }
    return cur;
}

Matrix TensorOperator::to_dense() const {
    Matrix out(dim_, dim_);
    for (int64_t j = 0; j < dim_; j++) {
        Vector e = Vector::Zero(dim_);
        e[j] = 1;
        out.col(j) = apply(e);
    }
    return out;
}

int TensorOperator::weight_preserving_rank(double rel_cutoff) const {
    std::map<std::vector<int>, std::vector<int64_t>> classes;
    for (int64_t idx = 0; idx < dim_; idx++) {
        classes[content(tensor_digits((uint64_t)idx, d_, n_), d_)].push_back(idx);
    }
    int rank = 0;
    for (const auto &[weight, members] : classes) {
        int k = (int)members.size();
        Matrix block(k, k);
        for (int c = 0; c < k; c++) {
            Vector e = Vector::Zero(dim_);
            e[members[c]] = 1;
            Vector col = apply(e);
            for (int r = 0; r < k; r++) {
                block(r, c) = col[members[r]];
            }
        }
        Eigen::ColPivHouseholderQR<Matrix> qr(block);
        qr.setThreshold(rel_cutoff);
        rank += (int)qr.rank();
    }
    return rank;
}

TensorOperator projector(const YoungDiagram &lambda, int d, ProjectorKind kind, const SchurWeylLimits &limits) {
    TensorOperator op(d, lambda.n(), limits);
    if (kind == ProjectorKind::Rows || kind == ProjectorKind::Young) {
        for (int i = 0; i < lambda.num_rows(); i++) {
            std::vector<int> slots;
            for (int c = 0; c < lambda.rows[i]; c++) {
                slots.push_back(lambda.box(i, c));
            }
            op.then_symmetrize(slots, false);
        }
    }
    if (kind == ProjectorKind::Columns || kind == ProjectorKind::Young) {
        for (int c = 0; c < lambda.num_cols(); c++) {
            std::vector<int> slots;
            for (int i = 0; i < lambda.col_len(c); i++) {
                slots.push_back(lambda.box(i, c));
            }
            op.then_symmetrize(slots, true);
        }
    }
    return op;
}

double row_scale(const YoungDiagram &lambda) {
    long double s = 1;
    for (int r : lambda.rows) {
        s *= factorial(r);
    }
    return (double)s;
}

double column_scale(const YoungDiagram &lambda) {
    // prod_i (i!)^{lambda_i - lambda_{i+1}}: one factor len! per column.
    long double s = 1;
    for (int c = 0; c < lambda.num_cols(); c++) {
        s *= factorial(lambda.col_len(c));
    }
    return (double)s;
}

Vector basis_vector(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits) {
    Filling a = filling_from_multiplicity(lambda, m);
    if (!is_semistandard(lambda, a)) {
        throw Error(ErrorCode::NotSemistandard, "multiplicity matrix does not give a semistandard tableau");
    }
    TensorOperator y = projector(lambda, m.d, ProjectorKind::Young, limits);
    Vector v = y.apply(basis_tensor(a, m.d));
    double norm = v.norm();
    if (norm < 1e-12) {
        throw Error(ErrorCode::NotSemistandard, "Young symmetriser annihilates the filling", norm);
    }
    return v / norm;
}

Vector vacuum_closed_form(const YoungDiagram &lambda, int d, const SchurWeylLimits &limits) {
    Filling a = filling_from_multiplicity(lambda, MultiplicityMatrix::zero(d));
    TensorOperator y = projector(lambda, d, ProjectorKind::Young, limits);
    return y.apply(basis_tensor(a, d)) / (row_scale(lambda) * std::sqrt(column_scale(lambda)));
}

Vector product_vector(const Matrix &u, const Filling &b) {
    int d = (int)u.rows();
    Vector v = Vector::Ones(1);
    for (size_t k = 0; k < b.size(); k++) {
        int64_t old = v.size();
        Vector next(old * d);
        for (int a = 0; a < d; a++) {
            next.segment(a * old, old) = u(a, b[k]) * v;
        }
        v = std::move(next);
    }
    return v;
}

Complex column_determinant_product(const YoungDiagram &lambda, const Filling &a, const Filling &b, const Matrix &u) {
    Complex total(1, 0);
    for (int c = 0; c < lambda.num_cols(); c++) {
        int len = lambda.col_len(c);
        Matrix minor(len, len);
        for (int s = 0; s < len; s++) {
            for (int t = 0; t < len; t++) {
                minor(s, t) = u(a[lambda.box(s, c)], b[lambda.box(t, c)]);
            }
        }
        total *= minor.determinant();
    }
    return total;
}

DeterminantCheck inner_product_determinant_check(const YoungDiagram &lambda, const Filling &a, const Filling &b,
                                                 const Matrix &u, const SchurWeylLimits &limits) {
    int d = (int)u.rows();
    TensorOperator q = projector(lambda, d, ProjectorKind::Columns, limits);
    Vector w = q.apply(product_vector(u, b));
    return DeterminantCheck{w[(int64_t)tensor_index(a, d)], column_determinant_product(lambda, a, b, u)};
}

std::vector<Filling> orbit(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits) {
    Filling base = filling_from_multiplicity(lambda, m);
    long double size = 1;
    for (int i = 0; i < lambda.num_rows(); i++) {
        std::vector<int> counts(m.d, 0);
        for (int c = 0; c < lambda.rows[i]; c++) {
            counts[base[lambda.box(i, c)]]++;
        }
        long double arrangements = factorial(lambda.rows[i]);
        for (int k : counts) {
            arrangements /= factorial(k);
        }
        size *= arrangements;
    }
    if (size > (long double)limits.orbit_max) {
        throw Error(ErrorCode::TooLarge, "orbit too large to enumerate", (double)size);
    }
    std::vector<Filling> out;
    Filling cur = base;
    std::function<void(int)> rec = [&](int i) {
        if (i == lambda.num_rows()) {
            out.push_back(cur);
            return;
        }
        int start = lambda.box(i, 0);
        auto first = cur.begin() + start;
        auto last = first + lambda.rows[i];
        std::sort(first, last);
        do {
            rec(i + 1);
        } while (std::next_permutation(first, last));
    };
    rec(0);
    return out;
}

bool is_admissible(const YoungDiagram &lambda, const Filling &a) {
    for (int c = 0; c < lambda.num_cols(); c++) {
        int len = lambda.col_len(c);
        for (int s = 0; s < len; s++) {
            for (int t = s + 1; t < len; t++) {
                if (a[lambda.box(s, c)] == a[lambda.box(t, c)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

int gamma_of(const YoungDiagram &lambda, const MultiplicityMatrix &m, const Filling &a) {
    int modified = 0;
    for (int c = 0; c < lambda.num_cols(); c++) {
        for (int s = 0; s < lambda.col_len(c); s++) {
            if (a[lambda.box(s, c)] != s) {
                modified++;
                break;
            }
        }
    }
    return m.total() - modified;
}

std::vector<Filling> v0_set(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits) {
    std::vector<Filling> out;
    for (const auto &a : orbit(lambda, m, limits)) {
        if (is_admissible(lambda, a) && gamma_of(lambda, m, a) == 0) {
            out.push_back(a);
        }
    }
    return out;
}

int64_t count_v0(const YoungDiagram &lambda, const MultiplicityMatrix &m, const SchurWeylLimits &limits) {
    return (int64_t)v0_set(lambda, m, limits).size();
}

double formula_v0(const YoungDiagram &lambda, const MultiplicityMatrix &m) {
    long double f = 1;
    for (int i = 0; i < m.d; i++) {
        for (int j = i + 1; j < m.d; j++) {
            int k = m.at(i, j);
            if (k == 0) {
                continue;
            }
            f *= std::pow((long double)(lambda.row(i) - lambda.row(j)), k) / factorial(k);
        }
    }
    return (double)f;
}

double orbit_overlap(const YoungDiagram &lambda, const Filling &a, const MultiplicityMatrix &m,
                     const SchurWeylLimits &limits) {
    Matrix id = Matrix::Identity(m.d, m.d);
    Complex total(0, 0);
    for (const auto &b : orbit(lambda, m, limits)) {
        total += column_determinant_product(lambda, a, b, id);
    }
    return total.real();
}

static std::vector<int> row_balance(const YoungDiagram &lambda, const MultiplicityMatrix &m) {
    std::vector<int> bal(lambda.num_rows(), 0);
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int j = 0; j < m.d; j++) {
            if (j > i) {
                bal[i] += m.at(i, j);
            } else if (j < i) {
                bal[i] -= m.at(j, i);
            }
        }
    }
    return bal;
}

QuasiOrthogonality quasi_orthogonality_zero(const YoungDiagram &lambda, const MultiplicityMatrix &m,
                                            const MultiplicityMatrix &l, const SchurWeylLimits &limits) {
    if (m.d != l.d) {
        throw Error(ErrorCode::DimensionMismatch, "multiplicity matrices differ in d");
    }
    Vector vm = basis_vector(lambda, m, limits);
    Vector vl = basis_vector(lambda, l, limits);
    QuasiOrthogonality out;
    out.forced = row_balance(lambda, m) != row_balance(lambda, l);
    out.weight_forced = content(filling_from_multiplicity(lambda, m), m.d) !=
                        content(filling_from_multiplicity(lambda, l), l.d);
    out.inner_product = vm.dot(vl);
    return out;
}

double schur_polynomial(const YoungDiagram &lambda, const RealVector &x, const SchurWeylLimits &limits) {
    require_small(lambda, limits);
    double total = 0;
    for (const auto &a : ssyt_fillings(lambda, (int)x.size())) {
        double term = 1;
        for (int v : a) {
            term *= x[v];
        }
        total += term;
    }
    return total;
}

std::vector<BlockProbability> block_probabilities(
    const CenterState &center, const RealVector &u, int n, const SchurWeylLimits &limits) {
    if (n > limits.n_max) {
        throw Error(ErrorCode::TooLarge, "n exceeds n_max", n);
    }
    int d = center.dim();
    int r = center.rank();
    if (u.size() != r - 1) {
        throw Error(ErrorCode::IndexMismatch, "perturbation must have r - 1 entries");
    }
    RealVector x = RealVector::Zero(d);
    for (int i = 0; i + 1 < r; i++) {
        x[i] = center.mu()[i] + u[i] / std::sqrt((double)n);
    }
    x[r - 1] = center.mu()[r - 1] - u.sum() / std::sqrt((double)n);
    for (int i = 0; i < r; i++) {
        if (x[i] < 0) {
            throw Error(ErrorCode::DiagonalOutOfRange, "perturbed spectrum leaves the simplex", -x[i]);
        }
    }
    std::vector<BlockProbability> out;
    for (const auto &lambda : partitions(n, d)) {
        out.push_back({lambda, schur_polynomial(lambda, x, limits) * (double)hook_dimension(lambda)});
    }
    return out;
}

namespace {

std::string mstr(const MultiplicityMatrix &m) {
    std::ostringstream out;
    out << "m=[";
    bool first = true;
    for (int i = 0; i < m.d; i++) {
        for (int j = i + 1; j < m.d; j++) {
            if (m.at(i, j)) {
                out << (first ? "" : ",") << (i + 1) << (j + 1) << ":" << m.at(i, j);
                first = false;
            }
        }
    }
    out << "]";
    return out.str();
}

Vector random_vector(int64_t dim, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (int64_t k = 0; k < dim; k++) {
        v[k] = Complex(g(rng), g(rng));
    }
    return v;
}

// Multiplicity matrices with |m| <= max_total whose f_m row content fits lambda.
std::vector<MultiplicityMatrix> small_multiplicities(const YoungDiagram &lambda, int d, int max_total) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < lambda.num_rows(); i++) {
        for (int j = i + 1; j < d; j++) {
            slots.push_back({i, j});
        }
    }
    std::vector<MultiplicityMatrix> out;
    MultiplicityMatrix m = MultiplicityMatrix::zero(d);
    std::function<void(size_t, int)> rec = [&](size_t k, int left) {
        if (k == slots.size()) {
            try {
                filling_from_multiplicity(lambda, m);
                out.push_back(m);
            } catch (const Error &) {
            }
            return;
        }
        for (int v = 0; v <= left; v++) {
            m.at(slots[k].first, slots[k].second) = v;
            rec(k + 1, left - v);
        }
        m.at(slots[k].first, slots[k].second) = 0;
    };
    rec(0, max_total);
    return out;
}

}  // namespace

VerificationReport schur_weyl_suite(int d, int n_max, uint64_t seed, const SchurWeylLimits &limits) {
    if (n_max < 1 || n_max > limits.n_max || d < 2) {
        throw Error(ErrorCode::InvalidArgument, "schur_weyl_suite needs d >= 2 and 1 <= n_max <= limits.n_max");
    }
    VerificationReport rep;
    Rng rng = make_rng(seed);
    // Dense-ish checks (rank, forced-zero pairs) only up to this tensor size.
    const int64_t heavy_dim = 729;

    for (int n = 1; n <= n_max; n++) {
        int64_t tensor_dim = 1;
        for (int k = 0; k < n; k++) {
            tensor_dim *= d;
        }
        long double completeness = 0;
        for (const auto &lambda : partitions(n, d)) {
            std::string name = lambda.str();
            auto ssyt = enumerate_ssyt(lambda, d, limits);
            int64_t weyl = weyl_dimension(lambda, d);
            int64_t hook = hook_dimension(lambda);
            completeness += (long double)weyl * (long double)hook;
            rep.add(name, "ssyt_count_equals_weyl_dimension", std::abs((double)ssyt.size() - (double)weyl),
                    (int64_t)ssyt.size() == weyl);
            double frob = frobenius_dimension(lambda, d);
            rep.add(name, "hook_equals_frobenius_dimension", std::abs(frob - (double)hook),
                    std::abs(frob - (double)hook) < 1e-6);

            if (tensor_dim > limits.dim_max) {
                continue;
            }
            TensorOperator p = projector(lambda, d, ProjectorKind::Rows, limits);
            TensorOperator q = projector(lambda, d, ProjectorKind::Columns, limits);
            Vector v = random_vector(tensor_dim, rng);
            Vector pv = p.apply(v);
            double p_res = (p.apply(pv) - row_scale(lambda) * pv).norm() / (row_scale(lambda) * pv.norm());
            rep.add(name, "row_projector_square_scaling", p_res, p_res <= 1e-12);
            Vector qv = q.apply(v);
            double q_norm = qv.norm();
            double q_res = q_norm > 0 ? (q.apply(qv) - column_scale(lambda) * qv).norm() / (column_scale(lambda) * q_norm)
                                      : 0.0;
            rep.add(name, "column_projector_square_scaling", q_res, q_res <= 1e-12);

            Vector vac = vacuum_closed_form(lambda, d, limits);
            Vector vac_direct = basis_vector(lambda, MultiplicityMatrix::zero(d), limits);
            double vac_res = (vac - vac_direct).norm();
            rep.add(name, "vacuum_closed_form_normalisation", vac_res, vac_res <= 1e-12);

            if (tensor_dim > heavy_dim) {
                continue;
            }
            TensorOperator y = projector(lambda, d, ProjectorKind::Young, limits);
            int rank = y.weight_preserving_rank();
            rep.add(name, "young_symmetriser_rank_equals_dim_H", std::abs(rank - (double)weyl), rank == weyl);

            // Basis vectors: norm and the eigenvector property under a diagonal product state.
            RealVector diag(d);
            for (int k = 0; k < d; k++) {
                diag[k] = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
            }
            diag /= diag.sum();
            std::vector<Vector> basis;
            double worst_norm = 0, worst_eig = 0;
            for (const auto &m : ssyt) {
                Vector b = basis_vector(lambda, m, limits);
                worst_norm = std::max(worst_norm, std::abs(b.norm() - 1));
                Filling a = filling_from_multiplicity(lambda, m);
                auto c = content(a, d);
                double eigval = 1;
                for (int k = 0; k < d; k++) {
                    eigval *= std::pow(diag[k], c[k]);
                }
                Vector rb = b;
                for (int64_t idx = 0; idx < tensor_dim; idx++) {
                    Filling digits = tensor_digits((uint64_t)idx, d, n);
                    double w = 1;
                    for (int x : digits) {
                        w *= diag[x];
                    }
                    rb[idx] *= w;
                }
                worst_eig = std::max(worst_eig, (rb - eigval * b).norm());
                basis.push_back(std::move(b));
            }
            rep.add(name, "basis_vector_unit_norm", worst_norm, worst_norm <= 1e-12);
            rep.add(name, "basis_vector_weight_eigenvector", worst_eig, worst_eig <= 1e-12);

            // Exact-zero structure of inner products between basis vectors.
            double worst_forced = 0;
            double worst_self = 0;
            double largest_unforced = 0;
            int forced_pairs = 0;
            for (size_t s = 0; s < ssyt.size(); s++) {
                for (size_t t = 0; t < ssyt.size(); t++) {
                    Complex ip = basis[s].dot(basis[t]);
                    bool forced = row_balance(lambda, ssyt[s]) != row_balance(lambda, ssyt[t]);
                    if (s == t) {
                        worst_self = std::max(worst_self, std::abs(ip - 1.0));
                    } else if (forced) {
                        forced_pairs++;
                        worst_forced = std::max(worst_forced, std::abs(ip));
                    } else {
                        largest_unforced = std::max(largest_unforced, std::abs(ip));
                    }
                }
            }
            rep.add(name, "quasi_orthogonality_forced_zero", worst_forced, worst_forced <= 1e-12,
                    std::to_string(forced_pairs) + " forced pairs");
            rep.add(name, "quasi_orthogonality_self_overlap", worst_self, worst_self <= 1e-12);
            rep.observe(name, "max_unforced_overlap", largest_unforced);
        }
        rep.add("n=" + std::to_string(n), "schur_weyl_completeness",
                std::abs((double)(completeness - (long double)tensor_dim)),
                completeness == (long double)tensor_dim);

        // Orbit counting: leading term versus enumeration, and the unit overlap identity.
        for (const auto &lambda : partitions(n, d)) {
            for (const auto &m : small_multiplicities(lambda, d, 2)) {
                auto v0 = v0_set(lambda, m, limits);
                if (m.total() > 0) {
                    double f = formula_v0(lambda, m);
                    rep.observe(lambda.str(), "v0_count_over_leading_term", f > 0 ? (double)v0.size() / f : 0.0,
                                mstr(m) + " count=" + std::to_string(v0.size()));
                }
                double worst = 0;
                for (const auto &a : v0) {
                    worst = std::max(worst, std::abs(orbit_overlap(lambda, a, m, limits) - 1));
                }
                if (!v0.empty()) {
                    rep.add(lambda.str(), "orbit_overlap_unit_on_v0", worst, worst <= 1e-12, mstr(m));
                }
            }
        }
    }

    // Determinant formula for <f_a| q U^n f_b> on random instances.
    double worst_det = 0;
    int instances = 0;
    int det_lo = std::min(2, n_max);
    int det_hi = std::min(n_max, 5);
    while (instances < 50) {
        int n = det_lo + (int)(rng() % (uint64_t)(det_hi - det_lo + 1));
        auto shapes = partitions(n, d);
        const auto &lambda = shapes[rng() % shapes.size()];
        Filling a(n), b(n);
        for (int k = 0; k < n; k++) {
            a[k] = (int)(rng() % (uint64_t)d);
            b[k] = (int)(rng() % (uint64_t)d);
        }
        // Half the instances use a = b-type column contents so the value is not trivially zero.
        if (instances % 2 == 0) {
            a = b;
            std::shuffle(a.begin(), a.end(), rng);
        }
        Matrix u = random_unitary(d, rng);
        auto check = inner_product_determinant_check(lambda, a, b, u, limits);
        worst_det = std::max(worst_det, std::abs(check.lhs - check.rhs));
        instances++;
    }
    rep.add("random", "determinant_inner_product_identity", worst_det, worst_det <= 1e-10, "50 instances");

    // Block probabilities for random centers of every rank.
    for (int r = 1; r <= d; r++) {
        RealVector mu(r);
        for (int k = 0; k < r; k++) {
            mu[k] = (double)(r - k) + 0.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        }
        std::sort(mu.data(), mu.data() + r, std::greater<double>());
        mu /= mu.sum();
        CenterState center = CenterState::diagonal(mu, d);
        RealVector u = RealVector::Zero(r - 1);
        for (int k = 0; k + 1 < r; k++) {
            u[k] = 0.05 * std::normal_distribution<double>(0.0, 1.0)(rng);
        }
        for (int n = 1; n <= std::min(n_max, limits.n_max); n++) {
            auto probs = block_probabilities(center, u, n, limits);
            double total = 0, outside = 0;
            for (const auto &bp : probs) {
                total += bp.p;
                if (bp.lambda.num_rows() > r) {
                    outside = std::max(outside, std::abs(bp.p));
                }
            }
            std::string tag = "r=" + std::to_string(r) + ",n=" + std::to_string(n);
            rep.add(tag, "block_probabilities_sum_to_one", std::abs(total - 1), std::abs(total - 1) <= 1e-10);
            rep.add(tag, "block_probabilities_vanish_beyond_rank", outside, outside == 0.0);
        }
    }
    return rep;
}

}  // namespace qlan
