// Copyright 2026 The dsm-lab Authors
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

#include "dsm/complex_matrix.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsm {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument(
            "ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
            std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexMatrix m(a.size(), b.size());
    for (size_t r = 0; r < a.size(); r++) {
        for (size_t c = 0; c < b.size(); c++) {
            m(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (size_t i = 0; i < diag.size(); i++) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (size_t ar = 0; ar < a.rows_; ar++) {
        for (size_t ac = 0; ac < a.cols_; ac++) {
            Complex s = a(ar, ac);
            if (s == Complex{}) {
                continue;
            }
            for (size_t br = 0; br < b.rows_; br++) {
                for (size_t bc = 0; bc < b.cols_; bc++) {
                    m(ar * b.rows_ + br, ac * b.cols_ + bc) = s * b(br, bc);
                }
            }
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); i++) {
        t += (*this)(i, i);
    }
    return t;
}

static void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch");
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other);
    for (size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other);
    for (size_t i = 0; i < entries_.size(); i++) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
    for (auto &e : entries_) {
        e *= scalar;
    }
    return *this;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    require_same_shape(*this, other);
    double worst = 0;
    for (size_t i = 0; i < entries_.size(); i++) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix &other, double tol) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && max_abs_diff(other) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

Complex ComplexMatrix::sandwich(std::span<const Complex> u, std::span<const Complex> v) const {
    if (u.size() != rows_ || v.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix::sandwich: dimension mismatch");
    }
    Complex total = 0;
    for (size_t r = 0; r < rows_; r++) {
        Complex row = 0;
        for (size_t c = 0; c < cols_; c++) {
            row += (*this)(r, c) * v[c];
        }
        total += std::conj(u[r]) * row;
    }
    return total;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix::apply: dimension mismatch");
    }
    std::vector<Complex> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out[r] += (*this)(r, c) * v[c];
        }
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("ComplexMatrix: inner dimension mismatch");
    }
    ComplexMatrix m(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            Complex s = a(r, k);
            if (s == Complex{}) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); c++) {
                m(r, c) += s * b(k, c);
            }
        }
    }
    return m;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) {
    m *= s;
    return m;
}

ComplexMatrix hermitize(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("hermitize: matrix is not square");
    }
    ComplexMatrix h(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    return h;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("hermitian_eigen: matrix is not square");
    }
    size_t n = m.rows();
    Eigen::MatrixXcd a(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            a(r, c) = m(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: eigensolver did not converge");
    }
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = solver.eigenvalues()(k);
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, k) = solver.eigenvectors()(r, k);
        }
    }
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix &m) {
    return hermitian_apply(hermitian_eigen(m), [](double w) { return std::sqrt(std::max(w, 0.0)); });
}

PureState::PureState(std::vector<Complex> amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    double norm2 = 0;
    for (auto a : amplitudes_) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1) > tol) {
        throw std::invalid_argument("PureState: squared norm " + std::to_string(norm2) + " is not 1");
    }
}

ComplexMatrix PureState::projector() const {
    return ComplexMatrix::outer(amplitudes_, amplitudes_);
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, const Tolerances &tol) {
    if (!m.is_square() || m.rows() == 0) {
        throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }
    if (!m.is_hermitian(tol.hermitian)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    Complex tr = m.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
    }
    auto eig = hermitian_eigen(m);
    if (eig.values.front() < -tol.eigenvalue_floor) {
        throw std::invalid_argument(
            "DensityMatrix: eigenvalue " + std::to_string(eig.values.front()) + " below PSD floor");
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(size_t d) {
    if (d == 0) {
        throw std::invalid_argument("DensityMatrix::maximally_mixed: d must be positive");
    }
    auto m = ComplexMatrix::identity(d);
    m *= 1.0 / static_cast<double>(d);
    return DensityMatrix(std::move(m));
}

}  // namespace dsm
