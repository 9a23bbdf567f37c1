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

#ifndef DSM_COMPLEX_MATRIX_H
#define DSM_COMPLEX_MATRIX_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dsm {

using Complex = std::complex<double>;

/// Numerical tolerances used when validating states. The defaults are the
/// module constants; callers may pass a modified copy.
struct Tolerances {
    double norm = 1e-12;
    double hermitian = 1e-12;
    double trace = 1e-12;
    double eigenvalue_floor = 1e-10;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t n);
    /// |a><b|
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// Kronecker product a (x) b.
    static ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(size_t r, size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(size_t r, size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scalar);

    /// Largest elementwise |a_ij - b_ij|. Shapes must agree.
    double max_abs_diff(const ComplexMatrix &other) const;
    bool approx_equal(const ComplexMatrix &other, double tol = 1e-12) const;
    bool is_hermitian(double tol = 1e-12) const;

    /// <u| M |v>
    Complex sandwich(std::span<const Complex> u, std::span<const Complex> v) const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

/// (M + M^dagger) / 2
ComplexMatrix hermitize(const ComplexMatrix &m);

/// Spectrum of a Hermitian matrix; eigenvalues ascending, eigenvectors in
/// the columns of `vectors`.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

HermitianEigen hermitian_eigen(const ComplexMatrix &m);

/// V f(D) V^dagger for a Hermitian input, with f applied to each eigenvalue.
template <typename F>
ComplexMatrix hermitian_apply(const HermitianEigen &eig, F &&f) {
    size_t n = eig.values.size();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        double w = f(eig.values[k]);
        if (w == 0) {
            continue;
        }
        for (size_t r = 0; r < n; r++) {
            Complex vr = eig.vectors(r, k) * w;
            for (size_t c = 0; c < n; c++) {
                out(r, c) += vr * std::conj(eig.vectors(c, k));
            }
        }
    }
    return out;
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below zero
/// are clamped to zero first.
ComplexMatrix hermitian_sqrt(const ComplexMatrix &m);

/// Unit-norm state vector in dimension d.
class PureState {
   public:
    /// Throws std::invalid_argument if empty or not normalized within tol.
    explicit PureState(std::vector<Complex> amplitudes, double tol = Tolerances{}.norm);

    size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](size_t i) const {
        return amplitudes_[i];
    }
    ComplexMatrix projector() const;

   private:
    std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
   public:
    /// Validates the matrix against `tol`; throws std::invalid_argument on
    /// any violated invariant.
    static DensityMatrix from_matrix(ComplexMatrix m, const Tolerances &tol = {});
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(size_t d);

    size_t dim() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    Complex operator()(size_t r, size_t c) const {
        return m_(r, c);
    }

   private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    }
    ComplexMatrix m_;
};

}  // namespace dsm

#endif
