// Copyright 2026 The qsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp::linalg {

using Complex = std::complex<double>;

// Single source of truth for the numeric tolerances used across the library
// and its tests.
inline constexpr double kValidationTol = 1e-10;  // projector / complementarity residuals
inline constexpr double kRankTol = 1e-9;         // linear-independence decisions
inline constexpr double kIdentityTol = 1e-12;    // exact algebraic identities

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankDeficient : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense complex amplitude vector. May be unnormalized; the zero vector is a
/// legal value (post-projection states can vanish).
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int dim) : amps_(static_cast<size_t>(dim)) {}
  explicit StateVector(std::vector<Complex> amps);

  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Complex& operator[](int i) const { return amps_[static_cast<size_t>(i)]; }
  Complex& operator[](int i) { return amps_[static_cast<size_t>(i)]; }
  const std::vector<Complex>& amps() const { return amps_; }

 private:
  std::vector<Complex> amps_;
};

StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(Complex scale, const StateVector& v);

/// Hermitian inner product, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

double norm_sq(const StateVector& v);

/// Dense complex square matrix, row-major, intended for dim <= 16.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static Matrix identity(int dim);

  int dim() const { return dim_; }
  const Complex& at(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }
  Complex& at(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }

 private:
  int dim_ = 0;
  std::vector<Complex> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
StateVector operator*(const Matrix& m, const StateVector& v);
Matrix adjoint(const Matrix& m);

/// Largest entry magnitude.
double max_abs(const Matrix& m);

/// Orthogonal projector. Construction validates Hermiticity and idempotence
/// against kValidationTol.
class Projector {
 public:
  Projector() = default;
  explicit Projector(Matrix m);

  int dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }

  /// Rank, read off the trace; exact because eigenvalues are 0 or 1.
  int rank() const;

 private:
  Matrix m_;
};

/// Orthogonal projector onto the span of the given vectors. Uses modified
/// Gram-Schmidt with one re-orthogonalization pass. Throws RankDeficient when
/// a vector is linearly dependent on its predecessors beyond kRankTol.
Projector projector_from_span(const std::vector<StateVector>& span);

/// I - P.
Projector complement(const Projector& p);

/// P * v (the Lueders state-update step, without renormalization).
StateVector apply(const Projector& p, const StateVector& v);

/// Largest entry magnitude of PQ - QP. Zero iff the projectors commute.
double commutator_norm(const Projector& p, const Projector& q);

/// Orthonormal basis of range(P), extracted by column-pivoted Gram-Schmidt.
/// Deterministic for a fixed matrix.
std::vector<StateVector> span_basis(const Projector& p);

}  // namespace qsp::linalg
