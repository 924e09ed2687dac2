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

#include "qsp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qsp::linalg {

namespace {

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dim " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  for (const Complex& c : amps_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("StateVector: non-finite amplitude");
    }
  }
}

StateVector StateVector::basis(int dim, int index) {
  StateVector v(dim);
  v[index] = Complex(1.0, 0.0);
  return v;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  check_same_dim(a.dim(), b.dim(), "StateVector +");
  StateVector out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  check_same_dim(a.dim(), b.dim(), "StateVector -");
  StateVector out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

StateVector operator*(Complex scale, const StateVector& v) {
  StateVector out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = scale * v[i];
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  check_same_dim(a.dim(), b.dim(), "inner");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm_sq(const StateVector& v) {
  double acc = 0.0;
  for (int i = 0; i < v.dim(); ++i) acc += std::norm(v[i]);
  return acc;
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = Complex(1.0, 0.0);
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_dim(a.dim(), b.dim(), "Matrix +");
  Matrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_dim(a.dim(), b.dim(), "Matrix -");
  Matrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_dim(a.dim(), b.dim(), "Matrix *");
  const int n = a.dim();
  Matrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const Complex ark = a.at(r, k);
      if (ark == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
    }
  }
  return out;
}

StateVector operator*(const Matrix& m, const StateVector& v) {
  check_same_dim(m.dim(), v.dim(), "Matrix * StateVector");
  const int n = m.dim();
  StateVector out(n);
  for (int r = 0; r < n; ++r) {
    Complex acc(0.0, 0.0);
    for (int c = 0; c < n; ++c) acc += m.at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out.at(r, c) = std::conj(m.at(c, r));
  return out;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) best = std::max(best, std::abs(m.at(r, c)));
  return best;
}

Projector::Projector(Matrix m) : m_(std::move(m)) {
  const double herm = max_abs(m_ - adjoint(m_));
  if (herm > kValidationTol) {
    throw ValidationError("Projector: not Hermitian, residual " + std::to_string(herm));
  }
  const double idem = max_abs(m_ * m_ - m_);
  if (idem > kValidationTol) {
    throw ValidationError("Projector: not idempotent, residual " + std::to_string(idem));
  }
}

int Projector::rank() const {
  double trace = 0.0;
  for (int i = 0; i < m_.dim(); ++i) trace += m_.at(i, i).real();
  return static_cast<int>(std::lround(trace));
}

Projector projector_from_span(const std::vector<StateVector>& span) {
  if (span.empty()) throw RankDeficient("projector_from_span: empty spanning set");
  const int n = span.front().dim();
  for (const StateVector& v : span) check_same_dim(n, v.dim(), "projector_from_span");

  std::vector<StateVector> basis;
  basis.reserve(span.size());
  for (const StateVector& v : span) {
    const double orig = std::sqrt(norm_sq(v));
    StateVector w = v;
    // Modified Gram-Schmidt; the second pass restores orthogonality lost to
    // cancellation.
    for (int pass = 0; pass < 2; ++pass) {
      for (const StateVector& b : basis) {
        w = w - inner(b, w) * b;
      }
    }
    const double rem = std::sqrt(norm_sq(w));
    if (orig == 0.0 || rem <= kRankTol * orig) {
      throw RankDeficient("projector_from_span: vector " +
                          std::to_string(basis.size()) +
                          " is linearly dependent on its predecessors");
    }
    basis.push_back(Complex(1.0 / rem, 0.0) * w);
  }

  Matrix p(n);
  for (const StateVector& b : basis) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) p.at(r, c) += b[r] * std::conj(b[c]);
  }
  return Projector(std::move(p));
}

Projector complement(const Projector& p) {
  return Projector(Matrix::identity(p.dim()) - p.matrix());
}

StateVector apply(const Projector& p, const StateVector& v) {
  return p.matrix() * v;
}

double commutator_norm(const Projector& p, const Projector& q) {
  check_same_dim(p.dim(), q.dim(), "commutator_norm");
  return max_abs(p.matrix() * q.matrix() - q.matrix() * p.matrix());
}

std::vector<StateVector> span_basis(const Projector& p) {
  const int n = p.dim();
  std::vector<StateVector> cols;
  cols.reserve(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    StateVector v(n);
    for (int r = 0; r < n; ++r) v[r] = p.matrix().at(r, c);
    cols.push_back(std::move(v));
  }

  // Column-pivoted Gram-Schmidt: always take the column with the largest
  // remaining norm, so the result is stable under column permutations of dust.
  std::vector<StateVector> basis;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_norm = 0.0;
    for (int c = 0; c < n; ++c) {
      const double nn = norm_sq(cols[static_cast<size_t>(c)]);
      if (nn > best_norm) {
        best_norm = nn;
        best = c;
      }
    }
    if (best < 0 || std::sqrt(best_norm) <= kRankTol) break;
    StateVector b = Complex(1.0 / std::sqrt(best_norm), 0.0) * cols[static_cast<size_t>(best)];
    for (int c = 0; c < n; ++c) {
      cols[static_cast<size_t>(c)] = cols[static_cast<size_t>(c)] - inner(b, cols[static_cast<size_t>(c)]) * b;
    }
    basis.push_back(std::move(b));
  }
  return basis;
}

}  // namespace qsp::linalg
