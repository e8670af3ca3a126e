// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex linear algebra. Every dimension in this project is at
// most eight, so storage is a flat std::vector and nothing is blocked.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace swipt::cxla {

using Complex = std::complex<double>;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t n) : v_(n) {}
  CVector(std::initializer_list<Complex> init) : v_(init) {}
  explicit CVector(std::vector<Complex> entries) : v_(std::move(entries)) {}

  std::size_t dim() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  Complex& operator[](std::size_t i) { return v_[i]; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }

  std::span<const Complex> entries() const { return v_; }
  std::span<Complex> entries() { return v_; }

  double norm2() const;
  double norm() const;
  CVector normalized() const;

  CVector& operator+=(const CVector& o);
  CVector& operator-=(const CVector& o);
  CVector& operator*=(Complex s);

  bool operator==(const CVector&) const = default;

 private:
  std::vector<Complex> v_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Complex s, CVector a);
CVector operator*(CVector a, Complex s);

/// a† b
Complex dot(const CVector& a, const CVector& b);

/// Row-major rows × cols complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), m_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  /// x y†
  static CMatrix outer(const CVector& x, const CVector& y);
  /// Matrix whose columns are the given vectors (all the same dimension).
  static CMatrix from_columns(std::span<const CVector> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return m_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }

  CVector column(std::size_t c) const;
  CMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> m_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);

/// trace(A B) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

/// Square matrix equal to its conjugate transpose. Construction from a general
/// matrix checks the property to 1e-12 relative tolerance and then snaps the
/// storage to exact symmetry (real diagonal, mirrored off-diagonal).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : m_(n, n) {}
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix zero(std::size_t n) { return HermitianMatrix(n); }
  static HermitianMatrix identity(std::size_t n);
  /// x x†
  static HermitianMatrix outer(const CVector& x);
  /// B V B† for B with orthonormal columns given as vectors.
  static HermitianMatrix congruence(std::span<const CVector> basis, const HermitianMatrix& v);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double trace() const;
  double frobenius_norm() const { return m_.frobenius_norm(); }
  /// x† M x (real for Hermitian M).
  double quadratic_form(const CVector& x) const;
  /// Real inner product trace(A B) for Hermitian A, B.
  double inner(const HermitianMatrix& o) const;
  /// B† M B restricted to the span of the given orthonormal vectors.
  HermitianMatrix compress(std::span<const CVector> basis) const;

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  /// this += s x x†
  void add_outer(const CVector& x, double s);

 private:
  CMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);

/// Π_basis x = basis (basis† basis)^{-1} basis† x
CVector project_onto(const CVector& x, const CVector& basis);
/// x − Π_basis x
CVector project_orth(const CVector& x, const CVector& basis);

/// n−1 orthonormal vectors orthogonal to b (n = dim b ≥ 2).
std::vector<CVector> null_basis(const CVector& b);

struct EigenPair {
  double value;
  CVector vector;
};

struct EigenDecomposition {
  std::vector<double> values;    // descending
  std::vector<CVector> vectors;  // unit norm, vectors[i] pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// 1e-12 of the total.
EigenDecomposition eigh(const HermitianMatrix& m);
EigenPair top_eigpair(const HermitianMatrix& m);

}  // namespace swipt::cxla
