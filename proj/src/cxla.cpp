// SPDX-License-Identifier: Apache-2.0
#include "swipt/cxla.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "swipt/status.hpp"

namespace swipt::cxla {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------- CVector

double CVector::norm2() const {
  double s = 0.0;
  for (const auto& z : v_) s += std::norm(z);
  return s;
}

double CVector::norm() const { return std::sqrt(norm2()); }

CVector CVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DegenerateInput("normalized: zero vector");
  CVector out(*this);
  out *= 1.0 / n;
  return out;
}

CVector& CVector::operator+=(const CVector& o) {
  require_same_dim(dim(), o.dim(), "CVector +=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& o) {
  require_same_dim(dim(), o.dim(), "CVector -=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

CVector& CVector::operator*=(Complex s) {
  for (auto& z : v_) z *= s;
  return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Complex s, CVector a) { return a *= s; }
CVector operator*(CVector a, Complex s) { return a *= s; }

Complex dot(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// ---------------------------------------------------------------- CMatrix

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(const CVector& x, const CVector& y) {
  CMatrix m(x.dim(), y.dim());
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < y.dim(); ++c) m(r, c) = x[r] * std::conj(y[c]);
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> cols) {
  if (cols.empty()) return {};
  CMatrix m(cols[0].dim(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    require_same_dim(cols[c].dim(), m.rows(), "from_columns");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = cols[c][r];
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

Complex CMatrix::trace() const {
  require_same_dim(rows_, cols_, "trace");
  Complex s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : m_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_dim(rows_, o.rows_, "CMatrix +=");
  require_same_dim(cols_, o.cols_, "CMatrix +=");
  for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_dim(rows_, o.rows_, "CMatrix -=");
  require_same_dim(cols_, o.cols_, "CMatrix -=");
  for (std::size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : m_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matmul");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const CMatrix& a, const CVector& x) {
  require_same_dim(a.cols(), x.dim(), "matvec");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "trace_product");
  require_same_dim(a.rows(), b.cols(), "trace_product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

// ---------------------------------------------------------------- HermitianMatrix

HermitianMatrix::HermitianMatrix(const CMatrix& m) : m_(m) {
  if (m.rows() != m.cols()) throw ContractViolation("HermitianMatrix: matrix is not square");
  const double scale = m.frobenius_norm();
  double asym = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) asym = std::max(asym, std::abs(m(r, c) - std::conj(m(c, r))));
  if (asym > 1e-12 * scale) throw ContractViolation("HermitianMatrix: input is not Hermitian");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    m_(r, r) = m_(r, r).real();
    for (std::size_t c = r + 1; c < m.cols(); ++c) {
      const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m_(r, c) = avg;
      m_(c, r) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) h.m_(i, i) = 1.0;
  return h;
}

HermitianMatrix HermitianMatrix::outer(const CVector& x) {
  HermitianMatrix h(x.dim());
  h.add_outer(x, 1.0);
  return h;
}

HermitianMatrix HermitianMatrix::congruence(std::span<const CVector> basis, const HermitianMatrix& v) {
  require_same_dim(basis.size(), v.dim(), "congruence");
  if (basis.empty()) return {};
  const std::size_t n = basis[0].dim();
  // B V B† = Σ_ij v_ij b_i b_j†
  HermitianMatrix out(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex vij = v(i, j);
      if (vij == Complex(0.0)) continue;
      for (std::size_t r = 0; r < n; ++r) {
        const Complex br = vij * basis[i][r];
        for (std::size_t c = 0; c < n; ++c) out.m_(r, c) += br * std::conj(basis[j][c]);
      }
    }
  for (std::size_t r = 0; r < n; ++r) out.m_(r, r) = out.m_(r, r).real();
  return out;
}

double HermitianMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += m_(i, i).real();
  return s;
}

double HermitianMatrix::quadratic_form(const CVector& x) const {
  require_same_dim(dim(), x.dim(), "quadratic_form");
  Complex s = 0.0;
  for (std::size_t r = 0; r < dim(); ++r) {
    Complex row = 0.0;
    for (std::size_t c = 0; c < dim(); ++c) row += m_(r, c) * x[c];
    s += std::conj(x[r]) * row;
  }
  return s.real();
}

double HermitianMatrix::inner(const HermitianMatrix& o) const {
  require_same_dim(dim(), o.dim(), "inner");
  return trace_product(m_, o.m_).real();
}

HermitianMatrix HermitianMatrix::compress(std::span<const CVector> basis) const {
  HermitianMatrix out(basis.size());
  std::vector<CVector> mb;
  mb.reserve(basis.size());
  for (const auto& b : basis) mb.push_back(m_ * b);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.m_(i, i) = dot(basis[i], mb[i]).real();
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Complex z = dot(basis[i], mb[j]);
      out.m_(i, j) = z;
      out.m_(j, i) = std::conj(z);
    }
  }
  return out;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

void HermitianMatrix::add_outer(const CVector& x, double s) {
  require_same_dim(dim(), x.dim(), "add_outer");
  for (std::size_t r = 0; r < dim(); ++r) {
    m_(r, r) += s * std::norm(x[r]);
    for (std::size_t c = r + 1; c < dim(); ++c) {
      const Complex z = s * x[r] * std::conj(x[c]);
      m_(r, c) += z;
      m_(c, r) += std::conj(z);
    }
  }
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

// ---------------------------------------------------------------- projections

CVector project_onto(const CVector& x, const CVector& basis) {
  require_same_dim(x.dim(), basis.dim(), "project_onto");
  const double bb = basis.norm2();
  if (bb == 0.0) throw DegenerateInput("project_onto: zero-norm basis");
  return basis * (dot(basis, x) / bb);
}

CVector project_orth(const CVector& x, const CVector& basis) { return x - project_onto(x, basis); }

std::vector<CVector> null_basis(const CVector& b) {
  const std::size_t n = b.dim();
  if (n < 2) throw ContractViolation("null_basis: dimension must be at least 2");
  const double nb = b.norm();
  if (nb == 0.0) throw DegenerateInput("null_basis: zero vector");

  std::vector<CVector> q;
  q.reserve(n);
  q.push_back(b * Complex(1.0 / nb));

  // Coordinate axes least aligned with b go first; Gram-Schmidt twice.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(b[i]) < std::abs(b[j]); });
  for (std::size_t idx : order) {
    if (q.size() == n) break;
    CVector r(n);
    r[idx] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) r -= u * dot(u, r);
    const double rn = r.norm();
    if (rn < 1e-8) continue;
    r *= 1.0 / rn;
    q.push_back(std::move(r));
  }
  q.erase(q.begin());
  return q;
}

// ---------------------------------------------------------------- eigen

EigenDecomposition eigh(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw ContractViolation("eigh: empty matrix");
  CMatrix a = m.matrix();
  CMatrix v = CMatrix::identity(n);

  const double total = a.frobenius_norm();
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * std::norm(a(r, c));
    return std::sqrt(s);
  };

  int sweeps = 0;
  constexpr int kMaxSweeps = 100;
  while (total > 0.0 && off_mass() > 1e-12 * total && sweeps < kMaxSweeps) {
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Phase-rotate q so the (p,q) entry becomes real, then apply a real
        // Jacobi rotation. U = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
        const Complex phase = a(p, q) / mag;  // e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex u00 = c;
        const Complex u01 = s;
        const Complex u10 = -s * std::conj(phase);
        const Complex u11 = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A ← A U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A ← U† A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V ← V U
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * u00 + vkq * u10;
          v(k, q) = vkp * u01 + vkq * u11;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenDecomposition out;
  out.sweeps = sweeps;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t i : order) {
    out.values.push_back(a(i, i).real());
    out.vectors.push_back(v.column(i));
  }
  return out;
}

EigenPair top_eigpair(const HermitianMatrix& m) {
  auto d = eigh(m);
  return {d.values.front(), std::move(d.vectors.front())};
}

}  // namespace swipt::cxla
