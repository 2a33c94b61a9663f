#pragma once

#include <cstddef>
#include <vector>

#include "gppv/rational.hpp"

namespace gppv {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T(0)) : r_(r), c_(c), d_(r * c, fill) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using IntVec = std::vector<long>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error("matrix product: shape mismatch");
  Matrix<T> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

RatMatrix to_rational(const IntMatrix& a);
IntMatrix to_integer(const RatMatrix& a);  // throws on non-integer entries
bool is_integral(const RatMatrix& a);
bool is_symmetric(const RatMatrix& a);
RatMatrix submatrix(const RatMatrix& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols);
std::vector<Rational> mat_vec(const RatMatrix& a, const std::vector<Rational>& x);
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

Rational determinant(const RatMatrix& a);
Integer determinant(const IntMatrix& a);
RatMatrix inverse(const RatMatrix& a);  // throws if singular
std::vector<Rational> leading_minors(const RatMatrix& a);
/// (n_plus, n_minus, n_zero) by exact congruence diagonalization
struct Inertia {
  int positive = 0, negative = 0, zero = 0;
  int signature() const { return positive - negative; }
};
Inertia inertia(const RatMatrix& symmetric);

/// A = U D V, U and V unimodular, D diagonal with d_1 | d_2 | ... and d_i >= 0
struct SmithForm {
  IntMatrix U, D, V;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Lower-triangular column basis H (n x n) of the lattice spanned by the
/// columns of B, with H_ii > 0 and 0 <= H_ij < H_ii for j < i.
IntMatrix hermite_normal_form(const IntMatrix& b);

}  // namespace gppv
