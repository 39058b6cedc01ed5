#pragma once

#include <initializer_list>
#include <vector>

#include "twocopy/rational.hpp"

namespace twocopy {

using RatVector = std::vector<Rat>;
using IVec = std::vector<Int>;

// Dense exact-rational matrix. Small by construction (the largest block this
// toolkit ever builds is 63x63), so no sparse machinery.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RatMatrix identity(size_t n);
  static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rat>> rows);
  static RatMatrix from_columns(const std::vector<RatVector>& cols);
  static RatMatrix from_int_columns(const std::vector<IVec>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rat& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const Rat& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  RatMatrix transposed() const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix scaled(const Rat& s) const;
  RatVector apply(const RatVector& v) const;
  bool operator==(const RatMatrix& o) const;
  bool is_zero() const;
  bool is_symmetric() const;
  Rat trace() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Exact null-space basis via fraction-free (Bareiss) elimination on the
// denominator-cleared matrix. Each returned vector is integer, gcd-reduced,
// with positive leading entry; M * v = 0 exactly.
std::vector<IVec> kernel(const RatMatrix& m);

size_t rank(const RatMatrix& m);

// P = B (B^T B)^{-1} B^T for an independent set of columns. Throws on a
// dependent input, naming the first offending column.
RatMatrix projector_from_basis(const std::vector<RatVector>& basis);
RatMatrix projector_from_int_basis(const std::vector<IVec>& basis);

// Lagrange interpolation projectors P_i = prod_{j != i} (M - a_j)/(a_i - a_j)
// for a symmetric M whose complete spectrum is `eigenvalues`. All of
// sum P_i = 1, P_i P_j = delta_ij P_i and M = sum a_i P_i are verified before
// returning; failure means the eigenvalue list is incomplete or incorrect.
std::vector<RatMatrix> spectral_projectors(const RatMatrix& m,
                                           const std::vector<Rat>& eigenvalues);

// Solve G x = rhs for invertible G (exact Gauss-Jordan).
RatMatrix solve(const RatMatrix& g, const RatMatrix& rhs);

Int ivec_dot(const IVec& a, const IVec& b);
void ivec_normalize(IVec& v);  // divide by gcd, make leading entry positive

}  // namespace twocopy
