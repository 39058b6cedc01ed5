#include "twocopy/exact_linalg.hpp"

#include <stdexcept>
#include <string>

namespace twocopy {

namespace {

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

struct Echelon {
  std::vector<IVec> rows;           // integer echelon rows (valid equations)
  std::vector<size_t> pivot_cols;   // one per echelon row, increasing
  std::vector<size_t> free_cols;
};

// Fraction-free Bareiss forward elimination on the denominator-cleared matrix.
Echelon eliminate(const RatMatrix& m) {
  const size_t n = m.rows(), c = m.cols();
  std::vector<IVec> a(n, IVec(c));
  for (size_t i = 0; i < n; ++i) {
    Int scale = 1;
    for (size_t j = 0; j < c; ++j) scale = lcm_int(scale, denominator(m.at(i, j)));
    if (scale == 0) scale = 1;
    for (size_t j = 0; j < c; ++j) {
      a[i][j] = numerator(m.at(i, j)) * (scale / denominator(m.at(i, j)));
    }
  }

  Echelon e;
  Int prev = 1;
  size_t r = 0;
  size_t col = 0;
  for (; col < c && r < n; ++col) {
    size_t pr = r;
    while (pr < n && a[pr][col] == 0) ++pr;
    if (pr == n) {
      e.free_cols.push_back(col);
      continue;
    }
    std::swap(a[r], a[pr]);
    for (size_t i = r + 1; i < n; ++i) {
      for (size_t j = col + 1; j < c; ++j) {
        Int num = a[i][j] * a[r][col] - a[i][col] * a[r][j];
        Int q, rem;
        divide_qr(num, prev, q, rem);
        if (rem != 0) throw std::logic_error("bareiss: inexact division");
        a[i][j] = q;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    e.pivot_cols.push_back(col);
    ++r;
  }
  for (; col < c; ++col) e.free_cols.push_back(col);
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

}  // namespace

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<Rat>> rows) {
  RatMatrix m(rows.size(), rows.begin()->size());
  size_t r = 0;
  for (const auto& row : rows) {
    size_t c = 0;
    for (const auto& v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols) {
  RatMatrix m(cols.empty() ? 0 : cols[0].size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows()) throw std::invalid_argument("ragged columns");
    for (size_t r = 0; r < m.rows(); ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

RatMatrix RatMatrix::from_int_columns(const std::vector<IVec>& cols) {
  RatMatrix m(cols.empty() ? 0 : cols[0].size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows()) throw std::invalid_argument("ragged columns");
    for (size_t r = 0; r < m.rows(); ++r) m.at(r, c) = Rat(cols[c][r]);
  }
  return m;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  RatMatrix p(rows_, o.cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t k = 0; k < cols_; ++k) {
      const Rat& v = at(r, k);
      if (v == 0) continue;
      for (size_t c = 0; c < o.cols_; ++c) {
        if (o.at(k, c) != 0) p.at(r, c) += v * o.at(k, c);
      }
    }
  }
  return p;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  RatMatrix s(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
  return s;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  RatMatrix s(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] - o.a_[i];
  return s;
}

RatMatrix RatMatrix::scaled(const Rat& s) const {
  RatMatrix m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

RatVector RatMatrix::apply(const RatVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matvec shape mismatch");
  RatVector out(rows_);
  for (size_t r = 0; r < rows_; ++r) {
    Rat acc = 0;
    for (size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != 0 && v[c] != 0) acc += at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : a_) if (v != 0) return false;
  return true;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

Rat RatMatrix::trace() const {
  Rat t = 0;
  for (size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

std::vector<IVec> kernel(const RatMatrix& m) {
  const size_t c = m.cols();
  Echelon e = eliminate(m);
  std::vector<IVec> basis;
  for (size_t f : e.free_cols) {
    RatVector x(c, Rat(0));
    x[f] = 1;
    for (size_t k = e.pivot_cols.size(); k-- > 0;) {
      const size_t col = e.pivot_cols[k];
      Rat acc = 0;
      for (size_t j = col + 1; j < c; ++j) {
        if (e.rows[k][j] != 0 && x[j] != 0) acc += Rat(e.rows[k][j]) * x[j];
      }
      x[col] = -acc / Rat(e.rows[k][col]);
    }
    Int scale = 1;
    for (const Rat& v : x) scale = lcm_int(scale, denominator(v));
    IVec iv(c);
    for (size_t j = 0; j < c; ++j) iv[j] = numerator(x[j]) * (scale / denominator(x[j]));
    ivec_normalize(iv);
    basis.push_back(std::move(iv));
  }
  return basis;
}

size_t rank(const RatMatrix& m) { return eliminate(m).pivot_cols.size(); }

RatMatrix solve(const RatMatrix& g, const RatMatrix& rhs) {
  if (g.rows() != g.cols() || g.rows() != rhs.rows()) {
    throw std::invalid_argument("solve shape mismatch");
  }
  const size_t n = g.rows(), w = rhs.cols();
  RatMatrix a = g, b = rhs;
  for (size_t col = 0; col < n; ++col) {
    size_t pr = col;
    while (pr < n && a.at(pr, col) == 0) ++pr;
    if (pr == n) throw std::runtime_error("solve: singular matrix");
    if (pr != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(pr, j));
      for (size_t j = 0; j < w; ++j) std::swap(b.at(col, j), b.at(pr, j));
    }
    const Rat piv = a.at(col, col);
    for (size_t j = 0; j < n; ++j) a.at(col, j) /= piv;
    for (size_t j = 0; j < w; ++j) b.at(col, j) /= piv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      const Rat f = a.at(i, col);
      for (size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
      for (size_t j = 0; j < w; ++j) b.at(i, j) -= f * b.at(col, j);
    }
  }
  return b;
}

RatMatrix projector_from_basis(const std::vector<RatVector>& basis) {
  if (basis.empty()) return RatMatrix(0, 0);
  RatMatrix b = RatMatrix::from_columns(basis);
  Echelon e = eliminate(b);
  if (e.pivot_cols.size() != basis.size()) {
    // first free column is the offending (dependent) one
    const size_t bad = e.free_cols.empty() ? basis.size() - 1 : e.free_cols.front();
    throw std::invalid_argument("projector_from_basis: column " + std::to_string(bad) +
                                " is linearly dependent on earlier columns");
  }
  RatMatrix bt = b.transposed();
  RatMatrix gram = bt * b;
  RatMatrix x = solve(gram, bt);  // (B^T B)^{-1} B^T
  return b * x;
}

RatMatrix projector_from_int_basis(const std::vector<IVec>& basis) {
  std::vector<RatVector> cols;
  cols.reserve(basis.size());
  for (const IVec& v : basis) {
    RatVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    cols.push_back(std::move(r));
  }
  return projector_from_basis(cols);
}

std::vector<RatMatrix> spectral_projectors(const RatMatrix& m,
                                           const std::vector<Rat>& eigenvalues) {
  if (!m.is_symmetric()) throw std::invalid_argument("spectral_projectors: matrix not symmetric");
  const size_t n = m.rows();
  std::vector<RatMatrix> projs;
  for (size_t i = 0; i < eigenvalues.size(); ++i) {
    RatMatrix p = RatMatrix::identity(n);
    for (size_t j = 0; j < eigenvalues.size(); ++j) {
      if (j == i) continue;
      if (eigenvalues[j] == eigenvalues[i]) {
        throw std::invalid_argument("spectral_projectors: repeated eigenvalue in list");
      }
      RatMatrix shift = m - RatMatrix::identity(n).scaled(eigenvalues[j]);
      p = p * shift.scaled(Rat(1) / (eigenvalues[i] - eigenvalues[j]));
    }
    projs.push_back(std::move(p));
  }
  // Verify the list really was the complete spectrum.
  RatMatrix sum(n, n), recon(n, n);
  for (size_t i = 0; i < projs.size(); ++i) {
    sum = sum + projs[i];
    recon = recon + projs[i].scaled(eigenvalues[i]);
    if (!(projs[i] * projs[i] == projs[i])) {
      throw std::runtime_error("spectral_projectors: eigenvalue list incomplete/incorrect");
    }
    for (size_t j = i + 1; j < projs.size(); ++j) {
      if (!(projs[i] * projs[j]).is_zero()) {
        throw std::runtime_error("spectral_projectors: eigenvalue list incomplete/incorrect");
      }
    }
  }
  if (!(sum == RatMatrix::identity(n)) || !(recon == m)) {
    throw std::runtime_error("spectral_projectors: eigenvalue list incomplete/incorrect");
  }
  return projs;
}

Int ivec_dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ivec_dot size mismatch");
  Int acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  }
  return acc;
}

void ivec_normalize(IVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g == 0) return;
  int lead = 0;
  for (const Int& x : v) {
    if (x != 0) { lead = x > 0 ? 1 : -1; break; }
  }
  if (lead < 0) g = -g;
  for (Int& x : v) x /= g;
}

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(Int(text));
  Rat r(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  return r;
}

}  // namespace twocopy
