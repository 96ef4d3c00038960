#pragma once
// Exact dense linear algebra over the rationals.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualis {

using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Vector = std::vector<Scalar>;

/// Raised when an internal mathematical invariant fails (corrupt input data,
/// inconsistent model, bad coset set, ...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical "p/q" form; the denominator is always written, even when it is 1.
inline std::string to_string(const Scalar& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Accepts "p/q" or a plain integer "p".
inline Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Scalar(Integer(std::string(text)));
    }
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Scalar(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
}

inline bool is_integer(const Scalar& q) { return boost::multiprecision::denominator(q) == 1; }

inline Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: width mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: height mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<Vector> row_list() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    return m;
  }

  /// Adds `block` with its top-left corner at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) {
        const Scalar& x = block(i, j);
        if (x != 0) (*this)(r0 + i, c0 + j) += x;
      }
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(k, j);
          if (y != 0) c(i, j) += x * y;
        }
      }
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("Matrix-vector product: shape mismatch");
    Vector out(a.rows_, Scalar(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x != 0 && v[k] != 0) out[i] += x * v[k];
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Lexicographic order on (rows, cols, entries); used for canonical choices.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
  }

  const std::vector<Scalar>& data() const { return data_; }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: width mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.add_block(0, 0, a);
  m.add_block(a.rows(), 0, b);
  return m;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: height mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.add_block(0, 0, a);
  m.add_block(0, a.cols(), b);
  return m;
}

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  Matrix transform;  // transform * input == reduced
};

namespace detail {

// Gauss-Jordan elimination in place; optionally mirrors row operations on `t`.
inline std::vector<std::size_t> eliminate(Matrix& m, Matrix* t) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      if (t)
        for (std::size_t j = 0; j < t->cols(); ++j) std::swap((*t)(p, j), (*t)(r, j));
    }
    Scalar inv = 1 / m(r, c);
    if (inv != 1) {
      for (std::size_t j = c; j < cols; ++j)
        if (m(r, j) != 0) m(r, j) *= inv;
      if (t)
        for (std::size_t j = 0; j < t->cols(); ++j)
          if ((*t)(r, j) != 0) (*t)(r, j) *= inv;
    }
    std::vector<std::size_t> support;
    for (std::size_t j = c; j < cols; ++j)
      if (m(r, j) != 0) support.push_back(j);
    std::vector<std::size_t> tsupport;
    if (t)
      for (std::size_t j = 0; j < t->cols(); ++j)
        if ((*t)(r, j) != 0) tsupport.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
      if (t)
        for (std::size_t j : tsupport) (*t)(i, j) -= f * (*t)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Reduced row-echelon form with pivot columns and the invertible transform T
/// satisfying T * m == R.
inline RrefResult rref(const Matrix& m) {
  RrefResult out{m, {}, Matrix::identity(m.rows())};
  out.pivots = detail::eliminate(out.reduced, &out.transform);
  return out;
}

/// Reduced form and pivots only.
inline std::pair<Matrix, std::vector<std::size_t>> rref_reduced(const Matrix& m) {
  Matrix r = m;
  auto piv = detail::eliminate(r, nullptr);
  return {std::move(r), std::move(piv)};
}

inline std::size_t rank(const Matrix& m) { return rref_reduced(m).second.size(); }

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix is not square");
  auto r = rref(m);
  if (r.pivots.size() != m.rows()) throw std::invalid_argument("inverse: matrix is singular");
  return r.transform;
}

inline Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Scalar f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// A subspace of Q^ambient_dim, stored as rows in reduced row-echelon form so
/// that coordinates of a member vector can be read off at the pivot columns.
struct Subspace {
  std::size_t ambient_dim = 0;
  Matrix basis;                      // dim x ambient_dim, rref
  std::vector<std::size_t> pivots;   // pivot column of each basis row

  std::size_t dim() const { return basis.rows(); }

  static Subspace from_spanning_rows(const Matrix& rows, std::size_t ambient) {
    Subspace s;
    s.ambient_dim = ambient;
    if (rows.rows() == 0) {
      s.basis = Matrix(0, ambient);
      return s;
    }
    auto [r, piv] = rref_reduced(rows);
    s.basis = r.select_rows([&] {
      std::vector<std::size_t> idx(piv.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      return idx;
    }());
    s.pivots = std::move(piv);
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis = Matrix::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots.push_back(i);
    return s;
  }

  /// Coefficients of v in the basis; assumes v lies in the subspace.
  Vector coordinates(const Vector& v) const {
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots[i]];
    return c;
  }

  Vector combine(const Vector& coeffs) const {
    Vector v = zero_vector(ambient_dim);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < ambient_dim; ++j)
        if (basis(i, j) != 0) v[j] += coeffs[i] * basis(i, j);
    }
    return v;
  }

  bool contains(const Vector& v) const {
    if (v.size() != ambient_dim) return false;
    Vector diff = v;
    Vector back = combine(coordinates(v));
    for (std::size_t j = 0; j < ambient_dim; ++j)
      if (diff[j] != back[j]) return false;
    return true;
  }

  /// Column-basis embedding (ambient_dim x dim).
  Matrix embedding() const { return basis.transpose(); }
};

/// Null space {v : m v = 0}.
inline Subspace kernel_basis(const Matrix& m) {
  const std::size_t n = m.cols();
  auto [r, piv] = rref_reduced(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> rows;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(n);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    rows.push_back(std::move(v));
  }
  return Subspace::from_spanning_rows(Matrix::from_rows(rows, n), n);
}

/// Column space of m, as a subspace of Q^rows.
inline Subspace image_basis(const Matrix& m) {
  return Subspace::from_spanning_rows(m.transpose(), m.rows());
}

/// Incremental row echelon form: add() reports whether a vector is independent
/// of everything added so far.
class Echelon {
 public:
  explicit Echelon(std::size_t ambient) : ambient_(ambient) {}

  bool add(const Vector& v) {
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < ambient_ && r[p] == 0) ++p;
    if (p == ambient_) return false;
    Scalar inv = 1 / r[p];
    for (auto& x : r)
      if (x != 0) x *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool spans(const Vector& v) const { return is_zero(reduce(v)); }
  std::size_t rank() const { return rows_.size(); }

 private:
  Vector reduce(Vector r) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar f = r[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (rows_[i][j] != 0) r[j] -= f * rows_[i][j];
    }
    return r;
  }

  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// W/V for V contained in W.  `representatives` are rows of W completing a
/// basis of V; `projection` (dim(W/V) x ambient) sends a member of W to its
/// class coordinates and annihilates V.
struct Quotient {
  Matrix representatives;
  Matrix projection;
  std::size_t dim() const { return representatives.rows(); }
};

inline Quotient quotient_space(const Subspace& w, const Subspace& v) {
  const std::size_t a = w.ambient_dim;
  if (v.ambient_dim != a) throw std::invalid_argument("quotient_space: ambient mismatch");
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (!w.contains(v.basis.row(i))) throw std::invalid_argument("quotient_space: V is not contained in W");

  // Extend the basis of V by basis rows of W, greedily in order.
  Echelon ech(a);
  for (std::size_t i = 0; i < v.dim(); ++i) ech.add(v.basis.row(i));
  std::vector<Vector> reps;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Vector cand = w.basis.row(i);
    if (ech.add(cand)) reps.push_back(std::move(cand));
  }
  Matrix current = vstack(v.basis, Matrix::from_rows(reps, a));
  Quotient q;
  q.representatives = Matrix::from_rows(reps, a);
  q.projection = Matrix(reps.size(), a);
  if (reps.empty()) return q;

  // x^T = c^T M on the row span; restricted to pivot columns M_p is invertible.
  auto piv = rref_reduced(current).second;
  Matrix mp_inv = inverse(current.select_columns(piv));
  const std::size_t k0 = v.dim();
  for (std::size_t t = 0; t < reps.size(); ++t)
    for (std::size_t s = 0; s < piv.size(); ++s) q.projection(t, piv[s]) = mp_inv(s, k0 + t);
  return q;
}

/// Characteristic polynomial det(xI - m) by Faddeev-LeVerrier.  Coefficients
/// are returned leading term first: {1, c_{n-1}, ..., c_0}.
inline std::vector<Scalar> charpoly(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<Scalar> desc(n + 1, Scalar(0));
  desc[0] = 1;
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += desc[k - 1];
    Matrix amk = m * mk;
    Scalar tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    desc[k] = -tr / Scalar(static_cast<long>(k));
  }
  return desc;
}

/// Evaluates a polynomial (leading coefficient first) at a square matrix.
inline Matrix evaluate_polynomial(const std::vector<Scalar>& desc, const Matrix& m) {
  Matrix acc(m.rows(), m.cols());
  for (const auto& c : desc) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += c;
  }
  return acc;
}

inline Matrix matrix_power(const Matrix& m, long k) {
  if (!m.is_square()) throw std::invalid_argument("matrix_power: matrix is not square");
  Matrix base = k < 0 ? inverse(m) : m;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  Matrix acc = Matrix::identity(m.rows());
  while (e) {
    if (e & 1UL) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

/// Kronecker product.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.add_block(0, 0, a);
  m.add_block(a.rows(), a.cols(), b);
  return m;
}

}  // namespace dualis
