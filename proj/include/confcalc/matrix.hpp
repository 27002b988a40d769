#ifndef CONFCALC_MATRIX_HPP
#define CONFCALC_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/error.hpp"
#include "confcalc/fp.hpp"

namespace confcalc {

/// Dense matrix over a prime field, row-major.  Zero-row and zero-column
/// shapes are legal everywhere; they carry shape information only.
class Matrix {
 public:
  Matrix(FieldSpec field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {
    if (rows < 0 || cols < 0) fail(Errc::ShapeMismatch, "negative shape");
  }

  static Matrix identity(FieldSpec field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static Matrix from_rows(FieldSpec field,
                          const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        fail(Errc::ShapeMismatch, "ragged rows");
      for (int j = 0; j < c; ++j) m.set(i, j, field.reduce(rows[i][j]));
    }
    return m;
  }

  const FieldSpec& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint32_t at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  void set(int i, int j, std::uint32_t v) { a_[size_t(i) * cols_ + j] = v; }

  bool is_zero() const {
    for (auto v : a_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_)
      fail(Errc::ShapeMismatch, "product " + shape_str() + " * " + o.shape_str());
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        std::uint64_t aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          r.set(i, j, field_.add(r.at(i, j),
                                 static_cast<std::uint32_t>(
                                     aik * o.at(k, j) % field_.modulus())));
        }
      }
    return r;
  }

  Matrix scaled(std::uint32_t c) const {
    Matrix r(field_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(a_[k], c);
    return r;
  }

  Matrix negated() const { return scaled(field_.neg(1)); }

  Matrix transposed() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
  }

  Matrix take_cols(const std::vector<int>& idx) const {
    Matrix r(field_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (size_t j = 0; j < idx.size(); ++j) r.set(i, int(j), at(i, idx[j]));
    return r;
  }

  Matrix take_rows(const std::vector<int>& idx) const {
    Matrix r(field_, static_cast<int>(idx.size()), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
      for (int j = 0; j < cols_; ++j) r.set(int(i), j, at(idx[i], j));
    return r;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
      fail(Errc::ShapeMismatch, shape_str() + " vs " + o.shape_str());
  }

  FieldSpec field_;
  int rows_, cols_;
  std::vector<std::uint32_t> a_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field())
    fail(Errc::ShapeMismatch, "hstack " + a.shape_str() + " | " + b.shape_str());
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
  }
  return r;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field())
    fail(Errc::ShapeMismatch, "vstack " + a.shape_str() + " / " + b.shape_str());
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(a.rows() + i, j, b.at(i, j));
  return r;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) fail(Errc::FieldMismatch, "block_diag");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      r.set(a.rows() + i, a.cols() + j, b.at(i, j));
  return r;
}

struct RrefResult {
  Matrix r;
  std::vector<int> pivots;  // pivot column indices, ascending
  int rank;
};

/// Reduced row echelon form by Gauss-Jordan elimination; unique over F_p.
inline RrefResult rref(const Matrix& m) {
  Matrix r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < r.rows(); ++i)
      if (r.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < r.cols(); ++j) {
        auto t = r.at(row, j);
        r.set(row, j, r.at(pr, j));
        r.set(pr, j, t);
      }
    std::uint32_t inv = r.field().inv(r.at(row, col));
    for (int j = col; j < r.cols(); ++j)
      r.set(row, j, r.field().mul(r.at(row, j), inv));
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      std::uint32_t f = r.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < r.cols(); ++j)
        r.set(i, j, r.field().sub(r.at(i, j), r.field().mul(f, r.at(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  int rank = static_cast<int>(pivots.size());
  return {std::move(r), std::move(pivots), rank};
}

inline int rank_of(const Matrix& m) { return rref(m).rank; }

/// Basis of the right null space as matrix columns.  Canonical form: one
/// column per free variable in increasing column index, the free variable
/// set to 1 and pivot variables filled from the RREF.
inline Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix k(m.field(), m.cols(), static_cast<int>(free_cols.size()));
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    int f = free_cols[fi];
    k.set(f, int(fi), 1);
    for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
      k.set(rr.pivots[pi], int(fi), m.field().neg(rr.r.at(int(pi), f)));
  }
  return k;
}

/// Canonical particular solution of A X = B (free variables zero), or
/// nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field())
    fail(Errc::ShapeMismatch, "solve " + a.shape_str() + ", " + b.shape_str());
  RrefResult rr = rref(hstack(a, b));
  // Any pivot beyond A's columns means some column of B is inconsistent.
  for (int p : rr.pivots)
    if (p >= a.cols()) return std::nullopt;
  Matrix x(a.field(), a.cols(), b.cols());
  for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.set(rr.pivots[pi], j, rr.r.at(int(pi), a.cols() + j));
  return x;
}

/// Unique solution of A X = B for A with full column rank; the call is a
/// logic error when the system is inconsistent or underdetermined.
inline Matrix solve_unique(const Matrix& a, const Matrix& b) {
  auto x = solve(a, b);
  if (!x || rank_of(a) != a.cols())
    fail(Errc::InvalidConfiguration,
         "expected unique solution for " + a.shape_str() + " system");
  return *x;
}

/// Unique solution of X P = B for P with full row rank.
inline Matrix solve_right_unique(const Matrix& p, const Matrix& b) {
  return solve_unique(p.transposed(), b.transposed()).transposed();
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  RrefResult rr = rref(hstack(m, Matrix::identity(m.field(), m.rows())));
  if (rr.rank != m.rows()) return std::nullopt;
  std::vector<int> right;
  for (int j = 0; j < m.cols(); ++j) right.push_back(m.cols() + j);
  return rr.r.take_cols(right);
}

/// Canonical basis of the column space: transpose, row-reduce, transpose.
/// Two matrices span the same column space iff their canonical bases are
/// equal, which is what makes subobject equality a plain == below.
inline Matrix column_space_basis(const Matrix& m) {
  RrefResult rr = rref(m.transposed());
  std::vector<int> keep;
  for (int i = 0; i < rr.rank; ++i) keep.push_back(i);
  return rr.r.take_rows(keep).transposed();
}

/// Meet and join of column-span subspaces of a common ambient space.
/// The join is the canonical basis of [U | V]; the meet comes from the
/// kernel of [U | -V] (pairs (x, y) with U x = V y).
inline std::pair<Matrix, Matrix> subspace_meet_join(const Matrix& u,
                                                    const Matrix& v) {
  if (u.rows() != v.rows() || u.field() != v.field())
    fail(Errc::AmbientMismatch, u.shape_str() + " vs " + v.shape_str());
  Matrix join = column_space_basis(hstack(u, v));
  Matrix k = kernel_basis(hstack(u, v.negated()));
  std::vector<int> top;
  for (int i = 0; i < u.cols(); ++i) top.push_back(i);
  Matrix meet = column_space_basis(u * k.take_rows(top));
  return {std::move(meet), std::move(join)};
}

}  // namespace confcalc

#endif  // CONFCALC_MATRIX_HPP
