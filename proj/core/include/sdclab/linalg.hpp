#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdclab/errors.hpp"
#include "sdclab/rational.hpp"

namespace sdclab {

/// A finite-dimensional rational vector space with named basis vectors.
/// Labels are carried for reporting only; every algorithm is positional.
struct VectorSpace {
  int dim = 0;
  std::vector<std::string> labels;

  VectorSpace() = default;
  VectorSpace(int d, std::vector<std::string> names);

  /// n-dimensional space labelled prefix0, prefix1, ...
  static VectorSpace with_prefix(const std::string& prefix, int n);
  static VectorSpace zero() { return VectorSpace(0, {}); }

  int index_of(const std::string& label) const;  // -1 if absent
  bool operator==(const VectorSpace& other) const;
};

/// Tensor product space with labels "a(x)b"; index (i,j) -> i*right.dim + j.
VectorSpace tensor_space(const VectorSpace& left, const VectorSpace& right);
inline int pair_index(int i, int j, int right_dim) { return i * right_dim + j; }

/// Dense rational matrix, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols);

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(int rows, const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c);
  const Rational& at(int r, int c) const;

  Vec apply(const Vec& v) const;
  Vec row(int r) const;
  Vec column(int c) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix transpose() const;
  Matrix scaled(const Rational& c) const;
  /// Horizontal concatenation [this | other].
  Matrix hcat(const Matrix& other) const;
  bool is_zero() const;
  bool operator==(const Matrix& other) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Kronecker product; row index (ra,rb) -> ra*b.rows()+rb.
Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced row echelon form. Elimination runs fraction-free (Bareiss) over
/// integers after clearing denominators row by row, then a rational backward
/// pass normalises pivots; pivots are the first usable column in order, so
/// the result is deterministic.
struct Rref {
  Matrix r;                    // RREF of the input
  std::vector<int> pivot_cols; // one per pivot row
  int rank = 0;
  bool is_pivot_col(int c) const;
};
Rref rref(const Matrix& m);

int rank(const Matrix& m);

/// Solves m x = target, free pivots set to zero. Empty optional when the
/// system is inconsistent. Throws ShapeError on a length mismatch.
std::optional<Vec> solve(const Matrix& m, const Vec& target);

/// Columns form a deterministic basis of ker(m).
Matrix kernel_basis(const Matrix& m);

/// The pivot columns of m, as columns of the result.
Matrix column_space_basis(const Matrix& m);

/// Expresses v in the given columns if possible (free coefficients zero).
std::optional<Vec> express_in_columns(const Matrix& columns, const Vec& v);

/// A linear map between two labelled spaces.
struct LinearMap {
  VectorSpace domain;
  VectorSpace codomain;
  Matrix matrix;

  LinearMap() = default;
  LinearMap(VectorSpace dom, VectorSpace cod, Matrix m);

  static LinearMap zero(VectorSpace dom, VectorSpace cod);
  static LinearMap identity(const VectorSpace& space);

  Vec apply(const Vec& v) const;
  /// this after first (matrix product this.matrix * first.matrix).
  LinearMap compose(const LinearMap& first) const;
  bool operator==(const LinearMap& other) const;
};

std::optional<Vec> solve(const LinearMap& map, const Vec& target);

/// ker(d_out) / im(d_in) with chosen cycle representatives.
struct HomologyView {
  int dim = 0;
  Matrix cycles;           // columns: basis of ker(d_out)
  Matrix boundaries;       // columns: basis of im(d_in)
  Matrix representatives;  // columns: cycles projecting to a basis of the quotient

  /// Coordinates of a cycle's class in the representative basis.
  /// Throws PreconditionError when z is not a cycle.
  Vec class_of(const Vec& z) const;
  bool is_boundary(const Vec& z) const;
};

/// Requires d_out o d_in = 0 (NotAComplexError otherwise) and matching
/// middle spaces (ShapeError).
HomologyView homology_at(const LinearMap& d_in, const LinearMap& d_out);

/// One-time Gauss-Jordan factorisation of a column system A, reused to
/// express many right-hand sides in the columns of A.
class ColumnSolver {
public:
  explicit ColumnSolver(const Matrix& a);
  int rank() const { return rank_; }
  /// Coefficients x with A x = rhs (free coefficients zero), or empty.
  std::optional<Vec> solve(const Vec& rhs) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  int rank_ = 0;
  std::vector<int> pivot_cols_;
  Matrix reduced_;    // RREF of A
  Matrix transform_;  // T with T*A = reduced_
};

}  // namespace sdclab
