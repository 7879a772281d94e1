#include "sdclab/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sdclab {

Rational rat_from_string(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rational q(mpz_class(s), 1);
      q.canonicalize();
      return q;
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + text);
  }
}

std::string rat_to_string(const Rational& q) {
  std::ostringstream out;
  out << q.get_num() << "/" << q.get_den();
  return out.str();
}

Vec vec_zero(std::size_t n) { return Vec(n, Rational(0)); }

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch in add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch in sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Rational& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

VectorSpace::VectorSpace(int d, std::vector<std::string> names) : dim(d), labels(std::move(names)) {
  if (static_cast<int>(labels.size()) != dim)
    throw ShapeError("label count does not match dimension");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != dim) throw ShapeError("duplicate basis labels");
}

VectorSpace VectorSpace::with_prefix(const std::string& prefix, int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return VectorSpace(n, std::move(names));
}

int VectorSpace::index_of(const std::string& label) const {
  for (int i = 0; i < dim; ++i)
    if (labels[i] == label) return i;
  return -1;
}

bool VectorSpace::operator==(const VectorSpace& other) const {
  return dim == other.dim && labels == other.labels;
}

VectorSpace tensor_space(const VectorSpace& left, const VectorSpace& right) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(left.dim) * right.dim);
  for (int i = 0; i < left.dim; ++i)
    for (int j = 0; j < right.dim; ++j) names.push_back(left.labels[i] + "(x)" + right.labels[j]);
  return VectorSpace(left.dim * right.dim, std::move(names));
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<Vec>& cols) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) {
    if (static_cast<int>(cols[c].size()) != rows) throw ShapeError("column length mismatch");
    for (int r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Rational& Matrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ShapeError("matrix index out of range");
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

const Rational& Matrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ShapeError("matrix index out of range");
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ShapeError("matrix-vector shape mismatch");
  Vec r = vec_zero(rows_);
  for (int i = 0; i < rows_; ++i) {
    Rational acc(0);
    for (int j = 0; j < cols_; ++j) {
      const Rational& m = data_[static_cast<std::size_t>(i) * cols_ + j];
      if (m != 0 && v[j] != 0) acc += m * v[j];
    }
    r[i] = acc;
  }
  return r;
}

Vec Matrix::row(int r) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
  return v;
}

Vec Matrix::column(int c) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw ShapeError("matrix product shape mismatch");
  Matrix r(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = data_[static_cast<std::size_t>(i) * cols_ + k];
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        const Rational& b = other.data_[static_cast<std::size_t>(k) * other.cols_ + j];
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("matrix sum shape mismatch");
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + other.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("matrix difference shape mismatch");
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - other.data_[i];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = c * data_[i];
  return r;
}

Matrix Matrix::hcat(const Matrix& other) const {
  if (rows_ != other.rows_) throw ShapeError("hcat row mismatch");
  Matrix r(rows_, cols_ + other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < other.cols_; ++j) r.at(i, cols_ + j) = other.at(i, j);
  }
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const Rational& x = a.at(ia, ja);
      if (x == 0) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb) {
          const Rational& y = b.at(ib, jb);
          if (y != 0) r.at(ia * b.rows() + ib, ja * b.cols() + jb) = x * y;
        }
    }
  return r;
}

namespace {

// Fraction-free elimination: rows are scaled to integers, then Bareiss
// two-step division-free updates keep every intermediate entry integral.
struct IntegerEchelon {
  std::vector<std::vector<mpz_class>> m;
  std::vector<int> pivot_cols;
  int rank = 0;
};

IntegerEchelon bareiss(const Matrix& input) {
  const int rows = input.rows(), cols = input.cols();
  IntegerEchelon e;
  e.m.assign(rows, std::vector<mpz_class>(cols, 0));
  for (int i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (int j = 0; j < cols; ++j) {
      const mpz_class den = input.at(i, j).get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (int j = 0; j < cols; ++j) {
      const Rational q = input.at(i, j) * Rational(lcm);
      e.m[i][j] = q.get_num();  // exact by construction
    }
  }
  mpz_class prev = 1;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (e.m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(e.m[row], e.m[piv]);
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        mpz_class t = e.m[row][col] * e.m[i][j] - e.m[i][col] * e.m[row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        e.m[i][j] = t;
      }
      e.m[i][col] = 0;
    }
    prev = e.m[row][col];
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

}  // namespace

bool Rref::is_pivot_col(int c) const {
  return std::find(pivot_cols.begin(), pivot_cols.end(), c) != pivot_cols.end();
}

Rref rref(const Matrix& input) {
  IntegerEchelon e = bareiss(input);
  const int cols = input.cols();
  Rref out;
  out.pivot_cols = e.pivot_cols;
  out.rank = e.rank;
  // Rational backward pass: normalise pivots to 1, eliminate above.
  std::vector<Vec> rows(e.rank);
  for (int i = 0; i < e.rank; ++i) {
    rows[i] = vec_zero(cols);
    const mpz_class& p = e.m[i][e.pivot_cols[i]];
    for (int j = 0; j < cols; ++j) {
      if (e.m[i][j] != 0) {
        Rational q(e.m[i][j], p);
        q.canonicalize();
        rows[i][j] = q;
      }
    }
  }
  for (int i = e.rank - 1; i >= 0; --i)
    for (int k = 0; k < i; ++k) {
      const Rational c = rows[k][e.pivot_cols[i]];
      if (c != 0)
        for (int j = 0; j < cols; ++j) rows[k][j] -= c * rows[i][j];
    }
  out.r = Matrix(input.rows(), cols);
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < cols; ++j) out.r.at(i, j) = rows[i][j];
  return out;
}

int rank(const Matrix& m) { return bareiss(m).rank; }

std::optional<Vec> solve(const Matrix& m, const Vec& target) {
  if (static_cast<int>(target.size()) != m.rows()) throw ShapeError("solve: target length mismatch");
  Matrix aug = m.hcat(Matrix::from_columns(m.rows(), {target}));
  Rref r = rref(aug);
  Vec x = vec_zero(m.cols());
  for (int i = 0; i < r.rank; ++i) {
    const int p = r.pivot_cols[i];
    if (p == m.cols()) return std::nullopt;  // pivot in the augmented column
    x[p] = r.r.at(i, m.cols());
  }
  return x;
}

Matrix kernel_basis(const Matrix& m) {
  Rref r = rref(m);
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols(); ++c)
    if (!r.is_pivot_col(c)) free_cols.push_back(c);
  Matrix k(m.cols(), static_cast<int>(free_cols.size()));
  for (std::size_t fc = 0; fc < free_cols.size(); ++fc) {
    const int c = free_cols[fc];
    k.at(c, static_cast<int>(fc)) = 1;
    for (int i = 0; i < r.rank; ++i) k.at(r.pivot_cols[i], static_cast<int>(fc)) = -r.r.at(i, c);
  }
  return k;
}

Matrix column_space_basis(const Matrix& m) {
  Rref r = rref(m);
  Matrix b(m.rows(), r.rank);
  for (int i = 0; i < r.rank; ++i)
    for (int row = 0; row < m.rows(); ++row) b.at(row, i) = m.at(row, r.pivot_cols[i]);
  return b;
}

std::optional<Vec> express_in_columns(const Matrix& columns, const Vec& v) {
  return solve(columns, v);
}

LinearMap::LinearMap(VectorSpace dom, VectorSpace cod, Matrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (matrix.rows() != codomain.dim || matrix.cols() != domain.dim)
    throw ShapeError("linear map entries do not match domain/codomain dims");
}

LinearMap LinearMap::zero(VectorSpace dom, VectorSpace cod) {
  Matrix m(cod.dim, dom.dim);
  return LinearMap(std::move(dom), std::move(cod), std::move(m));
}

LinearMap LinearMap::identity(const VectorSpace& space) {
  return LinearMap(space, space, Matrix::identity(space.dim));
}

Vec LinearMap::apply(const Vec& v) const { return matrix.apply(v); }

LinearMap LinearMap::compose(const LinearMap& first) const {
  if (!(first.codomain == domain)) throw ShapeError("compose: middle spaces differ");
  return LinearMap(first.domain, codomain, matrix * first.matrix);
}

bool LinearMap::operator==(const LinearMap& other) const {
  return domain == other.domain && codomain == other.codomain && matrix == other.matrix;
}

std::optional<Vec> solve(const LinearMap& map, const Vec& target) {
  if (static_cast<int>(target.size()) != map.codomain.dim)
    throw ShapeError("solve: target not in codomain");
  return solve(map.matrix, target);
}

Vec HomologyView::class_of(const Vec& z) const {
  Matrix span = boundaries.hcat(representatives);
  auto coords = express_in_columns(span, z);
  if (!coords) throw PreconditionError("class_of: vector is not a cycle of this homology");
  Vec cls(representatives.cols());
  for (int i = 0; i < representatives.cols(); ++i) cls[i] = (*coords)[boundaries.cols() + i];
  return cls;
}

bool HomologyView::is_boundary(const Vec& z) const {
  return express_in_columns(boundaries, z).has_value();
}

HomologyView homology_at(const LinearMap& d_in, const LinearMap& d_out) {
  if (!(d_in.codomain == d_out.domain))
    throw ShapeError("homology_at: codomain(d_in) != domain(d_out)");
  if (!(d_out.matrix * d_in.matrix).is_zero())
    throw NotAComplexError("homology_at: d_out o d_in != 0");
  HomologyView h;
  h.cycles = kernel_basis(d_out.matrix);
  h.boundaries = column_space_basis(d_in.matrix);
  // Greedy extension of the boundary basis to the cycle basis: a cycle column
  // is kept when it raises the rank.
  Matrix current = h.boundaries;
  std::vector<Vec> reps;
  int current_rank = rank(current);
  for (int c = 0; c < h.cycles.cols(); ++c) {
    Matrix candidate = current.hcat(Matrix::from_columns(h.cycles.rows(), {h.cycles.column(c)}));
    const int r = rank(candidate);
    if (r > current_rank) {
      reps.push_back(h.cycles.column(c));
      current = candidate;
      current_rank = r;
    }
  }
  h.representatives = Matrix::from_columns(d_out.domain.dim, reps);
  h.dim = static_cast<int>(reps.size());
  return h;
}

ColumnSolver::ColumnSolver(const Matrix& a) : rows_(a.rows()), cols_(a.cols()) {
  Matrix aug = a.hcat(Matrix::identity(rows_));
  Rref r = rref(aug);
  for (int i = 0; i < r.rank && r.pivot_cols[i] < cols_; ++i) {
    pivot_cols_.push_back(r.pivot_cols[i]);
  }
  rank_ = static_cast<int>(pivot_cols_.size());
  reduced_ = Matrix(rows_, cols_);
  transform_ = Matrix(rows_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) reduced_.at(i, j) = r.r.at(i, j);
    for (int j = 0; j < rows_; ++j) transform_.at(i, j) = r.r.at(i, cols_ + j);
  }
}

std::optional<Vec> ColumnSolver::solve(const Vec& rhs) const {
  if (static_cast<int>(rhs.size()) != rows_) throw ShapeError("ColumnSolver: rhs length mismatch");
  Vec c = transform_.apply(rhs);
  for (int i = rank_; i < rows_; ++i)
    if (c[i] != 0) return std::nullopt;
  Vec x = vec_zero(cols_);
  // Back substitution against the reduced rows (free coefficients zero).
  for (int i = rank_ - 1; i >= 0; --i) {
    Rational acc = c[i];
    for (int j = pivot_cols_[i] + 1; j < cols_; ++j)
      if (reduced_.at(i, j) != 0 && x[j] != 0) acc -= reduced_.at(i, j) * x[j];
    x[pivot_cols_[i]] = acc;
  }
  return x;
}

}  // namespace sdclab
