#include "sdclab/cosimplicial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace sdclab {

namespace {

Matrix vstack(const std::vector<Matrix>& blocks, int cols) {
  int rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix out(rows, cols);
  int r0 = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < cols; ++c) out.at(r0 + r, c) = b.at(r, c);
    r0 += b.rows();
  }
  return out;
}

}  // namespace

LinearMap CosimplicialSpace::alternating_sum(int level) const {
  Matrix m(levels[level + 1].dim, levels[level].dim);
  int sign = 1;
  for (int i = 0; i <= level + 1; ++i) {
    m = m + coface[level][i].matrix.scaled(Rational(sign));
    sign = -sign;
  }
  return LinearMap(levels[level], levels[level + 1], m);
}

std::string CosimplicialReport::summary() const {
  if (violations.empty()) return "all identities hold";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const auto& v : violations)
    out << " [" << v.identity << " level=" << v.level << " i=" << v.i << " j=" << v.j << "]";
  return out.str();
}

CosimplicialReport check_cosimplicial(const CosimplicialSpace& x) {
  CosimplicialReport rep;
  // d^j d^i = d^i d^{j-1} for i < j
  for (int n = 0; n + 2 <= x.cap; ++n)
    for (int i = 0; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 2; ++j) {
        const Matrix lhs = x.coface[n + 1][j].matrix * x.coface[n][i].matrix;
        const Matrix rhs = x.coface[n + 1][i].matrix * x.coface[n][j - 1].matrix;
        if (!(lhs == rhs)) rep.violations.push_back({"coface-coface", n, i, j});
      }
  // s^j s^i = s^i s^{j+1} for i <= j
  for (int n = 2; n <= x.cap; ++n)
    for (int i = 0; i <= n - 1; ++i)
      for (int j = i; j <= n - 2; ++j) {
        const Matrix lhs = x.codegen[n - 1][j].matrix * x.codegen[n][i].matrix;
        const Matrix rhs = x.codegen[n - 1][i].matrix * x.codegen[n][j + 1].matrix;
        if (!(lhs == rhs)) rep.violations.push_back({"codegen-codegen", n, i, j});
      }
  // s^j d^i mixed identity
  for (int n = 0; n + 1 <= x.cap; ++n)
    for (int i = 0; i <= n + 1; ++i)
      for (int j = 0; j <= n; ++j) {
        const Matrix lhs = x.codegen[n + 1][j].matrix * x.coface[n][i].matrix;
        Matrix rhs;
        if (i == j || i == j + 1) {
          rhs = Matrix::identity(x.levels[n].dim);
        } else if (i < j) {
          rhs = x.coface[n - 1][i].matrix * x.codegen[n][j - 1].matrix;
        } else {
          rhs = x.coface[n - 1][i - 1].matrix * x.codegen[n][j].matrix;
        }
        if (!(lhs == rhs)) rep.violations.push_back({"codegen-coface", n, i, j});
      }
  return rep;
}

SdcShape shape_of(const CosimplicialSpace& x) {
  SdcShape s;
  s.cap = x.cap;
  s.levels = x.levels;
  s.coface.resize(x.cap);
  s.codegen = x.codegen;
  for (int n = 0; n < x.cap; ++n)
    for (int i = 1; i <= n; ++i) s.coface[n].push_back(x.coface[n][i]);
  return s;
}

CosimplicialReport check_shape(const SdcShape& x) {
  CosimplicialReport rep;
  auto cf = [&](int n, int i) -> const Matrix& { return x.coface[n][i - 1].matrix; };
  for (int n = 1; n + 2 <= x.cap; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n + 1; ++j) {
        const Matrix lhs = cf(n + 1, j) * cf(n, i);
        const Matrix rhs = cf(n + 1, i) * cf(n, j - 1);
        if (!(lhs == rhs)) rep.violations.push_back({"coface-coface", n, i, j});
      }
  for (int n = 2; n <= x.cap; ++n)
    for (int i = 0; i <= n - 1; ++i)
      for (int j = i; j <= n - 2; ++j) {
        const Matrix lhs = x.codegen[n - 1][j].matrix * x.codegen[n][i].matrix;
        const Matrix rhs = x.codegen[n - 1][i].matrix * x.codegen[n][j + 1].matrix;
        if (!(lhs == rhs)) rep.violations.push_back({"codegen-codegen", n, i, j});
      }
  for (int n = 1; n + 1 <= x.cap; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const Matrix lhs = x.codegen[n + 1][j].matrix * cf(n, i);
        Matrix rhs;
        if (i == j || i == j + 1) {
          rhs = Matrix::identity(x.levels[n].dim);
        } else if (i < j) {
          if (i > n - 1) continue;  // rhs coface out of shape range
          rhs = cf(n - 1, i) * x.codegen[n][j - 1].matrix;
        } else {
          if (i - 1 > n - 1 || i - 1 < 1) continue;
          rhs = cf(n - 1, i - 1) * x.codegen[n][j].matrix;
        }
        if (!(lhs == rhs)) rep.violations.push_back({"codegen-coface", n, i, j});
      }
  return rep;
}

VectorSpace CochainComplex::space(int i) const {
  if (i < 0 || i > top()) return VectorSpace::zero();
  return spaces[i];
}

LinearMap CochainComplex::diff(int i) const {
  if (i >= 0 && i < static_cast<int>(d.size())) return d[i];
  return LinearMap::zero(space(i), space(i + 1));
}

void verify_complex(const CochainComplex& v) {
  for (int i = 0; i + 1 < static_cast<int>(v.d.size()); ++i)
    if (!(v.d[i + 1].matrix * v.d[i].matrix).is_zero())
      throw NotAComplexError("d o d != 0 at degree " + std::to_string(i));
}

HomologyView cohomology_view(const CochainComplex& v, int i) {
  if (i < 0 || i > v.top()) throw PreconditionError("cohomology degree out of range");
  return homology_at(v.diff(i - 1), v.diff(i));
}

int cohomology_dim(const CochainComplex& v, int i) { return cohomology_view(v, i).dim; }

Conormalization conormalize(const CosimplicialSpace& x) {
  auto rep = check_cosimplicial(x);
  if (!rep.pass())
    throw PreconditionError("conormalize: cosimplicial identities fail: " + rep.summary());
  Conormalization out;
  out.complex.spaces.resize(x.cap + 1);
  out.inclusion.resize(x.cap + 1);
  out.projection.resize(x.cap + 1);
  for (int n = 0; n <= x.cap; ++n) {
    Matrix incl;
    if (n == 0) {
      incl = Matrix::identity(x.levels[0].dim);
    } else {
      std::vector<Matrix> blocks;
      for (int i = 0; i < n; ++i) blocks.push_back(x.codegen[n][i].matrix);
      incl = kernel_basis(vstack(blocks, x.levels[n].dim));
    }
    out.inclusion[n] = incl;
    out.complex.spaces[n] = VectorSpace::with_prefix("N" + std::to_string(n) + "_", incl.cols());
    // Retraction along the span of the images of cofaces 1..n.
    std::vector<Vec> degenerate_cols;
    for (int i = 1; i <= n; ++i) {
      const Matrix& m = x.coface[n - 1][i].matrix;
      for (int c = 0; c < m.cols(); ++c) degenerate_cols.push_back(m.column(c));
    }
    Matrix degen = Matrix::from_columns(x.levels[n].dim, degenerate_cols);
    Matrix a = incl.hcat(degen);
    ColumnSolver solver(a);
    if (solver.rank() != x.levels[n].dim)
      throw Error("conormalize: level " + std::to_string(n) + " does not split");
    Matrix proj(incl.cols(), x.levels[n].dim);
    for (int c = 0; c < x.levels[n].dim; ++c) {
      Vec e = vec_zero(x.levels[n].dim);
      e[c] = 1;
      auto sol = solver.solve(e);
      if (!sol) throw Error("conormalize: retraction solve failed");
      for (int r = 0; r < incl.cols(); ++r) proj.at(r, c) = (*sol)[r];
    }
    out.projection[n] = proj;
  }
  for (int n = 0; n < x.cap; ++n) {
    const Matrix full = x.alternating_sum(n).matrix;
    const Matrix restricted = full * out.inclusion[n];
    const Matrix in_n = out.projection[n + 1] * restricted;
    // The alternating sum must keep normalised vectors normalised.
    if (!(out.inclusion[n + 1] * in_n == restricted))
      throw Error("conormalize: differential leaves the conormalised subspace");
    out.complex.d.push_back(
        LinearMap(out.complex.spaces[n], out.complex.spaces[n + 1], in_n));
  }
  verify_complex(out.complex);
  return out;
}

CobarNormalization cobar_normalize(const CosimplicialSpace& x) {
  auto rep = check_cosimplicial(x);
  if (!rep.pass())
    throw PreconditionError("cobar_normalize: cosimplicial identities fail: " + rep.summary());
  CobarNormalization out;
  out.complex.spaces.resize(x.cap + 1);
  out.projection.resize(x.cap + 1);
  out.section.resize(x.cap + 1);
  std::vector<Matrix> sub(x.cap + 1);
  for (int n = 0; n <= x.cap; ++n) {
    std::vector<Vec> cols;
    for (int i = 1; i <= n; ++i) {
      const Matrix& m = x.coface[n - 1][i].matrix;
      for (int c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
    }
    sub[n] = column_space_basis(Matrix::from_columns(x.levels[n].dim, cols));
    // Extend by standard basis vectors to pick quotient coordinates.
    std::vector<int> chosen;
    Matrix current = sub[n];
    int r = sub[n].cols();
    for (int j = 0; j < x.levels[n].dim && r < x.levels[n].dim; ++j) {
      Vec e = vec_zero(x.levels[n].dim);
      e[j] = 1;
      Matrix candidate = current.hcat(Matrix::from_columns(x.levels[n].dim, {e}));
      if (rank(candidate) > r) {
        chosen.push_back(j);
        current = candidate;
        ++r;
      }
    }
    const int q = static_cast<int>(chosen.size());
    out.complex.spaces[n] = VectorSpace::with_prefix("Nbar" + std::to_string(n) + "_", q);
    Matrix section(x.levels[n].dim, q);
    for (int c = 0; c < q; ++c) section.at(chosen[c], c) = 1;
    out.section[n] = section;
    ColumnSolver solver(sub[n].hcat(section));
    Matrix proj(q, x.levels[n].dim);
    for (int c = 0; c < x.levels[n].dim; ++c) {
      Vec e = vec_zero(x.levels[n].dim);
      e[c] = 1;
      auto sol = solver.solve(e);
      if (!sol) throw Error("cobar_normalize: quotient solve failed");
      for (int rr = 0; rr < q; ++rr) proj.at(rr, c) = (*sol)[sub[n].cols() + rr];
    }
    out.projection[n] = proj;
  }
  for (int n = 0; n < x.cap; ++n) {
    const Matrix full = x.alternating_sum(n).matrix;
    if (!(out.projection[n + 1] * (full * sub[n])).is_zero())
      throw Error("cobar_normalize: differential not defined on the quotient");
    out.complex.d.push_back(LinearMap(out.complex.spaces[n], out.complex.spaces[n + 1],
                                      out.projection[n + 1] * (full * out.section[n])));
  }
  verify_complex(out.complex);
  return out;
}

int cohomotopy(const CosimplicialSpace& x, int i) { return cohomotopy_view(x, i).dim; }

HomologyView cohomotopy_view(const CosimplicialSpace& x, int i) {
  if (i < 0 || i > x.cap - 1) throw PreconditionError("cohomotopy degree out of range");
  return cohomology_view(conormalize(x).complex, i);
}

const std::vector<ShufflePair>& shuffles(int m, int n) {
  static std::map<std::pair<int, int>, std::vector<ShufflePair>> cache;
  static std::mutex lock;
  std::scoped_lock guard(lock);
  auto key = std::make_pair(m, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<ShufflePair> result;
  const int total = m + n;
  std::vector<int> mu(m);
  // Lexicographic enumeration of m-subsets of {0..total-1}.
  for (int i = 0; i < m; ++i) mu[i] = i;
  while (true) {
    ShufflePair sp;
    sp.mu = mu;
    std::vector<bool> used(total, false);
    for (int v : mu) used[v] = true;
    for (int v = 0; v < total; ++v)
      if (!used[v]) sp.nu.push_back(v);
    long inversions = 0;
    for (int a : sp.mu)
      for (int b : sp.nu)
        if (a > b) ++inversions;
    sp.sign = (inversions % 2 == 0) ? 1 : -1;
    result.push_back(std::move(sp));
    if (m == 0) break;
    int i = m - 1;
    while (i >= 0 && mu[i] == total - m + i) --i;
    if (i < 0) break;
    ++mu[i];
    for (int j = i + 1; j < m; ++j) mu[j] = mu[j - 1] + 1;
  }
  auto [pos, inserted] = cache.emplace(key, std::move(result));
  (void)inserted;
  return pos->second;
}

LinearMap shuffle_contraction(const CosimplicialSpace& x, int p, int q) {
  const int n = p + q;
  if (n > x.cap) throw PreconditionError("shuffle_contraction: p+q exceeds cap");
  const VectorSpace dom = tensor_space(x.levels[n], x.levels[n]);
  const VectorSpace cod = tensor_space(x.levels[p], x.levels[q]);
  Matrix acc(cod.dim, dom.dim);
  for (const auto& sh : shuffles(p, q)) {
    // First factor: s^{nu_1} o ... o s^{nu_q}, rightmost applied first.
    Matrix first = Matrix::identity(x.levels[n].dim);
    int level = n;
    for (int k = q - 1; k >= 0; --k) {
      first = x.codegen[level][sh.nu[k]].matrix * first;
      --level;
    }
    Matrix second = Matrix::identity(x.levels[n].dim);
    level = n;
    for (int k = p - 1; k >= 0; --k) {
      second = x.codegen[level][sh.mu[k]].matrix * second;
      --level;
    }
    acc = acc + kron(first, second).scaled(Rational(sh.sign));
  }
  return LinearMap(dom, cod, acc);
}

namespace {

// A word basis element of the denormalisation: the injection is stored by
// its image list; normal form means image.front() == 0 once the index-0
// coface copy has been eliminated.
struct WordKey {
  int m;                   // source degree
  std::vector<int> image;  // image of [m] inside [n]
  int vec;                 // basis index inside V^m

  bool operator<(const WordKey& other) const {
    return std::tie(m, image, vec) < std::tie(other.m, other.image, other.vec);
  }
};

std::vector<int> compose_coface(const std::vector<int>& image, int i) {
  std::vector<int> out;
  out.reserve(image.size());
  for (int v : image) out.push_back(v >= i ? v + 1 : v);
  return out;
}

// Codegeneracy sigma_i: [n] -> [n-1] collapses i, i+1. Returns the composed
// image list, or nullopt when the composite fails to be injective.
std::optional<std::vector<int>> compose_codegen(const std::vector<int>& image, int i) {
  std::vector<int> out;
  out.reserve(image.size());
  bool hit_i = false, hit_i1 = false;
  for (int v : image) {
    if (v == i) hit_i = true;
    if (v == i + 1) hit_i1 = true;
    out.push_back(v > i ? v - 1 : v);
  }
  if (hit_i && hit_i1) return std::nullopt;
  return out;
}

}  // namespace

Denormalization denormalize(const CochainComplex& v, int cap) {
  verify_complex(v);
  Denormalization out;
  CosimplicialSpace& x = out.space;
  x.cap = cap;
  x.levels.resize(cap + 1);
  out.generator_inclusion.resize(cap + 1);
  out.generator_projection.resize(cap + 1);

  std::vector<std::vector<WordKey>> basis(cap + 1);
  std::vector<std::map<WordKey, int>> index(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    // Enumerate missing subsets K of {1..n}; the word applied to V^m has
    // |K| = n - m.
    for (int m = 0; m <= n; ++m) {
      if (v.space(m).dim == 0) continue;
      const int s = n - m;
      std::vector<int> subset(s);
      for (int i = 0; i < s; ++i) subset[i] = i + 1;
      while (true) {
        std::vector<int> image;
        std::vector<bool> missing(n + 1, false);
        for (int k : subset) missing[k] = true;
        for (int t = 0; t <= n; ++t)
          if (!missing[t]) image.push_back(t);
        for (int vecidx = 0; vecidx < v.space(m).dim; ++vecidx)
          basis[n].push_back(WordKey{m, image, vecidx});
        if (s == 0) break;
        int i = s - 1;
        while (i >= 0 && subset[i] == n - s + 1 + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < s; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
    std::sort(basis[n].begin(), basis[n].end());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < basis[n].size(); ++k) {
      const WordKey& w = basis[n][k];
      index[n][w] = static_cast<int>(k);
      std::string label;
      std::vector<int> miss;
      for (int t = 0; t <= n; ++t)
        if (std::find(w.image.begin(), w.image.end(), t) == w.image.end()) miss.push_back(t);
      for (auto it = miss.rbegin(); it != miss.rend(); ++it) label += "d" + std::to_string(*it) + ".";
      label += v.space(w.m).labels[w.vec];
      labels.push_back(label);
    }
    x.levels[n] = VectorSpace(static_cast<int>(basis[n].size()), labels);
  }

  // Expands a (possibly abnormal) injective word into normal basis elements.
  // Recursion depth is at most one: eliminating the index-0 coface produces
  // only normal words.
  auto expand = [&](int n, int m, const std::vector<int>& image, int vecidx, const Rational& coeff,
                    Vec& acc, auto&& self) -> void {
    if (image.empty() || image.front() == 0) {
      acc[index[n].at(WordKey{m, image, vecidx})] += coeff;
      return;
    }
    // image misses 0: factor through the index-0 coface and rewrite.
    std::vector<int> h;  // [m+1] -> [n], h(0)=0, h(k+1)=image(k)
    h.push_back(0);
    for (int t : image) h.push_back(t);
    const LinearMap dm = v.diff(m);
    if (v.space(m + 1).dim > 0) {
      for (int k = 0; k < v.space(m + 1).dim; ++k) {
        const Rational& c = dm.matrix.at(k, vecidx);
        if (c != 0) self(n, m + 1, h, k, coeff * c, acc, self);
      }
    }
    int sign = 1;  // (-1)^{i+1} for i = 1..m+1
    for (int i = 1; i <= m + 1; ++i) {
      std::vector<int> img;
      for (int t = 0; t <= m; ++t) img.push_back(t >= i ? t + 1 : t);  // delta_i on [m]
      std::vector<int> composed;
      for (int t : img) composed.push_back(h[t]);
      self(n, m, composed, vecidx, coeff * Rational(sign), acc, self);
      sign = -sign;
    }
  };

  x.coface.resize(cap);
  x.codegen.resize(cap + 1);
  for (int n = 0; n < cap; ++n) {
    x.coface[n].reserve(n + 2);
    for (int i = 0; i <= n + 1; ++i) {
      Matrix mat(x.levels[n + 1].dim, x.levels[n].dim);
      for (std::size_t col = 0; col < basis[n].size(); ++col) {
        const WordKey& w = basis[n][col];
        Vec acc = vec_zero(x.levels[n + 1].dim);
        expand(n + 1, w.m, compose_coface(w.image, i), w.vec, Rational(1), acc, expand);
        for (int r = 0; r < x.levels[n + 1].dim; ++r) mat.at(r, static_cast<int>(col)) = acc[r];
      }
      x.coface[n].push_back(LinearMap(x.levels[n], x.levels[n + 1], mat));
    }
  }
  for (int n = 1; n <= cap; ++n) {
    x.codegen[n].reserve(n);
    for (int i = 0; i <= n - 1; ++i) {
      Matrix mat(x.levels[n - 1].dim, x.levels[n].dim);
      for (std::size_t col = 0; col < basis[n].size(); ++col) {
        const WordKey& w = basis[n][col];
        auto composed = compose_codegen(w.image, i);
        if (!composed) continue;  // degeneracy hits the generator: zero
        Vec acc = vec_zero(x.levels[n - 1].dim);
        expand(n - 1, w.m, *composed, w.vec, Rational(1), acc, expand);
        for (int r = 0; r < x.levels[n - 1].dim; ++r) mat.at(r, static_cast<int>(col)) = acc[r];
      }
      x.codegen[n].push_back(LinearMap(x.levels[n], x.levels[n - 1], mat));
    }
  }

  for (int n = 0; n <= cap; ++n) {
    const int vd = v.space(n).dim;
    Matrix incl(x.levels[n].dim, vd);
    Matrix proj(vd, x.levels[n].dim);
    if (vd > 0) {
      std::vector<int> identity_word(n + 1);
      for (int t = 0; t <= n; ++t) identity_word[t] = t;
      for (int k = 0; k < vd; ++k) {
        const int idx = index[n].at(WordKey{n, identity_word, k});
        incl.at(idx, k) = 1;
        proj.at(k, idx) = 1;
      }
    }
    out.generator_inclusion[n] = incl;
    out.generator_projection[n] = proj;
  }
  return out;
}

SimplicialSpace transpose(const CosimplicialSpace& x) {
  SimplicialSpace s;
  s.cap = x.cap;
  s.levels.resize(x.cap + 1);
  for (int n = 0; n <= x.cap; ++n)
    s.levels[n] = VectorSpace::with_prefix("dual" + std::to_string(n) + "_", x.levels[n].dim);
  s.face.resize(x.cap + 1);
  s.degen.resize(x.cap + 1);
  for (int n = 1; n <= x.cap; ++n)
    for (int i = 0; i <= n; ++i)
      s.face[n].push_back(LinearMap(s.levels[n], s.levels[n - 1], x.coface[n - 1][i].matrix.transpose()));
  for (int n = 0; n < x.cap; ++n)
    for (int i = 0; i <= n; ++i)
      s.degen[n].push_back(LinearMap(s.levels[n], s.levels[n + 1], x.codegen[n + 1][i].matrix.transpose()));
  return s;
}

CosimplicialSpace transpose(const SimplicialSpace& s) {
  CosimplicialSpace x;
  x.cap = s.cap;
  x.levels.resize(s.cap + 1);
  for (int n = 0; n <= s.cap; ++n)
    x.levels[n] = VectorSpace::with_prefix("co" + std::to_string(n) + "_", s.levels[n].dim);
  x.coface.resize(s.cap);
  x.codegen.resize(s.cap + 1);
  for (int n = 0; n < s.cap; ++n)
    for (int i = 0; i <= n + 1; ++i)
      x.coface[n].push_back(LinearMap(x.levels[n], x.levels[n + 1], s.face[n + 1][i].matrix.transpose()));
  for (int n = 1; n <= s.cap; ++n)
    for (int i = 0; i <= n - 1; ++i)
      x.codegen[n].push_back(LinearMap(x.levels[n], x.levels[n - 1], s.degen[n - 1][i].matrix.transpose()));
  return x;
}

CosimplicialReport check_simplicial(const SimplicialSpace& s) { return check_cosimplicial(transpose(s)); }

int simplicial_homotopy(const SimplicialSpace& s, int i) {
  if (i < 0 || i > s.cap - 1) throw PreconditionError("simplicial_homotopy degree out of range");
  // Moore complex: N_n = intersection of ker(face_i), i >= 1; d = face_0.
  auto moore = [&](int n) -> Matrix {
    if (n == 0) return Matrix::identity(s.levels[0].dim);
    std::vector<Matrix> blocks;
    for (int j = 1; j <= n; ++j) blocks.push_back(s.face[n][j].matrix);
    return kernel_basis(vstack(blocks, s.levels[n].dim));
  };
  const Matrix n_i = moore(i), n_i1 = moore(i + 1);
  const Matrix d_out_full = (i == 0) ? Matrix(0, s.levels[0].dim) : s.face[i][0].matrix;
  // d maps N_{i+1} -> N_i; express in the Moore bases.
  const Matrix into = s.face[i + 1][0].matrix * n_i1;
  ColumnSolver solver(n_i);
  Matrix d_in(n_i.cols(), n_i1.cols());
  for (int c = 0; c < n_i1.cols(); ++c) {
    auto sol = solver.solve(into.column(c));
    if (!sol) throw Error("simplicial_homotopy: Moore differential escapes");
    for (int r = 0; r < n_i.cols(); ++r) d_in.at(r, c) = (*sol)[r];
  }
  Matrix d_out;
  if (i == 0) {
    d_out = Matrix(0, n_i.cols());
  } else {
    const Matrix nm1 = moore(i - 1);
    ColumnSolver s2(nm1);
    const Matrix into2 = d_out_full * n_i;
    d_out = Matrix(nm1.cols(), n_i.cols());
    for (int c = 0; c < n_i.cols(); ++c) {
      auto sol = s2.solve(into2.column(c));
      if (!sol) throw Error("simplicial_homotopy: Moore differential escapes");
      for (int r = 0; r < nm1.cols(); ++r) d_out.at(r, c) = (*sol)[r];
    }
  }
  VectorSpace mid = VectorSpace::with_prefix("m", n_i.cols());
  VectorSpace lo = VectorSpace::with_prefix("l", d_out.rows());
  VectorSpace hi = VectorSpace::with_prefix("h", n_i1.cols());
  return homology_at(LinearMap(hi, mid, d_in), LinearMap(mid, lo, d_out)).dim;
}

}  // namespace sdclab
