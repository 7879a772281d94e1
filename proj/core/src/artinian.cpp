#include "sdclab/artinian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace sdclab {

namespace {

std::string monomial_label(const std::vector<std::string>& vars, const std::vector<int>& e) {
  std::string out;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

int total_degree(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool divisible(const std::vector<int>& m, const std::vector<int>& gen) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] < gen[i]) return false;
  return true;
}

}  // namespace

Vec CoefficientRing::mul(const Vec& a, const Vec& b) const {
  if (static_cast<int>(a.size()) != dim() || static_cast<int>(b.size()) != dim())
    throw ShapeError("ring element coordinate length mismatch");
  Vec r = vec_zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      const Vec& p = basis_product(i, j);
      const Rational c = a[i] * b[j];
      for (int k = 0; k < dim(); ++k)
        if (p[k] != 0) r[k] += c * p[k];
    }
  }
  return r;
}

int CoefficientRing::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis[i] == label) return i;
  return -1;
}

bool CoefficientRing::operator==(const CoefficientRing& other) const {
  return basis == other.basis && mult == other.mult && order == other.order &&
         order_of == other.order_of;
}

RingPtr rationals() {
  static RingPtr q = [] {
    auto r = std::make_shared<CoefficientRing>();
    r->order = 1;
    return RingPtr(r);
  }();
  return q;
}

std::vector<std::string> ring_violations(const CoefficientRing& ring) {
  std::vector<std::string> bad;
  const int n = ring.dim();
  auto note = [&](const std::string& s) { bad.push_back(s); };
  if (static_cast<int>(ring.mult.size()) != n * n) {
    note("mult table size mismatch");
    return bad;
  }
  for (int i = 0; i < n; ++i) {
    if (ring.order_of[i] < 1 || ring.order_of[i] >= ring.order)
      note("basis " + ring.basis[i] + " has order outside [1, N)");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec& ij = ring.basis_product(i, j);
      const Vec& ji = ring.basis_product(j, i);
      if (ij != ji) note("commutativity fails at (" + ring.basis[i] + "," + ring.basis[j] + ")");
      for (int k = 0; k < n; ++k)
        if (ij[k] != 0 && ring.order_of[k] < ring.order_of[i] + ring.order_of[j])
          note("order drops in product (" + ring.basis[i] + "," + ring.basis[j] + ")");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec left = ring.mul(ring.basis_product(i, j), [&] {
          Vec e = vec_zero(n);
          e[k] = 1;
          return e;
        }());
        const Vec right = ring.mul(
            [&] {
              Vec e = vec_zero(n);
              e[i] = 1;
              return e;
            }(),
            ring.basis_product(j, k));
        if (left != right)
          note("associativity fails at (" + ring.basis[i] + "," + ring.basis[j] + "," +
               ring.basis[k] + ")");
      }
  return bad;
}

RingPtr truncated_algebra(const std::vector<std::string>& vars,
                          const std::vector<std::vector<int>>& ideal) {
  const int nv = static_cast<int>(vars.size());
  for (const auto& g : ideal)
    if (static_cast<int>(g.size()) != nv) throw ShapeError("ideal exponent width mismatch");
  // Finiteness: each variable needs a pure power among the generators.
  std::vector<int> bound(nv, -1);
  for (const auto& g : ideal) {
    int nz = -1;
    bool pure = true;
    for (int v = 0; v < nv; ++v)
      if (g[v] > 0) {
        if (nz >= 0) pure = false;
        nz = v;
      }
    if (pure && nz >= 0 && (bound[nz] < 0 || g[nz] < bound[nz])) bound[nz] = g[nz];
  }
  for (int v = 0; v < nv; ++v)
    if (bound[v] < 0)
      throw NonArtinianError("no pure power of " + vars[v] + " in the ideal; quotient is infinite");

  std::vector<std::vector<int>> monomials;
  std::vector<int> current(nv, 0);
  // All exponent vectors below the pure-power box, filtered by the ideal.
  auto in_ideal = [&](const std::vector<int>& m) {
    for (const auto& g : ideal)
      if (divisible(m, g)) return true;
    return false;
  };
  while (true) {
    if (total_degree(current) > 0 && !in_ideal(current)) monomials.push_back(current);
    int v = nv - 1;
    while (v >= 0) {
      if (++current[v] < bound[v]) break;
      current[v] = 0;
      --v;
    }
    if (v < 0) break;
  }
  std::sort(monomials.begin(), monomials.end(), [&](const auto& a, const auto& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  });

  auto ring = std::make_shared<CoefficientRing>();
  ring->generators = vars;
  ring->exponents = monomials;
  for (const auto& m : monomials) {
    ring->basis.push_back(monomial_label(vars, m));
    ring->order_of.push_back(total_degree(m));
  }
  const int n = ring->dim();
  int max_order = 0;
  for (int o : ring->order_of) max_order = std::max(max_order, o);
  ring->order = max_order + 1;
  ring->mult.assign(static_cast<std::size_t>(n) * n, vec_zero(n));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[monomials[i]] = i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> prod(nv);
      for (int v = 0; v < nv; ++v) prod[v] = monomials[i][v] + monomials[j][v];
      if (!in_ideal(prod)) {
        auto it = index.find(prod);
        if (it == index.end()) throw Error("internal: product monomial missing from basis");
        ring->mult[static_cast<std::size_t>(i) * n + j][it->second] = 1;
      }
    }
  auto bad = ring_violations(*ring);
  if (!bad.empty()) throw Error("truncated_algebra produced an invalid ring: " + bad.front());
  return ring;
}

RingElement RingElement::zero(RingPtr r) { return RingElement{r, Rational(0), vec_zero(r->dim())}; }
RingElement RingElement::one(RingPtr r) { return RingElement{r, Rational(1), vec_zero(r->dim())}; }

RingElement RingElement::monomial(RingPtr r, int index) {
  RingElement e = zero(r);
  e.ideal[index] = 1;
  return e;
}

RingElement RingElement::operator+(const RingElement& other) const {
  if (!(*ring == *other.ring)) throw IncompatibilityError("ring element sum over distinct rings");
  return RingElement{ring, unit + other.unit, vec_add(ideal, other.ideal)};
}

RingElement RingElement::operator*(const RingElement& other) const {
  if (!(*ring == *other.ring)) throw IncompatibilityError("ring element product over distinct rings");
  Vec part = ring->mul(ideal, other.ideal);
  part = vec_add(part, vec_scale(unit, other.ideal));
  part = vec_add(part, vec_scale(other.unit, ideal));
  return RingElement{ring, unit * other.unit, part};
}

bool RingElement::is_zero() const { return unit == 0 && vec_is_zero(ideal); }

Vec RingMorphism::apply(const Vec& source_coords) const { return images.apply(source_coords); }

RingElement RingMorphism::apply(const RingElement& e) const {
  if (!(*e.ring == *source)) throw IncompatibilityError("morphism applied to foreign element");
  return RingElement{target, e.unit, images.apply(e.ideal)};
}

bool RingMorphism::is_surjective() const { return rank(images) == target->dim(); }

std::vector<std::string> morphism_violations(const RingMorphism& f) {
  std::vector<std::string> bad;
  const int n = f.source->dim();
  if (f.images.rows() != f.target->dim() || f.images.cols() != n) {
    bad.push_back("image matrix shape mismatch");
    return bad;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec lhs = f.apply(f.source->basis_product(i, j));
      const Vec rhs = f.target->mul(f.images.column(i), f.images.column(j));
      if (lhs != rhs)
        bad.push_back("not multiplicative at (" + f.source->basis[i] + "," + f.source->basis[j] + ")");
    }
  for (int j = 0; j < n; ++j) {
    const Vec img = f.images.column(j);
    for (int k = 0; k < f.target->dim(); ++k)
      if (img[k] != 0 && f.target->order_of[k] < f.source->order_of[j]) {
        bad.push_back("order decreases at " + f.source->basis[j]);
        break;
      }
  }
  return bad;
}

RingMorphism identity_morphism(RingPtr ring) {
  return RingMorphism{ring, ring, Matrix::identity(ring->dim())};
}

RingMorphism residue_morphism(RingPtr ring) {
  return RingMorphism{ring, rationals(), Matrix(0, ring->dim())};
}

RingMorphism label_projection(RingPtr source, RingPtr target) {
  Matrix images(target->dim(), source->dim());
  for (int t = 0; t < target->dim(); ++t) {
    const int s = source->index_of(target->basis[t]);
    if (s < 0)
      throw IncompatibilityError("label_projection: target monomial " + target->basis[t] +
                                 " absent from source");
    images.at(t, s) = 1;
  }
  return RingMorphism{source, target, images};
}

RingMorphism compose(const RingMorphism& second, const RingMorphism& first) {
  if (!(*first.target == *second.source)) throw IncompatibilityError("morphism composition mismatch");
  return RingMorphism{first.source, second.target, second.images * first.images};
}

std::vector<std::string> step_violations(const SmallExtensionStep& step) {
  std::vector<std::string> bad = morphism_violations(step.projection);
  if (!step.projection.is_surjective()) bad.push_back("projection not surjective");
  Matrix k = kernel_basis(step.projection.images);
  if (k.cols() != 1) {
    bad.push_back("kernel is not one-dimensional");
  } else {
    Vec v = k.column(0);
    for (int i = 0; i < step.total->dim(); ++i)
      if (v[i] != 0 && i != step.kernel_index) bad.push_back("kernel not spanned by declared generator");
  }
  const int t = step.kernel_index;
  for (int i = 0; i < step.total->dim(); ++i)
    if (!vec_is_zero(step.total->basis_product(i, t)))
      bad.push_back("m_total * t != 0 at " + step.total->basis[i]);
  return bad;
}

namespace {

RingPtr drop_basis_element(const CoefficientRing& ring, int victim) {
  auto out = std::make_shared<CoefficientRing>();
  out->generators = ring.generators;
  std::vector<int> keep;
  for (int i = 0; i < ring.dim(); ++i)
    if (i != victim) keep.push_back(i);
  for (int i : keep) {
    out->basis.push_back(ring.basis[i]);
    if (!ring.exponents.empty()) out->exponents.push_back(ring.exponents[i]);
    out->order_of.push_back(ring.order_of[i]);
  }
  const int n = static_cast<int>(keep.size());
  out->mult.assign(static_cast<std::size_t>(n) * n, vec_zero(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec& p = ring.basis_product(keep[a], keep[b]);
      for (int c = 0; c < n; ++c) out->mult[static_cast<std::size_t>(a) * n + b][c] = p[keep[c]];
    }
  int max_order = 0;
  for (int o : out->order_of) max_order = std::max(max_order, o);
  out->order = max_order + 1;
  return out;
}

}  // namespace

std::vector<SmallExtensionStep> extension_tower(RingPtr ring) {
  std::vector<SmallExtensionStep> steps;
  RingPtr current = ring;
  while (current->dim() > 0) {
    // Strip the deepest basis element; ties resolved by label.
    int victim = 0;
    for (int i = 1; i < current->dim(); ++i) {
      if (current->order_of[i] > current->order_of[victim] ||
          (current->order_of[i] == current->order_of[victim] &&
           current->basis[i] < current->basis[victim]))
        victim = i;
    }
    RingPtr next = drop_basis_element(*current, victim);
    Matrix images(next->dim(), current->dim());
    int row = 0;
    for (int i = 0; i < current->dim(); ++i) {
      if (i == victim) continue;
      images.at(row, i) = 1;
      ++row;
    }
    SmallExtensionStep step{current, next, RingMorphism{current, next, images}, victim};
    auto bad = step_violations(step);
    if (!bad.empty()) throw Error("extension_tower produced an invalid step: " + bad.front());
    steps.push_back(step);
    current = next;
  }
  return steps;
}

FiberProductResult fiber_product(const RingMorphism& p, const RingMorphism& q) {
  if (!(*p.target == *q.target)) throw IncompatibilityError("fiber product targets differ");
  if (!p.is_surjective()) throw PreconditionError("fiber_product: p must be surjective");
  const RingPtr B = p.source, C = q.source;
  const int nb = B->dim(), nc = C->dim();
  // m of the fiber product = ker( (p,-q) : m_B + m_C -> m_A ).
  Matrix match(p.target->dim(), nb + nc);
  for (int j = 0; j < nb; ++j) {
    const Vec col = p.images.column(j);
    for (int r = 0; r < p.target->dim(); ++r) match.at(r, j) = col[r];
  }
  for (int j = 0; j < nc; ++j) {
    const Vec col = q.images.column(j);
    for (int r = 0; r < p.target->dim(); ++r) match.at(r, nb + j) = -col[r];
  }
  Matrix ker = kernel_basis(match);

  auto mul_pair = [&](const Vec& x, const Vec& y) {
    Vec bx(x.begin(), x.begin() + nb), cx(x.begin() + nb, x.end());
    Vec by(y.begin(), y.begin() + nb), cy(y.begin() + nb, y.end());
    Vec rb = B->mul(bx, by);
    Vec rc = C->mul(cx, cy);
    Vec r(nb + nc);
    std::copy(rb.begin(), rb.end(), r.begin());
    std::copy(rc.begin(), rc.end(), r.begin() + nb);
    return r;
  };

  // m-adic filtration inside the pair space; used to pick a basis adapted to
  // the order grading so structure constants respect orders.
  std::vector<Matrix> filtration{ker};
  while (filtration.back().cols() > 0) {
    const Matrix& prev = filtration.back();
    std::vector<Vec> products;
    for (int i = 0; i < ker.cols(); ++i)
      for (int j = 0; j < prev.cols(); ++j) products.push_back(mul_pair(ker.column(i), prev.column(j)));
    Matrix span = Matrix::from_columns(nb + nc, products);
    filtration.push_back(column_space_basis(span));
  }
  const int nilpotency = static_cast<int>(filtration.size());  // first empty level index + ... m^N = 0

  // Basis adapted to the filtration: extend upward from the deepest level.
  std::vector<Vec> basis_vecs;
  std::vector<int> orders;
  Matrix current(nb + nc, 0);
  int current_rank = 0;
  for (int level = nilpotency - 1; level >= 1; --level) {
    const Matrix& f = filtration[static_cast<std::size_t>(level) - 1];
    for (int c = 0; c < f.cols(); ++c) {
      Matrix candidate = current.hcat(Matrix::from_columns(nb + nc, {f.column(c)}));
      if (rank(candidate) > current_rank) {
        basis_vecs.push_back(f.column(c));
        orders.push_back(level);
        current = candidate;
        ++current_rank;
      }
    }
  }

  auto ring = std::make_shared<CoefficientRing>();
  const int n = static_cast<int>(basis_vecs.size());
  for (int i = 0; i < n; ++i) ring->basis.push_back("f" + std::to_string(i + 1));
  ring->order_of = orders;
  ring->order = nilpotency;
  ring->mult.assign(static_cast<std::size_t>(n) * n, vec_zero(n));
  ColumnSolver solver(current);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto coords = solver.solve(mul_pair(basis_vecs[i], basis_vecs[j]));
      if (!coords) throw Error("fiber product multiplication left the pair subalgebra");
      ring->mult[static_cast<std::size_t>(i) * n + j] = *coords;
    }
  auto bad = ring_violations(*ring);
  if (!bad.empty()) throw Error("fiber_product produced an invalid ring: " + bad.front());

  Matrix left(nb, n), right(nc, n);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < nb; ++r) left.at(r, j) = basis_vecs[j][r];
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < nc; ++r) right.at(r, j) = basis_vecs[j][nb + r];
  return FiberProductResult{ring, RingMorphism{ring, B, left}, RingMorphism{ring, C, right}};
}

TensorElement TensorElement::zero(VectorSpace space, RingPtr ring) {
  TensorElement t{std::move(space), std::move(ring), {}};
  t.coords = vec_zero(static_cast<std::size_t>(t.space.dim) * t.ring->dim());
  return t;
}

Rational& TensorElement::at(int basis_index, int monomial_index) {
  return coords[static_cast<std::size_t>(basis_index) * ring->dim() + monomial_index];
}

const Rational& TensorElement::at(int basis_index, int monomial_index) const {
  return coords[static_cast<std::size_t>(basis_index) * ring->dim() + monomial_index];
}

bool TensorElement::is_zero() const { return vec_is_zero(coords); }

TensorElement TensorElement::operator+(const TensorElement& other) const {
  require_same_ring(*this, other);
  if (!(space == other.space)) throw IncompatibilityError("tensor sum over distinct spaces");
  TensorElement r = *this;
  r.coords = vec_add(coords, other.coords);
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& other) const {
  require_same_ring(*this, other);
  if (!(space == other.space)) throw IncompatibilityError("tensor difference over distinct spaces");
  TensorElement r = *this;
  r.coords = vec_sub(coords, other.coords);
  return r;
}

TensorElement TensorElement::scaled(const Rational& c) const {
  TensorElement r = *this;
  r.coords = vec_scale(c, coords);
  return r;
}

Vec TensorElement::ring_coords(int basis_index) const {
  Vec v(ring->dim());
  for (int m = 0; m < ring->dim(); ++m) v[m] = at(basis_index, m);
  return v;
}

Vec TensorElement::space_coords(int monomial_index) const {
  Vec v(space.dim);
  for (int i = 0; i < space.dim; ++i) v[i] = at(i, monomial_index);
  return v;
}

void require_same_ring(const TensorElement& a, const TensorElement& b) {
  if (a.ring != b.ring && !(*a.ring == *b.ring))
    throw IncompatibilityError("tensor elements over distinct rings");
}

TensorElement apply(const LinearMap& map, const TensorElement& x) {
  if (!(map.domain == x.space)) throw ShapeError("apply: tensor element not in map domain");
  TensorElement r = TensorElement::zero(map.codomain, x.ring);
  const int d = x.ring->dim();
  for (int m = 0; m < d; ++m) {
    const Vec img = map.apply(x.space_coords(m));
    for (int i = 0; i < map.codomain.dim; ++i) r.at(i, m) = img[i];
  }
  return r;
}

TensorElement reduce(const TensorElement& x, const RingMorphism& f) {
  if (!(*x.ring == *f.source)) throw IncompatibilityError("reduce: element not over morphism source");
  TensorElement r = TensorElement::zero(x.space, f.target);
  for (int i = 0; i < x.space.dim; ++i) {
    const Vec img = f.apply(x.ring_coords(i));
    for (int m = 0; m < f.target->dim(); ++m) r.at(i, m) = img[m];
  }
  return r;
}

TensorElement multiply(const TensorElement& x, const RingElement& c) {
  if (!(*x.ring == *c.ring)) throw IncompatibilityError("multiply: ring mismatch");
  TensorElement r = TensorElement::zero(x.space, x.ring);
  for (int i = 0; i < x.space.dim; ++i) {
    Vec v = x.ring_coords(i);
    Vec scaled = vec_scale(c.unit, v);
    Vec shifted = x.ring->mul(v, c.ideal);
    for (int m = 0; m < x.ring->dim(); ++m) r.at(i, m) = scaled[m] + shifted[m];
  }
  return r;
}

TensorElement extend_by_zero(const TensorElement& x, RingPtr bigger) {
  TensorElement r = TensorElement::zero(x.space, bigger);
  for (int m = 0; m < x.ring->dim(); ++m) {
    const int target = bigger->index_of(x.ring->basis[m]);
    if (target < 0)
      throw IncompatibilityError("extend_by_zero: monomial " + x.ring->basis[m] + " missing");
    for (int i = 0; i < x.space.dim; ++i) r.at(i, target) = x.at(i, m);
  }
  return r;
}

bool supported_only_on(const TensorElement& x, int monomial_index) {
  for (int i = 0; i < x.space.dim; ++i)
    for (int m = 0; m < x.ring->dim(); ++m)
      if (m != monomial_index && x.at(i, m) != 0) return false;
  return true;
}

}  // namespace sdclab
