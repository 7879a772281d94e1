#include "sdclab/sdc.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace sdclab {

std::uint64_t RationalSampler::next_raw() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational RationalSampler::next() {
  const long num = static_cast<long>(next_raw() % 7) - 3;
  const long den = 1 + static_cast<long>(next_raw() % 2);
  return rat(num, den);
}

namespace {

using Word = std::vector<int>;
using FreeSeries = std::map<Word, Rational>;

FreeSeries series_mul(const FreeSeries& a, const FreeSeries& b, int cap) {
  FreeSeries out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > cap) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

FreeSeries exp_letter(int letter, int cap) {
  FreeSeries out;
  Rational factorial(1);
  Word w;
  out[w] = 1;
  for (int k = 1; k <= cap; ++k) {
    factorial *= k;
    w.push_back(letter);
    out[w] = 1 / factorial;
  }
  return out;
}

}  // namespace

const std::vector<BchTerm>& bch_expansion(int weight_cap) {
  static std::map<int, std::vector<BchTerm>> cache;
  static std::mutex lock;
  std::scoped_lock guard(lock);
  auto it = cache.find(weight_cap);
  if (it != cache.end()) return it->second;

  FreeSeries product = series_mul(exp_letter(0, weight_cap), exp_letter(1, weight_cap), weight_cap);
  product.erase(Word{});  // z = exp(x)exp(y) - 1
  FreeSeries log_series;
  FreeSeries power{{Word{}, Rational(1)}};
  int sign = 1;
  for (int k = 1; k <= weight_cap; ++k) {
    power = series_mul(power, product, weight_cap);
    for (const auto& [w, c] : power) log_series[w] += Rational(sign) * c / k;
    sign = -sign;
  }
  std::vector<BchTerm> terms;
  for (const auto& [w, c] : log_series)
    if (c != 0 && !w.empty()) terms.push_back(BchTerm{w, c});
  auto [pos, inserted] = cache.emplace(weight_cap, std::move(terms));
  (void)inserted;
  return pos->second;
}

std::vector<std::string> lie_violations(const LieAlgebra& l) {
  std::vector<std::string> bad;
  const int n = l.space.dim;
  if (static_cast<int>(l.bracket.size()) != n * n) {
    bad.push_back("bracket table size mismatch");
    return bad;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!vec_is_zero(vec_add(l.basis_bracket(a, b), l.basis_bracket(b, a))))
        bad.push_back("antisymmetry fails at (" + l.space.labels[a] + "," + l.space.labels[b] + ")");
  auto bracket_vec = [&](const Vec& x, const Vec& y) {
    Vec r = vec_zero(n);
    for (int a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      for (int b = 0; b < n; ++b) {
        if (y[b] == 0) continue;
        const Vec& c = l.basis_bracket(a, b);
        for (int k = 0; k < n; ++k)
          if (c[k] != 0) r[k] += x[a] * y[b] * c[k];
      }
    }
    return r;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Vec ea = vec_zero(n), eb = vec_zero(n), ec = vec_zero(n);
        ea[a] = 1;
        eb[b] = 1;
        ec[c] = 1;
        Vec sum = bracket_vec(ea, l.basis_bracket(b, c));
        sum = vec_add(sum, bracket_vec(eb, l.basis_bracket(c, a)));
        sum = vec_add(sum, bracket_vec(ec, l.basis_bracket(a, b)));
        if (!vec_is_zero(sum))
          bad.push_back("jacobi fails at (" + l.space.labels[a] + "," + l.space.labels[b] + "," +
                        l.space.labels[c] + ")");
      }
  return bad;
}

TensorElement lie_bracket_tensor(const LieAlgebra& l, const TensorElement& a,
                                 const TensorElement& b) {
  require_same_ring(a, b);
  TensorElement r = TensorElement::zero(l.space, a.ring);
  const auto& ring = *a.ring;
  for (int x = 0; x < l.space.dim; ++x)
    for (int y = 0; y < l.space.dim; ++y) {
      const Vec& c = l.basis_bracket(x, y);
      if (vec_is_zero(c)) continue;
      const Vec prod = ring.mul(a.ring_coords(x), b.ring_coords(y));
      if (vec_is_zero(prod)) continue;
      for (int k = 0; k < l.space.dim; ++k) {
        if (c[k] == 0) continue;
        for (int m = 0; m < ring.dim(); ++m)
          if (prod[m] != 0) r.at(k, m) += c[k] * prod[m];
      }
    }
  return r;
}

TensorElement bch(const LieAlgebra& l, const TensorElement& a, const TensorElement& b) {
  require_same_ring(a, b);
  if (!(a.space == l.space) || !(b.space == l.space))
    throw ShapeError("bch: elements not in the Lie algebra's space");
  const int cap = a.ring->order - 1;
  if (cap < 1) return a + b;
  TensorElement acc = TensorElement::zero(l.space, a.ring);
  for (const auto& term : bch_expansion(cap)) {
    // Dynkin right-nested evaluation: the associative word w contributes
    // coeff/|w| times [w_0, [w_1, [... [w_{k-1}, w_k]]]].
    const auto& w = term.word;
    TensorElement val = (w.back() == 0) ? a : b;
    for (int k = static_cast<int>(w.size()) - 2; k >= 0; --k)
      val = lie_bracket_tensor(l, (w[k] == 0) ? a : b, val);
    if (!val.is_zero()) acc = acc + val.scaled(term.coeff / Rational(static_cast<long>(w.size())));
  }
  return acc;
}

bool same_element(const GroupElement& a, const GroupElement& b) {
  if (a.level != b.level) return false;
  if (!(*a.ring() == *b.ring())) return false;
  return (a.coords - b.coords).is_zero();
}

GroupElement SdcLike::base_element(int level, RingPtr ring) const {
  return GroupElement{level, TensorElement::zero(coord_space(level), std::move(ring))};
}

GroupElement SdcLike::element(int level, TensorElement coords) const {
  if (!(coords.space == coord_space(level)))
    throw ShapeError("element coordinates do not match the level's coordinate space");
  return GroupElement{level, std::move(coords)};
}

GroupElement SdcLike::coface(const GroupElement& e, int i) const {
  const auto& tc = tangent_complex();
  if (e.level >= tc.cap) throw PreconditionError("coface exceeds the level cap");
  return GroupElement{e.level + 1, apply(tc.coface[e.level][i], e.coords)};
}

GroupElement SdcLike::codegeneracy(const GroupElement& e, int i) const {
  const auto& tc = tangent_complex();
  return GroupElement{e.level - 1, apply(tc.codegen[e.level][i], e.coords)};
}

TensorElement mc_defect(const SdcLike& e, const GroupElement& omega) {
  if (omega.level != 1) throw ShapeError("mc_defect: element must live at level 1");
  GroupElement sq = e.star(omega, omega);
  GroupElement d1 = e.coface(omega, 1);
  TensorElement defect = e.difference(sq, d1);
  if (defect.is_zero() && !e.codegeneracy(omega, 0).is_base())
    throw Error("Maurer-Cartan point with sigma^0(omega) != 1");
  return defect;
}

GroupElement adjoint(const SdcLike& e, const GroupElement& g, const GroupElement& omega) {
  if (g.level != 0) throw ShapeError("adjoint: g must live at level 0");
  if (!mc_defect(e, omega).is_zero())
    throw PreconditionError("adjoint: omega is not Maurer-Cartan");
  GroupElement result = e.star(e.star(g, omega), e.inverse0(g));
  if (!mc_defect(e, result).is_zero()) throw Error("adjoint broke the Maurer-Cartan condition");
  return result;
}

int sdc_cohomology(const SdcLike& e, int i) { return cohomotopy(e.tangent_complex(), i); }

HomologyView sdc_cohomology_full_view(const SdcLike& e, int i) {
  const auto& tc = e.tangent_complex();
  if (i < 0 || i > tc.cap - 1) throw PreconditionError("sdc cohomology degree out of range");
  LinearMap d_in = (i == 0) ? LinearMap::zero(VectorSpace::zero(), tc.levels[0])
                            : tc.alternating_sum(i - 1);
  return homology_at(d_in, tc.alternating_sum(i));
}

SdcObstruction sdc_obstruction(const SdcLike& e, const SmallExtensionStep& step,
                               const GroupElement& omega) {
  if (e.cap() < 3) throw PreconditionError("sdc_obstruction needs cap >= 3");
  if (!(*omega.ring() == *step.quotient))
    throw IncompatibilityError("sdc_obstruction: element not over the quotient ring");
  if (!mc_defect(e, omega).is_zero())
    throw PreconditionError("sdc_obstruction: element is not Maurer-Cartan");
  GroupElement lifted = e.element(1, extend_by_zero(omega.coords, step.total));
  TensorElement c = e.difference(e.star(lifted, lifted), e.coface(lifted, 1));
  if (!supported_only_on(c, step.kernel_index))
    throw Error("sdc obstruction defect escapes the extension kernel");
  SdcObstruction out;
  out.representative = c.space_coords(step.kernel_index);
  out.kernel_label = step.kernel_label();
  if (!vec_is_zero(e.tangent_complex().alternating_sum(2).apply(out.representative)))
    throw Error("sdc obstruction representative is not closed");
  HomologyView h2 = sdc_cohomology_full_view(e, 2);
  out.h2_coords = h2.class_of(out.representative);
  out.is_zero = vec_is_zero(out.h2_coords);
  return out;
}

std::optional<GroupElement> sdc_lift_mc(const SdcLike& e, const SmallExtensionStep& step,
                                        const GroupElement& omega) {
  if (!mc_defect(e, omega).is_zero())
    throw PreconditionError("sdc_lift_mc: element is not Maurer-Cartan");
  GroupElement lifted = e.element(1, extend_by_zero(omega.coords, step.total));
  TensorElement c = e.difference(e.star(lifted, lifted), e.coface(lifted, 1));
  if (c.is_zero()) return lifted;
  if (!supported_only_on(c, step.kernel_index))
    throw Error("sdc lift defect escapes the extension kernel");
  const Vec cv = c.space_coords(step.kernel_index);
  auto b = solve(e.tangent_complex().alternating_sum(1), vec_scale(Rational(-1), cv));
  if (!b) return std::nullopt;
  TensorElement coords = lifted.coords;
  for (int i = 0; i < coords.space.dim; ++i) coords.at(i, step.kernel_index) += (*b)[i];
  GroupElement result = e.element(1, coords);
  if (!mc_defect(e, result).is_zero()) throw Error("sdc_lift_mc produced a non-MC element");
  return result;
}

ExpSdc::ExpSdc(std::vector<LieAlgebra> levels, CosimplicialSpace ops)
    : levels_(std::move(levels)), ops_(std::move(ops)) {
  if (static_cast<int>(levels_.size()) != ops_.cap + 1)
    throw ShapeError("ExpSdc: level count does not match the operator cap");
  for (int n = 0; n <= ops_.cap; ++n)
    if (!(levels_[n].space == ops_.levels[n]))
      throw ShapeError("ExpSdc: Lie level space differs from operator level space");
}

GroupElement ExpSdc::star(const GroupElement& a, const GroupElement& b) const {
  require_same_ring(a.coords, b.coords);
  const int m = a.level, n = b.level;
  if (m + n > cap()) throw PreconditionError("star: level cap exceeded");
  TensorElement prefix = a.coords;
  for (int k = 1; k <= n; ++k) prefix = apply(ops_.coface[m + k - 1][m + k], prefix);
  TensorElement suffix = b.coords;
  for (int k = 1; k <= m; ++k) suffix = apply(ops_.coface[n + k - 1][0], suffix);
  return GroupElement{m + n, bch(levels_[m + n], prefix, suffix)};
}

GroupElement ExpSdc::inverse0(const GroupElement& g) const {
  return GroupElement{g.level, g.coords.scaled(Rational(-1))};
}

TensorElement ExpSdc::difference(const GroupElement& a, const GroupElement& b) const {
  if (a.level != b.level) throw ShapeError("difference: level mismatch");
  return bch(levels_[a.level], a.coords, b.coords.scaled(Rational(-1)));
}

std::vector<std::string> exp_sdc_violations(const ExpSdc& e) {
  std::vector<std::string> bad;
  for (int n = 0; n <= e.cap(); ++n) {
    for (auto& v : lie_violations(e.level(n))) bad.push_back("level " + std::to_string(n) + ": " + v);
  }
  // Every operator must be a homomorphism of the level brackets.
  auto check_hom = [&](const LinearMap& op, const LieAlgebra& from, const LieAlgebra& to,
                       const std::string& name) {
    for (int a = 0; a < from.space.dim; ++a)
      for (int b = 0; b < from.space.dim; ++b) {
        const Vec lhs = op.matrix.apply(from.basis_bracket(a, b));
        const Vec ia = op.matrix.column(a), ib = op.matrix.column(b);
        Vec rhs = vec_zero(to.space.dim);
        for (int x = 0; x < to.space.dim; ++x) {
          if (ia[x] == 0) continue;
          for (int y = 0; y < to.space.dim; ++y) {
            if (ib[y] == 0) continue;
            const Vec& c = to.basis_bracket(x, y);
            for (int k = 0; k < to.space.dim; ++k)
              if (c[k] != 0) rhs[k] += ia[x] * ib[y] * c[k];
          }
        }
        if (!(lhs == rhs)) {
          bad.push_back(name + " is not a Lie homomorphism at (" + std::to_string(a) + "," +
                        std::to_string(b) + ")");
          return;
        }
      }
  };
  const auto& tc = e.tangent_complex();
  for (int n = 0; n < e.cap(); ++n)
    for (int i = 0; i <= n + 1; ++i)
      check_hom(tc.coface[n][i], e.level(n), e.level(n + 1),
                "coface d^" + std::to_string(i) + " at level " + std::to_string(n));
  for (int n = 1; n <= e.cap(); ++n)
    for (int i = 0; i <= n - 1; ++i)
      check_hom(tc.codegen[n][i], e.level(n), e.level(n - 1),
                "codegeneracy s^" + std::to_string(i) + " at level " + std::to_string(n));
  return bad;
}

std::string SdcCheckReport::summary() const {
  std::ostringstream out;
  if (pass()) return "all checks pass";
  out << shape_violations.size() << " shape, " << structure_violations.size() << " structure, "
      << law_violations.size() << " law violation(s)";
  for (const auto& v : shape_violations)
    out << " [" << v.identity << " level=" << v.level << " i=" << v.i << " j=" << v.j << "]";
  for (const auto& v : structure_violations) out << " [" << v << "]";
  for (const auto& v : law_violations)
    out << " [" << v.identity << " m=" << v.m << " n=" << v.n << " i=" << v.i << " ring=" << v.ring
        << " sample=" << v.sample << "]";
  return out.str();
}

SdcCheckReport check_sdc(const SdcLike& e, const std::vector<RingPtr>& sample_rings, int samples,
                         std::uint64_t seed) {
  SdcCheckReport rep;
  const auto& tc = e.tangent_complex();
  {
    auto full = check_cosimplicial(tc);
    for (auto& v : full.violations) rep.shape_violations.push_back(v);
  }
  if (const auto* exp = dynamic_cast<const ExpSdc*>(&e))
    rep.structure_violations = exp_sdc_violations(*exp);

  RationalSampler rng(seed);
  auto sample_elem = [&](int level, RingPtr ring) {
    TensorElement t = TensorElement::zero(e.coord_space(level), ring);
    for (int i = 0; i < t.space.dim; ++i)
      for (int m = 0; m < ring->dim(); ++m) t.at(i, m) = rng.next();
    return e.element(level, std::move(t));
  };

  for (const auto& ring : sample_rings) {
    const std::string ring_name =
        ring->dim() == 0 ? "Q" : ring->basis.front() + "... (dim " + std::to_string(ring->dim()) + ")";
    for (int s = 0; s < samples; ++s) {
      // Product compatibilities with the partial operator system.
      for (int m = 0; m + 1 <= e.cap(); ++m)
        for (int n = 0; m + n + 1 <= e.cap(); ++n) {
          GroupElement a = sample_elem(m, ring);
          GroupElement b = sample_elem(n, ring);
          GroupElement ab = e.star(a, b);
          for (int i = 1; i <= m; ++i)
            if (!same_element(e.star(e.coface(a, i), b), e.coface(ab, i)))
              rep.law_violations.push_back({"item4", m, n, i, ring_name, s});
          for (int i = 1; i <= n; ++i)
            if (!same_element(e.star(a, e.coface(b, i)), e.coface(ab, i + m)))
              rep.law_violations.push_back({"item5", m, n, i, ring_name, s});
          for (int i = 0; i < m; ++i)
            if (!same_element(e.star(e.codegeneracy(a, i), b), e.codegeneracy(ab, i)))
              rep.law_violations.push_back({"item6", m, n, i, ring_name, s});
          for (int i = 0; i < n; ++i)
            if (!same_element(e.star(a, e.codegeneracy(b, i)), e.codegeneracy(ab, i + m)))
              rep.law_violations.push_back({"item7", m, n, i, ring_name, s});
        }
      // Associativity.
      for (int l = 0; l <= e.cap(); ++l)
        for (int m = 0; l + m <= e.cap(); ++m)
          for (int n = 0; l + m + n <= e.cap(); ++n) {
            GroupElement f = sample_elem(l, ring);
            GroupElement g = sample_elem(m, ring);
            GroupElement h = sample_elem(n, ring);
            if (!same_element(e.star(f, e.star(g, h)), e.star(e.star(f, g), h)))
              rep.law_violations.push_back({"associativity", l, m, n == 0 ? 0 : n, ring_name, s});
          }
      // Unit laws and level-0 inverses.
      for (int n = 0; n <= e.cap(); ++n) {
        GroupElement a = sample_elem(n, ring);
        if (!same_element(e.star(e.base_element(0, ring), a), a))
          rep.law_violations.push_back({"left-unit", 0, n, 0, ring_name, s});
        if (!same_element(e.star(a, e.base_element(0, ring)), a))
          rep.law_violations.push_back({"right-unit", n, 0, 0, ring_name, s});
      }
      {
        GroupElement g = sample_elem(0, ring);
        if (!e.star(g, e.inverse0(g)).is_base() || !e.star(e.inverse0(g), g).is_base())
          rep.law_violations.push_back({"inverse", 0, 0, 0, ring_name, s});
      }
      // Iterated-sigma retraction of the level-0 action on base powers.
      for (int n = 1; n <= e.cap(); ++n) {
        GroupElement g = sample_elem(0, ring);
        GroupElement acted = e.star(g, e.base_element(n, ring));
        for (int k = 0; k < n; ++k) acted = e.codegeneracy(acted, 0);
        if (!same_element(acted, g))
          rep.law_violations.push_back({"sigma-retraction", 0, n, 0, ring_name, s});
      }
    }
  }

  // Tangent-level product law over the dual numbers.
  if (e.cap() >= 2) {
    RingPtr eps = truncated_algebra({"eps"}, {{2}});
    for (int s = 0; s < samples; ++s) {
      GroupElement a = sample_elem(1, eps);
      GroupElement b = sample_elem(1, eps);
      TensorElement expect =
          apply(tc.coface[1][2], a.coords) + apply(tc.coface[1][0], b.coords);
      if (!((e.star(a, b).coords - expect).is_zero()))
        rep.law_violations.push_back({"tangent-star", 1, 1, 0, "Q[eps]", s});
    }
  }
  return rep;
}

std::vector<std::string> morphism_violations(const ExpSdcMorphism& phi) {
  std::vector<std::string> bad;
  const ExpSdc& E = *phi.source;
  const ExpSdc& F = *phi.target;
  if (E.cap() != F.cap()) bad.push_back("caps differ");
  if (static_cast<int>(phi.maps.size()) != E.cap() + 1) {
    bad.push_back("level map count mismatch");
    return bad;
  }
  for (int n = 0; n <= E.cap(); ++n) {
    const auto& f = phi.maps[n];
    if (!(f.domain == E.level(n).space) || !(f.codomain == F.level(n).space)) {
      bad.push_back("level " + std::to_string(n) + " map has wrong spaces");
      return bad;
    }
    for (int a = 0; a < E.level(n).space.dim; ++a)
      for (int b = 0; b < E.level(n).space.dim; ++b) {
        const Vec lhs = f.matrix.apply(E.level(n).basis_bracket(a, b));
        Vec rhs = vec_zero(F.level(n).space.dim);
        const Vec ia = f.matrix.column(a), ib = f.matrix.column(b);
        for (int x = 0; x < F.level(n).space.dim; ++x) {
          if (ia[x] == 0) continue;
          for (int y = 0; y < F.level(n).space.dim; ++y)
            if (ib[y] != 0) {
              const Vec& c = F.level(n).basis_bracket(x, y);
              for (int k = 0; k < F.level(n).space.dim; ++k)
                if (c[k] != 0) rhs[k] += ia[x] * ib[y] * c[k];
            }
        }
        if (!(lhs == rhs)) bad.push_back("level " + std::to_string(n) + " map is not a Lie map");
      }
  }
  const auto& te = E.tangent_complex();
  const auto& tf = F.tangent_complex();
  for (int n = 0; n < E.cap(); ++n)
    for (int i = 0; i <= n + 1; ++i)
      if (!(phi.maps[n + 1].matrix * te.coface[n][i].matrix ==
            tf.coface[n][i].matrix * phi.maps[n].matrix))
        bad.push_back("coface d^" + std::to_string(i) + " at level " + std::to_string(n) +
                      " does not commute");
  for (int n = 1; n <= E.cap(); ++n)
    for (int i = 0; i <= n - 1; ++i)
      if (!(phi.maps[n - 1].matrix * te.codegen[n][i].matrix ==
            tf.codegen[n][i].matrix * phi.maps[n].matrix))
        bad.push_back("codegeneracy s^" + std::to_string(i) + " at level " + std::to_string(n) +
                      " does not commute");
  return bad;
}

FiberSdc fiber_sdc(const ExpSdcMorphism& phi) {
  auto bad = morphism_violations(phi);
  if (!bad.empty()) throw PreconditionError("fiber_sdc: invalid morphism: " + bad.front());
  const ExpSdc& E = *phi.source;
  const ExpSdc& F = *phi.target;
  const int cap = E.cap();
  FiberSdc out;
  out.inclusion.resize(cap + 1);
  std::vector<LieAlgebra> levels(cap + 1);
  std::vector<ColumnSolver> solvers;
  solvers.reserve(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    if (rank(phi.maps[n].matrix) != F.level(n).space.dim)
      throw UnsupportedError("fiber_sdc requires levelwise surjective morphisms");
    out.inclusion[n] = kernel_basis(phi.maps[n].matrix);
    solvers.emplace_back(out.inclusion[n]);
    const int k = out.inclusion[n].cols();
    levels[n].space = VectorSpace::with_prefix("k" + std::to_string(n) + "_", k);
    levels[n].bracket.assign(static_cast<std::size_t>(k) * k, vec_zero(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const Vec va = out.inclusion[n].column(a), vb = out.inclusion[n].column(b);
        Vec br = vec_zero(E.level(n).space.dim);
        for (int x = 0; x < E.level(n).space.dim; ++x) {
          if (va[x] == 0) continue;
          for (int y = 0; y < E.level(n).space.dim; ++y)
            if (vb[y] != 0) {
              const Vec& c = E.level(n).basis_bracket(x, y);
              for (int t = 0; t < E.level(n).space.dim; ++t)
                if (c[t] != 0) br[t] += va[x] * vb[y] * c[t];
            }
        }
        auto coords = solvers[n].solve(br);
        if (!coords) throw Error("fiber bracket escapes the kernel");
        levels[n].bracket[static_cast<std::size_t>(a) * k + b] = *coords;
      }
  }
  CosimplicialSpace ops;
  ops.cap = cap;
  ops.levels.resize(cap + 1);
  for (int n = 0; n <= cap; ++n) ops.levels[n] = levels[n].space;
  ops.coface.resize(cap);
  ops.codegen.resize(cap + 1);
  const auto& te = E.tangent_complex();
  auto restrict_map = [&](const Matrix& big, int from, int to) {
    const Matrix applied = big * out.inclusion[from];
    Matrix small(ops.levels[to].dim, ops.levels[from].dim);
    for (int c = 0; c < applied.cols(); ++c) {
      auto coords = solvers[to].solve(applied.column(c));
      if (!coords) throw Error("fiber operator escapes the kernel");
      for (int r = 0; r < small.rows(); ++r) small.at(r, c) = (*coords)[r];
    }
    return LinearMap(ops.levels[from], ops.levels[to], small);
  };
  for (int n = 0; n < cap; ++n)
    for (int i = 0; i <= n + 1; ++i)
      ops.coface[n].push_back(restrict_map(te.coface[n][i].matrix, n, n + 1));
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n - 1; ++i)
      ops.codegen[n].push_back(restrict_map(te.codegen[n][i].matrix, n, n - 1));
  out.sdc = ExpSdc(std::move(levels), std::move(ops));
  return out;
}

GroupElement ExtendedAt::coface0(const GroupElement& e) const { return sdc->star(omega, e); }
GroupElement ExtendedAt::coface_top(const GroupElement& e) const { return sdc->star(e, omega); }

ExtendedAt::Report ExtendedAt::verify(int samples, std::uint64_t seed) const {
  Report rep;
  RationalSampler rng(seed);
  const RingPtr ring = omega.ring();
  auto sample_elem = [&](int level) {
    TensorElement t = TensorElement::zero(sdc->coord_space(level), ring);
    for (int i = 0; i < t.space.dim; ++i)
      for (int m = 0; m < ring->dim(); ++m) t.at(i, m) = rng.next();
    return sdc->element(level, std::move(t));
  };
  auto record = [&](const std::string& name, bool ok) {
    (ok ? rep.holding : rep.failing).push_back(name);
  };
  for (int s = 0; s < samples; ++s)
    for (int m = 0; m + 2 <= sdc->cap(); ++m)
      for (int n = 0; m + n + 2 <= sdc->cap(); ++n) {
        GroupElement a = sample_elem(m);
        GroupElement b = sample_elem(n);
        GroupElement ab = sdc->star(a, b);
        record("d0_omega(e)*f = d0_omega(e*f)",
               same_element(sdc->star(coface0(a), b), coface0(ab)));
        record("e*dtop_omega(f) = dtop_omega(e*f)",
               same_element(sdc->star(a, coface_top(b)), coface_top(ab)));
        record("dtop_omega(e)*f = e*d0_omega(f)",
               same_element(sdc->star(coface_top(a), b), sdc->star(a, coface0(b))));
        record("sigma^0 d0_omega = id",
               same_element(sdc->codegeneracy(coface0(a), 0), a));
        // Extended coface-coface identity with i = 0, j >= 1.
        for (int j = 1; j <= m + 1; ++j)
          record("d^j d0_omega = d0_omega d^{j-1} (j=" + std::to_string(j) + ")",
                 same_element(sdc->coface(coface0(a), j),
                              j == 1 ? coface0(coface0(a)) : coface0(sdc->coface(a, j - 1))));
      }
  return rep;
}

std::optional<std::string> ExtendedAt::noncommuting_witness(int samples, std::uint64_t seed) const {
  RationalSampler rng(seed);
  const RingPtr ring = omega.ring();
  auto sample_elem = [&](int level) {
    TensorElement t = TensorElement::zero(sdc->coord_space(level), ring);
    for (int i = 0; i < t.space.dim; ++i)
      for (int m = 0; m < ring->dim(); ++m) t.at(i, m) = rng.next();
    return sdc->element(level, std::move(t));
  };
  for (int s = 0; s < samples; ++s)
    for (int m = 0; m + 2 <= sdc->cap(); ++m)
      for (int n = 1; m + n + 2 <= sdc->cap(); ++n) {
        GroupElement a = sample_elem(m);
        GroupElement b = sample_elem(n);
        GroupElement lhs = sdc->star(coface_top(a), b);
        GroupElement rhs = sdc->coface(sdc->star(a, b), m + 1);
        if (!same_element(lhs, rhs))
          return "levels (" + std::to_string(m) + "," + std::to_string(n) + "), sample " +
                 std::to_string(s);
      }
  return std::nullopt;
}

ExtendedAt extend_at(const SdcLike& e, const GroupElement& omega) {
  if (!mc_defect(e, omega).is_zero())
    throw PreconditionError("extend_at: omega is not Maurer-Cartan");
  return ExtendedAt{&e, omega};
}

}  // namespace sdclab
