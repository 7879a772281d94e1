#include "sdclab/dgla.hpp"

#include <sstream>

namespace sdclab {

VectorSpace Dgla::piece(int i) const {
  if (i < 0 || i > top_degree) return VectorSpace::zero();
  return pieces[i];
}

LinearMap Dgla::d(int i) const {
  if (i >= 0 && i < static_cast<int>(differential.size())) return differential[i];
  return LinearMap::zero(piece(i), piece(i + 1));
}

Vec Dgla::bracket_basis(int i, int j, int a, int b) const {
  if (i + j > top_degree) return {};
  return bracket[i][j][static_cast<std::size_t>(a) * piece(j).dim + b];
}

Vec bracket_vec(const Dgla& l, int i, int j, const Vec& a, const Vec& b) {
  const int target = i + j;
  if (target > l.top_degree) return {};
  Vec r = vec_zero(l.piece(target).dim);
  for (int x = 0; x < l.piece(i).dim; ++x) {
    if (a[x] == 0) continue;
    for (int y = 0; y < l.piece(j).dim; ++y) {
      if (b[y] == 0) continue;
      const Vec& c = l.bracket_basis(i, j, x, y);
      const Rational coeff = a[x] * b[y];
      for (int k = 0; k < l.piece(target).dim; ++k)
        if (c[k] != 0) r[k] += coeff * c[k];
    }
  }
  return r;
}

Vec d_vec(const Dgla& l, int i, const Vec& a) { return l.d(i).matrix.apply(a); }

TensorElement bracket_tensor(const Dgla& l, int i, int j, const TensorElement& a,
                             const TensorElement& b) {
  require_same_ring(a, b);
  const int target = i + j;
  TensorElement r = TensorElement::zero(l.piece(target), a.ring);
  if (target > l.top_degree) return r;
  const auto& A = *a.ring;
  for (int x = 0; x < l.piece(i).dim; ++x)
    for (int y = 0; y < l.piece(j).dim; ++y) {
      const Vec& c = l.bracket_basis(i, j, x, y);
      if (vec_is_zero(c)) continue;
      const Vec prod = A.mul(a.ring_coords(x), b.ring_coords(y));
      if (vec_is_zero(prod)) continue;
      for (int k = 0; k < l.piece(target).dim; ++k) {
        if (c[k] == 0) continue;
        for (int m = 0; m < A.dim(); ++m)
          if (prod[m] != 0) r.at(k, m) += c[k] * prod[m];
      }
    }
  return r;
}

std::string DglaReport::summary() const {
  if (violations.empty()) return "all identities hold";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    out << " [" << v.identity << " deg=(";
    for (std::size_t k = 0; k < v.degrees.size(); ++k) out << (k ? "," : "") << v.degrees[k];
    out << ") idx=(";
    for (std::size_t k = 0; k < v.indices.size(); ++k) out << (k ? "," : "") << v.indices[k];
    out << ")]";
  }
  return out.str();
}

DglaReport check_dgla(const Dgla& l) {
  DglaReport rep;
  const int top = l.top_degree;
  auto sign = [](int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); };

  for (int i = 0; i + 2 <= top; ++i)
    if (!(l.d(i + 1).matrix * l.d(i).matrix).is_zero())
      rep.violations.push_back({"d-squared", {i}, {}});

  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top && j <= top; ++j)
      for (int a = 0; a < l.piece(i).dim; ++a)
        for (int b = 0; b < l.piece(j).dim; ++b) {
          Vec lhs = l.bracket_basis(i, j, a, b);
          Vec rhs = vec_scale(sign(i * j), l.bracket_basis(j, i, b, a));
          if (!vec_is_zero(vec_add(lhs, rhs)))
            rep.violations.push_back({"antisymmetry", {i, j}, {a, b}});
        }

  for (int i = 0; i <= top; ++i)
    for (int j = 0; j <= top; ++j)
      for (int k = 0; i + j + k <= top && k <= top; ++k)
        for (int a = 0; a < l.piece(i).dim; ++a)
          for (int b = 0; b < l.piece(j).dim; ++b)
            for (int c = 0; c < l.piece(k).dim; ++c) {
              auto unit = [&](int deg, int idx) {
                Vec e = vec_zero(l.piece(deg).dim);
                e[idx] = 1;
                return e;
              };
              Vec t1 = vec_scale(sign(k * i),
                                 bracket_vec(l, i, j + k, unit(i, a),
                                             l.bracket_basis(j, k, b, c)));
              Vec t2 = vec_scale(sign(i * j),
                                 bracket_vec(l, j, k + i, unit(j, b),
                                             l.bracket_basis(k, i, c, a)));
              Vec t3 = vec_scale(sign(j * k),
                                 bracket_vec(l, k, i + j, unit(k, c),
                                             l.bracket_basis(i, j, a, b)));
              if (!vec_is_zero(vec_add(vec_add(t1, t2), t3)))
                rep.violations.push_back({"jacobi", {i, j, k}, {a, b, c}});
            }

  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top && j <= top; ++j)
      for (int a = 0; a < l.piece(i).dim; ++a)
        for (int b = 0; b < l.piece(j).dim; ++b) {
          auto unit = [&](int deg, int idx) {
            Vec e = vec_zero(l.piece(deg).dim);
            e[idx] = 1;
            return e;
          };
          Vec lhs = d_vec(l, i + j, l.bracket_basis(i, j, a, b));
          Vec t1 = bracket_vec(l, i + 1, j, d_vec(l, i, unit(i, a)), unit(j, b));
          Vec t2 = vec_scale(sign(i), bracket_vec(l, i, j + 1, unit(i, a), d_vec(l, j, unit(j, b))));
          Vec rhs = vec_add(t1.empty() ? vec_zero(lhs.size()) : t1,
                            t2.empty() ? vec_zero(lhs.size()) : t2);
          if (lhs.empty()) lhs = vec_zero(rhs.size());
          if (!(lhs == rhs)) rep.violations.push_back({"leibniz", {i, j}, {a, b}});
        }
  return rep;
}

HomologyView cohomology(const Dgla& l, int i) {
  if (i < 0 || i > l.top_degree) throw PreconditionError("cohomology degree out of range");
  return homology_at(l.d(i - 1), l.d(i));
}

TensorElement mc_residual(const Dgla& l, const TensorElement& x) {
  if (!(x.space == l.piece(1))) throw ShapeError("mc_residual: element not in L^1");
  TensorElement half_sq = bracket_tensor(l, 1, 1, x, x).scaled(rat(1, 2));
  TensorElement dx = apply(l.d(1), x);
  if (l.top_degree < 2) return half_sq;  // both live in the zero space
  return dx + half_sq;
}

TensorElement gauge_act(const Dgla& l, const TensorElement& alpha, const TensorElement& x) {
  if (!(alpha.space == l.piece(0))) throw ShapeError("gauge_act: alpha not in L^0");
  if (!(x.space == l.piece(1))) throw ShapeError("gauge_act: x not in L^1");
  require_same_ring(alpha, x);
  const int max_iter = alpha.ring->order + 1;

  TensorElement acc = x;
  TensorElement term = x;
  Rational factorial(1);
  for (int n = 1; n <= max_iter; ++n) {
    term = bracket_tensor(l, 0, 1, alpha, term);
    if (term.is_zero()) break;
    factorial *= n;
    acc = acc + term.scaled(1 / factorial);
  }
  TensorElement dalpha = apply(l.d(0), alpha);
  TensorElement corr = dalpha;
  factorial = 1;
  for (int n = 0; n <= max_iter; ++n) {
    if (corr.is_zero()) break;
    acc = acc - corr.scaled(1 / (factorial * (n + 1)));
    corr = bracket_tensor(l, 0, 1, alpha, corr);
    factorial *= (n + 1);
  }
  return acc;
}

ObstructionClass obstruction_class(const Dgla& l, const SmallExtensionStep& step,
                                   const TensorElement& x) {
  if (!(*x.ring == *step.quotient))
    throw IncompatibilityError("obstruction_class: element not over the quotient ring");
  if (!mc_residual(l, x).is_zero())
    throw PreconditionError("obstruction_class: element is not Maurer-Cartan");
  TensorElement lifted = extend_by_zero(x, step.total);
  TensorElement h = mc_residual(l, lifted);
  if (!supported_only_on(h, step.kernel_index))
    throw Error("obstruction defect escapes the extension kernel");
  ObstructionClass out;
  out.representative = h.space_coords(step.kernel_index);
  out.kernel_label = step.kernel_label();
  if (!vec_is_zero(d_vec(l, 2, out.representative)))
    throw Error("obstruction representative is not closed");
  HomologyView h2 = cohomology(l, 2);
  out.h2_coords = h2.class_of(out.representative);
  out.is_zero = vec_is_zero(out.h2_coords);
  return out;
}

std::optional<TensorElement> lift_mc(const Dgla& l, const SmallExtensionStep& step,
                                     const TensorElement& x) {
  if (!mc_residual(l, x).is_zero())
    throw PreconditionError("lift_mc: element is not Maurer-Cartan");
  TensorElement lifted = extend_by_zero(x, step.total);
  TensorElement h = mc_residual(l, lifted);
  if (h.is_zero()) return lifted;
  if (!supported_only_on(h, step.kernel_index))
    throw Error("lift defect escapes the extension kernel");
  const Vec hv = h.space_coords(step.kernel_index);
  auto z = solve(l.d(1), vec_scale(Rational(-1), hv));
  if (!z) return std::nullopt;
  TensorElement corr = TensorElement::zero(l.piece(1), step.total);
  for (int i = 0; i < l.piece(1).dim; ++i) corr.at(i, step.kernel_index) = (*z)[i];
  TensorElement result = lifted + corr;
  if (!mc_residual(l, result).is_zero()) throw Error("lift_mc produced a non-MC element");
  return result;
}

GaugeSearch find_gauge(const Dgla& l, const TensorElement& x, const TensorElement& y) {
  require_same_ring(x, y);
  if (!mc_residual(l, x).is_zero() || !mc_residual(l, y).is_zero())
    throw PreconditionError("find_gauge: inputs must be Maurer-Cartan");
  const RingPtr ring = x.ring;
  const int h0 = cohomology(l, 0).dim;

  auto steps = extension_tower(ring);
  // Reductions from the full ring down to each tower quotient.
  std::vector<RingMorphism> down{identity_morphism(ring)};
  for (const auto& s : steps) down.push_back(compose(s.projection, down.back()));

  GaugeSearch out;
  TensorElement alpha = TensorElement::zero(l.piece(0), rationals());
  // Ascend: steps.back() extends Q, steps.front() reaches the full ring.
  for (int k = static_cast<int>(steps.size()) - 1; k >= 0; --k) {
    const auto& s = steps[static_cast<std::size_t>(k)];
    const int stage = static_cast<int>(steps.size()) - 1 - k;
    TensorElement alpha_lift = extend_by_zero(alpha, s.total);
    const TensorElement x_here = reduce(x, down[static_cast<std::size_t>(k)]);
    const TensorElement y_here = reduce(y, down[static_cast<std::size_t>(k)]);
    const TensorElement z = gauge_act(l, alpha_lift, x_here);
    TensorElement delta = z - y_here;
    if (!delta.is_zero()) {
      if (!supported_only_on(delta, s.kernel_index))
        throw Error("find_gauge: stage defect escapes the extension kernel");
      const Vec dv = delta.space_coords(s.kernel_index);
      auto beta = solve(l.d(0), dv);
      if (!beta) {
        out.failed_stage = stage;
        out.h1_defect = cohomology(l, 1).class_of(dv);
        out.status = (h0 == 0) ? GaugeSearch::Status::none : GaugeSearch::Status::undetermined;
        return out;
      }
      for (int i = 0; i < l.piece(0).dim; ++i) alpha_lift.at(i, s.kernel_index) += (*beta)[i];
    }
    out.ambiguity_dims.push_back(cohomology(l, 0).dim);
    alpha = alpha_lift;
  }
  if (!(gauge_act(l, alpha, x) - y).is_zero()) throw Error("find_gauge: final verification failed");
  out.status = GaugeSearch::Status::found;
  out.gauge = alpha;
  return out;
}

}  // namespace sdclab
