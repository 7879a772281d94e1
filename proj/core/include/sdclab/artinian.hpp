#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdclab/linalg.hpp"

namespace sdclab {

/// An Artinian local Q-algebra presented by a basis of its maximal ideal
/// and structure constants. The unit is implicit; every stored coordinate
/// vector lives over the ideal basis only.
///
/// Invariants (enforced by the factories, re-checkable via ring_violations):
///   - multiplication is associative and commutative on the basis,
///   - order(e_i * e_j) >= order(e_i) + order(e_j) componentwise,
///   - every basis element has order >= 1 and < order (the nilpotency degree).
struct CoefficientRing {
  std::vector<std::string> generators;        // generator names; may be empty
  std::vector<std::string> basis;             // labels for the basis of m_A
  std::vector<std::vector<int>> exponents;    // exponent vectors, empty for synthetic bases
  std::vector<Vec> mult;                      // mult[i*dim()+j]: coordinates of e_i e_j
  std::vector<int> order_of;                  // m-adic order per basis element
  int order = 1;                              // nilpotency degree N with m^N = 0

  int dim() const { return static_cast<int>(basis.size()); }
  const Vec& basis_product(int i, int j) const { return mult[static_cast<std::size_t>(i) * dim() + j]; }
  /// Product of two ideal coordinate vectors.
  Vec mul(const Vec& a, const Vec& b) const;
  int index_of(const std::string& label) const;
  bool operator==(const CoefficientRing& other) const;
};

using RingPtr = std::shared_ptr<const CoefficientRing>;

/// The base field Q itself (m = 0).
RingPtr rationals();

/// Returns the violated ring invariants, empty when the presentation is valid.
std::vector<std::string> ring_violations(const CoefficientRing& ring);

/// Quotient Q[vars]/(monomial ideal). The ideal generators are exponent
/// vectors; the quotient must be finite-dimensional (each variable needs a
/// pure power in the ideal), otherwise NonArtinianError.
RingPtr truncated_algebra(const std::vector<std::string>& vars,
                          const std::vector<std::vector<int>>& ideal);

/// An element c0 + (ideal part) of a coefficient ring.
struct RingElement {
  RingPtr ring;
  Rational unit;
  Vec ideal;

  static RingElement zero(RingPtr r);
  static RingElement one(RingPtr r);
  static RingElement monomial(RingPtr r, int index);
  RingElement operator+(const RingElement& other) const;
  RingElement operator*(const RingElement& other) const;
  bool is_zero() const;
};

/// Local homomorphism between coefficient rings; images[.,j] gives the image
/// of source basis element j inside the target's maximal ideal.
struct RingMorphism {
  RingPtr source;
  RingPtr target;
  Matrix images;  // target.dim x source.dim

  Vec apply(const Vec& source_coords) const;
  RingElement apply(const RingElement& e) const;
  bool is_surjective() const;
};

std::vector<std::string> morphism_violations(const RingMorphism& f);
RingMorphism identity_morphism(RingPtr ring);
RingMorphism residue_morphism(RingPtr ring);
/// Matches basis elements by label; anything absent in the target maps to 0.
/// Every target label must appear in the source.
RingMorphism label_projection(RingPtr source, RingPtr target);
RingMorphism compose(const RingMorphism& second, const RingMorphism& first);

/// One small extension A -> A/(t) with m_A t = 0.
struct SmallExtensionStep {
  RingPtr total;
  RingPtr quotient;
  RingMorphism projection;
  int kernel_index = 0;  // basis index of t inside total

  const std::string& kernel_label() const { return total->basis[kernel_index]; }
};

std::vector<std::string> step_violations(const SmallExtensionStep& step);

/// Factors the residue map A -> Q as small extensions. Basis elements are
/// stripped in decreasing m-adic order (ties by increasing label), so the
/// first listed step is A -> A/(t) for the deepest monomial t and the last
/// one lands on Q. Lifting loops iterate this list in reverse.
std::vector<SmallExtensionStep> extension_tower(RingPtr ring);

struct FiberProductResult {
  RingPtr ring;
  RingMorphism to_left;   // onto B
  RingMorphism to_right;  // onto C
};

/// Fiber product B x_A C of p: B -> A (surjective, else PreconditionError)
/// and q: C -> A. The basis is chosen adapted to the m-adic filtration.
FiberProductResult fiber_product(const RingMorphism& p, const RingMorphism& q);

/// An element of V (x) m_A, stored densely as coords[i*ring.dim()+m].
struct TensorElement {
  VectorSpace space;
  RingPtr ring;
  Vec coords;

  static TensorElement zero(VectorSpace space, RingPtr ring);
  Rational& at(int basis_index, int monomial_index);
  const Rational& at(int basis_index, int monomial_index) const;
  bool is_zero() const;
  TensorElement operator+(const TensorElement& other) const;
  TensorElement operator-(const TensorElement& other) const;
  TensorElement scaled(const Rational& c) const;
  /// Coordinate vector over the ring basis for one space basis index.
  Vec ring_coords(int basis_index) const;
  /// Coefficient vector over the space for one ring monomial.
  Vec space_coords(int monomial_index) const;
};

void require_same_ring(const TensorElement& a, const TensorElement& b);

/// Applies a linear map levelwise (per ring monomial).
TensorElement apply(const LinearMap& map, const TensorElement& x);
/// Pushes the ring coordinates through a ring morphism.
TensorElement reduce(const TensorElement& x, const RingMorphism& f);
/// Multiplies every coordinate by a ring element.
TensorElement multiply(const TensorElement& x, const RingElement& c);
/// Re-reads coords over a larger ring whose basis contains the current one
/// (matched by label); new monomials get coordinate zero.
TensorElement extend_by_zero(const TensorElement& x, RingPtr bigger);
/// True when every nonzero coordinate sits on the given monomial.
bool supported_only_on(const TensorElement& x, int monomial_index);

}  // namespace sdclab
