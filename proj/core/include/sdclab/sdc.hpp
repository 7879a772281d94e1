#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdclab/artinian.hpp"
#include "sdclab/cosimplicial.hpp"
#include "sdclab/linalg.hpp"

namespace sdclab {

/// Deterministic sampler for small rational coordinates: numerators in
/// [-3, 3], denominators in {1, 2}. splitmix64 underneath.
class RationalSampler {
public:
  explicit RationalSampler(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_raw();
  Rational next();

private:
  std::uint64_t state_;
};

/// One term of the truncated Baker-Campbell-Hausdorff expansion in the free
/// associative algebra on two letters (0 and 1).
struct BchTerm {
  std::vector<int> word;
  Rational coeff;
};

/// log(exp(X) exp(Y)) truncated at the given weight, computed symbolically
/// once per weight and memoized behind an internal lock.
const std::vector<BchTerm>& bch_expansion(int weight_cap);

/// An ordinary (ungraded) finite-dimensional Lie algebra by structure
/// constants; the level data of an exponential SDC.
struct LieAlgebra {
  VectorSpace space;
  std::vector<Vec> bracket;  // bracket[a*dim+b] -> coordinates

  const Vec& basis_bracket(int a, int b) const {
    return bracket[static_cast<std::size_t>(a) * space.dim + b];
  }
};

std::vector<std::string> lie_violations(const LieAlgebra& l);
TensorElement lie_bracket_tensor(const LieAlgebra& l, const TensorElement& a,
                                 const TensorElement& b);

/// log(exp(a) exp(b)) inside l (x) m_A. Words are evaluated through the
/// Dynkin right-nested bracketing, so only the bracket is needed.
TensorElement bch(const LieAlgebra& l, const TensorElement& a, const TensorElement& b);

/// An element of E^n(A), stored by its coordinate deviation from the base
/// point: log coordinates for exponential SDCs, perturbation of the base
/// composite for Hom-type SDCs.
struct GroupElement {
  int level = 0;
  TensorElement coords;

  const RingPtr& ring() const { return coords.ring; }
  bool is_base() const { return coords.is_zero(); }
};

bool same_element(const GroupElement& a, const GroupElement& b);

/// The capability set shared by every SDC representation: a level cap, the
/// tangent cosimplicial complex, the associative cross-level product, the
/// level-0 group inverse and a "difference" measuring how far two elements
/// of one level differ. Operators act linearly on coordinates, so coface
/// and codegeneracy are generic.
class SdcLike {
public:
  virtual ~SdcLike() = default;
  virtual int cap() const = 0;
  virtual const CosimplicialSpace& tangent_complex() const = 0;
  virtual GroupElement star(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inverse0(const GroupElement& g) const = 0;
  /// Coordinates of a . b^{-1} at a common level; exact when the arguments
  /// agree modulo a square-zero ideal.
  virtual TensorElement difference(const GroupElement& a, const GroupElement& b) const = 0;

  const VectorSpace& coord_space(int level) const { return tangent_complex().levels[level]; }
  GroupElement base_element(int level, RingPtr ring) const;
  GroupElement element(int level, TensorElement coords) const;
  GroupElement coface(const GroupElement& e, int i) const;        // 0 <= i <= level+1
  GroupElement codegeneracy(const GroupElement& e, int i) const;  // 0 <= i <= level-1
};

/// omega * omega "minus" d^1(omega) at level 2; zero exactly on Maurer-Cartan
/// points. When zero, the sigma^0-image is asserted to be the base point.
TensorElement mc_defect(const SdcLike& e, const GroupElement& omega);

/// g * omega * g^{-1}; requires and preserves the Maurer-Cartan condition.
GroupElement adjoint(const SdcLike& e, const GroupElement& g, const GroupElement& omega);

int sdc_cohomology(const SdcLike& e, int i);
/// Cohomology of the unnormalised tangent cochain complex (same dimensions
/// as the cohomotopy); carries the representative data used for classes.
HomologyView sdc_cohomology_full_view(const SdcLike& e, int i);

struct SdcObstruction {
  Vec representative;        // cocycle in the level-2 tangent space
  std::string kernel_label;
  bool is_zero = false;
  Vec h2_coords;             // class in sdc_cohomology_full_view(e, 2)
};

SdcObstruction sdc_obstruction(const SdcLike& e, const SmallExtensionStep& step,
                               const GroupElement& omega);
std::optional<GroupElement> sdc_lift_mc(const SdcLike& e, const SmallExtensionStep& step,
                                        const GroupElement& omega);

/// An exponential SDC: each level is exp of a nilpotent-ready Lie algebra,
/// with a full cosimplicial system of Lie-algebra maps on the levels and the
/// Alexander-Whitney product. Coordinates of elements are log coordinates.
class ExpSdc final : public SdcLike {
public:
  ExpSdc() = default;
  ExpSdc(std::vector<LieAlgebra> levels, CosimplicialSpace ops);

  int cap() const override { return ops_.cap; }
  const CosimplicialSpace& tangent_complex() const override { return ops_; }
  GroupElement star(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse0(const GroupElement& g) const override;
  TensorElement difference(const GroupElement& a, const GroupElement& b) const override;

  const LieAlgebra& level(int n) const { return levels_[n]; }
  const std::vector<LieAlgebra>& levels() const { return levels_; }

private:
  std::vector<LieAlgebra> levels_;
  CosimplicialSpace ops_;
};

/// Structural violations of the exponential representation: invalid level
/// brackets, operators that are not Lie homomorphisms, or broken
/// cosimplicial identities.
std::vector<std::string> exp_sdc_violations(const ExpSdc& e);

struct SdcViolation {
  std::string identity;  // "item4".."item7", "associativity", "unit", ...
  int m = 0;
  int n = 0;
  int i = 0;
  std::string ring;
  int sample = 0;
};

struct SdcCheckReport {
  std::vector<IdentityViolation> shape_violations;    // exact, on tangent matrices
  std::vector<std::string> structure_violations;      // representation-specific
  std::vector<SdcViolation> law_violations;           // sampled group laws
  bool pass() const {
    return shape_violations.empty() && structure_violations.empty() && law_violations.empty();
  }
  std::string summary() const;
};

/// Verifies the partial cosimplicial identities exactly on tangent matrices
/// and the product laws (compatibilities with cofaces and codegeneracies,
/// associativity, units, level-0 inverses, the iterated-sigma retraction of
/// the level-0 action, and the tangent-level product law) on pseudo-random
/// coordinates over each sample ring.
SdcCheckReport check_sdc(const SdcLike& e, const std::vector<RingPtr>& sample_rings, int samples,
                         std::uint64_t seed);

/// Levelwise Lie map between exponential SDCs commuting with all operators.
struct ExpSdcMorphism {
  const ExpSdc* source = nullptr;
  const ExpSdc* target = nullptr;
  std::vector<LinearMap> maps;  // per level 0..cap
};

std::vector<std::string> morphism_violations(const ExpSdcMorphism& phi);

struct FiberSdc {
  ExpSdc sdc;
  std::vector<Matrix> inclusion;  // kernel basis per level
};

/// Kernel SDC of a levelwise-surjective morphism over the base point of the
/// target. UnsupportedError when some level map is not surjective.
FiberSdc fiber_sdc(const ExpSdcMorphism& phi);

/// The cosimplicial extension of the operator system by star with a
/// Maurer-Cartan point.
struct ExtendedAt {
  const SdcLike* sdc = nullptr;
  GroupElement omega;

  GroupElement coface0(const GroupElement& e) const;      // omega * e
  GroupElement coface_top(const GroupElement& e) const;   // e * omega

  struct Report {
    std::vector<std::string> holding;
    std::vector<std::string> failing;
    bool pass() const { return failing.empty(); }
  };
  /// Checks the product identities available to the extended cofaces on
  /// sampled elements over omega's ring.
  Report verify(int samples, std::uint64_t seed) const;
  /// A sampled witness that d^{m+1}_omega(e) * f differs from
  /// d^{m+1}(e * f); empty when none is found among the samples.
  std::optional<std::string> noncommuting_witness(int samples, std::uint64_t seed) const;
};

ExtendedAt extend_at(const SdcLike& e, const GroupElement& omega);

}  // namespace sdclab
