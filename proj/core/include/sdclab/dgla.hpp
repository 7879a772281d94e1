#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdclab/artinian.hpp"
#include "sdclab/linalg.hpp"

namespace sdclab {

/// A finite-dimensional DGLA concentrated in degrees 0..top_degree, given by
/// structure constants. Nothing is assumed valid: check_dgla reports every
/// violated identity instead of throwing.
struct Dgla {
  int top_degree = 0;
  std::vector<VectorSpace> pieces;         // degrees 0..top_degree
  std::vector<LinearMap> differential;     // d[i]: L^i -> L^{i+1}, i < top_degree
  // bracket[i][j][a*dim_j+b]: coordinates of [e_a, e_b] in L^{i+j}, stored
  // only when i+j <= top_degree.
  std::vector<std::vector<std::vector<Vec>>> bracket;

  VectorSpace piece(int i) const;          // zero space outside 0..top_degree
  LinearMap d(int i) const;                // zero map outside the stored range
  /// [e_a, e_b] for basis vectors of L^i, L^j; empty vector when i+j > top.
  Vec bracket_basis(int i, int j, int a, int b) const;
};

/// Structure-constant bracket on coordinate vectors. Returns a vector in
/// degree i+j (empty when that degree vanishes).
Vec bracket_vec(const Dgla& l, int i, int j, const Vec& a, const Vec& b);
Vec d_vec(const Dgla& l, int i, const Vec& a);

/// Bracket on elements of L^i (x) m_A and L^j (x) m_A.
TensorElement bracket_tensor(const Dgla& l, int i, int j, const TensorElement& a,
                             const TensorElement& b);

struct DglaViolation {
  std::string identity;       // "d-squared", "antisymmetry", "jacobi", "leibniz"
  std::vector<int> degrees;
  std::vector<int> indices;
};

struct DglaReport {
  std::vector<DglaViolation> violations;
  bool pass() const { return violations.empty(); }
  std::string summary() const;
};

/// Exhaustive verification of the four identity families on basis tuples.
DglaReport check_dgla(const Dgla& l);

/// H^i(L), 0 <= i <= top_degree (PreconditionError outside).
HomologyView cohomology(const Dgla& l, int i);

/// dx + (1/2)[x,x] for x in L^1 (x) m_A; zero exactly when x is Maurer-Cartan.
TensorElement mc_residual(const Dgla& l, const TensorElement& x);

/// Gauge action of exp(alpha), alpha in L^0 (x) m_A, on x in L^1 (x) m_A:
///
///   alpha . x = exp(ad_alpha)(x) - sum_{n>=0} ad_alpha^n(d alpha) / (n+1)!
///
/// This is the expansion of Ad_{exp(alpha)}(x + d) - d in the extension of L
/// by a formal degree-1 symbol d with [d, a] = da: ad_alpha(d) = -d(alpha),
/// so the correction enters with a minus sign, and first order in alpha gives
/// x + [alpha, x] - d(alpha). Both sums terminate by nilpotence of m_A. The
/// action preserves Maurer-Cartan elements and composes along bch:
/// act(a, act(b, x)) = act(bch(a, b), x).
TensorElement gauge_act(const Dgla& l, const TensorElement& alpha, const TensorElement& x);

struct ObstructionClass {
  Vec representative;        // cocycle in L^2
  std::string kernel_label;  // the kernel generator the class is tensored with
  bool is_zero = false;      // representative is a coboundary
  Vec h2_coords;             // coordinates in the H^2 representative basis
};

/// Obstruction to lifting the Maurer-Cartan element x (over step.quotient)
/// across the small extension. Precondition: mc_residual(x) = 0.
ObstructionClass obstruction_class(const Dgla& l, const SmallExtensionStep& step,
                                   const TensorElement& x);

/// A Maurer-Cartan lift across the step when the obstruction vanishes:
/// zero-extension plus the solved linear correction. Empty otherwise.
std::optional<TensorElement> lift_mc(const Dgla& l, const SmallExtensionStep& step,
                                     const TensorElement& x);

struct GaugeSearch {
  enum class Status { found, none, undetermined };
  Status status = Status::none;
  std::optional<TensorElement> gauge;   // alpha with act(alpha, x) = y when found
  int failed_stage = -1;                // index into the ascending tower
  Vec h1_defect;                        // H^1 class of the defect at the failing stage
  std::vector<int> ambiguity_dims;      // dim ker(d^0) (x) J per completed stage
};

/// Deterministic order-by-order gauge search along the extension tower of
/// the common ring, always taking the free-pivot-zero solution. With
/// H^0(L) = 0 the outcome is definitive; otherwise a failure after the zero
/// path is reported as undetermined. Precondition: x and y Maurer-Cartan.
GaugeSearch find_gauge(const Dgla& l, const TensorElement& x, const TensorElement& y);

}  // namespace sdclab
