#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdclab/linalg.hpp"

namespace sdclab {

/// A level-capped cosimplicial vector space. All statements made by this
/// module are "up to cap": cofaces exist on levels 0..cap-1, codegeneracies
/// on levels 1..cap.
struct CosimplicialSpace {
  int cap = 0;
  std::vector<VectorSpace> levels;               // 0..cap
  std::vector<std::vector<LinearMap>> coface;    // coface[n][i]: n -> n+1, 0 <= i <= n+1
  std::vector<std::vector<LinearMap>> codegen;   // codegen[n][i]: n -> n-1, 0 <= i <= n-1

  const LinearMap& d_i(int level, int i) const { return coface[level][i]; }
  const LinearMap& s_i(int level, int i) const { return codegen[level][i]; }
  /// Alternating sum of the cofaces out of a level.
  LinearMap alternating_sum(int level) const;
};

struct IdentityViolation {
  std::string identity;  // e.g. "coface-coface", "codegen-coface"
  int level = 0;
  int i = 0;
  int j = 0;
};

struct CosimplicialReport {
  std::vector<IdentityViolation> violations;
  bool pass() const { return violations.empty(); }
  std::string summary() const;
};

CosimplicialReport check_cosimplicial(const CosimplicialSpace& x);

/// The operator fragment carried by a simplicial deformation complex:
/// cofaces 1..n only, codegeneracies 0..n-1.
struct SdcShape {
  int cap = 0;
  std::vector<VectorSpace> levels;
  std::vector<std::vector<LinearMap>> coface;   // coface[n][i-1]: n -> n+1, 1 <= i <= n
  std::vector<std::vector<LinearMap>> codegen;  // codegen[n][i]:  n -> n-1, 0 <= i <= n-1
};

SdcShape shape_of(const CosimplicialSpace& x);
CosimplicialReport check_shape(const SdcShape& x);

/// A non-negatively graded cochain complex with degree +1 differential.
struct CochainComplex {
  std::vector<VectorSpace> spaces;  // degrees 0..top
  std::vector<LinearMap> d;         // d[i]: i -> i+1 for i < top

  int top() const { return static_cast<int>(spaces.size()) - 1; }
  VectorSpace space(int i) const;   // zero space outside the stored range
  LinearMap diff(int i) const;      // zero map outside the stored range
};

/// Throws NotAComplexError when some d o d != 0.
void verify_complex(const CochainComplex& v);
HomologyView cohomology_view(const CochainComplex& v, int i);
int cohomology_dim(const CochainComplex& v, int i);

/// Conormalisation N^n = intersection of ker(codegeneracies), with the
/// alternating-sum differential. inclusion[n] embeds N^n into X^n;
/// projection[n] retracts along the span of the images of cofaces 1..n.
struct Conormalization {
  CochainComplex complex;
  std::vector<Matrix> inclusion;
  std::vector<Matrix> projection;
};

Conormalization conormalize(const CosimplicialSpace& x);

/// Quotient presentation Nbar^n = X^n / (im d^1 + ... + im d^n).
/// projection[n] maps X^n onto quotient coordinates; section[n] picks
/// standard-basis representatives.
struct CobarNormalization {
  CochainComplex complex;
  std::vector<Matrix> projection;
  std::vector<Matrix> section;
};

CobarNormalization cobar_normalize(const CosimplicialSpace& x);

/// Dimension of the i-th cohomotopy group, 0 <= i <= cap-1.
int cohomotopy(const CosimplicialSpace& x, int i);
HomologyView cohomotopy_view(const CosimplicialSpace& x, int i);

/// An (m,n)-shuffle with its permutation sign.
struct ShufflePair {
  std::vector<int> mu;   // strictly increasing, size m
  std::vector<int> nu;   // strictly increasing, size n
  int sign = 1;
};

/// All C(m+n, m) shuffles, memoized behind an internal lock.
const std::vector<ShufflePair>& shuffles(int m, int n);

/// The signed codegeneracy contraction X^{p+q} (x) X^{p+q} -> X^p (x) X^q:
/// sum over (mu,nu) of sign * (s^{nu_1}...s^{nu_q} (x) s^{mu_1}...s^{mu_p}).
LinearMap shuffle_contraction(const CosimplicialSpace& x, int p, int q);

/// Denormalisation of a cochain complex: level n is the direct sum of coface
/// words with indices in {1..n} applied to V^m, the index-0 copy having been
/// eliminated through the relation identifying dv with the alternating coface
/// sum. generator_inclusion[n] embeds V^n as the empty-word block.
struct Denormalization {
  CosimplicialSpace space;
  std::vector<Matrix> generator_inclusion;   // V^n -> D^n
  std::vector<Matrix> generator_projection;  // D^n -> V^n
};

Denormalization denormalize(const CochainComplex& v, int cap);

/// Simplicial vector spaces (the dual picture), used for the dual round-trip
/// checks. Faces drop a level, degeneracies raise one.
struct SimplicialSpace {
  int cap = 0;
  std::vector<VectorSpace> levels;
  std::vector<std::vector<LinearMap>> face;    // face[n][i]: n -> n-1, 0 <= i <= n
  std::vector<std::vector<LinearMap>> degen;   // degen[n][i]: n -> n+1, 0 <= i <= n
};

SimplicialSpace transpose(const CosimplicialSpace& x);
CosimplicialSpace transpose(const SimplicialSpace& s);
CosimplicialReport check_simplicial(const SimplicialSpace& s);
/// Homotopy of the Moore complex (faces 1..n intersected, d = face 0).
int simplicial_homotopy(const SimplicialSpace& s, int i);

}  // namespace sdclab
