#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blc/datum.hpp"
#include "blc/linalg.hpp"
#include "blc/rational.hpp"

namespace blc {

/// Derivative of sigma_j on g = s_1 + ... + s_m + z. Each simple ideal is
/// either killed or mapped injectively; the torus part maps linearly.
struct LinearizedMap {
  /// Sorted indices of the simple ideals that are not killed.
  std::vector<std::size_t> kept_simple;
  /// (target torus dim) x torus_dim integer matrix.
  Matrix torus_matrix;
};

/// Compact Lie algebra data: simple ideal dimensions, torus dimension and
/// linearized maps.
struct CompactLieDatum {
  std::vector<std::size_t> simple_dims;
  std::size_t torus_dim = 0;
  std::vector<LinearizedMap> maps;

  static CompactLieDatum make(std::vector<std::size_t> simple_dims, std::size_t torus_dim,
                              std::vector<LinearizedMap> maps);

  std::size_t group_dim() const;
  std::size_t size() const { return maps.size(); }
};

/// An ideal: a set of simple ideals plus a rational subspace of the torus.
struct IdealSpec {
  std::vector<std::size_t> simple_part;
  /// RREF basis rows of length torus_dim.
  Matrix torus_basis;

  static IdealSpec zero() { return {}; }
  static IdealSpec whole(const CompactLieDatum& d);
  /// Normalizes: sorted unique simple part, RREF torus basis.
  static IdealSpec make(std::vector<std::size_t> simple, const Matrix& torus_rows, std::size_t torus_dim);

  friend bool operator==(const IdealSpec&, const IdealSpec&) = default;
  std::string str() const;
};

/// Order used for pools: dimension, then simple part, then basis.
bool ideal_less(const CompactLieDatum& d, const IdealSpec& a, const IdealSpec& b);

struct IdealDims {
  std::size_t dim = 0;
  std::vector<std::size_t> image_dims;
};

IdealDims ideal_dims(const CompactLieDatum& d, const IdealSpec& n);

struct Violation {
  IdealSpec ideal;
  /// LHS - RHS of the violated inequality (> 0).
  Rational slack;
};

struct CodimResult {
  bool ok = true;
  std::optional<Violation> violator;
  std::size_t checked = 0;
};

/// sum_j (1/p_j)(dim sigma_j g - dim sigma_j n) <= dim g - dim n for every
/// ideal in the list; g itself is skipped.
CodimResult codimension_check(const CompactLieDatum& d, const std::vector<Exponent>& p,
                              const std::vector<IdealSpec>& ideals);

struct IdealPool {
  std::vector<IdealSpec> ideals;
  /// A closure round added nothing new.
  bool stabilized = false;
  std::size_t rounds = 0;
};

/// Closes {0} + kernels + extras under pairwise sums and intersections.
IdealPool kernel_lattice_pool(const CompactLieDatum& d, const std::vector<IdealSpec>& extras = {},
                              std::size_t max_closure = 3, std::size_t pool_cap = 10000);

/// Every ideal of a datum without torus (all subsets of simple ideals).
std::vector<IdealSpec> semisimple_ideals(const CompactLieDatum& d);

struct Halfspace {
  std::vector<Rational> coeffs;
  Rational bound;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// sum c_j x_j <= b for each halfspace, with the box 0 <= x_j <= 1 implicit.
struct RationalPolytope {
  std::size_t dim = 0;
  std::vector<Halfspace> halfspaces;
};

RationalPolytope bl_polytope(const CompactLieDatum& d, const std::vector<IdealSpec>& ideals);

struct VertexReport {
  std::vector<std::vector<Rational>> points;
  /// Per halfspace: tight at no vertex.
  std::vector<bool> redundant;
};

/// Exact vertex enumeration over J-subsets of the constraints (box included).
VertexReport vertices(const RationalPolytope& poly, std::size_t max_dim = 8);

bool membership(const RationalPolytope& poly, const std::vector<Rational>& x);
bool membership(const RationalPolytope& poly, const std::vector<Exponent>& p);

enum class Verdict { Finite, Infinite, Undecided };
std::string verdict_name(Verdict v);

struct PartVerdict {
  Verdict verdict = Verdict::Finite;
  bool complete = true;
  std::size_t pool_size = 0;
  std::optional<Violation> violator;
};

struct FinitenessReport {
  Verdict verdict = Verdict::Finite;
  /// Violator as an ideal of the full algebra.
  std::optional<Violation> violator;
  PartVerdict semisimple;
  PartVerdict torus;
  IdealPool torus_pool;
  std::string note;
};

struct FinitenessOptions {
  std::vector<IdealSpec> extras;
  std::size_t max_closure = 3;
  std::size_t pool_cap = 10000;
};

/// Splits into commutator and central parts; FINITE only when both parts
/// pass over certified-complete ideal sets.
FinitenessReport finiteness(const CompactLieDatum& d, const std::vector<Exponent>& p,
                            const FinitenessOptions& options = {});

struct BcctResult {
  bool scaling_ok = false;
  /// sum_j dim(B_j V)/p_j - dim V at V = whole space.
  Rational scaling_defect;
  bool dims_ok = true;
  /// Subspace violating dim V <= sum_j dim(B_j V)/p_j.
  std::optional<Matrix> witness;
  bool ok() const { return scaling_ok && dims_ok; }
};

/// Scaling equality plus dimension inequalities over the subspace pool, for
/// linear maps B_j : Q^dim -> Q^{d_j}.
BcctResult bcct_check(std::size_t dim, const std::vector<Matrix>& maps, const std::vector<Exponent>& p,
                      const std::vector<Matrix>& subspaces);

/// (restriction to the semisimple part, restriction to the torus).
std::pair<CompactLieDatum, CompactLieDatum> split_commutator_center(const CompactLieDatum& d);

}  // namespace blc
