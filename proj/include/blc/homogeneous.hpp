#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blc/datum.hpp"
#include "blc/rational.hpp"

namespace blc {

/// Dilation weights d_i (with multiplicity), kept sorted.
struct DilationStructure {
  std::vector<Rational> weights;

  static DilationStructure make(std::vector<Rational> weights);
  /// H^n: 2n weights equal to 1 and one weight 2.
  static DilationStructure heisenberg(std::size_t n);
};

/// Q = sum of the weights.
Rational homogeneous_dimension(const DilationStructure& w);

struct ScalingResult {
  bool holds = false;
  /// sum_j Q_j / p_j - Q.
  Rational defect;
};

ScalingResult scaling_condition(const Rational& q, const std::vector<Rational>& qj, const std::vector<Exponent>& p);

/// Element (z, t) of H^n = C^n x R with rational coordinates.
struct HeisenbergElement {
  /// (re, im) pairs.
  std::vector<std::pair<Rational, Rational>> z;
  Rational t;

  static HeisenbergElement identity(std::size_t n);
  std::size_t n() const { return z.size(); }
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// Im(conj(z) . z') summed over coordinates.
Rational symplectic(const HeisenbergElement& a, const HeisenbergElement& b);

/// (z, t)(z', t') = (z + z', t + t' + Im(conj(z) . z') / 2).
HeisenbergElement heisenberg_multiply(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement heisenberg_inverse(const HeisenbergElement& a);
/// a^-1 b^-1 a b, computed through the group law.
HeisenbergElement heisenberg_commutator(const HeisenbergElement& a, const HeisenbergElement& b);

struct ApproximationWitness {
  std::vector<Rational> times;
  /// integers[m][j] with |t_m - alpha_j k| < eps.
  std::vector<std::vector<std::int64_t>> integers;
  Rational eps;
  Rational spacing;
  std::uint64_t scanned = 0;
};

/// Times t_m with |t_m - alpha_j k_{j,m}| < eps for every j and
/// t_{m+1} - t_m >= spacing. Candidates are the multiples k alpha_1,
/// k = 1, 2, ...; each other alpha_j uses the nearest multiple. Throws
/// BudgetError after `budget` candidates.
ApproximationWitness kronecker_sequence(const std::vector<Rational>& alphas, const Rational& eps, std::size_t count,
                                        const Rational& spacing, std::uint64_t budget = 100000000);

/// Exact re-check of the defining inequalities.
bool verify_witness(const ApproximationWitness& w, const std::vector<Rational>& alphas);

struct DivergenceWitness {
  std::size_t terms = 0;
  Rational lower_bound;
  /// Lebesgue volume of the box U.
  Rational unit_volume;
  ApproximationWitness approximation;
};

/// Lower bound for the form with inputs 1 on (0, [-eps, eps]) U: the
/// translates (0, t_m)^-1 U are pairwise disjoint and each contributes |U|.
/// Returns the smallest number of terms with terms * |U| > M.
DivergenceWitness divergence_witness(std::size_t n, const std::vector<Rational>& alphas, const Rational& m,
                                     const Rational& box_halfwidth, const Rational& eps,
                                     std::uint64_t budget = 100000000);

}  // namespace blc
