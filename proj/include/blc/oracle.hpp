#pragma once

#include <cstdint>
#include <vector>

#include "blc/datum.hpp"
#include "blc/exact_value.hpp"

namespace blc {

/// One nonnegative function per codomain, indexed by element.
using InputTuple = std::vector<std::vector<double>>;
using RationalTuple = std::vector<std::vector<Rational>>;

/// sum_x w(x) prod_j f_j(sigma_j(x)) with w the Haar weight of G.
double evaluate_form(const BLDatum& d, const InputTuple& t);
Rational evaluate_form(const BLDatum& d, const RationalTuple& t);

/// ||f||_p on G_j under its Haar measure (max for p = inf).
double lp_norm(const BLDatum& d, std::size_t j, const std::vector<double>& f);

/// Form divided by the product of norms. Throws PreconditionError on a zero norm.
double rayleigh(const BLDatum& d, const InputTuple& t);

struct AscentTrace {
  /// Rayleigh quotient at the start and after every sweep.
  std::vector<double> values;
  std::size_t iterations = 0;
  bool converged = false;
};

struct AscentOptions {
  double tol = 1e-12;
  std::size_t max_sweeps = 10000;
};

struct AscentResult {
  double value = 0.0;
  InputTuple tuple;
  AscentTrace trace;
};

/// Block coordinate ascent with the exact Holder-dual block maximizer:
/// f_k ~ W_k^{1/(p_k-1)} for 1 < p_k < inf, uniform mass on argmax W_k for
/// p_k = 1, f_k = 1 for p_k = inf. Every block is renormalized to unit norm.
AscentResult alternating_ascent(const BLDatum& d, const InputTuple& init, const AscentOptions& options = {});

struct OracleOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  AscentOptions ascent;
  /// Add one run started from the extremizer of the subgroup formula.
  bool extremizer_run = true;
};

struct OracleResult {
  double value = 0.0;
  /// Best value over the random restarts alone.
  double random_best = 0.0;
  std::vector<AscentTrace> traces;
};

/// Max of alternating_ascent over seeded random positive starts (plus the
/// extremizer-seeded run). Deterministic in the seed.
OracleResult oracle_constant(const BLDatum& d, const OracleOptions& options = {});

/// Random positive start, entries uniform in [1/10, 1).
InputTuple random_input(const BLDatum& d, std::uint64_t seed);

struct ExhaustiveResult {
  ExactValue value;
  /// One maximizing tuple of nonempty sets (sorted element lists).
  std::vector<std::vector<Element>> argmax_sets;
  /// Number of set tuples covered (counting collapsed ones).
  std::uint64_t tuples = 0;
};

/// Exact maximum of the Rayleigh quotient over nonzero indicator tuples.
/// Requires prod_j 2^|G_j| <= budget, else BudgetError.
ExhaustiveResult exhaustive_indicator_search(const BLDatum& d, std::uint64_t budget = std::uint64_t{1} << 24);

}  // namespace blc
