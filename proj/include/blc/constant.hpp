#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blc/datum.hpp"
#include "blc/exact_value.hpp"
#include "blc/group.hpp"

namespace blc {

/// |H|_G / prod_j |sigma_j(H)|_{G_j}^{1/p_j}, with 1/inf = 0.
ExactValue ratio(const BLDatum& d, const Subgroup& h);

/// H* = intersection over j of sigma_j^{-1}(sigma_j(H)).
Subgroup saturate(const BLDatum& d, const Subgroup& h);
bool is_saturated(const BLDatum& d, const Subgroup& h);

struct Candidate {
  Subgroup subgroup;
  ExactValue value;
};

/// Supplies the subgroup list of a group; lets callers plug in a cache.
using SubgroupProvider = std::function<std::vector<Subgroup>(const GroupPtr&)>;

struct ConstantOptions {
  GroupLimits limits;
  /// Keep every evaluated (subgroup, value) pair in the report.
  bool keep_candidates = false;
  /// Evaluate every subgroup instead of saturated ones only.
  bool all_subgroups = false;
  /// Defaults to all_subgroups(group, limits).
  SubgroupProvider provider;
};

struct ConstantReport {
  ExactValue value;
  /// Maximizer as a subgroup of the input group (preimage of the maximizer
  /// of the canonical datum).
  Subgroup argmax;
  bool saturated = true;
  /// Another evaluated subgroup attains the same value.
  bool ties = false;
  /// Input was not canonical and was canonicalized first.
  bool canonicalized = false;
  CanonicalTag input_tag;
  /// Subgroups of the canonical group, and how many were evaluated.
  std::size_t subgroup_count = 0;
  std::size_t evaluated = 0;
  /// Candidates as subgroups of the canonical group, in canonical order.
  std::vector<Candidate> candidates;
};

/// Maximizes the ratio over (saturated) subgroups of the canonical form of d.
/// Ties go to the smaller subgroup, then the lexicographically smaller one.
ConstantReport bl_constant(const BLDatum& d, const ConstantOptions& options = {});

/// Indicators of sigma_j(H*) over each G_j for the argmax H*.
std::vector<std::vector<Rational>> extremizer(const BLDatum& d, const ConstantReport& report);

}  // namespace blc
