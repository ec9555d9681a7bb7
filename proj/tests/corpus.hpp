#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "blc/constant.hpp"
#include "blc/datum.hpp"
#include "blc/exact_value.hpp"
#include "blc/group.hpp"
#include "blc/lie.hpp"

namespace blc::testing {

GroupPtr z(std::size_t n);
GroupPtr s3();

Exponent ex(const std::string& s);
std::vector<Exponent> exps(const std::vector<std::string>& s);

/// G with J identity maps G -> G.
BLDatum identity_datum(const GroupPtr& g, const std::vector<Exponent>& p, HaarMode mode = HaarMode::Probability);

/// Iterated direct product with the coordinate projections.
struct Product {
  GroupPtr group;
  std::vector<GroupPtr> factors;
  std::vector<Homomorphism> projections;
};
Product product_of(const std::vector<GroupPtr>& factors, const GroupLimits& limits = {});

/// H <= factors product as a standalone group with the restricted
/// coordinate projections onto the factors.
BLDatum subgroup_datum(const Product& prod, const Subgroup& h, const std::vector<Exponent>& p,
                       HaarMode mode = HaarMode::Probability);

/// Coordinate projections of A x B (Loomis-Whitney style on Z2 x Z2 etc).
BLDatum projection_datum(const std::vector<GroupPtr>& factors, const std::vector<Exponent>& p,
                         HaarMode mode = HaarMode::Probability);

struct CorpusEntry {
  std::string name;
  /// Exponents set to 2 everywhere; replace with with_exponents.
  BLDatum datum;
};

/// Canonical data: subgroups of products of 2-3 factors from {Z2, Z3, Z4, S3}
/// (factor lists taken up to order) that project onto every factor, with
/// |G| <= max_order. Probability Haar.
std::vector<CorpusEntry> finite_corpus(std::size_t max_order = 64);

/// Exponent values {1, 3/2, 2, 3, inf}.
std::vector<Exponent> exponent_values();
/// All J-tuples over exponent_values().
std::vector<std::vector<Exponent>> exponent_tuples(std::size_t j);

/// Every subset of G closed under the law (brute force, |G| <= 20).
std::vector<std::vector<Element>> brute_force_subgroups(const FiniteGroup& g);

/// max over every subgroup (no canonicalization, no saturation) of the
/// ratio, evaluated independently of the constant module.
ExactValue brute_force_constant(const BLDatum& d);

/// Torus Lie datum from integer matrices.
CompactLieDatum torus_datum(std::size_t dim, const std::vector<std::vector<std::vector<long long>>>& maps);
/// T^3 with the three coordinate-deleting projections.
CompactLieDatum t3_loomis_whitney();

}  // namespace blc::testing
