#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blc/group.hpp"
#include "blc/rational.hpp"

namespace blc {

/// p in [1, inf], kept exact.
class Exponent {
 public:
  /// Finite exponent; throws PreconditionError when value < 1.
  static Exponent finite(Rational value);
  static Exponent infinity() { return Exponent(); }
  /// "2", "3/2", "1.5", "inf", "infinity".
  static Exponent parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  /// Throws PreconditionError for infinity.
  const Rational& value() const;
  /// 1/p, with 1/inf = 0.
  Rational reciprocal() const { return infinite_ ? Rational(0) : value_.reciprocal(); }
  double to_double() const;
  std::string str() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() = default;
  bool infinite_ = true;
  Rational value_ = 1;
};

std::vector<Exponent> parse_exponents(const std::string& comma_list);

/// (G, sigma, p) together with the Haar normalizations of G and each G_j.
struct BLDatum {
  GroupPtr group;
  std::vector<GroupPtr> codomains;
  std::vector<Homomorphism> maps;
  std::vector<Exponent> exponents;
  Haar haar_group;
  std::vector<Haar> haar_codomains;

  /// Checks list lengths and that each map runs G -> G_j. J = 0 is allowed
  /// (its constant is the total mass of G).
  static BLDatum make(GroupPtr group, std::vector<Homomorphism> maps, std::vector<Exponent> exponents,
                      Haar haar_group, std::vector<Haar> haar_codomains);
  /// Same Haar mode on G and on every codomain.
  static BLDatum make(GroupPtr group, std::vector<Homomorphism> maps, std::vector<Exponent> exponents,
                      HaarMode mode);

  std::size_t size() const { return maps.size(); }
  /// True when G and the codomains do not all carry the same kind of Haar
  /// measure. Such data are accepted and flagged in reports.
  bool mixed_haar() const;
  /// Total Haar mass of G.
  Rational total_mass() const { return haar_group.mass(group->order()); }

  BLDatum with_exponents(std::vector<Exponent> p) const;
};

struct CanonicalTag {
  bool is_canonical = true;
  /// Empty when canonical; otherwise names the failing index or the kernel.
  std::string witness;
};

CanonicalTag canonical_tag(const BLDatum& d);

struct CanonicalForm {
  BLDatum datum;
  /// Tag of the input datum.
  CanonicalTag input_tag;
  /// G -> G/N with N the joint kernel (identity when already canonical).
  Homomorphism projection;
};

/// Replaces G by G/(joint kernel) and each G_j by sigma_j(G). The quotient
/// carries the compact-quotient normalization (atom scaled by |N|) and each
/// sigma_j(G) keeps the atom of G_j, so the constant is unchanged.
/// Canonical input is returned as is.
CanonicalForm canonicalize(const BLDatum& d);

/// Deletes index k; requires p_k = inf.
BLDatum drop_infinite_exponent(const BLDatum& d, std::size_t k);

/// Datum on N = ker sigma_k with the maps sigma_j|N onto sigma_j(N), index k
/// removed. Requires a canonical datum with p_k = 1. The Haar atom on N is
/// atom(G)/atom(G_k); sigma_j(N) keeps the atom of G_j.
BLDatum reduce_p1(const BLDatum& d, std::size_t k);

/// Tensor datum on G1 x G2 with maps sigma_j^1 x sigma_j^2 onto G1_j x G2_j.
/// Requires equal J and identical exponents. Haar atoms multiply.
BLDatum split_product(const BLDatum& d1, const BLDatum& d2, const GroupLimits& limits = {});

struct QuotientSplit {
  BLDatum restricted;
  BLDatum quotient;
};

/// Restriction to N and the induced datum on G/N. Requires N normal in G and
/// every sigma_j(N) normal in G_j. Normalizations satisfy the quotient
/// integral formula: a counting parent gives counting measures on both
/// sides; otherwise the subgroup gets probability and the quotient gets the
/// parent atom times the subgroup order.
QuotientSplit quotient_split(const BLDatum& d, const Subgroup& normal);

}  // namespace blc
