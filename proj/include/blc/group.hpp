#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blc/rational.hpp"

namespace blc {

/// Elements of a finite group are dense indices 0..order-1.
using Element = std::uint32_t;

struct GroupLimits {
  std::size_t order_cap = 4096;
};

/// Fixed-universe bitset over the elements of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }
  void insert(Element x) { words_[x >> 6] |= (std::uint64_t{1} << (x & 63)); }
  bool contains(Element x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  std::size_t count() const;
  std::vector<Element> members() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool is_subset_of(const ElementSet& other) const;
  ElementSet operator&(const ElementSet& other) const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept;
};

/// A finite group given by its full multiplication table.
///
/// Construction validates the table: entries in range, a two-sided identity,
/// Latin-square rows and columns (hence inverses), and associativity (full
/// scan up to order 256, 10^4 seeded random triples above).
class FiniteGroup {
 public:
  /// `table[x][y]` holds x*y.
  static std::shared_ptr<const FiniteGroup> from_table(const std::vector<std::vector<Element>>& table,
                                                       std::vector<std::string> labels = {},
                                                       const GroupLimits& limits = {});

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }
  Element mul(Element x, Element y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  Element inverse(Element x) const { return inverse_[x]; }
  Element conjugate(Element x, Element n) const { return mul(mul(x, n), inverse(x)); }

  /// Display label; falls back to the index.
  std::string label(Element x) const;
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t element_order(Element x) const;
  bool is_abelian() const;

  /// Table as nested rows (for serialization).
  std::vector<std::vector<Element>> rows() const;

  /// The same table relabeled so the identity has index 0, other elements
  /// keeping their relative order. Used for content hashing.
  std::vector<Element> canonical_table() const;

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Z_{n1} x ... x Z_{nk}, lexicographic encoding (last coordinate fastest).
GroupPtr make_cyclic_product(std::span<const std::size_t> moduli, const GroupLimits& limits = {});
GroupPtr make_cyclic(std::size_t n, const GroupLimits& limits = {});

/// Group generated by permutations of {0..degree-1} (image lists). Elements
/// are indexed in lexicographic order of their image lists, so the identity
/// is element 0.
GroupPtr make_permutation_group(std::size_t degree, const std::vector<std::vector<std::size_t>>& generators,
                                const GroupLimits& limits = {});

/// Symmetric group S_n via its two standard generators.
GroupPtr make_symmetric_group(std::size_t n, const GroupLimits& limits = {});

/// A subgroup of a finite group: sorted member list plus a bitset.
class Subgroup {
 public:
  /// Checked: members must contain the identity and be closed under the
  /// group law. Throws PreconditionError otherwise.
  static Subgroup from_members(GroupPtr parent, std::vector<Element> members);
  /// Empty placeholder; not a subgroup of anything.
  Subgroup() = default;
  /// Unchecked; `members` must already be a subgroup.
  Subgroup(GroupPtr parent, ElementSet members);

  static Subgroup whole(const GroupPtr& parent);
  static Subgroup trivial(const GroupPtr& parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Element>& members() const { return members_; }
  const ElementSet& set() const { return set_; }
  std::size_t order() const { return members_.size(); }
  bool contains(Element x) const { return set_.contains(x); }
  bool is_subgroup_of(const Subgroup& other) const;

  /// Position of x in the sorted member list.
  std::size_t index_of(Element x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  GroupPtr parent_;
  ElementSet set_;
  std::vector<Element> members_;
};

/// Canonical order: size first, then lexicographic member list.
bool canonical_less(const Subgroup& a, const Subgroup& b);

/// Subgroup generated by `generators`.
Subgroup closure(const GroupPtr& parent, std::span<const Element> generators);

/// Complete, duplicate-free, canonically ordered list of subgroups.
std::vector<Subgroup> all_subgroups(const GroupPtr& group, const GroupLimits& limits = {});

class Homomorphism {
 public:
  /// Checked: map(x*y) == map(x)*map(y) for all x, y.
  static Homomorphism make(GroupPtr domain, GroupPtr codomain, std::vector<Element> images);
  static Homomorphism identity(const GroupPtr& group);
  /// Map sending everything to the identity.
  static Homomorphism trivial(const GroupPtr& domain, const GroupPtr& codomain);

  const GroupPtr& domain() const { return domain_; }
  const GroupPtr& codomain() const { return codomain_; }
  Element operator()(Element x) const { return images_[x]; }
  const std::vector<Element>& images() const { return images_; }

  bool is_surjective() const;
  bool is_injective() const;

  /// `after` o `*this`.
  Homomorphism then(const Homomorphism& after) const;

  friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  Homomorphism(GroupPtr domain, GroupPtr codomain, std::vector<Element> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {}

  GroupPtr domain_;
  GroupPtr codomain_;
  std::vector<Element> images_;
};

struct ProductGroup {
  GroupPtr group;
  Homomorphism proj_a;
  Homomorphism proj_b;
};

/// A x B with element (a, b) encoded as a*|B| + b.
ProductGroup direct_product(const GroupPtr& a, const GroupPtr& b, const GroupLimits& limits = {});

/// Element of A x B built from its coordinates, matching direct_product's encoding.
inline Element product_element(const FiniteGroup& b, Element x, Element y) {
  return static_cast<Element>(x * b.order() + y);
}

Subgroup image(const Homomorphism& h, const Subgroup& sub);
Subgroup preimage(const Homomorphism& h, const Subgroup& sub);
Subgroup kernel(const Homomorphism& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// A pair with x*n*x^-1 outside the subgroup, if one exists.
struct NormalityWitness {
  Element x;
  Element n;
};
std::optional<NormalityWitness> normality_witness(const Subgroup& sub);
bool is_normal(const Subgroup& sub);

struct Quotient {
  GroupPtr group;
  Homomorphism projection;
  /// Smallest element of each coset, in quotient index order.
  std::vector<Element> representatives;
};

/// G/N; throws PreconditionError naming a witness when N is not normal.
Quotient quotient(const Subgroup& normal);

/// A subgroup realized as a standalone group: element i is members()[i].
struct Embedding {
  GroupPtr group;
  Homomorphism inclusion;
};
Embedding as_group(const Subgroup& sub);

/// h restricted to `sub` with codomain corestricted to the subgroup `target`
/// (which must contain h(sub)). Domain and codomain are the standalone groups.
Homomorphism restrict_corestrict(const Homomorphism& h, const Embedding& domain, const Embedding& target);

/// Haar normalizations on a finite group.
enum class HaarMode { Counting, Probability };

/// |H| (COUNTING) or |H|/|G| (PROBABILITY).
Rational haar_mass(const Subgroup& sub, HaarMode mode);

/// A Haar measure on a finite group is a uniform point mass. Besides the two
/// standard modes, reductions can produce other uniform masses (for example
/// the compact quotient normalization of a counting measure); those are
/// tagged Scaled.
struct Haar {
  enum class Kind { Counting, Probability, Scaled };

  Kind kind = Kind::Counting;
  Rational atom = 1;

  static Haar counting() { return {Kind::Counting, 1}; }
  static Haar probability(std::size_t order) { return {Kind::Probability, Rational(1, static_cast<std::int64_t>(order))}; }
  static Haar of_mode(HaarMode mode, std::size_t order) {
    return mode == HaarMode::Counting ? counting() : probability(order);
  }
  /// Tags the atom as counting/probability when it matches one of them.
  static Haar from_atom(Rational atom, std::size_t order);

  Rational mass(std::size_t count) const { return atom * Rational(static_cast<std::int64_t>(count)); }
  /// "counting", "probability", or the atom as a rational string.
  std::string label() const;

  friend bool operator==(const Haar&, const Haar&) = default;
};

}  // namespace blc
