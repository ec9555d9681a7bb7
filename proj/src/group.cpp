#include "blc/group.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "blc/errors.hpp"

namespace blc {

// ---------------------------------------------------------------- ElementSet

std::size_t ElementSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Element> ElementSet::members() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<Element>(i * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

ElementSet ElementSet::operator&(const ElementSet& other) const {
  ElementSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
  return out;
}

std::size_t ElementSetHash::operator()(const ElementSet& s) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : s.words()) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// --------------------------------------------------------------- FiniteGroup

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(const std::vector<std::vector<Element>>& table,
                                                           std::vector<std::string> labels,
                                                           const GroupLimits& limits) {
  const std::size_t n = table.size();
  if (n == 0) throw PreconditionError("group table is empty");
  if (n > limits.order_cap)
    throw BudgetError("group order " + std::to_string(n) + " exceeds the order cap " +
                      std::to_string(limits.order_cap));
  if (!labels.empty() && labels.size() != n)
    throw PreconditionError("label count " + std::to_string(labels.size()) + " does not match order " +
                            std::to_string(n));

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n) throw PreconditionError("group table row " + std::to_string(x) + " has wrong length");
    for (std::size_t y = 0; y < n; ++y) {
      if (table[x][y] >= n) throw PreconditionError("group table entry out of range at (" + std::to_string(x) + "," +
                                                    std::to_string(y) + ")");
      g->table_[x * n + y] = table[x][y];
    }
  }

  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[g->table_[x * n + y]]++) throw PreconditionError("row " + std::to_string(x) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[g->table_[y * n + x]]++) throw PreconditionError("column " + std::to_string(x) + " is not a permutation");
    }
  }

  std::optional<Element> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = g->table_[e * n + x] == x && g->table_[x * n + e] == x;
    if (ok) identity = static_cast<Element>(e);
  }
  if (!identity) throw PreconditionError("group table has no two-sided identity");
  g->identity_ = *identity;

  g->inverse_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (g->table_[x * n + y] == *identity) {
        if (g->table_[y * n + x] != *identity)
          throw PreconditionError("element " + std::to_string(x) + " has no two-sided inverse");
        g->inverse_[x] = static_cast<Element>(y);
        break;
      }
    }
  }

  auto check = [&](std::size_t x, std::size_t y, std::size_t z) {
    if (g->mul(g->mul(static_cast<Element>(x), static_cast<Element>(y)), static_cast<Element>(z)) !=
        g->mul(static_cast<Element>(x), g->mul(static_cast<Element>(y), static_cast<Element>(z))))
      throw PreconditionError("group table is not associative at (" + std::to_string(x) + "," + std::to_string(y) +
                              "," + std::to_string(z) + ")");
  };
  if (n <= 256) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) check(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eedULL ^ n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 10000; ++i) check(pick(rng), pick(rng), pick(rng));
  }

  g->labels_ = std::move(labels);
  return g;
}

std::string FiniteGroup::label(Element x) const {
  if (!labels_.empty()) return labels_[x];
  return std::to_string(x);
}

std::size_t FiniteGroup::element_order(Element x) const {
  std::size_t k = 1;
  for (Element y = x; y != identity_; y = mul(y, x)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t x = 0; x < order_; ++x)
    for (std::size_t y = x + 1; y < order_; ++y)
      if (mul(static_cast<Element>(x), static_cast<Element>(y)) != mul(static_cast<Element>(y), static_cast<Element>(x)))
        return false;
  return true;
}

std::vector<std::vector<Element>> FiniteGroup::rows() const {
  std::vector<std::vector<Element>> out(order_);
  for (std::size_t x = 0; x < order_; ++x)
    out[x].assign(table_.begin() + static_cast<std::ptrdiff_t>(x * order_),
                  table_.begin() + static_cast<std::ptrdiff_t>((x + 1) * order_));
  return out;
}

std::vector<Element> FiniteGroup::canonical_table() const {
  // relabel: identity -> 0, others keep relative order
  std::vector<Element> to_new(order_);
  Element next = 1;
  for (std::size_t x = 0; x < order_; ++x) to_new[x] = (x == identity_) ? 0 : next++;
  std::vector<Element> out(order_ * order_);
  for (std::size_t x = 0; x < order_; ++x)
    for (std::size_t y = 0; y < order_; ++y)
      out[to_new[x] * order_ + to_new[y]] = to_new[table_[x * order_ + y]];
  return out;
}

// ------------------------------------------------------------- constructors

GroupPtr make_cyclic_product(std::span<const std::size_t> moduli, const GroupLimits& limits) {
  std::size_t order = 1;
  for (auto m : moduli) {
    if (m == 0) throw PreconditionError("cyclic modulus must be >= 1");
    order *= m;
    if (order > limits.order_cap)
      throw BudgetError("cyclic product order exceeds the order cap " + std::to_string(limits.order_cap));
  }
  const std::size_t k = moduli.size();
  auto decode = [&](std::size_t x) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = k; i-- > 0;) {
      c[i] = x % moduli[i];
      x /= moduli[i];
    }
    return c;
  };
  std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < order; ++x) {
    auto cx = decode(x);
    for (std::size_t y = 0; y < order; ++y) {
      auto cy = decode(y);
      std::size_t z = 0;
      for (std::size_t i = 0; i < k; ++i) z = z * moduli[i] + (cx[i] + cy[i]) % moduli[i];
      table[x][y] = static_cast<Element>(z);
    }
    if (k > 1) {
      std::ostringstream os;
      os << '(';
      for (std::size_t i = 0; i < k; ++i) os << (i ? "," : "") << cx[i];
      os << ')';
      labels.push_back(os.str());
    }
  }
  return FiniteGroup::from_table(table, std::move(labels), limits);
}

GroupPtr make_cyclic(std::size_t n, const GroupLimits& limits) {
  std::size_t moduli[] = {n};
  return make_cyclic_product(moduli, limits);
}

GroupPtr make_permutation_group(std::size_t degree, const std::vector<std::vector<std::size_t>>& generators,
                                const GroupLimits& limits) {
  using Perm = std::vector<std::size_t>;
  for (const auto& g : generators) {
    if (g.size() != degree) throw PreconditionError("generator length does not match degree");
    std::vector<char> seen(degree);
    for (auto v : g) {
      if (v >= degree || seen[v]++) throw PreconditionError("generator is not a permutation");
    }
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [&](const Perm& a, const Perm& b) {  // apply a, then b
    Perm c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = b[a[i]];
    return c;
  };

  std::map<Perm, Element> index;
  std::deque<Perm> queue{id};
  index.emplace(id, 0);
  while (!queue.empty()) {
    Perm p = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Perm q = compose(p, g);
      if (index.emplace(q, 0).second) {
        if (index.size() > limits.order_cap)
          throw BudgetError("permutation group order exceeds the order cap " + std::to_string(limits.order_cap));
        queue.push_back(std::move(q));
      }
    }
  }
  std::vector<Perm> elements;
  Element next = 0;
  for (auto& [perm, idx] : index) {
    idx = next++;
    elements.push_back(perm);
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) table[x][y] = index.at(compose(elements[x], elements[y]));
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < degree; ++i) os << (i ? " " : "") << elements[x][i];
    os << ']';
    labels[x] = os.str();
  }
  return FiniteGroup::from_table(table, std::move(labels), limits);
}

GroupPtr make_symmetric_group(std::size_t n, const GroupLimits& limits) {
  if (n <= 1) return make_permutation_group(n, {}, limits);
  std::vector<std::size_t> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return make_permutation_group(n, {swap, cycle}, limits);
}

// ----------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, ElementSet members)
    : parent_(std::move(parent)), set_(std::move(members)), members_(set_.members()) {}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<Element> members) {
  ElementSet set(parent->order());
  for (auto x : members) {
    if (x >= parent->order()) throw PreconditionError("subgroup member " + std::to_string(x) + " out of range");
    set.insert(x);
  }
  if (!set.contains(parent->identity())) throw PreconditionError("subgroup does not contain the identity");
  auto list = set.members();
  for (auto x : list)
    for (auto y : list)
      if (!set.contains(parent->mul(x, y)))
        throw PreconditionError("set is not closed: " + std::to_string(x) + "*" + std::to_string(y) + " = " +
                                std::to_string(parent->mul(x, y)) + " is missing");
  return Subgroup(std::move(parent), std::move(set));
}

Subgroup Subgroup::whole(const GroupPtr& parent) {
  ElementSet set(parent->order());
  for (std::size_t x = 0; x < parent->order(); ++x) set.insert(static_cast<Element>(x));
  return Subgroup(parent, std::move(set));
}

Subgroup Subgroup::trivial(const GroupPtr& parent) {
  ElementSet set(parent->order());
  set.insert(parent->identity());
  return Subgroup(parent, std::move(set));
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return parent_ == other.parent_ && set_.is_subset_of(other.set_);
}

std::size_t Subgroup::index_of(Element x) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), x);
  if (it == members_.end() || *it != x) throw PreconditionError("element " + std::to_string(x) + " is not a member");
  return static_cast<std::size_t>(it - members_.begin());
}

bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members() < b.members();
}

namespace {

ElementSet close_set(const FiniteGroup& g, ElementSet set, std::span<const Element> generators) {
  std::vector<Element> frontier = set.members();
  if (!set.contains(g.identity())) {
    set.insert(g.identity());
    frontier.push_back(g.identity());
  }
  while (!frontier.empty()) {
    Element x = frontier.back();
    frontier.pop_back();
    for (Element s : generators) {
      Element y = g.mul(x, s);
      if (!set.contains(y)) {
        set.insert(y);
        frontier.push_back(y);
      }
    }
  }
  return set;
}

}  // namespace

Subgroup closure(const GroupPtr& parent, std::span<const Element> generators) {
  for (auto s : generators)
    if (s >= parent->order()) throw PreconditionError("generator out of range");
  ElementSet start(parent->order());
  start.insert(parent->identity());
  return Subgroup(parent, close_set(*parent, std::move(start), generators));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& group, const GroupLimits& limits) {
  const FiniteGroup& g = *group;
  if (g.order() > limits.order_cap)
    throw BudgetError("group order " + std::to_string(g.order()) + " exceeds the order cap");

  struct Node {
    ElementSet set;
    std::vector<Element> gens;
  };
  std::vector<Node> nodes;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;

  ElementSet trivial(g.order());
  trivial.insert(g.identity());
  seen.emplace(trivial, 0);
  nodes.push_back({trivial, {}});

  // Every subgroup is reached from a smaller one by adjoining one element;
  // closures <H, g> are memoized through `seen`.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ElementSet handled = nodes[i].set;
    const auto members = nodes[i].set.members();
    for (std::size_t x = 0; x < g.order(); ++x) {
      const auto elem = static_cast<Element>(x);
      if (handled.contains(elem)) continue;
      // <H, x> == <H, h*x> for h in H: skip the rest of the coset.
      for (auto h : members) handled.insert(g.mul(h, elem));
      std::vector<Element> gens = nodes[i].gens;
      gens.push_back(elem);
      ElementSet next = close_set(g, nodes[i].set, gens);
      if (seen.emplace(next, nodes.size()).second) nodes.push_back({std::move(next), std::move(gens)});
    }
  }

  std::vector<Subgroup> out;
  out.reserve(nodes.size());
  for (auto& node : nodes) out.emplace_back(group, std::move(node.set));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// ------------------------------------------------------------- Homomorphism

Homomorphism Homomorphism::make(GroupPtr domain, GroupPtr codomain, std::vector<Element> images) {
  if (images.size() != domain->order())
    throw PreconditionError("homomorphism has " + std::to_string(images.size()) + " images for a domain of order " +
                            std::to_string(domain->order()));
  for (auto y : images)
    if (y >= codomain->order()) throw PreconditionError("homomorphism image " + std::to_string(y) + " out of range");
  for (std::size_t x = 0; x < domain->order(); ++x)
    for (std::size_t y = 0; y < domain->order(); ++y) {
      auto ex = static_cast<Element>(x);
      auto ey = static_cast<Element>(y);
      if (images[domain->mul(ex, ey)] != codomain->mul(images[x], images[y]))
        throw PreconditionError("map is not a homomorphism at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  return Homomorphism(std::move(domain), std::move(codomain), std::move(images));
}

Homomorphism Homomorphism::identity(const GroupPtr& group) {
  std::vector<Element> images(group->order());
  std::iota(images.begin(), images.end(), 0);
  return Homomorphism(group, group, std::move(images));
}

Homomorphism Homomorphism::trivial(const GroupPtr& domain, const GroupPtr& codomain) {
  return Homomorphism(domain, codomain, std::vector<Element>(domain->order(), codomain->identity()));
}

bool Homomorphism::is_surjective() const {
  ElementSet hit(codomain_->order());
  for (auto y : images_) hit.insert(y);
  return hit.count() == codomain_->order();
}

bool Homomorphism::is_injective() const {
  std::size_t k = 0;
  for (auto y : images_) k += (y == codomain_->identity());
  return k == 1;
}

Homomorphism Homomorphism::then(const Homomorphism& after) const {
  if (after.domain_ != codomain_) throw PreconditionError("composition of mismatched homomorphisms");
  std::vector<Element> images(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) images[x] = after(images_[x]);
  return Homomorphism(domain_, after.codomain_, std::move(images));
}

ProductGroup direct_product(const GroupPtr& a, const GroupPtr& b, const GroupLimits& limits) {
  const std::size_t na = a->order();
  const std::size_t nb = b->order();
  if (na * nb > limits.order_cap)
    throw BudgetError("product order " + std::to_string(na * nb) + " exceeds the order cap " +
                      std::to_string(limits.order_cap));
  const std::size_t n = na * nb;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  std::vector<Element> pa(n), pb(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto xa = static_cast<Element>(x / nb);
    auto xb = static_cast<Element>(x % nb);
    pa[x] = xa;
    pb[x] = xb;
    labels[x] = "(" + a->label(xa) + "," + b->label(xb) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      auto ya = static_cast<Element>(y / nb);
      auto yb = static_cast<Element>(y % nb);
      table[x][y] = static_cast<Element>(a->mul(xa, ya) * nb + b->mul(xb, yb));
    }
  }
  auto g = FiniteGroup::from_table(table, std::move(labels), limits);
  return {g, Homomorphism::make(g, a, std::move(pa)), Homomorphism::make(g, b, std::move(pb))};
}

// ------------------------------------------------------ images and quotients

Subgroup image(const Homomorphism& h, const Subgroup& sub) {
  if (sub.parent() != h.domain()) throw PreconditionError("image: subgroup parent does not match the domain");
  ElementSet set(h.codomain()->order());
  for (auto x : sub.members()) set.insert(h(x));
  return Subgroup(h.codomain(), std::move(set));
}

Subgroup preimage(const Homomorphism& h, const Subgroup& sub) {
  if (sub.parent() != h.codomain()) throw PreconditionError("preimage: subgroup parent does not match the codomain");
  ElementSet set(h.domain()->order());
  for (std::size_t x = 0; x < h.domain()->order(); ++x)
    if (sub.contains(h(static_cast<Element>(x)))) set.insert(static_cast<Element>(x));
  return Subgroup(h.domain(), std::move(set));
}

Subgroup kernel(const Homomorphism& h) { return preimage(h, Subgroup::trivial(h.codomain())); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw PreconditionError("intersect: subgroups of different groups");
  return Subgroup(a.parent(), a.set() & b.set());
}

std::optional<NormalityWitness> normality_witness(const Subgroup& sub) {
  const FiniteGroup& g = *sub.parent();
  for (std::size_t x = 0; x < g.order(); ++x)
    for (auto n : sub.members())
      if (!sub.contains(g.conjugate(static_cast<Element>(x), n))) return NormalityWitness{static_cast<Element>(x), n};
  return std::nullopt;
}

bool is_normal(const Subgroup& sub) { return !normality_witness(sub).has_value(); }

Quotient quotient(const Subgroup& normal) {
  if (auto w = normality_witness(normal)) {
    const auto& g = *normal.parent();
    throw PreconditionError("quotient by a non-normal subgroup: x=" + g.label(w->x) + ", n=" + g.label(w->n) +
                            ", x*n*x^-1=" + g.label(g.conjugate(w->x, w->n)) + " is not in N");
  }
  const FiniteGroup& g = *normal.parent();
  constexpr Element kUnassigned = ~Element{0};
  std::vector<Element> coset_of(g.order(), kUnassigned);
  std::vector<Element> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of[x] != kUnassigned) continue;
    auto idx = static_cast<Element>(reps.size());
    reps.push_back(static_cast<Element>(x));
    for (auto n : normal.members()) coset_of[g.mul(static_cast<Element>(x), n)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Element>> table(q, std::vector<Element>(q));
  std::vector<std::string> labels(q);
  for (std::size_t a = 0; a < q; ++a) {
    labels[a] = g.label(reps[a]) + "N";
    for (std::size_t b = 0; b < q; ++b) table[a][b] = coset_of[g.mul(reps[a], reps[b])];
  }
  auto qg = FiniteGroup::from_table(table, std::move(labels), GroupLimits{std::max<std::size_t>(q, 1)});
  return {qg, Homomorphism::make(normal.parent(), qg, coset_of), std::move(reps)};
}

Embedding as_group(const Subgroup& sub) {
  const FiniteGroup& g = *sub.parent();
  const auto& m = sub.members();
  const std::size_t n = m.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = g.label(m[i]);
    for (std::size_t j = 0; j < n; ++j) table[i][j] = static_cast<Element>(sub.index_of(g.mul(m[i], m[j])));
  }
  auto h = FiniteGroup::from_table(table, std::move(labels), GroupLimits{std::max<std::size_t>(n, 1)});
  return {h, Homomorphism::make(h, sub.parent(), m)};
}

Homomorphism restrict_corestrict(const Homomorphism& h, const Embedding& domain, const Embedding& target) {
  if (domain.inclusion.codomain() != h.domain() || target.inclusion.codomain() != h.codomain())
    throw PreconditionError("restrict_corestrict: embeddings do not match the homomorphism");
  const auto& targets = target.inclusion.images();
  std::vector<Element> images;
  images.reserve(domain.group->order());
  for (auto x : domain.inclusion.images()) {
    Element y = h(x);
    auto it = std::lower_bound(targets.begin(), targets.end(), y);
    if (it == targets.end() || *it != y)
      throw PreconditionError("restrict_corestrict: image leaves the target subgroup");
    images.push_back(static_cast<Element>(it - targets.begin()));
  }
  return Homomorphism::make(domain.group, target.group, std::move(images));
}

// --------------------------------------------------------------------- Haar

Rational haar_mass(const Subgroup& sub, HaarMode mode) {
  auto count = static_cast<std::int64_t>(sub.order());
  if (mode == HaarMode::Counting) return Rational(count);
  return Rational(count, static_cast<std::int64_t>(sub.parent()->order()));
}

Haar Haar::from_atom(Rational atom, std::size_t order) {
  if (atom == Rational(1, static_cast<std::int64_t>(order))) return {Kind::Probability, atom};
  if (atom == Rational(1)) return {Kind::Counting, atom};
  return {Kind::Scaled, atom};
}

std::string Haar::label() const {
  switch (kind) {
    case Kind::Counting:
      return "counting";
    case Kind::Probability:
      return "probability";
    case Kind::Scaled:
      break;
  }
  return atom.str();
}

}  // namespace blc
