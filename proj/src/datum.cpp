#include "blc/datum.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "blc/errors.hpp"

namespace blc {

Exponent Exponent::finite(Rational value) {
  if (value < Rational(1)) throw PreconditionError("exponent " + value.str() + " is below 1");
  Exponent e;
  e.infinite_ = false;
  e.value_ = value;
  return e;
}

Exponent Exponent::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "inf" || t == "infinity" || t == "+inf") return infinity();
  try {
    return finite(Rational::parse(t));
  } catch (const PreconditionError&) {
    throw;
  } catch (const std::exception& e) {
    throw PreconditionError("cannot parse exponent '" + text + "': " + e.what());
  }
}

const Rational& Exponent::value() const {
  if (infinite_) throw PreconditionError("exponent is infinite");
  return value_;
}

double Exponent::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

std::string Exponent::str() const { return infinite_ ? "inf" : value_.str(); }

std::vector<Exponent> parse_exponents(const std::string& comma_list) {
  std::vector<Exponent> out;
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Exponent::parse(item));
  return out;
}

// -------------------------------------------------------------------- datum

BLDatum BLDatum::make(GroupPtr group, std::vector<Homomorphism> maps, std::vector<Exponent> exponents,
                      Haar haar_group, std::vector<Haar> haar_codomains) {
  if (!group) throw PreconditionError("datum has no group");
  if (maps.size() != exponents.size() || maps.size() != haar_codomains.size())
    throw PreconditionError("datum lists have different lengths: " + std::to_string(maps.size()) + " maps, " +
                            std::to_string(exponents.size()) + " exponents, " +
                            std::to_string(haar_codomains.size()) + " codomain measures");
  if (haar_group.atom.sign() <= 0) throw PreconditionError("Haar atom on G must be positive");
  BLDatum d;
  d.group = std::move(group);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (maps[j].domain() != d.group) throw PreconditionError("map " + std::to_string(j) + " does not start at G");
    if (haar_codomains[j].atom.sign() <= 0)
      throw PreconditionError("Haar atom on codomain " + std::to_string(j) + " must be positive");
    d.codomains.push_back(maps[j].codomain());
  }
  d.maps = std::move(maps);
  d.exponents = std::move(exponents);
  d.haar_group = haar_group;
  d.haar_codomains = std::move(haar_codomains);
  return d;
}

BLDatum BLDatum::make(GroupPtr group, std::vector<Homomorphism> maps, std::vector<Exponent> exponents,
                      HaarMode mode) {
  std::vector<Haar> hc;
  for (const auto& m : maps) hc.push_back(Haar::of_mode(mode, m.codomain()->order()));
  Haar hg = Haar::of_mode(mode, group->order());
  return make(std::move(group), std::move(maps), std::move(exponents), hg, std::move(hc));
}

bool BLDatum::mixed_haar() const {
  for (const auto& h : haar_codomains)
    if (h.kind != haar_group.kind) return true;
  return false;
}

BLDatum BLDatum::with_exponents(std::vector<Exponent> p) const {
  return make(group, maps, std::move(p), haar_group, haar_codomains);
}

// ------------------------------------------------------------ canonical form

namespace {

Subgroup joint_kernel(const BLDatum& d) {
  Subgroup k = Subgroup::whole(d.group);
  for (const auto& m : d.maps) k = intersect(k, kernel(m));
  return k;
}

std::string members_str(const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members().size(); ++i) {
    if (i) out += ",";
    out += s.parent()->label(s.members()[i]);
  }
  return out + "}";
}

// Homomorphism from the standalone group `from` to `to` induced by
// representatives: rep[i] in the source of `base` maps to `pick(base(rep[i]))`.
Homomorphism induced(const GroupPtr& from, const GroupPtr& to, const std::vector<Element>& reps,
                     const std::function<Element(Element)>& f) {
  std::vector<Element> images(from->order());
  for (std::size_t i = 0; i < reps.size(); ++i) images[i] = f(reps[i]);
  return Homomorphism::make(from, to, std::move(images));
}

}  // namespace

CanonicalTag canonical_tag(const BLDatum& d) {
  for (std::size_t j = 0; j < d.size(); ++j)
    if (!d.maps[j].is_surjective())
      return {false, "map " + std::to_string(j) + " is not surjective"};
  Subgroup k = joint_kernel(d);
  if (k.order() > 1) return {false, "joint kernel " + members_str(k) + " is nontrivial"};
  return {};
}

CanonicalForm canonicalize(const BLDatum& d) {
  CanonicalTag tag = canonical_tag(d);
  if (tag.is_canonical) return {d, tag, Homomorphism::identity(d.group)};

  Subgroup n = joint_kernel(d);
  Quotient q = quotient(n);
  const auto kernel_order = static_cast<std::int64_t>(n.order());
  Haar hg = Haar::from_atom(d.haar_group.atom * Rational(kernel_order), q.group->order());

  std::vector<Homomorphism> maps;
  std::vector<Haar> hc;
  for (std::size_t j = 0; j < d.size(); ++j) {
    Subgroup img = image(d.maps[j], Subgroup::whole(d.group));
    Embedding target = as_group(img);
    const auto& incl = target.inclusion.images();
    const auto& sigma = d.maps[j];
    maps.push_back(induced(q.group, target.group, q.representatives, [&](Element x) {
      auto y = sigma(x);
      return static_cast<Element>(std::lower_bound(incl.begin(), incl.end(), y) - incl.begin());
    }));
    hc.push_back(Haar::from_atom(d.haar_codomains[j].atom, target.group->order()));
  }
  BLDatum out = BLDatum::make(q.group, std::move(maps), d.exponents, hg, std::move(hc));
  return {std::move(out), tag, q.projection};
}

BLDatum drop_infinite_exponent(const BLDatum& d, std::size_t k) {
  if (k >= d.size()) throw PreconditionError("index " + std::to_string(k) + " out of range");
  if (!d.exponents[k].is_infinite())
    throw PreconditionError("exponent p_" + std::to_string(k) + " = " + d.exponents[k].str() + " is not infinite");
  BLDatum out = d;
  out.codomains.erase(out.codomains.begin() + static_cast<std::ptrdiff_t>(k));
  out.maps.erase(out.maps.begin() + static_cast<std::ptrdiff_t>(k));
  out.exponents.erase(out.exponents.begin() + static_cast<std::ptrdiff_t>(k));
  out.haar_codomains.erase(out.haar_codomains.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

BLDatum reduce_p1(const BLDatum& d, std::size_t k) {
  if (k >= d.size()) throw PreconditionError("index " + std::to_string(k) + " out of range");
  if (d.exponents[k].is_infinite() || d.exponents[k].value() != Rational(1))
    throw PreconditionError("exponent p_" + std::to_string(k) + " = " + d.exponents[k].str() + " is not 1");
  if (auto tag = canonical_tag(d); !tag.is_canonical)
    throw PreconditionError("reduce_p1 needs a canonical datum: " + tag.witness);

  Subgroup n = kernel(d.maps[k]);
  Embedding sub = as_group(n);
  Haar hn = Haar::from_atom(d.haar_group.atom / d.haar_codomains[k].atom, sub.group->order());

  std::vector<Homomorphism> maps;
  std::vector<Exponent> exps;
  std::vector<Haar> hc;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == k) continue;
    Embedding target = as_group(image(d.maps[j], n));
    maps.push_back(restrict_corestrict(d.maps[j], sub, target));
    exps.push_back(d.exponents[j]);
    hc.push_back(Haar::from_atom(d.haar_codomains[j].atom, target.group->order()));
  }
  return BLDatum::make(sub.group, std::move(maps), std::move(exps), hn, std::move(hc));
}

BLDatum split_product(const BLDatum& d1, const BLDatum& d2, const GroupLimits& limits) {
  if (d1.size() != d2.size())
    throw PreconditionError("split_product: J differs (" + std::to_string(d1.size()) + " vs " +
                            std::to_string(d2.size()) + ")");
  if (d1.exponents != d2.exponents) throw PreconditionError("split_product: exponent lists differ");

  ProductGroup g = direct_product(d1.group, d2.group, limits);
  const std::size_t n2 = d2.group->order();
  std::vector<Homomorphism> maps;
  std::vector<Haar> hc;
  for (std::size_t j = 0; j < d1.size(); ++j) {
    ProductGroup c = direct_product(d1.codomains[j], d2.codomains[j], limits);
    std::vector<Element> images(g.group->order());
    for (std::size_t x = 0; x < images.size(); ++x) {
      auto a = static_cast<Element>(x / n2);
      auto b = static_cast<Element>(x % n2);
      images[x] = product_element(*d2.codomains[j], d1.maps[j](a), d2.maps[j](b));
    }
    maps.push_back(Homomorphism::make(g.group, c.group, std::move(images)));
    hc.push_back(Haar::from_atom(d1.haar_codomains[j].atom * d2.haar_codomains[j].atom, c.group->order()));
  }
  Haar hg = Haar::from_atom(d1.haar_group.atom * d2.haar_group.atom, g.group->order());
  return BLDatum::make(g.group, std::move(maps), d1.exponents, hg, std::move(hc));
}

namespace {

// Normalizations on (subgroup, quotient) compatible with the quotient
// integral formula for a parent atom `parent` and subgroup order m.
std::pair<Haar, Haar> split_haar(const Haar& parent, std::size_t m, std::size_t quotient_order) {
  if (parent.kind == Haar::Kind::Counting) return {Haar::counting(), Haar::counting()};
  return {Haar::probability(m),
          Haar::from_atom(parent.atom * Rational(static_cast<std::int64_t>(m)), quotient_order)};
}

}  // namespace

QuotientSplit quotient_split(const BLDatum& d, const Subgroup& normal) {
  if (normal.parent() != d.group) throw PreconditionError("quotient_split: subgroup is not in G");
  if (auto w = normality_witness(normal)) {
    const auto& g = *d.group;
    throw PreconditionError("quotient_split: N is not normal in G: x=" + g.label(w->x) + ", n=" + g.label(w->n) +
                            ", x*n*x^-1=" + g.label(g.conjugate(w->x, w->n)));
  }
  Embedding sub = as_group(normal);
  Quotient q = quotient(normal);
  auto [hn, hq] = split_haar(d.haar_group, normal.order(), q.group->order());

  std::vector<Homomorphism> rmaps, qmaps;
  std::vector<Haar> rh, qh;
  for (std::size_t j = 0; j < d.size(); ++j) {
    Subgroup img = image(d.maps[j], normal);
    if (auto w = normality_witness(img)) {
      const auto& g = *d.codomains[j];
      throw PreconditionError("quotient_split: sigma_" + std::to_string(j) + "(N) is not normal: x=" + g.label(w->x) +
                              ", n=" + g.label(w->n) + ", x*n*x^-1=" + g.label(g.conjugate(w->x, w->n)));
    }
    Embedding target = as_group(img);
    Quotient cq = quotient(img);
    rmaps.push_back(restrict_corestrict(d.maps[j], sub, target));
    const auto& sigma = d.maps[j];
    const auto& proj = cq.projection;
    qmaps.push_back(induced(q.group, cq.group, q.representatives, [&](Element x) { return proj(sigma(x)); }));
    auto [a, b] = split_haar(d.haar_codomains[j], img.order(), cq.group->order());
    rh.push_back(a);
    qh.push_back(b);
  }
  return {BLDatum::make(sub.group, std::move(rmaps), d.exponents, hn, std::move(rh)),
          BLDatum::make(q.group, std::move(qmaps), d.exponents, hq, std::move(qh))};
}

}  // namespace blc
