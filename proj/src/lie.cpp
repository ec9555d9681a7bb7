#include "blc/lie.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "blc/errors.hpp"

namespace blc {

CompactLieDatum CompactLieDatum::make(std::vector<std::size_t> simple_dims, std::size_t torus_dim,
                                      std::vector<LinearizedMap> maps) {
  for (auto s : simple_dims)
    if (s == 0) throw PreconditionError("simple ideal dimensions must be positive");
  for (std::size_t j = 0; j < maps.size(); ++j) {
    auto& m = maps[j];
    std::sort(m.kept_simple.begin(), m.kept_simple.end());
    if (std::adjacent_find(m.kept_simple.begin(), m.kept_simple.end()) != m.kept_simple.end())
      throw PreconditionError("map " + std::to_string(j) + " lists a simple ideal twice");
    for (auto i : m.kept_simple)
      if (i >= simple_dims.size())
        throw PreconditionError("map " + std::to_string(j) + " keeps simple ideal " + std::to_string(i) +
                                ", only " + std::to_string(simple_dims.size()) + " exist");
    for (const auto& row : m.torus_matrix)
      if (row.size() != torus_dim)
        throw PreconditionError("map " + std::to_string(j) + " torus matrix has " + std::to_string(row.size()) +
                                " columns, torus dimension is " + std::to_string(torus_dim));
  }
  return {std::move(simple_dims), torus_dim, std::move(maps)};
}

std::size_t CompactLieDatum::group_dim() const {
  return std::accumulate(simple_dims.begin(), simple_dims.end(), std::size_t{0}) + torus_dim;
}

IdealSpec IdealSpec::whole(const CompactLieDatum& d) {
  std::vector<std::size_t> all(d.simple_dims.size());
  std::iota(all.begin(), all.end(), 0);
  return {all, identity_matrix(d.torus_dim)};
}

IdealSpec IdealSpec::make(std::vector<std::size_t> simple, const Matrix& torus_rows, std::size_t torus_dim) {
  std::sort(simple.begin(), simple.end());
  simple.erase(std::unique(simple.begin(), simple.end()), simple.end());
  return {std::move(simple), rref(torus_rows, torus_dim)};
}

std::string IdealSpec::str() const {
  if (simple_part.empty() && torus_basis.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  if (!simple_part.empty()) {
    os << "s{";
    for (std::size_t i = 0; i < simple_part.size(); ++i) os << (i ? "," : "") << simple_part[i];
    os << '}';
    first = false;
  }
  if (!torus_basis.empty()) {
    if (!first) os << " + ";
    os << "span{";
    for (std::size_t r = 0; r < torus_basis.size(); ++r) {
      os << (r ? "," : "") << '(';
      for (std::size_t c = 0; c < torus_basis[r].size(); ++c) os << (c ? "," : "") << torus_basis[r][c];
      os << ')';
    }
    os << '}';
  }
  return os.str();
}

bool ideal_less(const CompactLieDatum& d, const IdealSpec& a, const IdealSpec& b) {
  auto da = ideal_dims(d, a).dim;
  auto db = ideal_dims(d, b).dim;
  if (da != db) return da < db;
  if (a.simple_part != b.simple_part) return a.simple_part < b.simple_part;
  return a.torus_basis < b.torus_basis;
}

IdealDims ideal_dims(const CompactLieDatum& d, const IdealSpec& n) {
  for (auto i : n.simple_part)
    if (i >= d.simple_dims.size()) throw PreconditionError("ideal names simple ideal " + std::to_string(i));
  for (const auto& row : n.torus_basis)
    if (row.size() != d.torus_dim) throw PreconditionError("ideal torus basis has the wrong row length");
  IdealDims out;
  for (auto i : n.simple_part) out.dim += d.simple_dims[i];
  out.dim += rank(n.torus_basis, d.torus_dim);
  for (const auto& m : d.maps) {
    std::size_t k = 0;
    for (auto i : n.simple_part)
      if (std::binary_search(m.kept_simple.begin(), m.kept_simple.end(), i)) k += d.simple_dims[i];
    if (!n.torus_basis.empty() && !m.torus_matrix.empty())
      k += rank(mul_transpose(m.torus_matrix, n.torus_basis), n.torus_basis.size());
    out.image_dims.push_back(k);
  }
  return out;
}

namespace {

// LHS - RHS of the codimension inequality at n.
Rational codim_slack(const IdealDims& g, const IdealDims& n, const std::vector<Exponent>& p) {
  Rational lhs(0);
  for (std::size_t j = 0; j < p.size(); ++j)
    lhs += p[j].reciprocal() *
           Rational(static_cast<std::int64_t>(g.image_dims[j]) - static_cast<std::int64_t>(n.image_dims[j]));
  return lhs - Rational(static_cast<std::int64_t>(g.dim) - static_cast<std::int64_t>(n.dim));
}

IdealSpec kernel_of(const CompactLieDatum& d, const LinearizedMap& m) {
  std::vector<std::size_t> killed;
  for (std::size_t i = 0; i < d.simple_dims.size(); ++i)
    if (!std::binary_search(m.kept_simple.begin(), m.kept_simple.end(), i)) killed.push_back(i);
  return {killed, nullspace(m.torus_matrix, d.torus_dim)};
}

std::vector<std::size_t> set_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> set_intersection(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

CodimResult codimension_check(const CompactLieDatum& d, const std::vector<Exponent>& p,
                              const std::vector<IdealSpec>& ideals) {
  if (p.size() != d.size())
    throw PreconditionError("got " + std::to_string(p.size()) + " exponents for " + std::to_string(d.size()) +
                            " maps");
  const IdealDims g = ideal_dims(d, IdealSpec::whole(d));
  CodimResult res;
  for (const auto& n : ideals) {
    IdealDims nd = ideal_dims(d, n);
    if (nd.dim == g.dim) continue;  // n = g
    ++res.checked;
    Rational slack = codim_slack(g, nd, p);
    if (slack.sign() > 0) {
      res.ok = false;
      res.violator = Violation{n, slack};
      return res;
    }
  }
  return res;
}

IdealPool kernel_lattice_pool(const CompactLieDatum& d, const std::vector<IdealSpec>& extras, std::size_t max_closure,
                              std::size_t pool_cap) {
  IdealPool pool;
  auto add = [&](IdealSpec s) {
    s = IdealSpec::make(std::move(s.simple_part), s.torus_basis, d.torus_dim);
    if (std::find(pool.ideals.begin(), pool.ideals.end(), s) != pool.ideals.end()) return false;
    if (pool.ideals.size() >= pool_cap)
      throw BudgetError("ideal pool exceeds the cap of " + std::to_string(pool_cap));
    pool.ideals.push_back(std::move(s));
    return true;
  };
  add(IdealSpec::zero());
  for (const auto& m : d.maps) add(kernel_of(d, m));
  for (const auto& e : extras) add(e);

  for (std::size_t round = 0; round < max_closure; ++round) {
    const std::size_t n = pool.ideals.size();
    bool grew = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const IdealSpec x = pool.ideals[a];
        const IdealSpec y = pool.ideals[b];
        grew |= add({set_union(x.simple_part, y.simple_part),
                     subspace_sum(x.torus_basis, y.torus_basis, d.torus_dim)});
        grew |= add({set_intersection(x.simple_part, y.simple_part),
                     subspace_intersection(x.torus_basis, y.torus_basis, d.torus_dim)});
      }
    pool.rounds = round + 1;
    if (!grew) {
      pool.stabilized = true;
      break;
    }
  }
  std::sort(pool.ideals.begin(), pool.ideals.end(),
            [&](const IdealSpec& a, const IdealSpec& b) { return ideal_less(d, a, b); });
  return pool;
}

std::vector<IdealSpec> semisimple_ideals(const CompactLieDatum& d) {
  const std::size_t m = d.simple_dims.size();
  if (m > 20) throw BudgetError("too many simple ideals to enumerate (" + std::to_string(m) + ")");
  std::vector<IdealSpec> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    IdealSpec s;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1U) s.simple_part.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [&](const IdealSpec& a, const IdealSpec& b) { return ideal_less(d, a, b); });
  return out;
}

// ----------------------------------------------------------------- polytope

RationalPolytope bl_polytope(const CompactLieDatum& d, const std::vector<IdealSpec>& ideals) {
  if (ideals.empty()) throw PreconditionError("bl_polytope needs at least the zero ideal");
  RationalPolytope poly;
  poly.dim = d.size();
  const IdealDims g = ideal_dims(d, IdealSpec::whole(d));
  for (const auto& n : ideals) {
    IdealDims nd = ideal_dims(d, n);
    if (nd.dim == g.dim) continue;
    std::vector<std::int64_t> c(d.size());
    std::int64_t b = static_cast<std::int64_t>(g.dim) - static_cast<std::int64_t>(nd.dim);
    std::int64_t gg = b;
    bool nonzero = false;
    for (std::size_t j = 0; j < d.size(); ++j) {
      c[j] = static_cast<std::int64_t>(g.image_dims[j]) - static_cast<std::int64_t>(nd.image_dims[j]);
      nonzero |= c[j] != 0;
      gg = gcd64(gg, c[j]);
    }
    if (!nonzero) continue;  // 0 <= b always holds
    Halfspace h;
    for (auto v : c) h.coeffs.emplace_back(v / gg);
    h.bound = Rational(b / gg);
    if (std::find(poly.halfspaces.begin(), poly.halfspaces.end(), h) == poly.halfspaces.end())
      poly.halfspaces.push_back(std::move(h));
  }
  return poly;
}

namespace {

std::vector<Halfspace> with_box(const RationalPolytope& poly) {
  std::vector<Halfspace> all = poly.halfspaces;
  for (std::size_t j = 0; j < poly.dim; ++j) {
    Halfspace lo{std::vector<Rational>(poly.dim, Rational(0)), Rational(0)};
    lo.coeffs[j] = Rational(-1);
    Halfspace hi{std::vector<Rational>(poly.dim, Rational(0)), Rational(1)};
    hi.coeffs[j] = Rational(1);
    for (auto* h : {&lo, &hi})
      if (std::find(all.begin(), all.end(), *h) == all.end()) all.push_back(*h);
  }
  return all;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

VertexReport vertices(const RationalPolytope& poly, std::size_t max_dim) {
  if (poly.dim > max_dim)
    throw BudgetError("vertex enumeration supports J <= " + std::to_string(max_dim) + ", got " +
                      std::to_string(poly.dim));
  const auto cons = with_box(poly);
  const std::size_t m = cons.size();
  const std::size_t k = poly.dim;
  VertexReport out;
  out.redundant.assign(poly.halfspaces.size(), true);
  if (k == 0) return out;

  double combos = 1.0;
  for (std::size_t i = 0; i < k; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (combos > 5e6) throw BudgetError("too many constraint subsets for vertex enumeration");

  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Matrix a;
    std::vector<Rational> b;
    for (auto i : idx) {
      a.push_back(cons[i].coeffs);
      b.push_back(cons[i].bound);
    }
    if (auto x = solve(a, b)) {
      bool feasible = true;
      for (const auto& h : cons)
        if (dot(h.coeffs, *x) > h.bound) {
          feasible = false;
          break;
        }
      if (feasible && std::find(out.points.begin(), out.points.end(), *x) == out.points.end())
        out.points.push_back(*x);
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  std::sort(out.points.begin(), out.points.end());
  for (std::size_t h = 0; h < poly.halfspaces.size(); ++h)
    for (const auto& v : out.points)
      if (dot(poly.halfspaces[h].coeffs, v) == poly.halfspaces[h].bound) {
        out.redundant[h] = false;
        break;
      }
  return out;
}

bool membership(const RationalPolytope& poly, const std::vector<Rational>& x) {
  if (x.size() != poly.dim) throw PreconditionError("point has the wrong dimension");
  for (const auto& h : with_box(poly))
    if (dot(h.coeffs, x) > h.bound) return false;
  return true;
}

bool membership(const RationalPolytope& poly, const std::vector<Exponent>& p) {
  std::vector<Rational> x;
  for (const auto& e : p) x.push_back(e.reciprocal());
  return membership(poly, x);
}

// --------------------------------------------------------------- finiteness

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "FINITE";
    case Verdict::Infinite:
      return "INFINITE";
    case Verdict::Undecided:
      break;
  }
  return "UNDECIDED";
}

std::pair<CompactLieDatum, CompactLieDatum> split_commutator_center(const CompactLieDatum& d) {
  CompactLieDatum ss{d.simple_dims, 0, {}};
  CompactLieDatum tor{{}, d.torus_dim, {}};
  for (const auto& m : d.maps) {
    ss.maps.push_back({m.kept_simple, {}});
    tor.maps.push_back({{}, m.torus_matrix});
  }
  return {std::move(ss), std::move(tor)};
}

FinitenessReport finiteness(const CompactLieDatum& d, const std::vector<Exponent>& p,
                            const FinitenessOptions& options) {
  if (p.size() != d.size())
    throw PreconditionError("got " + std::to_string(p.size()) + " exponents for " + std::to_string(d.size()) +
                            " maps");
  auto [ss, tor] = split_commutator_center(d);
  FinitenessReport rep;
  const IdealDims gfull = ideal_dims(d, IdealSpec::whole(d));

  auto lift = [&](const Violation& v, bool semisimple_part) {
    IdealSpec n = semisimple_part ? IdealSpec{v.ideal.simple_part, identity_matrix(d.torus_dim)}
                                  : IdealSpec{IdealSpec::whole(d).simple_part, v.ideal.torus_basis};
    return Violation{n, codim_slack(gfull, ideal_dims(d, n), p)};
  };

  // Semisimple part: the subsets of simple ideals are all the ideals.
  {
    auto ideals = semisimple_ideals(ss);
    auto res = codimension_check(ss, p, ideals);
    rep.semisimple.pool_size = ideals.size();
    rep.semisimple.complete = true;
    if (!res.ok) {
      rep.semisimple.verdict = Verdict::Infinite;
      rep.semisimple.violator = res.violator;
    }
  }

  // Torus part: kernel lattice closure.
  {
    std::vector<IdealSpec> extras;
    for (const auto& e : options.extras) extras.push_back({{}, e.torus_basis});
    rep.torus_pool = kernel_lattice_pool(tor, extras, options.max_closure, options.pool_cap);
    auto res = codimension_check(tor, p, rep.torus_pool.ideals);
    rep.torus.pool_size = rep.torus_pool.ideals.size();
    rep.torus.complete = rep.torus_pool.stabilized || tor.torus_dim == 0;
    if (!res.ok) {
      rep.torus.verdict = Verdict::Infinite;
      rep.torus.violator = res.violator;
    } else if (!rep.torus.complete) {
      rep.torus.verdict = Verdict::Undecided;
    }
  }

  if (rep.semisimple.violator) {
    rep.verdict = Verdict::Infinite;
    rep.violator = lift(*rep.semisimple.violator, true);
  } else if (rep.torus.violator) {
    rep.verdict = Verdict::Infinite;
    rep.violator = lift(*rep.torus.violator, false);
  } else if (rep.torus.verdict == Verdict::Undecided) {
    rep.verdict = Verdict::Undecided;
    rep.note = "torus ideal pool did not stabilize within " + std::to_string(options.max_closure) +
               " closure rounds; only the pooled subspaces were checked";
  } else {
    rep.verdict = Verdict::Finite;
  }
  return rep;
}

BcctResult bcct_check(std::size_t dim, const std::vector<Matrix>& maps, const std::vector<Exponent>& p,
                      const std::vector<Matrix>& subspaces) {
  if (maps.size() != p.size()) throw PreconditionError("bcct_check: maps and exponents differ in length");
  BcctResult res;
  Rational s(0);
  for (std::size_t j = 0; j < maps.size(); ++j)
    s += p[j].reciprocal() * Rational(static_cast<std::int64_t>(rank(maps[j], dim)));
  res.scaling_defect = s - Rational(static_cast<std::int64_t>(dim));
  res.scaling_ok = res.scaling_defect.is_zero();
  for (const auto& v : subspaces) {
    Matrix basis = rref(v, dim);
    if (basis.empty()) continue;
    Rational rhs(0);
    for (std::size_t j = 0; j < maps.size(); ++j) {
      std::size_t r = maps[j].empty() ? 0 : rank(mul_transpose(maps[j], basis), basis.size());
      rhs += p[j].reciprocal() * Rational(static_cast<std::int64_t>(r));
    }
    if (Rational(static_cast<std::int64_t>(basis.size())) > rhs) {
      res.dims_ok = false;
      res.witness = basis;
      break;
    }
  }
  return res;
}

}  // namespace blc
