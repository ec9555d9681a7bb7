#include "blc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "blc/constant.hpp"
#include "blc/errors.hpp"

namespace blc {
namespace {

void check_shape(const BLDatum& d, std::size_t count, const std::function<std::size_t(std::size_t)>& len) {
  if (count != d.size())
    throw PreconditionError("input has " + std::to_string(count) + " functions, datum has J=" +
                            std::to_string(d.size()));
  for (std::size_t j = 0; j < d.size(); ++j)
    if (len(j) != d.codomains[j]->order())
      throw PreconditionError("function " + std::to_string(j) + " has length " + std::to_string(len(j)) +
                              ", codomain order is " + std::to_string(d.codomains[j]->order()));
}

void check_shape(const BLDatum& d, const InputTuple& t) {
  check_shape(d, t.size(), [&](std::size_t j) { return t[j].size(); });
}

double norm_of(const std::vector<double>& f, const Exponent& p, double atom) {
  if (p.is_infinite()) return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end());
  const double pv = p.value().to_double();
  double s = 0.0;
  if (pv == 1.0) {
    for (double v : f) s += v;
    return atom * s;
  }
  double m = 0.0;
  for (double v : f) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  for (double v : f) s += std::pow(v / m, pv);
  return m * std::pow(atom * s, 1.0 / pv);
}

// W_k(y) = sum over x with sigma_k(x) = y of w * prod_{j != k} f_j(sigma_j(x)).
std::vector<double> block_weights(const BLDatum& d, const InputTuple& f, std::size_t k, double w) {
  std::vector<double> out(d.codomains[k]->order(), 0.0);
  const std::size_t n = d.group->order();
  for (std::size_t x = 0; x < n; ++x) {
    double v = w;
    for (std::size_t j = 0; j < d.size() && v != 0.0; ++j)
      if (j != k) v *= f[j][d.maps[j](static_cast<Element>(x))];
    out[d.maps[k](static_cast<Element>(x))] += v;
  }
  return out;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string("non-finite value in ") + what);
}

}  // namespace

double evaluate_form(const BLDatum& d, const InputTuple& t) {
  check_shape(d, t);
  const double w = d.haar_group.atom.to_double();
  double s = 0.0;
  for (std::size_t x = 0; x < d.group->order(); ++x) {
    double v = 1.0;
    for (std::size_t j = 0; j < d.size() && v != 0.0; ++j) v *= t[j][d.maps[j](static_cast<Element>(x))];
    s += v;
  }
  return w * s;
}

Rational evaluate_form(const BLDatum& d, const RationalTuple& t) {
  check_shape(d, t.size(), [&](std::size_t j) { return t[j].size(); });
  Rational s(0);
  for (std::size_t x = 0; x < d.group->order(); ++x) {
    Rational v(1);
    for (std::size_t j = 0; j < d.size() && !v.is_zero(); ++j) v *= t[j][d.maps[j](static_cast<Element>(x))];
    s += v;
  }
  return d.haar_group.atom * s;
}

double lp_norm(const BLDatum& d, std::size_t j, const std::vector<double>& f) {
  return norm_of(f, d.exponents[j], d.haar_codomains[j].atom.to_double());
}

double rayleigh(const BLDatum& d, const InputTuple& t) {
  double num = evaluate_form(d, t);
  double den = 1.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    double nj = lp_norm(d, j, t[j]);
    if (!(nj > 0.0)) throw PreconditionError("function " + std::to_string(j) + " has zero norm");
    den *= nj;
  }
  double r = num / den;
  require_finite(r, "rayleigh");
  return r;
}

AscentResult alternating_ascent(const BLDatum& d, const InputTuple& init, const AscentOptions& options) {
  check_shape(d, init);
  for (const auto& f : init)
    for (double v : f)
      if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("input entries must be finite and nonnegative");

  AscentResult res;
  InputTuple f = init;
  for (std::size_t j = 0; j < d.size(); ++j) {
    double nj = lp_norm(d, j, f[j]);
    if (!(nj > 0.0)) throw PreconditionError("function " + std::to_string(j) + " has zero norm");
    for (double& v : f[j]) v /= nj;
  }
  const double w = d.haar_group.atom.to_double();
  double current = evaluate_form(d, f);
  require_finite(current, "initial form");
  res.trace.values.push_back(current);

  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const double before = current;
    for (std::size_t k = 0; k < d.size(); ++k) {
      const Exponent& p = d.exponents[k];
      std::vector<double> next(f[k].size());
      if (p.is_infinite()) {
        std::fill(next.begin(), next.end(), 1.0);
      } else {
        std::vector<double> wk = block_weights(d, f, k, w);
        double top = *std::max_element(wk.begin(), wk.end());
        require_finite(top, "block weights");
        if (top <= 0.0) continue;
        const double pv = p.value().to_double();
        if (pv == 1.0) {
          for (std::size_t y = 0; y < wk.size(); ++y) next[y] = (wk[y] >= top * (1.0 - 1e-15)) ? 1.0 : 0.0;
        } else {
          const double q = 1.0 / (pv - 1.0);
          for (std::size_t y = 0; y < wk.size(); ++y) next[y] = wk[y] > 0.0 ? std::pow(wk[y] / top, q) : 0.0;
        }
      }
      double nk = norm_of(next, p, d.haar_codomains[k].atom.to_double());
      require_finite(nk, "block norm");
      if (!(nk > 0.0)) continue;
      for (double& v : next) v /= nk;
      std::swap(f[k], next);
      double value = evaluate_form(d, f);
      require_finite(value, "form");
      // The block maximizer never lowers the form; a lower computed value is
      // rounding noise, so keep the previous block.
      if (value >= current)
        current = value;
      else
        std::swap(f[k], next);
    }
    res.trace.values.push_back(current);
    res.trace.iterations = sweep + 1;
    if (current - before <= options.tol * std::fabs(before)) {
      res.trace.converged = true;
      break;
    }
  }
  res.value = current;
  res.tuple = std::move(f);
  return res;
}

InputTuple random_input(const BLDatum& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  InputTuple t(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    t[j].resize(d.codomains[j]->order());
    for (double& v : t[j]) v = u(rng);
  }
  return t;
}

OracleResult oracle_constant(const BLDatum& d, const OracleOptions& options) {
  if (options.restarts < 1) throw PreconditionError("restarts must be >= 1");
  OracleResult out;
  std::seed_seq seq{options.seed};
  std::vector<std::uint64_t> seeds(options.restarts);
  {
    std::vector<std::uint32_t> raw(2 * options.restarts);
    seq.generate(raw.begin(), raw.end());
    for (std::size_t r = 0; r < options.restarts; ++r)
      seeds[r] = (static_cast<std::uint64_t>(raw[2 * r]) << 32) | raw[2 * r + 1];
  }
  for (std::size_t r = 0; r < options.restarts; ++r) {
    auto res = alternating_ascent(d, random_input(d, seeds[r]), options.ascent);
    out.random_best = std::max(out.random_best, res.value);
    out.traces.push_back(std::move(res.trace));
  }
  out.value = out.random_best;
  if (options.extremizer_run && d.size() > 0) {
    auto report = bl_constant(d);
    InputTuple init;
    for (const auto& f : extremizer(d, report)) {
      std::vector<double> g;
      for (const auto& v : f) g.push_back(v.to_double());
      init.push_back(std::move(g));
    }
    auto res = alternating_ascent(d, init, options.ascent);
    out.value = std::max(out.value, res.value);
    out.traces.push_back(std::move(res.trace));
  }
  if (d.size() == 0) out.value = out.random_best = d.total_mass().to_double();
  return out;
}

// ------------------------------------------------------------ exhaustive

namespace {

struct Signature {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> masks;  // per finite codomain, in `order`
};

}  // namespace

ExhaustiveResult exhaustive_indicator_search(const BLDatum& d, std::uint64_t budget) {
  double log2_tuples = 0.0;
  for (const auto& c : d.codomains) log2_tuples += static_cast<double>(c->order());
  if (log2_tuples > std::log2(static_cast<double>(budget)))
    throw BudgetError("exhaustive search needs 2^" + std::to_string(static_cast<long long>(log2_tuples)) +
                      " indicator tuples, above the budget " + std::to_string(budget) +
                      "; use the subgroup formula instead");

  const std::size_t n = d.group->order();
  // Infinite exponents: the norm of a nonzero indicator is 1, so the full
  // codomain is optimal. Finite exponents: only subsets of the image matter,
  // extra points enlarge the norm without raising the count.
  std::vector<std::size_t> order;
  std::vector<std::vector<Element>> image_list(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    ElementSet img(d.codomains[j]->order());
    for (std::size_t x = 0; x < n; ++x) img.insert(d.maps[j](static_cast<Element>(x)));
    image_list[j] = img.members();
    if (!d.exponents[j].is_infinite()) order.push_back(j);
  }
  for (auto j : order)
    if (image_list[j].size() > 63) throw BudgetError("codomain image too large for exhaustive search");
  // Largest image last: it is handled by sorting instead of enumeration.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return image_list[a].size() < image_list[b].size(); });

  ExhaustiveResult res;
  res.tuples = 1;
  for (const auto& c : d.codomains) res.tuples *= (std::uint64_t{1} << c->order()) - 1;

  const std::size_t f = order.size();
  std::unordered_map<std::uint64_t, Signature> best;  // sizes (mixed radix) -> max count

  auto encode = [&](const std::vector<std::size_t>& sizes) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < f; ++i) key = key * (image_list[order[i]].size() + 1) + sizes[i];
    return key;
  };

  std::vector<std::size_t> sizes(f, 0);
  std::vector<std::uint64_t> masks(f, 0);

  auto finish = [&](const std::vector<Element>& alive) {
    if (f == 0) {
      auto& s = best[0];
      s.count = alive.size();
      return;
    }
    const std::size_t last = order[f - 1];
    const auto& img = image_list[last];
    std::vector<std::pair<std::uint64_t, std::size_t>> fiber(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) fiber[i] = {0, i};
    std::vector<std::size_t> pos(d.codomains[last]->order(), 0);
    for (std::size_t i = 0; i < img.size(); ++i) pos[img[i]] = i;
    for (auto x : alive) ++fiber[pos[d.maps[last](x)]].first;
    std::stable_sort(fiber.begin(), fiber.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::uint64_t prefix = 0;
    std::uint64_t mask = 0;
    for (std::size_t s = 1; s <= img.size(); ++s) {
      prefix += fiber[s - 1].first;
      mask |= std::uint64_t{1} << fiber[s - 1].second;
      if (prefix == 0) continue;
      sizes[f - 1] = s;
      masks[f - 1] = mask;
      auto& sig = best[encode(sizes)];
      if (prefix > sig.count) {
        sig.count = prefix;
        sig.masks = masks;
      }
    }
  };

  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), 0);

  std::function<void(std::size_t, const std::vector<Element>&)> recurse = [&](std::size_t level,
                                                                                const std::vector<Element>& alive) {
    if (f == 0 || level == f - 1) {
      finish(alive);
      return;
    }
    const std::size_t j = order[level];
    const auto& img = image_list[j];
    std::vector<std::size_t> pos(d.codomains[j]->order(), 0);
    for (std::size_t i = 0; i < img.size(); ++i) pos[img[i]] = i;
    std::vector<Element> next;
    next.reserve(alive.size());
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << img.size()); ++m) {
      next.clear();
      for (auto x : alive)
        if ((m >> pos[d.maps[j](x)]) & 1U) next.push_back(x);
      if (next.empty()) continue;
      sizes[level] = static_cast<std::size_t>(std::popcount(m));
      masks[level] = m;
      recurse(level + 1, next);
    }
  };
  recurse(0, all);

  // Evaluate the distinct signatures: doubles first, exact comparison among
  // those within 1e-9 of the double maximum.
  struct Scored {
    double log;
    ExactValue value;
    const Signature* sig;
    std::vector<std::size_t> sizes;
  };
  std::vector<Scored> scored;
  for (const auto& [key, sig] : best) {
    std::vector<std::size_t> sz(f);
    std::uint64_t k = key;
    for (std::size_t i = f; i-- > 0;) {
      const std::uint64_t radix = image_list[order[i]].size() + 1;
      sz[i] = static_cast<std::size_t>(k % radix);
      k /= radix;
    }
    ExactValue v = ExactValue::from_rational(d.haar_group.mass(sig.count));
    for (std::size_t i = 0; i < f; ++i) {
      const std::size_t j = order[i];
      v /= ExactValue::from_rational(d.haar_codomains[j].mass(sz[i])).pow(d.exponents[j].reciprocal());
    }
    scored.push_back({v.log(), v, &sig, std::move(sz)});
  }
  if (scored.empty()) throw PreconditionError("exhaustive search found no nonzero tuple");
  double top = scored.front().log;
  for (const auto& s : scored) top = std::max(top, s.log);
  const Scored* winner = nullptr;
  for (const auto& s : scored) {
    if (s.log < top - 1e-9) continue;
    if (!winner || compare(s.value, winner->value) > 0 ||
        (compare(s.value, winner->value) == 0 && s.sizes < winner->sizes))
      winner = &s;
  }

  res.value = winner->value;
  res.argmax_sets.assign(d.size(), {});
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d.exponents[j].is_infinite()) {
      res.argmax_sets[j].resize(d.codomains[j]->order());
      std::iota(res.argmax_sets[j].begin(), res.argmax_sets[j].end(), 0);
    }
  }
  for (std::size_t i = 0; i < f; ++i) {
    const std::size_t j = order[i];
    for (std::size_t b = 0; b < image_list[j].size(); ++b)
      if ((winner->sig->masks[i] >> b) & 1U) res.argmax_sets[j].push_back(image_list[j][b]);
  }
  return res;
}

}  // namespace blc
