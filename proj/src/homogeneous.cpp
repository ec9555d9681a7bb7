#include "blc/homogeneous.hpp"

#include <algorithm>

#include "blc/errors.hpp"

namespace blc {

DilationStructure DilationStructure::make(std::vector<Rational> weights) {
  for (const auto& w : weights)
    if (w.sign() <= 0) throw PreconditionError("dilation weights must be positive, got " + w.str());
  std::sort(weights.begin(), weights.end());
  return {std::move(weights)};
}

DilationStructure DilationStructure::heisenberg(std::size_t n) {
  std::vector<Rational> w(2 * n, Rational(1));
  w.push_back(Rational(2));
  return make(std::move(w));
}

Rational homogeneous_dimension(const DilationStructure& w) {
  Rational q(0);
  for (const auto& d : w.weights) q += d;
  return q;
}

ScalingResult scaling_condition(const Rational& q, const std::vector<Rational>& qj, const std::vector<Exponent>& p) {
  if (qj.size() != p.size())
    throw PreconditionError("scaling_condition: " + std::to_string(qj.size()) + " dimensions for " +
                            std::to_string(p.size()) + " exponents");
  Rational s(0);
  for (std::size_t j = 0; j < qj.size(); ++j) s += p[j].reciprocal() * qj[j];
  ScalingResult r;
  r.defect = s - q;
  r.holds = r.defect.is_zero();
  return r;
}

HeisenbergElement HeisenbergElement::identity(std::size_t n) {
  return {std::vector<std::pair<Rational, Rational>>(n, {Rational(0), Rational(0)}), Rational(0)};
}

Rational symplectic(const HeisenbergElement& a, const HeisenbergElement& b) {
  if (a.n() != b.n())
    throw PreconditionError("Heisenberg elements of different dimension (" + std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()) + ")");
  // Im(conj(x + iy)(u + iv)) = xv - yu
  Rational s(0);
  for (std::size_t i = 0; i < a.n(); ++i) s += a.z[i].first * b.z[i].second - a.z[i].second * b.z[i].first;
  return s;
}

HeisenbergElement heisenberg_multiply(const HeisenbergElement& a, const HeisenbergElement& b) {
  Rational omega = symplectic(a, b);
  HeisenbergElement c;
  c.z.reserve(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) c.z.emplace_back(a.z[i].first + b.z[i].first, a.z[i].second + b.z[i].second);
  c.t = a.t + b.t + omega / Rational(2);
  return c;
}

HeisenbergElement heisenberg_inverse(const HeisenbergElement& a) {
  HeisenbergElement c;
  for (const auto& [x, y] : a.z) c.z.emplace_back(-x, -y);
  c.t = -a.t;
  return c;
}

HeisenbergElement heisenberg_commutator(const HeisenbergElement& a, const HeisenbergElement& b) {
  return heisenberg_multiply(heisenberg_multiply(heisenberg_inverse(a), heisenberg_inverse(b)),
                             heisenberg_multiply(a, b));
}

ApproximationWitness kronecker_sequence(const std::vector<Rational>& alphas, const Rational& eps, std::size_t count,
                                        const Rational& spacing, std::uint64_t budget) {
  if (alphas.empty()) throw PreconditionError("kronecker_sequence needs at least one alpha");
  for (const auto& a : alphas)
    if (a.sign() <= 0) throw PreconditionError("alphas must be positive, got " + a.str());
  if (eps.sign() <= 0) throw PreconditionError("eps must be positive");
  if (count < 1) throw PreconditionError("count must be >= 1");
  if (spacing.sign() < 0) throw PreconditionError("spacing must be nonnegative");

  ApproximationWitness w;
  w.eps = eps;
  w.spacing = spacing;
  std::optional<Rational> last;
  for (std::int64_t k = 1; w.times.size() < count; ++k) {
    if (w.scanned >= budget)
      throw BudgetError("kronecker_sequence: scanned " + std::to_string(w.scanned) + " candidates, found " +
                        std::to_string(w.times.size()) + " of " + std::to_string(count));
    ++w.scanned;
    const Rational t = alphas[0] * Rational(k);
    if (last && t - *last < spacing) continue;
    std::vector<std::int64_t> ks{k};
    bool ok = true;
    for (std::size_t j = 1; j < alphas.size() && ok; ++j) {
      std::int64_t kj = round_nearest(t / alphas[j]);
      ok = (t - alphas[j] * Rational(kj)).abs() < eps;
      ks.push_back(kj);
    }
    if (!ok) continue;
    w.times.push_back(t);
    w.integers.push_back(std::move(ks));
    last = t;
  }
  return w;
}

bool verify_witness(const ApproximationWitness& w, const std::vector<Rational>& alphas) {
  if (w.times.size() != w.integers.size()) return false;
  for (std::size_t m = 0; m < w.times.size(); ++m) {
    if (w.integers[m].size() != alphas.size()) return false;
    for (std::size_t j = 0; j < alphas.size(); ++j)
      if (!((w.times[m] - alphas[j] * Rational(w.integers[m][j])).abs() < w.eps)) return false;
    if (m > 0 && w.times[m] - w.times[m - 1] < w.spacing) return false;
  }
  return true;
}

DivergenceWitness divergence_witness(std::size_t n, const std::vector<Rational>& alphas, const Rational& m,
                                     const Rational& box_halfwidth, const Rational& eps, std::uint64_t budget) {
  if (m.sign() <= 0) throw PreconditionError("M must be positive");
  if (box_halfwidth.sign() <= 0) throw PreconditionError("box half-width must be positive");
  if (!(eps < box_halfwidth)) throw PreconditionError("eps must be smaller than the box half-width");

  DivergenceWitness out;
  Rational side = box_halfwidth * Rational(2);
  out.unit_volume = Rational(1);
  for (std::size_t i = 0; i < 2 * n + 1; ++i) out.unit_volume *= side;

  // smallest terms with terms * |U| > M
  std::int64_t terms = floor(m / out.unit_volume) + 1;
  out.terms = static_cast<std::size_t>(terms);
  out.lower_bound = out.unit_volume * Rational(terms);

  // (0, t)^-1 U shifts U by -t in the central coordinate only, so open boxes
  // of t-width 2h are disjoint once the times are 2h apart.
  out.approximation = kronecker_sequence(alphas, eps, out.terms, side, budget);
  if (!verify_witness(out.approximation, alphas))
    throw NumericError("divergence_witness: approximation witness failed exact re-verification");
  return out;
}

}  // namespace blc
