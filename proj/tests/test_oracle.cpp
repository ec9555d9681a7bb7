#include <doctest.h>

#include <cmath>

#include "blc/constant.hpp"
#include "blc/errors.hpp"
#include "blc/oracle.hpp"
#include "corpus.hpp"

using namespace blc;
using namespace blc::testing;

namespace {

InputTuple ones(const BLDatum& d) {
  InputTuple t;
  for (const auto& c : d.codomains) t.emplace_back(c->order(), 1.0);
  return t;
}

InputTuple to_double(const RationalTuple& r) {
  InputTuple t;
  for (const auto& f : r) {
    t.emplace_back();
    for (const auto& x : f) t.back().push_back(x.to_double());
  }
  return t;
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("evaluate_form examples") {
  auto lw = projection_datum({z(2), z(3)}, exps({"2", "2"}));
  CHECK(evaluate_form(lw, ones(lw)) == doctest::Approx(1.0).epsilon(1e-15));

  auto h = identity_datum(z(2), exps({"1", "1"}));
  RationalTuple delta = {{1, 0}, {1, 0}};
  CHECK(evaluate_form(h, delta) == Rational(1, 2));
  CHECK(evaluate_form(h, to_double(delta)) == 0.5);

  auto t = ones(lw);
  std::fill(t[1].begin(), t[1].end(), 0.0);
  CHECK(evaluate_form(lw, t) == 0.0);

  CHECK_THROWS_AS(evaluate_form(h, InputTuple{{1.0}, {1.0, 1.0}}), PreconditionError);
}

TEST_CASE("rayleigh examples") {
  auto lw = projection_datum({z(2), z(2)}, exps({"3/2", "3"}));
  CHECK(rayleigh(lw, ones(lw)) == doctest::Approx(1.0).epsilon(1e-15));

  auto h = identity_datum(z(2), exps({"1", "1"}));
  CHECK(rayleigh(h, InputTuple{{1, 0}, {1, 0}}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(rayleigh(h, InputTuple{{0, 0}, {1, 0}}), PreconditionError);
}

TEST_CASE("rayleigh is invariant under positive scaling") {
  auto corpus = finite_corpus(24);
  for (std::size_t i = 0; i < corpus.size(); i += 5) {
    auto p = exps({"3/2", "3", "inf"});
    p.resize(corpus[i].datum.size(), ex("2"));
    auto d = corpus[i].datum.with_exponents(p);
    auto t = random_input(d, i);
    double base = rayleigh(d, t);
    for (double lambda : {1e-3, 0.37, 7.0, 2.5e4}) {
      auto s = t;
      for (double& x : s[i % s.size()]) x *= lambda;
      CHECK(std::fabs(rayleigh(d, s) - base) <= 1e-14 * base);
    }
  }
}

TEST_CASE("lp_norm") {
  auto d = identity_datum(z(4), exps({"2"}), HaarMode::Counting);
  CHECK(lp_norm(d, 0, {3, 4, 0, 0}) == doctest::Approx(5.0));
  auto inf = identity_datum(z(4), exps({"inf"}));
  CHECK(lp_norm(inf, 0, {1, 7, 2, 0}) == 7.0);
  auto one = identity_datum(z(4), exps({"1"}));
  CHECK(lp_norm(one, 0, {1, 1, 2, 0}) == doctest::Approx(1.0));
}

TEST_CASE("ascent examples") {
  auto h = identity_datum(z(2), exps({"1", "1"}));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = alternating_ascent(h, random_input(h, seed));
    CHECK(std::fabs(r.value - 2.0) <= 1e-12 * 2.0);
    CHECK(nondecreasing(r.trace.values));
    CHECK(r.trace.converged);
  }

  auto lw = projection_datum({z(2), z(2)}, exps({"2", "2"}));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = alternating_ascent(lw, random_input(lw, seed));
    CHECK(std::fabs(r.value - 1.0) <= 1e-12);
    CHECK(nondecreasing(r.trace.values));
  }
}

TEST_CASE("extremizers are fixed points of the ascent") {
  auto corpus = finite_corpus(24);
  std::size_t n = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 4) {
    for (const auto& p : exponent_tuples(corpus[i].datum.size())) {
      if ((n++) % 5) continue;
      auto d = corpus[i].datum.with_exponents(p);
      auto rep = bl_constant(d);
      double exact = rep.value.to_double();
      auto r = alternating_ascent(d, to_double(extremizer(d, rep)));
      CHECK(r.trace.iterations <= 1);
      CHECK(std::fabs(r.trace.values.front() - exact) <= 1e-12 * exact);
      CHECK(std::fabs(r.value - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("oracle examples") {
  auto t = identity_datum(z(1), exps({"2"}));
  CHECK(oracle_constant(t).value == doctest::Approx(1.0).epsilon(1e-15));

  auto h = identity_datum(z(2), exps({"1", "1"}));
  auto hh = split_product(h, h);
  OracleOptions random_only;
  random_only.extremizer_run = false;
  CHECK(std::fabs(oracle_constant(hh, random_only).value - 4.0) <= 1e-9 * 4.0);

  auto a = oracle_constant(hh, OracleOptions{.restarts = 3, .seed = 11});
  auto b = oracle_constant(hh, OracleOptions{.restarts = 3, .seed = 11});
  CHECK(a.value == b.value);
  CHECK(a.traces.size() == 4);
  CHECK(a.traces[1].values == b.traces[1].values);
}

TEST_CASE("oracle is sound and complete on corpus samples") {
  auto corpus = finite_corpus(32);
  std::size_t n = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 3) {
    for (const auto& p : exponent_tuples(corpus[i].datum.size())) {
      if ((n++) % 11) continue;
      auto d = corpus[i].datum.with_exponents(p);
      double exact = bl_constant(d).value.to_double();
      auto o = oracle_constant(d, OracleOptions{.restarts = 8, .seed = n});
      CHECK(o.value <= exact * (1 + 1e-9));
      CHECK(o.value >= exact * (1 - 1e-9));
      for (const auto& tr : o.traces) CHECK(nondecreasing(tr.values));
    }
  }
}

TEST_CASE("exhaustive examples") {
  auto h = identity_datum(z(2), exps({"1", "1"}));
  auto e = exhaustive_indicator_search(h);
  CHECK(e.value == ExactValue::from_integer(2));
  CHECK(e.tuples == 9);
  CHECK(e.argmax_sets == std::vector<std::vector<Element>>{{0}, {0}});

  auto lw = projection_datum({z(2), z(2)}, exps({"2", "2"}));
  auto el = exhaustive_indicator_search(lw);
  CHECK(el.value.is_one());
  // both codomains are Z2: 3 x 3 nonempty set pairs
  CHECK(el.tuples == 9);

  auto h3 = identity_datum(z(3), exps({"1", "1"}));
  auto e3 = exhaustive_indicator_search(h3);
  CHECK(e3.value == ExactValue::from_integer(3));
  CHECK(e3.tuples == 49);
  CHECK(e3.argmax_sets[0].size() == 1);

  CHECK_THROWS_AS(exhaustive_indicator_search(lw, 15), BudgetError);
}

TEST_CASE("exhaustive search matches the subgroup formula") {
  auto corpus = finite_corpus(24);
  std::size_t n = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 3) {
    for (const auto& p : exponent_tuples(corpus[i].datum.size())) {
      if ((n++) % 7) continue;
      auto d = corpus[i].datum.with_exponents(p);
      CHECK(exhaustive_indicator_search(d).value == bl_constant(d).value);
    }
  }
}
