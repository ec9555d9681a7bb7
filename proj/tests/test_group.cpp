#include <doctest.h>

#include <algorithm>

#include "blc/errors.hpp"
#include "blc/group.hpp"
#include "corpus.hpp"

using namespace blc;
using namespace blc::testing;

namespace {

// S3 as an explicit Cayley table, elements as permutations of {0,1,2}
// listed in lexicographic order.
GroupPtr s3_from_table() {
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<Element>> table(6, std::vector<Element>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[b][perms[a][i]];
      table[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup::from_table(table);
}

std::vector<std::vector<Element>> member_lists(const std::vector<Subgroup>& subs) {
  std::vector<std::vector<Element>> out;
  for (const auto& s : subs) out.push_back(s.members());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupPtr> small_groups() {
  std::size_t z2z2[] = {2, 2};
  std::size_t z2z4[] = {2, 4};
  std::size_t z2z2z2[] = {2, 2, 2};
  std::size_t z2z2z2z2[] = {2, 2, 2, 2};
  return {z(1), z(2), z(4), z(6), z(8), make_cyclic_product(z2z2), make_cyclic_product(z2z4),
          make_cyclic_product(z2z2z2), make_cyclic_product(z2z2z2z2), s3(), s3_from_table(),
          make_permutation_group(4, {{1, 0, 3, 2}, {2, 3, 0, 1}, {0, 2, 1, 3}})};
}

}  // namespace

TEST_CASE("make_cyclic_product") {
  auto g = z(2);
  CHECK(g->order() == 2);
  CHECK(g->rows() == std::vector<std::vector<Element>>{{0, 1}, {1, 0}});
  CHECK(z(1)->order() == 1);

  std::size_t m[] = {2, 2};
  auto k = make_cyclic_product(m);
  CHECK(k->order() == 4);
  for (Element x = 0; x < 4; ++x) CHECK(k->mul(x, x) == k->identity());

  std::size_t big[] = {64, 65};
  CHECK_THROWS_AS(make_cyclic_product(big), BudgetError);
  std::size_t zero[] = {0};
  CHECK_THROWS_AS(make_cyclic_product(zero), PreconditionError);
}

TEST_CASE("table validation rejects non-groups") {
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 2}, {1, 0}}), PreconditionError);
  // Latin square with identity but not associative (order 5 loop).
  std::vector<std::vector<Element>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table(loop), PreconditionError);
}

TEST_CASE("direct_product") {
  auto p = direct_product(z(2), z(3));
  CHECK(p.group->order() == 6);
  bool has6 = false;
  for (Element x = 0; x < 6; ++x) has6 |= p.group->element_order(x) == 6;
  CHECK(has6);
  CHECK(p.proj_a.is_surjective());
  CHECK(kernel(p.proj_a).order() == 3);

  auto t = direct_product(z(1), s3());
  CHECK(t.proj_b.is_surjective());
  CHECK(t.proj_b.is_injective());

  auto v = direct_product(z(2), z(2));
  CHECK(kernel(v.proj_a).order() == 2);
  CHECK(kernel(v.proj_b).order() == 2);

  CHECK_THROWS_AS(direct_product(z(64), z(65)), BudgetError);
}

TEST_CASE("all_subgroups examples") {
  CHECK(all_subgroups(z(4)).size() == 3);
  std::size_t m[] = {2, 2};
  CHECK(all_subgroups(make_cyclic_product(m)).size() == 5);
  CHECK(all_subgroups(s3_from_table()).size() == 6);
  auto subs = all_subgroups(z(4));
  CHECK(subs[1].members() == std::vector<Element>{0, 2});
}

TEST_CASE("all_subgroups agrees with brute force and is canonically ordered") {
  for (const auto& g : small_groups()) {
    auto subs = all_subgroups(g);
    auto brute = brute_force_subgroups(*g);
    std::sort(brute.begin(), brute.end());
    CHECK(member_lists(subs) == brute);
    CHECK(std::is_sorted(subs.begin(), subs.end(), canonical_less));
    for (const auto& h : subs) {
      CHECK_NOTHROW(Subgroup::from_members(g, h.members()));
      CHECK(g->order() % h.order() == 0);
    }
  }
}

TEST_CASE("image, kernel and the order formula") {
  auto red = Homomorphism::make(z(4), z(2), {0, 1, 0, 1});
  CHECK(kernel(red).members() == std::vector<Element>{0, 2});
  CHECK(image(red, Subgroup::from_members(z(4), {0, 2})).members() == std::vector<Element>{0});

  auto id = Homomorphism::identity(s3());
  for (const auto& h : all_subgroups(s3())) CHECK(image(id, h) == h);

  auto v = direct_product(z(2), z(2));
  auto diag = Subgroup::from_members(v.group, {product_element(*z(2), 0, 0), product_element(*z(2), 1, 1)});
  CHECK(image(v.proj_a, diag).order() == 2);

  // |H| = |ker(h|H)| |h(H)| on every subgroup of some test groups.
  for (const auto& g : small_groups()) {
    for (const auto& n : all_subgroups(g)) {
      if (!is_normal(n)) continue;
      Quotient q = quotient(n);
      for (const auto& h : all_subgroups(g)) {
        auto k = intersect(h, kernel(q.projection));
        CHECK(h.order() == k.order() * image(q.projection, h).order());
      }
    }
  }
}

TEST_CASE("normality and quotients") {
  auto q = quotient(Subgroup::from_members(z(4), {0, 2}));
  CHECK(q.group->order() == 2);
  CHECK(q.projection.is_surjective());
  CHECK(kernel(q.projection).members() == std::vector<Element>{0, 2});

  auto g = s3();
  int order_two = 0;
  for (const auto& h : all_subgroups(g)) {
    if (h.order() != 2) continue;
    ++order_two;
    auto w = normality_witness(h);
    REQUIRE(w.has_value());
    CHECK(h.contains(w->n));
    CHECK_FALSE(h.contains(g->conjugate(w->x, w->n)));
    CHECK_THROWS_AS(quotient(h), PreconditionError);
  }
  CHECK(order_two == 3);

  // Kernels are always normal.
  for (const auto& hg : small_groups()) {
    for (const auto& n : all_subgroups(hg)) {
      if (!is_normal(n)) continue;
      CHECK(is_normal(kernel(quotient(n).projection)));
    }
  }
}

TEST_CASE("haar_mass") {
  CHECK(haar_mass(Subgroup::whole(z(4)), HaarMode::Counting) == Rational(4));
  CHECK(haar_mass(Subgroup::from_members(z(4), {0, 2}), HaarMode::Probability) == Rational(1, 2));
  CHECK(haar_mass(Subgroup::trivial(s3()), HaarMode::Probability) == Rational(1, 6));
  CHECK(Haar::from_atom(Rational(1, 6), 6).kind == Haar::Kind::Probability);
  CHECK(Haar::from_atom(Rational(1), 6).kind == Haar::Kind::Counting);
  CHECK(Haar::from_atom(Rational(2), 6).kind == Haar::Kind::Scaled);
}

TEST_CASE("permutation groups and embeddings") {
  auto s4 = make_symmetric_group(4);
  CHECK(s4->order() == 24);
  CHECK(s4->identity() == 0);
  CHECK_FALSE(s4->is_abelian());
  CHECK(all_subgroups(s4).size() == 30);

  auto h = Subgroup::from_members(z(4), {0, 2});
  auto e = as_group(h);
  CHECK(e.group->order() == 2);
  CHECK(e.inclusion.is_injective());
  CHECK_THROWS_AS(Subgroup::from_members(z(4), {0, 1}), PreconditionError);
  CHECK_THROWS_AS(Homomorphism::make(z(2), z(4), {0, 1}), PreconditionError);
}

TEST_CASE("larger groups use the sampled associativity scan") {
  std::size_t m[] = {17, 17};
  auto g = make_cyclic_product(m);
  CHECK(g->order() == 289);
  CHECK(all_subgroups(g).size() == 20);  // 1 + 18 lines + whole
}
