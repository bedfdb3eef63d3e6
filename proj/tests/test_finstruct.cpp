#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coalbase/enumerate.hpp"
#include "coalbase/finstruct.hpp"

using namespace coalbase;

namespace {
fin_poset chain(int n) {
  std::vector<std::string> ls;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) ls.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(ls[i], ls[i + 1]);
  return poset_from_pairs(ls, pairs);
}

fin_poset diamond() {
  return poset_from_pairs({"0", "x", "y", "1"},
                          {{"0", "x"}, {"0", "y"}, {"x", "1"}, {"y", "1"}});
}
}  // namespace

TEST_CASE("poset_from_pairs closes transitively and rejects cycles") {
  auto p = poset_from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.leq(p.carrier->index_of("a"), p.carrier->index_of("c")));
  CHECK_FALSE(p.leq(p.carrier->index_of("c"), p.carrier->index_of("a")));

  CHECK_THROWS_WITH(poset_from_pairs({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                    Catch::Matchers::ContainsSubstring("cycle"));

  auto d = poset_from_pairs({"a", "b"}, {});
  CHECK(d.leq(0, 0));
  CHECK_FALSE(d.leq(0, 1));

  CHECK_THROWS_AS(poset_from_pairs({"a", "a"}, {}), shape_error);
  CHECK_THROWS_AS(poset_from_pairs({"a"}, {{"a", "z"}}), shape_error);
}

TEST_CASE("poset closure is idempotent") {
  auto p = chain(4);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int x = 0; x < p.size(); ++x)
    for (int y : mask_elements(p.up[x]))
      pairs.emplace_back(p.carrier->labels[x], p.carrier->labels[y]);
  auto q = poset_from_pairs(p.carrier->labels, pairs);
  CHECK(q.up == p.up);
}

TEST_CASE("equalize on plain maps") {
  auto s = share(fin_set::of({"a", "b"}));
  auto idm = fin_map::identity(s);
  auto [full, inc_full] = equalize(idm, idm);
  CHECK(full.size() == 2);

  auto const_a = fin_map::constant(s, s, 0);
  auto [ea, inc_a] = equalize(idm, const_a);
  CHECK(ea.labels == std::vector<std::string>{"a"});
  CHECK(inc_a(0) == 0);

  auto t = share(fin_set::of({"u"}));
  CHECK_THROWS_AS(equalize(idm, fin_map::identity(t)), shape_error);
}

TEST_CASE("equalize of the canonical free coalgebra against the unit on P({1})") {
  // carrier L = P({1}); compare T(eta_A), eta_L : L => P(L) pointwise over
  // all four elements of P(P({1}))
  auto a = fin_set::of({"1"});
  auto l = powerset_poset(a);        // 2 elements: {}, {1}
  auto ll = powerset_poset(*l.order->carrier);  // 4 elements
  auto lset = l.order->carrier;
  auto llset = ll.order->carrier;

  // b(S) = { {x} : x in S }, as an element of P(L) encoded by mask over L
  std::vector<int> b_tab, eta_tab;
  for (subset s : l.elems) {
    subset singletons = 0;
    for (int x : mask_elements(s)) singletons |= mask_bit(l.index(mask_bit(x)));
    b_tab.push_back(ll.index(singletons));
    eta_tab.push_back(ll.index(mask_bit(l.index(s))));
  }
  auto b = fin_map::of(lset, llset, b_tab);
  auto eta = fin_map::of(lset, llset, eta_tab);
  auto [fixed, inc] = equalize(b, eta);
  // exactly the eta_A-image: the singleton {1}, not the empty set
  REQUIRE(fixed.size() == 1);
  CHECK(fixed.labels[0] == "{1}");
}

TEST_CASE("downward closure") {
  auto c3 = chain(3);
  CHECK(downward_close(c3, mask_bit(2)) == 0b111);

  auto d2 = poset_from_pairs({"a", "b"}, {});
  CHECK(downward_close(d2, mask_bit(0)) == mask_bit(0));

  auto dia = diamond();
  int x = dia.carrier->index_of("x");
  subset closed = downward_close(dia, mask_bit(x));
  CHECK(closed == (mask_bit(dia.carrier->index_of("0")) | mask_bit(x)));
}

TEST_CASE("downward closure is idempotent, monotone, extensive") {
  std::mt19937_64 rng(7);
  for (const auto& p : all_posets(4)) {
    for (int trial = 0; trial < 50; ++trial) {
      subset m = std::uniform_int_distribution<subset>(0, full_mask(p.size()))(rng);
      subset n = std::uniform_int_distribution<subset>(0, full_mask(p.size()))(rng);
      subset cm = downward_close(p, m);
      CHECK(downward_close(p, cm) == cm);
      CHECK((m & ~cm) == 0);
      if ((m & ~n) == 0) CHECK((cm & ~downward_close(p, n)) == 0);
    }
  }
}

TEST_CASE("downset enumeration counts") {
  CHECK(all_downsets(chain(2)).size() == 3);
  CHECK(all_downsets(poset_from_pairs({"a", "b"}, {})).size() == 4);
  CHECK(all_downsets(diamond()).size() == 6);
  CHECK(all_downsets(chain(0)).size() == 1);
}

TEST_CASE("joins, meets, lattice recognition") {
  auto dia = diamond();
  CHECK(is_lattice(dia));
  auto j = join_of(dia, dia.carrier->index_of("x"), dia.carrier->index_of("y"));
  REQUIRE(j.has_value());
  CHECK(*j == dia.carrier->index_of("1"));
  CHECK(*bottom_of(dia) == dia.carrier->index_of("0"));
  CHECK(*top_of(dia) == dia.carrier->index_of("1"));

  auto v = poset_from_pairs({"a", "b", "t"}, {{"a", "t"}, {"b", "t"}});
  CHECK_FALSE(is_lattice(v));  // no bottom

  CHECK(is_lattice(chain(1)));
  CHECK_FALSE(is_lattice(poset_from_pairs({"a", "b"}, {})));
}

TEST_CASE("directedness") {
  auto dia = diamond();
  int x = dia.carrier->index_of("x"), y = dia.carrier->index_of("y"),
      one = dia.carrier->index_of("1");
  CHECK_FALSE(is_directed(dia, 0));
  CHECK(is_directed(dia, mask_bit(x)));
  CHECK_FALSE(is_directed(dia, mask_bit(x) | mask_bit(y)));
  CHECK(is_directed(dia, mask_bit(x) | mask_bit(y) | mask_bit(one)));
}

TEST_CASE("poset and lattice enumeration match known counts") {
  CHECK(all_posets(1).size() == 1);
  CHECK(all_posets(2).size() == 2);
  CHECK(all_posets(3).size() == 5);
  CHECK(all_posets(4).size() == 16);

  auto ls = all_lattices(8);
  std::map<int, int> by_size;
  for (const auto& l : ls) by_size[l.size()]++;
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 1);
  CHECK(by_size[3] == 1);
  CHECK(by_size[4] == 2);
  CHECK(by_size[5] == 5);
  CHECK(by_size[6] == 15);
  CHECK(by_size[7] == 53);
  CHECK(by_size[8] == 222);
  for (const auto& l : ls) CHECK(is_lattice(l));
}

TEST_CASE("product and disjoint union carriers") {
  auto x = fin_set::of({"a", "b"});
  auto y = fin_set::of({"u", "v", "w"});
  auto p = product_set(x, y);
  CHECK(p.size() == 6);
  CHECK(p.labels[0] == "(a,u)");
  CHECK(p.labels[5] == "(b,w)");

  auto u = disjoint_union(x, y);
  CHECK(u.size() == 5);
  CHECK_THROWS_AS(disjoint_union(x, x), shape_error);
}
