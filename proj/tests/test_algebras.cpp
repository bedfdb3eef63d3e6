#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coalbase/algebras.hpp"
#include "coalbase/enumerate.hpp"

using namespace coalbase;

namespace {
scalar q(int n, int d = 1) { return scalar::make(scalar_domain::rational, mpq_class(n, d)); }

qvec qv(std::vector<int> xs) {
  qvec v;
  for (int x : xs) v.push_back(q(x));
  return v;
}

fin_poset chain(int n) {
  std::vector<std::string> ls;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) ls.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(ls[i], ls[i + 1]);
  return poset_from_pairs(ls, pairs);
}
}  // namespace

TEST_CASE("module evaluation is coordinatewise") {
  module_algebra m{scalar_domain::rational, 2};
  auto got = m.eval({{q(2), qv({1, 0})}, {q(3), qv({0, 1})}});
  CHECK(got == qv({2, 3}));
  CHECK(m.eval({}) == qv({0, 0}));
  CHECK_THROWS_AS(m.eval({{q(1), qv({1, 2, 3})}}), shape_error);
}

TEST_CASE("lattice join evaluation on P({1,2})") {
  auto alg = free_algebra_powerset(fin_set::of({"1", "2"}));
  int s1 = alg.free_on->index_of.at(mask_bit(0));
  int s2 = alg.free_on->index_of.at(mask_bit(1));
  int s12 = alg.free_on->index_of.at(0b11);
  CHECK(alg.eval_mask(mask_bit(s1) | mask_bit(s2)) == s12);
  CHECK(alg.eval_mask(0) == alg.bottom);
  CHECK(alg.order->carrier->labels[alg.bottom] == "{}");
}

TEST_CASE("convex evaluation: midpoint of a segment") {
  auto seg = make_convex_algebra(1, {qv({0}), qv({1})});
  auto mid = seg.eval({{q(1, 2), qv({0})}, {q(1, 2), qv({1})}});
  CHECK(mid == qvec{q(1, 2)});
  CHECK_THROWS_AS(seg.eval({{q(1, 2), qv({0})}}), shape_error);
  CHECK_THROWS_AS(seg.eval({{q(2), qv({0})}, {q(-1), qv({1})}}), shape_error);
}

TEST_CASE("em laws pass exhaustively on every small lattice") {
  for (const auto& l : all_lattices(5)) {
    auto alg = make_lattice_algebra(share(l));
    auto rep = check_em_laws(alg);
    INFO("lattice size " << l.size());
    CHECK(rep.all_pass());
  }
}

TEST_CASE("em laws on modules and convex sets, sampled") {
  module_algebra m{scalar_domain::rational, 3};
  CHECK(check_em_laws(m).all_pass());
  module_algebra mg{scalar_domain::gaussian_rational, 2};
  CHECK(check_em_laws(mg).all_pass());

  auto tri = make_convex_algebra(2, {qv({0, 0}), qv({1, 0}), qv({0, 1})});
  CHECK(check_em_laws(tri).all_pass());
}

TEST_CASE("corrupted join table fails with a witness subset") {
  auto alg = free_algebra_powerset(fin_set::of({"1", "2"}));
  lattice_algebra bad = alg;
  bad.join[0][1] = bad.bottom;  // break one join
  auto rep = check_em_laws(bad);
  CHECK_FALSE(rep.all_pass());
  const auto* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK_FALSE(f->witness.empty());
}

TEST_CASE("missing joins are a construction-time error naming the pair") {
  auto v = poset_from_pairs({"a", "b"}, {});
  CHECK_THROWS_WITH(make_lattice_algebra(share(v)),
                    Catch::Matchers::ContainsSubstring("bottom"));
  // bottom present but a join missing
  auto y = poset_from_pairs({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
  CHECK_THROWS_WITH(make_lattice_algebra(share(y)),
                    Catch::Matchers::ContainsSubstring("join missing"));
}

TEST_CASE("homomorphism checks") {
  auto b2 = free_algebra_powerset(fin_set::of({"1", "2"}));
  auto b1 = free_algebra_powerset(fin_set::of({"1"}));

  // identity is a homomorphism
  std::vector<int> idt(static_cast<std::size_t>(b2.size()));
  std::iota(idt.begin(), idt.end(), 0);
  CHECK(check_homomorphism(b2, b2, idt).all_pass());

  // intersecting with {1} preserves joins: P({1,2}) -> P({1})
  std::vector<int> restrict_tab;
  for (subset s : b2.free_on->elem_masks)
    restrict_tab.push_back(b1.free_on->index_of.at(s & mask_bit(0)));
  CHECK(check_homomorphism(b2, b1, restrict_tab).all_pass());

  // monotone but not join-preserving: diamond to 2-chain, collapse the middle
  auto dia = make_lattice_algebra(share(poset_from_pairs(
      {"0", "x", "y", "1"}, {{"0", "x"}, {"0", "y"}, {"x", "1"}, {"y", "1"}})));
  auto c2 = make_lattice_algebra(share(chain(2)));
  const auto& dc = *dia.order->carrier;
  std::vector<int> collapse(4, 0);
  collapse[static_cast<std::size_t>(dc.index_of("1"))] = 1;
  REQUIRE(is_monotone(*dia.order, *c2.order, collapse));
  auto rep = check_homomorphism(dia, c2, collapse);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.first_failure()->witness.empty());

  // module homomorphisms: any matrix commutes with linear evaluation
  module_algebra m2{scalar_domain::rational, 2}, m3{scalar_domain::rational, 3};
  matrix h = matrix::zero(scalar_domain::rational, 3, 2);
  h.at(0, 0) = q(1);
  h.at(1, 1) = q(2);
  h.at(2, 0) = q(-1);
  CHECK(check_homomorphism(m2, m3, h).all_pass());
}

TEST_CASE("free algebras") {
  auto p2 = free_algebra_powerset(fin_set::of({"1", "2"}));
  CHECK(p2.size() == 4);
  CHECK(check_em_laws(p2).all_pass());

  auto d_chain = free_algebra_downset(chain(2));
  CHECK(d_chain.size() == 3);  // {}, {c0}, {c0,c1}
  CHECK(check_em_laws(d_chain).all_pass());
  // three downsets of a 2-chain form a 3-chain
  for (int i = 0; i + 1 < 3; ++i) CHECK(d_chain.order->leq(i, i + 1));

  auto d_anti = free_algebra_downset(poset_from_pairs({"a", "b"}, {}));
  CHECK(d_anti.size() == 4);
  CHECK(check_em_laws(d_anti).all_pass());

  auto p0 = free_algebra_powerset(fin_set::of({}));
  CHECK(p0.size() == 1);
  CHECK(check_em_laws(p0).all_pass());
}

TEST_CASE("join evaluation distributes over unions of families") {
  std::mt19937_64 rng(5);
  for (const auto& l : all_lattices(6)) {
    auto alg = make_lattice_algebra(share(l));
    for (int trial = 0; trial < 30; ++trial) {
      subset s1 = std::uniform_int_distribution<subset>(0, full_mask(l.size()))(rng);
      subset s2 = std::uniform_int_distribution<subset>(0, full_mask(l.size()))(rng);
      int lhs = alg.eval_mask(s1 | s2);
      int rhs = alg.eval_mask(mask_bit(alg.eval_mask(s1)) | mask_bit(alg.eval_mask(s2)));
      CHECK(lhs == rhs);
    }
    for (int x = 0; x < l.size(); ++x) CHECK(alg.eval_mask(mask_bit(x)) == x);
  }
}

TEST_CASE("module evaluation is invariant under reordering and merging") {
  std::mt19937_64 rng(6);
  module_algebra m{scalar_domain::rational, 3};
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::pair<scalar, qvec>> fc;
    int k = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < k; ++i) {
      qvec v;
      for (int j = 0; j < 3; ++j) v.push_back(random_scalar(rng, m.dom));
      fc.emplace_back(random_scalar(rng, m.dom), v);
    }
    auto shuffled = fc;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(m.eval(fc) == m.eval(shuffled));
    if (k >= 2) {
      // merge the first two summands when they share the vector
      auto merged = fc;
      merged[0].second = merged[1].second;
      auto explicit_merge = merged;
      explicit_merge[0].first = add(merged[0].first, merged[1].first);
      explicit_merge.erase(explicit_merge.begin() + 1);
      CHECK(m.eval(merged) == m.eval(explicit_merge));
    }
  }
}
