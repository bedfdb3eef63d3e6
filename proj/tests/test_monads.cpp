#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coalbase/monads.hpp"

using namespace coalbase;

namespace {

carrier_ref set_carrier(std::vector<std::string> labels) {
  return carrier_ref::of(share(fin_set::of(std::move(labels))));
}

carrier_ref chain_carrier(int n) {
  std::vector<std::string> ls;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) ls.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(ls[i], ls[i + 1]);
  return carrier_ref::of(share(poset_from_pairs(ls, pairs)));
}

scalar q(int n, int d = 1) { return scalar::make(scalar_domain::rational, mpq_class(n, d)); }

// independent oracle: coefficient of x under mu(sum_i s_i phi_i) summed the
// slow way, one carrier element at a time
monad_value mu_weighted_oracle(const monad_tag& tag, const formal_combination& fc,
                               const carrier_ref& x) {
  std::vector<std::pair<int, scalar>> terms;
  for (int e = 0; e < x.size(); ++e) {
    scalar c = scalar::zero(tag.coeff);
    for (const auto& [s, phi] : fc)
      for (const auto& [i, w] : phi.terms)
        if (i == e) c = add(c, mul(s, w));
    if (!c.is_zero()) terms.emplace_back(e, c);
  }
  if (tag.kind == monad_kind::distribution) return make_distribution(x, terms);
  return make_multiset(tag.coeff, x, terms);
}

}  // namespace

TEST_CASE("units") {
  auto x = set_carrier({"e1", "e2"});
  auto mq = monad_tag::multiset(scalar_domain::rational);
  auto u = monad_unit(mq, x, 0);
  REQUIRE(u.terms.size() == 1);
  CHECK(u.terms[0] == std::pair<int, scalar>{0, q(1)});

  auto c2 = chain_carrier(2);
  auto ud = monad_unit(monad_tag::downset(), c2, 1);
  CHECK(ud.mask == 0b11);  // principal downset of the top

  auto dist = monad_unit(monad_tag::distribution(), x, 0);
  CHECK(dist.terms == std::vector<std::pair<int, scalar>>{{0, q(1)}});

  auto pw = monad_unit(monad_tag::powerset(), x, 1);
  CHECK(pw.mask == mask_bit(1));

  CHECK_THROWS_AS(monad_unit(mq, x, 9), shape_error);
}

TEST_CASE("multiplication against the expansion oracle") {
  auto x = set_carrier({"a", "b"});
  auto mq = monad_tag::multiset(scalar_domain::rational);
  auto phi1 = make_multiset(scalar_domain::rational, x, {{0, q(1)}, {1, q(1)}});
  auto phi2 = make_multiset(scalar_domain::rational, x, {{1, q(1)}});
  formal_combination fc{{q(2), phi1}, {q(3), phi2}};
  auto got = monad_mult_formal(mq, fc, x);
  CHECK(got == mu_weighted_oracle(mq, fc, x));
  CHECK(got == make_multiset(scalar_domain::rational, x, {{0, q(2)}, {1, q(5)}}));

  auto dt = monad_tag::distribution();
  auto d1 = make_distribution(x, {{0, q(1)}});
  auto d2 = make_distribution(x, {{0, q(1, 2)}, {1, q(1, 2)}});
  formal_combination dfc{{q(1, 2), d1}, {q(1, 2), d2}};
  auto dgot = monad_mult_formal(dt, dfc, x);
  CHECK(dgot == mu_weighted_oracle(dt, dfc, x));
  CHECK(dgot == make_distribution(x, {{0, q(3, 4)}, {1, q(1, 4)}}));
}

TEST_CASE("powerset multiplication is union") {
  auto x = set_carrier({"a", "b"});
  auto pt = monad_tag::powerset();
  auto va = make_subset_value(x, mask_bit(0));
  auto vab = make_subset_value(x, 0b11);
  CHECK(monad_mult_union(pt, {va, vab}, x).mask == 0b11);
  CHECK(monad_mult_union(pt, {}, x).mask == 0);
}

TEST_CASE("functorial action with aggregation") {
  auto x = set_carrier({"a", "b"});
  auto y = set_carrier({"c"});
  auto f = fin_map::of(x.set, y.set, {0, 0});
  auto mq = monad_tag::multiset(scalar_domain::rational);
  auto v = make_multiset(scalar_domain::rational, x, {{0, q(1)}, {1, q(2)}});
  auto got = monad_map(f, v, y);
  // aggregation oracle: total mass is preserved under a collapse
  scalar total = scalar::zero(scalar_domain::rational);
  for (const auto& [i, s] : v.terms) total = add(total, s);
  REQUIRE(got.terms.size() == 1);
  CHECK(got.terms[0].second == total);
  CHECK(got == make_multiset(scalar_domain::rational, y, {{0, q(3)}}));

  auto idp = fin_map::identity(x.set);
  auto s = make_subset_value(x, 0b10);
  CHECK(monad_map(idp, s, x) == s);
}

TEST_CASE("downset map takes the downward closure of the image") {
  auto c3 = chain_carrier(3);
  auto c2 = chain_carrier(2);
  // monotone collapse c0,c1 -> c0; c2 -> c1
  auto f = fin_map::of(c3.set, c2.set, {0, 0, 1});
  auto v = make_downset_value(c3, 0b111);
  auto got = monad_map(f, v, c2);
  CHECK(got.mask == downward_close(*c2.order, got.mask));
  CHECK(got.mask == 0b11);

  auto vlow = make_downset_value(c3, 0b001);
  CHECK(monad_map(f, vlow, c2).mask == 0b01);
}

TEST_CASE("strength pairs support with the context element") {
  auto x = set_carrier({"a", "b"});
  auto y = share(fin_set::of({"y0", "y1"}));
  auto v = make_multiset(scalar_domain::rational, x, {{0, q(1)}, {1, q(2)}});
  auto st = monad_strength(v, y, 1);
  CHECK(st.product.set->labels[st.value.terms[0].first] == "(a,y1)");
  CHECK(st.value.terms[0].second == q(1));
  CHECK(st.value.terms[1].second == q(2));

  auto pw = make_subset_value(x, mask_bit(0));
  auto stp = monad_strength(pw, y, 1);
  CHECK(stp.value.mask == mask_bit(0 * 2 + 1));

  auto d = make_distribution(x, {{0, q(1, 2)}, {1, q(1, 2)}});
  auto std_ = monad_strength(d, y, 0);
  CHECK(std_.value.terms.size() == 2);

  auto c2 = chain_carrier(2);
  auto dw = monad_unit(monad_tag::downset(), c2, 0);
  CHECK_THROWS_AS(monad_strength(dw, y, 0), shape_error);
}

TEST_CASE("monad laws: exhaustive set-like, sampled weighted") {
  auto x3 = set_carrier({"a", "b", "c"});
  auto rep_pw = check_monad_laws(monad_tag::powerset(), x3);
  CHECK(rep_pw.all_pass());

  auto c3 = chain_carrier(3);
  auto rep_dw = check_monad_laws(monad_tag::downset(), c3);
  CHECK(rep_dw.all_pass());

  auto x2 = set_carrier({"a", "b"});
  auto rep_mq = check_monad_laws(monad_tag::multiset(scalar_domain::rational), x2);
  CHECK(rep_mq.all_pass());
  CHECK(rep_mq.cases_run >= 100);

  auto rep_d = check_monad_laws(monad_tag::distribution(), x2);
  CHECK(rep_d.all_pass());

  auto f = share(fin_set::of({"f0", "f1"}));
  auto rep_c = check_monad_laws(monad_tag::coproduct(f), x2);
  CHECK(rep_c.all_pass());
}

TEST_CASE("corrupted multiplication is reported with a witness") {
  auto x = set_carrier({"a", "b"});
  monad_mu_hooks bad;
  bad.mult_formal = [](const monad_tag& tag, const formal_combination& fc, carrier_ref c) {
    auto v = monad_mult_formal(tag, fc, c);
    if (!v.terms.empty()) v.terms.pop_back();  // drop a coefficient
    return v;
  };
  auto rep = check_monad_laws(monad_tag::multiset(scalar_domain::rational), x, {}, bad);
  CHECK_FALSE(rep.all_pass());
  const auto* fail = rep.first_failure();
  REQUIRE(fail != nullptr);
  CHECK_FALSE(fail->witness.empty());

  monad_mu_hooks bad_union;
  bad_union.mult_union = [](const monad_tag& tag, const std::vector<monad_value>& fam,
                            carrier_ref c) {
    auto v = monad_mult_union(tag, fam, c);
    v.mask &= ~subset{1};
    return v;
  };
  auto rep2 = check_monad_laws(monad_tag::powerset(), x, {}, bad_union);
  CHECK_FALSE(rep2.all_pass());
}

TEST_CASE("functor laws and naturality on samples") {
  std::mt19937_64 rng(0);
  auto x = set_carrier({"a", "b", "c"});
  auto y = set_carrier({"u", "v"});
  auto z = set_carrier({"p", "q", "r", "s"});
  auto mq = monad_tag::multiset(scalar_domain::rational);

  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> toy(0, y.size() - 1), toz(0, z.size() - 1);
    auto f = fin_map::of(x.set, y.set, {toy(rng), toy(rng), toy(rng)});
    auto g = fin_map::of(y.set, z.set, {toz(rng), toz(rng)});
    auto v = random_multiset(rng, scalar_domain::rational, x);

    CHECK(monad_map(fin_map::identity(x.set), v, x) == v);
    CHECK(monad_map(compose(g, f), v, z) == monad_map(g, monad_map(f, v, y), z));

    // eta natural: T(f) . eta = eta . f
    int e = std::uniform_int_distribution<int>(0, x.size() - 1)(rng);
    CHECK(monad_map(f, monad_unit(mq, x, e), y) == monad_unit(mq, y, f(e)));

    // mu natural: T(f) . mu = mu . T(T(f))
    formal_combination fc{{random_scalar(rng, scalar_domain::rational), v},
                          {random_scalar(rng, scalar_domain::rational),
                           random_multiset(rng, scalar_domain::rational, x)}};
    auto lhs = monad_map(f, monad_mult_formal(mq, fc, x), y);
    formal_combination mapped;
    for (const auto& [s, phi] : fc) mapped.emplace_back(s, monad_map(f, phi, y));
    CHECK(lhs == monad_mult_formal(mq, mapped, y));
  }
}

TEST_CASE("boolean multiset is the powerset value") {
  auto x = set_carrier({"a", "b", "c"});
  auto mb = monad_tag::multiset(scalar_domain::boolean);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    subset m = random_subset(rng, x.size());
    subset m2 = random_subset(rng, x.size());
    auto enc = [&](subset mm) {
      std::vector<std::pair<int, scalar>> terms;
      for (int i : mask_elements(mm)) terms.emplace_back(i, scalar::boolean(true));
      return make_multiset(scalar_domain::boolean, x, terms);
    };
    auto dec = [&](const monad_value& v) {
      subset mm = 0;
      for (const auto& [i, s] : v.terms)
        if (s.bool_value()) mm |= mask_bit(i);
      return mm;
    };
    formal_combination fc{{scalar::boolean(true), enc(m)}, {scalar::boolean(true), enc(m2)}};
    auto mu_b = monad_mult_formal(mb, fc, x);
    auto mu_p = monad_mult_union(monad_tag::powerset(),
                                 {make_subset_value(x, m), make_subset_value(x, m2)}, x);
    CHECK(dec(mu_b) == mu_p.mask);
  }
}

TEST_CASE("distribution values stay normalized through mu and map") {
  auto x = set_carrier({"a", "b", "c"});
  auto y = set_carrier({"u", "v"});
  std::mt19937_64 rng(4);
  auto dt = monad_tag::distribution();
  for (int trial = 0; trial < 50; ++trial) {
    auto d1 = random_distribution(rng, x);
    auto d2 = random_distribution(rng, x);
    formal_combination fc{{q(1, 3), d1}, {q(2, 3), d2}};
    auto m = monad_mult_formal(dt, fc, x);
    scalar total = scalar::zero(scalar_domain::rational);
    for (const auto& [i, s] : m.terms) total = add(total, s);
    CHECK(total.is_one());

    std::uniform_int_distribution<int> toy(0, 1);
    auto f = fin_map::of(x.set, y.set, {toy(rng), toy(rng), toy(rng)});
    auto mapped = monad_map(f, d1, y);
    scalar total2 = scalar::zero(scalar_domain::rational);
    for (const auto& [i, s] : mapped.terms) total2 = add(total2, s);
    CHECK(total2.is_one());
  }
}

TEST_CASE("payload validation") {
  auto c2 = chain_carrier(2);
  CHECK_THROWS_AS(make_downset_value(c2, 0b10), shape_error);  // top without bottom
  auto x = set_carrier({"a", "b"});
  CHECK_THROWS_AS(make_distribution(x, {{0, q(1, 2)}}), shape_error);
  CHECK_THROWS_AS(make_distribution(x, {{0, q(3, 2)}, {1, q(-1, 2)}}), shape_error);
  CHECK_THROWS_AS(make_multiset(scalar_domain::rational, x, {{0, scalar::boolean(true)}}),
                  domain_error);
  // zero coefficients are unrepresentable
  auto v = make_multiset(scalar_domain::rational, x, {{0, q(1)}, {0, q(-1)}});
  CHECK(v.terms.empty());
}
