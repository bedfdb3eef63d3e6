#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coalbase/scalar.hpp"

using namespace coalbase;

namespace {
scalar rnd(std::mt19937_64& rng, scalar_domain dom) {
  auto q = [&](int lo, int hi, int den) {
    std::uniform_int_distribution<int> n(lo, hi), d(1, den);
    mpq_class v(n(rng), d(rng));
    v.canonicalize();
    return v;
  };
  switch (dom) {
    case scalar_domain::boolean:
      return scalar::boolean(std::uniform_int_distribution<int>(0, 1)(rng));
    case scalar_domain::natural: return scalar::make(dom, std::uniform_int_distribution<int>(0, 9)(rng));
    case scalar_domain::integer: return scalar::make(dom, std::uniform_int_distribution<int>(-9, 9)(rng));
    case scalar_domain::rational: return scalar::make(dom, q(-9, 9, 5));
    case scalar_domain::gaussian_rational: return scalar::make(dom, q(-5, 5, 4), q(-5, 5, 4));
  }
  throw std::logic_error("unreachable");
}
}  // namespace

TEST_CASE("parse canonicalizes and round-trips") {
  auto half = scalar::parse("3/6", scalar_domain::rational);
  CHECK(half == scalar::make(scalar_domain::rational, mpq_class(1, 2)));
  CHECK(half.str() == "1/2");

  auto g = scalar::parse("-1/2+3/4i", scalar_domain::gaussian_rational);
  CHECK(g.re() == mpq_class(-1, 2));
  CHECK(g.im() == mpq_class(3, 4));

  CHECK(scalar::parse("2", scalar_domain::natural) ==
        scalar::from_int(scalar_domain::natural, 2));

  CHECK(scalar::parse("true", scalar_domain::boolean).bool_value());
  CHECK_FALSE(scalar::parse("false", scalar_domain::boolean).bool_value());

  CHECK(scalar::parse("2i", scalar_domain::gaussian_rational) ==
        scalar::make(scalar_domain::gaussian_rational, 0, 2));
  CHECK(scalar::parse("1-2i", scalar_domain::gaussian_rational) ==
        scalar::make(scalar_domain::gaussian_rational, 1, -2));
}

TEST_CASE("parse rejects out-of-domain and malformed input") {
  CHECK_THROWS_AS(scalar::parse("-1", scalar_domain::natural), parse_error);
  CHECK_THROWS_AS(scalar::parse("1/2", scalar_domain::integer), parse_error);
  CHECK_THROWS_AS(scalar::parse("1+2i", scalar_domain::rational), parse_error);
  CHECK_THROWS_AS(scalar::parse("", scalar_domain::rational), parse_error);
  CHECK_THROWS_AS(scalar::parse("1/0", scalar_domain::rational), parse_error);
  CHECK_THROWS_AS(scalar::parse("i", scalar_domain::gaussian_rational), parse_error);
  CHECK_THROWS_AS(scalar::parse("1x", scalar_domain::rational), parse_error);
  CHECK_THROWS_AS(scalar::parse("maybe", scalar_domain::boolean), parse_error);
}

TEST_CASE("arithmetic basics") {
  auto r = [](int n, int d) { return scalar::make(scalar_domain::rational, mpq_class(n, d)); };
  CHECK(add(r(1, 2), r(1, 3)) == r(5, 6));

  auto i = scalar::imaginary_unit();
  CHECK(mul(i, i) == scalar::make(scalar_domain::gaussian_rational, -1));

  auto g = scalar::make(scalar_domain::gaussian_rational, mpq_class(1, 2), mpq_class(3, 4));
  CHECK(conj(g) == scalar::make(scalar_domain::gaussian_rational, mpq_class(1, 2), mpq_class(-3, 4)));

  CHECK(add(scalar::boolean(true), scalar::boolean(false)).bool_value());
  CHECK_FALSE(mul(scalar::boolean(true), scalar::boolean(false)).bool_value());

  CHECK(mul(inv(g), g).is_one());
}

TEST_CASE("unsupported operations are reported, not coerced") {
  CHECK_THROWS_AS(neg(scalar::from_int(scalar_domain::natural, 1)), arith_error);
  CHECK_THROWS_AS(neg(scalar::boolean(true)), arith_error);
  CHECK_THROWS_AS(inv(scalar::from_int(scalar_domain::integer, 2)), arith_error);
  CHECK_THROWS_AS(inv(scalar::zero(scalar_domain::rational)), arith_error);
  CHECK_THROWS_AS(conj(scalar::from_int(scalar_domain::rational, 1)), arith_error);
  CHECK_THROWS_AS(add(scalar::from_int(scalar_domain::rational, 1),
                      scalar::from_int(scalar_domain::integer, 1)),
                  domain_error);
}

TEST_CASE("semiring laws on random triples, every domain") {
  std::mt19937_64 rng(0);
  for (auto dom : {scalar_domain::boolean, scalar_domain::natural, scalar_domain::integer,
                   scalar_domain::rational, scalar_domain::gaussian_rational}) {
    for (int trial = 0; trial < 200; ++trial) {
      scalar a = rnd(rng, dom), b = rnd(rng, dom), c = rnd(rng, dom);
      CHECK(add(add(a, b), c) == add(a, add(b, c)));
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(add(a, b) == add(b, a));
      CHECK(mul(a, b) == mul(b, a));
      CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
      CHECK(mul(scalar::one(dom), a) == a);
      CHECK(mul(scalar::zero(dom), a) == scalar::zero(dom));
      CHECK(add(scalar::zero(dom), a) == a);
    }
  }
}

TEST_CASE("gaussian involution laws") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    scalar x = rnd(rng, scalar_domain::gaussian_rational);
    scalar y = rnd(rng, scalar_domain::gaussian_rational);
    CHECK(conj(conj(x)) == x);
    CHECK(conj(mul(x, y)) == mul(conj(x), conj(y)));
    CHECK(conj(add(x, y)) == add(conj(x), conj(y)));
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(2);
  for (auto dom : {scalar_domain::boolean, scalar_domain::natural, scalar_domain::integer,
                   scalar_domain::rational, scalar_domain::gaussian_rational}) {
    for (int trial = 0; trial < 300; ++trial) {
      scalar x = rnd(rng, dom);
      CHECK(scalar::parse(x.str(), dom) == x);
    }
  }
}

TEST_CASE("scalar_arith dispatcher") {
  auto two = scalar::from_int(scalar_domain::rational, 2);
  auto three = scalar::from_int(scalar_domain::rational, 3);
  CHECK(scalar_arith(scalar_op::add, two, &three) == scalar::from_int(scalar_domain::rational, 5));
  CHECK(scalar_arith(scalar_op::inv, two) == scalar::make(scalar_domain::rational, mpq_class(1, 2)));
  CHECK_THROWS_AS(scalar_arith(scalar_op::add, two), arith_error);
}
