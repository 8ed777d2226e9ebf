#include <doctest.h>

#include "monoclone/error.hpp"
#include "monoclone/monomial.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace monoclone;
using testutil::mono;

TEST_CASE("reduce_exponent keeps positive multiples of q-1 at q-1") {
  const auto f5 = FieldParam::make(5);
  CHECK(reduce_exponent(0, f5) == 0);
  CHECK(reduce_exponent(8, f5) == 4);
  CHECK(reduce_exponent(9, f5) == 1);
  CHECK(reduce_exponent(4, f5) == 4);
  const auto f2 = FieldParam::make(2);
  CHECK(reduce_exponent(7, f2) == 1);
  CHECK(reduce_exponent(0, f2) == 0);
}

TEST_CASE("canonicalize drops zeros and reduces") {
  const auto f5 = FieldParam::make(5);
  CHECK(canonicalize({3, 2, 2}, f5) == mono(5, {{3, 1}, {2, 2}}));
  CHECK(canonicalize({7, 0, 11}, f5) == mono(5, {{3, 2}}));
  CHECK(canonicalize({4, 4}, f5) == mono(5, {{4, 2}}));
  CHECK_THROWS_AS(canonicalize({0, 0}, f5), DomainError);
  CHECK_THROWS_AS(canonicalize({}, f5), DomainError);
}

TEST_CASE("idempotency is exponent sum 1 mod q-1") {
  const auto f5 = FieldParam::make(5);
  CHECK(is_idempotent(mono(5, {{1, 5}}), f5));
  CHECK(is_idempotent(mono(5, {{1, 1}, {4, 1}}), f5));
  CHECK_FALSE(is_idempotent(mono(5, {{2, 1}}), f5));
}

TEST_CASE("substitute replaces one slot by a monomial in fresh variables") {
  const auto f3 = FieldParam::make(3);
  CHECK(substitute(mono(3, {{1, 1}, {2, 1}}), 1, mono(3, {{1, 1}, {2, 1}}), f3) ==
        mono(3, {{1, 1}, {2, 2}}));
  const auto f5 = FieldParam::make(5);
  CHECK(substitute(mono(5, {{2, 1}}), 2, mono(5, {{2, 1}}), f5) == mono(5, {{4, 1}}));
  CHECK_THROWS_AS(substitute(mono(5, {{2, 1}}), 3, mono(5, {{2, 1}}), f5), PreconditionError);
}

TEST_CASE("substitute agrees with composing functions over GF(5)") {
  const auto f5 = FieldParam::make(5);
  const auto m = mono(5, {{1, 1}, {4, 1}});
  const auto got = substitute(m, 4, m, f5);
  CHECK(got == mono(5, {{1, 1}, {4, 2}}));
  // x * (z * w^4)^4 evaluated in the field, against the table of the result.
  const auto field = oracle::make_field(5);
  oracle::Table composed;
  for (int x = 0; x < 5; ++x) {
    for (int z = 0; z < 5; ++z) {
      for (int w = 0; w < 5; ++w) {
        composed.push_back(field.times(x, field.power(field.times(z, field.power(w, 4)), 4)));
      }
    }
  }
  CHECK(composed == oracle::monomial_table(field, testutil::exponents_of(got)));
}

TEST_CASE("identify merges two variables") {
  const auto f5 = FieldParam::make(5);
  const auto m = mono(5, {{3, 1}, {2, 2}});
  const auto once = identify(m, 2, 2, f5);
  CHECK(once == mono(5, {{3, 1}, {4, 1}}));
  CHECK(identify(once, 4, 3, f5) == mono(5, {{3, 1}}));
  const auto f3 = FieldParam::make(3);
  CHECK(identify(mono(3, {{1, 2}}), 1, 1, f3) == mono(3, {{2, 1}}));
  CHECK(identify(mono(3, {{1, 1}, {2, 1}}), 1, 2, f3) == mono(3, {{1, 1}}));
  CHECK_THROWS_AS(identify(mono(3, {{1, 1}}), 1, 1, f3), PreconditionError);
  CHECK_THROWS_AS(identify(mono(3, {{1, 1}, {2, 1}}), 1, 1, f3), PreconditionError);
}

TEST_CASE("evaluate works in the discrete log model") {
  const auto f5 = FieldParam::make(5);
  CHECK(evaluate(mono(5, {{1, 1}, {2, 1}}), {2u, 1u}, f5) == LogValue{0u});
  CHECK(evaluate(mono(5, {{4, 1}}), {3u}, f5) == LogValue{0u});
  CHECK(evaluate(mono(5, {{1, 1}, {2, 1}}), {LogValue{}, 1u}, f5) == LogValue{});
  CHECK_THROWS_AS(evaluate(mono(5, {{4, 1}}), {1u, 1u}, f5), PreconditionError);
}

TEST_CASE("text form and parser") {
  const auto f5 = FieldParam::make(5);
  const auto m = parse_monomial("x1^3*x2^2*x3^2", f5);
  CHECK(m == mono(5, {{3, 1}, {2, 2}}));
  CHECK(to_string(m) == "x1^2*x2^2*x3^3");
  CHECK(parse_monomial(" x1 * x1 ^ 2 ", f5) == mono(5, {{3, 1}}));
  CHECK(parse_monomial("x2^5", f5) == mono(5, {{1, 1}}));
  CHECK(to_string(mono(5, {{1, 1}})) == "x1");
  CHECK(parse_monomial_list("x1^2, x1*x2^2", f5).size() == 2);

  try {
    parse_monomial("x1^*x2", f5);
    FAIL("no parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_monomial("x1^4*x1^4^", f5), ParseError);
  CHECK_THROWS_AS(parse_monomial("y1", f5), ParseError);
  CHECK_THROWS_AS(parse_monomial("", f5), ParseError);
  CHECK_THROWS_AS(parse_monomial("x1^0", f5), DomainError);
}

TEST_CASE("all_monomials lists widths in order") {
  const auto f3 = FieldParam::make(3);
  const auto ms = all_monomials(f3, 2);
  CHECK(ms.size() == 5);
  CHECK(ms.front().width() == 1);
  CHECK(ms.back().width() == 2);
}
