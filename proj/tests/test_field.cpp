#include <doctest.h>

#include "monoclone/error.hpp"
#include "monoclone/field.hpp"

using namespace monoclone;

TEST_CASE("prime powers are split into base and degree") {
  const auto f9 = FieldParam::make(9);
  CHECK(f9.p() == 3);
  CHECK(f9.t() == 2);
  CHECK(f9.order() == 8);
  CHECK(f9.primes() == std::vector<std::uint32_t>{2});
  CHECK_FALSE(f9.squarefree());

  const auto f13 = FieldParam::make(13);
  CHECK(f13.primes() == std::vector<std::uint32_t>{2, 3});
  CHECK_FALSE(f13.squarefree());

  const auto f7 = FieldParam::make(7);
  CHECK(f7.primes() == std::vector<std::uint32_t>{2, 3});
  CHECK(f7.squarefree());

  CHECK(FieldParam::make(2).primes().empty());
  CHECK(FieldParam::make(2).squarefree());
}

TEST_CASE("non prime powers are rejected") {
  CHECK_THROWS_AS(FieldParam::make(6), DomainError);
  CHECK_THROWS_AS(FieldParam::make(1), DomainError);
  CHECK_THROWS_AS(FieldParam::make(0), DomainError);
  CHECK_THROWS_AS(FieldParam::make(12), DomainError);
  CHECK_THROWS_AS(FieldParam::make((1u << 20) + 1), DomainError);
  CHECK_NOTHROW(FieldParam::make(1u << 20));
}

TEST_CASE("divisor helpers") {
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(prime_divisors(60) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(18));
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(0, 5) == 5);
}
