#pragma once

#include <cstdint>
#include <vector>

namespace monoclone {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
bool is_prime(std::uint64_t n);
/// Distinct prime divisors of n in ascending order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// All positive divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

/// Parameters of the field F_q, q = p^t.
///
/// Only the multiplicative structure is used anywhere in the library:
/// F_q^* is cyclic of order q-1, so a monomial function is determined by its
/// exponents modulo q-1 together with which exponents are zero.
class FieldParam {
 public:
  /// Throws DomainError unless q is a prime power with 2 <= q <= 2^20.
  static FieldParam make(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t t() const noexcept { return t_; }
  /// q - 1, the order of the multiplicative group.
  std::uint32_t order() const noexcept { return q_ - 1; }
  /// P_1 < ... < P_l, the prime divisors of q-1.
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
  bool squarefree() const noexcept { return squarefree_; }

  friend bool operator==(const FieldParam& a, const FieldParam& b) noexcept {
    return a.q_ == b.q_;
  }

 private:
  FieldParam() = default;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t t_ = 0;
  std::vector<std::uint32_t> primes_;
  bool squarefree_ = true;
};

}  // namespace monoclone
