#include "monoclone/field.hpp"

#include <string>

#include "monoclone/error.hpp"

namespace monoclone {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto r = a % b;
    a = b;
    b = r;
  }
  return a;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      low.push_back(d);
      if (d != n / d) high.push_back(n / d);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

bool is_squarefree(std::uint64_t n) {
  for (auto p : prime_divisors(n)) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

FieldParam FieldParam::make(std::uint32_t q) {
  constexpr std::uint32_t kMaxQ = 1u << 20;
  if (q < 2 || q > kMaxQ) {
    throw DomainError("q = " + std::to_string(q) +
                      " is outside the supported range [2, 2^20]");
  }
  const auto ps = prime_divisors(q);
  if (ps.size() != 1) {
    throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  }
  FieldParam fp;
  fp.q_ = q;
  fp.p_ = static_cast<std::uint32_t>(ps.front());
  for (std::uint32_t rest = q; rest > 1; rest /= fp.p_) ++fp.t_;
  for (auto p : prime_divisors(q - 1)) {
    fp.primes_.push_back(static_cast<std::uint32_t>(p));
  }
  fp.squarefree_ = is_squarefree(q - 1);
  return fp;
}

}  // namespace monoclone
