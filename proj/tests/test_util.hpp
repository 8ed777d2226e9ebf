#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "monoclone/clone.hpp"
#include "monoclone/monomial.hpp"

namespace monoclone {

// Lets doctest print monomials in failed checks.
inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << to_string(m); }

}  // namespace monoclone

namespace testutil {

// Monomial from (residue, multiplicity) pairs.
inline monoclone::Monomial mono(
    std::uint32_t q, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> rc) {
  std::vector<std::uint32_t> c(q - 1, 0);
  for (auto [r, k] : rc) c[r - 1] += k;
  return monoclone::Monomial(q, c);
}

inline monoclone::Clone gen(std::uint32_t q, std::initializer_list<const char*> texts) {
  const auto fp = monoclone::FieldParam::make(q);
  std::vector<monoclone::Monomial> g;
  for (const char* t : texts) g.push_back(monoclone::parse_monomial(t, fp));
  return monoclone::generate(g, fp);
}

inline std::vector<int> exponents_of(const monoclone::Monomial& m) {
  std::vector<int> out;
  for (auto e : m.exponents()) out.push_back(static_cast<int>(e));
  return out;
}

}  // namespace testutil
