#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoclone/field.hpp"

namespace monoclone {

/// Overline reduction of an exponent: q-1 for positive multiples of q-1,
/// a mod (q-1) otherwise. Returns 0 only for a = 0.
std::uint32_t reduce_exponent(std::uint64_t a, const FieldParam& fp);

/// A monomial up to permutation of variables and equivalence of exponents,
/// stored as the number of variables carrying each residue 1..q-1.
class Monomial {
 public:
  /// counts[r-1] is the multiplicity of residue r; needs q-1 entries, not all 0.
  Monomial(std::uint32_t q, std::vector<std::uint32_t> counts);

  /// The projection x1.
  static Monomial variable(std::uint32_t q);
  /// x1^r.
  static Monomial power(std::uint32_t q, std::uint32_t r);
  /// x1 x2 ... xk, all exponents 1.
  static Monomial product(std::uint32_t q, std::uint32_t k);

  std::uint32_t q() const noexcept { return q_; }
  /// Number of residue classes, q-1.
  std::uint32_t order() const noexcept { return q_ - 1; }
  std::uint32_t count(std::uint32_t r) const;
  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t max_count() const noexcept;
  /// Exponents with multiplicity, ascending.
  std::vector<std::uint32_t> exponents() const;
  /// Sum of all exponents (with multiplicity), not reduced.
  std::uint64_t degree() const noexcept;

  /// Lexicographic on (c_1, ..., c_{q-1}); monomials of different q compare by q.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::uint32_t q_;
  std::vector<std::uint32_t> counts_;
  std::uint32_t width_ = 0;
};

/// Orders by width, then sum of exponents, then lexicographically. Used for
/// picking readable generators.
bool width_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Drops zero exponents and reduces the rest. Throws DomainError if every
/// exponent is zero.
Monomial canonicalize(const std::vector<std::uint64_t>& exponents,
                      const FieldParam& fp);

bool is_idempotent(const Monomial& m, const FieldParam& fp);

/// Replaces one variable with exponent r by the monomial m2 in fresh
/// variables. Throws PreconditionError if r does not occur in m.
Monomial substitute(const Monomial& m, std::uint32_t r, const Monomial& m2,
                    const FieldParam& fp);

/// Identifies one variable with exponent r1 and another with exponent r2.
Monomial identify(const Monomial& m, std::uint32_t r1, std::uint32_t r2,
                  const FieldParam& fp);

/// A point of (Z_{q-1} u {-inf}, +); nullopt is -inf (the field element 0).
using LogValue = std::optional<std::uint32_t>;

/// Evaluates m in the discrete-log model. point[i] is paired with the i-th
/// exponent of m.exponents().
LogValue evaluate(const Monomial& m, const std::vector<LogValue>& point,
                  const FieldParam& fp);

/// Renders as x1^a*x2^b*... with exponents ascending; exponent 1 is omitted.
std::string to_string(const Monomial& m);

/// Parses `x1^3*x2^2*x3^2`. Repeated variables multiply. Whitespace is
/// ignored. Throws ParseError or DomainError.
Monomial parse_monomial(std::string_view text, const FieldParam& fp);

/// Parses a comma separated list of monomials.
std::vector<Monomial> parse_monomial_list(std::string_view text,
                                          const FieldParam& fp);

/// All canonical monomials with 1 <= width <= max_width, in width-then-lex order.
std::vector<Monomial> all_monomials(const FieldParam& fp,
                                    std::uint32_t max_width);

}  // namespace monoclone
