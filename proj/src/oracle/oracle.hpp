#pragma once

// Brute-force reference computations used to cross-check the library. Works
// on plain integers and real GF(q) arithmetic; shares no code with the
// closure engine.

#include <set>
#include <vector>

namespace monoclone::oracle {

/// GF(q) for small prime powers: elements are 0..q-1, read as polynomials
/// over GF(p) in base p, multiplied modulo an irreducible polynomial found
/// by search.
struct Field {
  int q = 0;
  int p = 0;
  int t = 0;
  std::vector<int> add;  // q*q
  std::vector<int> mul;  // q*q
  int generator = 0;     // a primitive element
  std::vector<int> log;  // log[x] for x != 0 base generator; log[0] = -1

  int plus(int a, int b) const { return add[a * q + b]; }
  int times(int a, int b) const { return mul[a * q + b]; }
  int power(int a, int e) const;
};

/// Throws std::invalid_argument unless q is a prime power below 256.
Field make_field(int q);

/// Values of x_1^{e_1} ... x_n^{e_n} over all of GF(q)^n, tuples in
/// lexicographic order (x_1 most significant). An exponent 0 means the
/// variable is a dummy.
using Table = std::vector<int>;
Table monomial_table(const Field& f, const std::vector<int>& exponents);

/// All functions of the given arity in the clone generated by the
/// monomials (exponent lists), computed by composing generators with arity-n
/// functions starting from the projections.
std::set<Table> clone_tables(const Field& f,
                             const std::vector<std::vector<int>>& generators,
                             int arity);

}  // namespace monoclone::oracle
