#include "oracle.hpp"

#include <stdexcept>

namespace monoclone::oracle {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Polynomials over GF(p) as digit vectors, lowest degree first.
using Poly = std::vector<int>;

Poly digits(int x, int p, int len) {
  Poly d(len);
  for (int i = 0; i < len; ++i, x /= p) d[i] = x % p;
  return d;
}

int undigits(const Poly& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()); i-- > 0;) x = x * p + d[i];
  return x;
}

// Product of a and b (degree < t) reduced modulo the monic polynomial m of
// degree t.
int mulmod(int a, int b, const Poly& m, int p, int t) {
  const auto da = digits(a, p, t);
  const auto db = digits(b, p, t);
  Poly r(2 * t, 0);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
  }
  for (int k = 2 * t - 1; k >= t; --k) {
    const int c = r[k];
    if (!c) continue;
    for (int i = 0; i <= t; ++i) r[k - t + i] = ((r[k - t + i] - c * m[i]) % p + p) % p;
  }
  r.resize(t);
  return undigits(r, p);
}

}  // namespace

int Field::power(int a, int e) const {
  int r = 1;
  for (int i = 0; i < e; ++i) r = times(r, a);
  return r;
}

Field make_field(int q) {
  if (q < 2 || q > 255) throw std::invalid_argument("q out of range");
  int p = 2;
  while (q % p) ++p;
  int t = 0;
  for (int x = q; x > 1; x /= p) {
    if (x % p) throw std::invalid_argument("q is not a prime power");
    ++t;
  }
  Field f;
  f.q = q;
  f.p = p;
  f.t = t;
  f.add.resize(q * q);
  f.mul.resize(q * q);
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p, t);
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p, t);
      Poly s(t);
      for (int i = 0; i < t; ++i) s[i] = (da[i] + db[i]) % p;
      f.add[a * q + b] = undigits(s, p);
    }
  }
  // First monic polynomial of degree t whose multiplication has no zero
  // divisors is irreducible.
  for (int low = 0; low < ipow(p, t); ++low) {
    Poly m = digits(low, p, t);
    m.push_back(1);
    bool ok = true;
    for (int a = 1; a < q && ok; ++a) {
      for (int b = 1; b < q && ok; ++b) {
        const int c = mulmod(a, b, m, p, t);
        f.mul[a * q + b] = c;
        ok = c != 0;
      }
    }
    if (ok) break;
  }
  for (int a = 0; a < q; ++a) f.mul[a * q] = f.mul[a] = 0;
  // A primitive element has multiplicative order q-1.
  for (int g = 1; g < q; ++g) {
    int x = 1, order = 0;
    do {
      x = f.times(x, g);
      ++order;
    } while (x != 1);
    if (order == q - 1) {
      f.generator = g;
      break;
    }
  }
  f.log.assign(q, -1);
  for (int e = 0, x = 1; e < q - 1; ++e, x = f.times(x, f.generator)) f.log[x] = e;
  return f;
}

Table monomial_table(const Field& f, const std::vector<int>& exponents) {
  const int n = static_cast<int>(exponents.size());
  Table out(ipow(f.q, n));
  for (int idx = 0; idx < static_cast<int>(out.size()); ++idx) {
    int v = 1;
    for (int i = 0, rest = idx; i < n; ++i, rest /= f.q) {
      const int x = rest % f.q;
      v = f.times(v, f.power(x, exponents[n - 1 - i]));
    }
    out[idx] = v;
  }
  return out;
}

std::set<Table> clone_tables(const Field& f,
                             const std::vector<std::vector<int>>& generators,
                             int arity) {
  const int size = ipow(f.q, arity);
  std::vector<Table> funcs;
  std::set<Table> seen;
  for (int i = 0; i < arity; ++i) {
    std::vector<int> e(arity, 0);
    e[i] = 1;
    auto tab = monomial_table(f, e);
    if (seen.insert(tab).second) funcs.push_back(tab);
  }
  std::vector<Table> gtabs;
  for (const auto& g : generators) gtabs.push_back(monomial_table(f, g));
  // Apply each generator to every tuple of known functions until nothing new
  // appears.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      const int k = static_cast<int>(generators[gi].size());
      const auto& gt = gtabs[gi];
      const auto snapshot = funcs;
      const int m = static_cast<int>(snapshot.size());
      std::vector<int> pick(k, 0);
      while (true) {
        Table h(size);
        for (int x = 0; x < size; ++x) {
          int arg = 0;
          for (int j = 0; j < k; ++j) arg = arg * f.q + snapshot[pick[j]][x];
          h[x] = gt[arg];
        }
        if (seen.insert(h).second) {
          funcs.push_back(std::move(h));
          grew = true;
        }
        int j = k - 1;
        while (j >= 0 && ++pick[j] == m) pick[j--] = 0;
        if (j < 0) break;
      }
    }
  }
  return seen;
}

}  // namespace monoclone::oracle
