#include "monoclone/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "monoclone/error.hpp"

namespace monoclone {

std::uint32_t reduce_exponent(std::uint64_t a, const FieldParam& fp) {
  if (a == 0) return 0;
  const std::uint64_t n = fp.order();
  const auto r = a % n;
  return static_cast<std::uint32_t>(r == 0 ? n : r);
}

Monomial::Monomial(std::uint32_t q, std::vector<std::uint32_t> counts)
    : q_(q), counts_(std::move(counts)) {
  if (q < 2 || counts_.size() != q - 1) {
    throw PreconditionError("monomial count vector has wrong length for q = " +
                            std::to_string(q));
  }
  for (auto c : counts_) width_ += c;
  if (width_ == 0) {
    throw DomainError("the constant 1 is not a monomial");
  }
}

Monomial Monomial::variable(std::uint32_t q) { return product(q, 1); }

Monomial Monomial::power(std::uint32_t q, std::uint32_t r) {
  std::vector<std::uint32_t> c(q - 1, 0);
  if (r < 1 || r > q - 1) {
    throw PreconditionError("residue " + std::to_string(r) + " out of range");
  }
  c[r - 1] = 1;
  return Monomial(q, std::move(c));
}

Monomial Monomial::product(std::uint32_t q, std::uint32_t k) {
  std::vector<std::uint32_t> c(q - 1, 0);
  c[0] = k;
  return Monomial(q, std::move(c));
}

std::uint32_t Monomial::count(std::uint32_t r) const {
  if (r < 1 || r > q_ - 1) return 0;
  return counts_[r - 1];
}

std::uint32_t Monomial::max_count() const noexcept {
  return *std::max_element(counts_.begin(), counts_.end());
}

std::vector<std::uint32_t> Monomial::exponents() const {
  std::vector<std::uint32_t> out;
  out.reserve(width_);
  for (std::uint32_t r = 1; r < q_; ++r) {
    out.insert(out.end(), counts_[r - 1], r);
  }
  return out;
}

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t s = 0;
  for (std::uint32_t r = 1; r < q_; ++r) s += std::uint64_t{r} * counts_[r - 1];
  return s;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.q_ <=> b.q_; c != 0) return c;
  return a.counts_ <=> b.counts_;
}

bool width_less(const Monomial& a, const Monomial& b) {
  if (a.width() != b.width()) return a.width() < b.width();
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a < b;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = m.q();
  for (auto c : m.counts()) h = h * 1000003u ^ c;
  return h;
}

Monomial canonicalize(const std::vector<std::uint64_t>& exponents,
                      const FieldParam& fp) {
  std::vector<std::uint32_t> c(fp.order(), 0);
  for (auto a : exponents) {
    const auto r = reduce_exponent(a, fp);
    if (r != 0) ++c[r - 1];
  }
  return Monomial(fp.q(), std::move(c));
}

namespace {

void require_field(const Monomial& m, const FieldParam& fp) {
  if (m.q() != fp.q()) {
    throw DomainError("monomial over F_" + std::to_string(m.q()) +
                      " used with q = " + std::to_string(fp.q()));
  }
}

}  // namespace

bool is_idempotent(const Monomial& m, const FieldParam& fp) {
  require_field(m, fp);
  return (m.degree() - 1) % fp.order() == 0;
}

Monomial substitute(const Monomial& m, std::uint32_t r, const Monomial& m2,
                    const FieldParam& fp) {
  require_field(m, fp);
  require_field(m2, fp);
  if (m.count(r) == 0) {
    throw PreconditionError("substitute: residue " + std::to_string(r) +
                            " does not occur in " + to_string(m));
  }
  auto c = m.counts();
  --c[r - 1];
  for (std::uint32_t s = 1; s < fp.q(); ++s) {
    if (m2.count(s) == 0) continue;
    c[reduce_exponent(std::uint64_t{r} * s, fp) - 1] += m2.count(s);
  }
  return Monomial(fp.q(), std::move(c));
}

Monomial identify(const Monomial& m, std::uint32_t r1, std::uint32_t r2,
                  const FieldParam& fp) {
  require_field(m, fp);
  const bool ok = m.width() >= 2 &&
                  (r1 == r2 ? m.count(r1) >= 2
                            : m.count(r1) >= 1 && m.count(r2) >= 1);
  if (!ok) {
    throw PreconditionError("identify: " + to_string(m) +
                            " has no two variables with exponents " +
                            std::to_string(r1) + " and " + std::to_string(r2));
  }
  auto c = m.counts();
  --c[r1 - 1];
  --c[r2 - 1];
  ++c[reduce_exponent(std::uint64_t{r1} + r2, fp) - 1];
  return Monomial(fp.q(), std::move(c));
}

LogValue evaluate(const Monomial& m, const std::vector<LogValue>& point,
                  const FieldParam& fp) {
  require_field(m, fp);
  if (point.size() != m.width()) {
    throw PreconditionError("evaluate: point has " +
                            std::to_string(point.size()) +
                            " coordinates, monomial has width " +
                            std::to_string(m.width()));
  }
  const auto exps = m.exponents();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!point[i]) return std::nullopt;
    sum += std::uint64_t{exps[i]} * (*point[i] % fp.order());
  }
  return static_cast<std::uint32_t>(sum % fp.order());
}

std::string to_string(const Monomial& m) {
  std::string out;
  std::uint32_t var = 0;
  for (auto e : m.exponents()) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(++var);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

namespace {

class MonomialParser {
 public:
  explicit MonomialParser(std::string_view text) : text_(text) {}

  // Parses one product starting at the current position and stops before a
  // ',' or the end of input.
  std::map<std::uint64_t, std::uint64_t> product() {
    std::map<std::uint64_t, std::uint64_t> vars;
    for (;;) {
      skip_space();
      expect('x', "variable 'x<index>'");
      const auto index = number("variable index");
      std::uint64_t exp = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        exp = number("exponent");
      }
      vars[index] += exp;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      if (at_end() || peek() == ',') return vars;
      fail("'*', ',' or end of input");
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_, expected, std::string(text_));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char c, const std::string& what) {
    if (peek() != c) fail(what);
    ++pos_;
  }

  std::uint64_t number(const std::string& what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(what);
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > (1ull << 40)) fail(what + " of reasonable size");
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Monomial from_vars(const std::map<std::uint64_t, std::uint64_t>& vars,
                   const FieldParam& fp) {
  std::vector<std::uint64_t> exps;
  for (const auto& [index, e] : vars) exps.push_back(e);
  return canonicalize(exps, fp);
}

}  // namespace

Monomial parse_monomial(std::string_view text, const FieldParam& fp) {
  MonomialParser p(text);
  auto vars = p.product();
  if (!p.at_end()) p.fail("end of input");
  return from_vars(vars, fp);
}

std::vector<Monomial> parse_monomial_list(std::string_view text,
                                          const FieldParam& fp) {
  MonomialParser p(text);
  std::vector<Monomial> out;
  for (;;) {
    out.push_back(from_vars(p.product(), fp));
    if (p.at_end()) return out;
    p.advance();  // the ','
  }
}

namespace {

void compositions(std::uint32_t slots, std::uint32_t total,
                  std::vector<std::uint32_t>& cur, std::size_t i,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (i + 1 == slots) {
    cur[i] = total;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t c = total + 1; c-- > 0;) {
    cur[i] = c;
    compositions(slots, total - c, cur, i + 1, out);
  }
}

}  // namespace

std::vector<Monomial> all_monomials(const FieldParam& fp,
                                    std::uint32_t max_width) {
  std::vector<Monomial> out;
  for (std::uint32_t w = 1; w <= max_width; ++w) {
    std::vector<std::vector<std::uint32_t>> vecs;
    std::vector<std::uint32_t> cur(fp.order(), 0);
    compositions(fp.order(), w, cur, 0, vecs);
    std::vector<Monomial> level;
    for (auto& v : vecs) level.emplace_back(fp.q(), std::move(v));
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace monoclone
