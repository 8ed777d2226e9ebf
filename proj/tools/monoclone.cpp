// Command-line front end: one subcommand per library operation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "monoclone/checks.hpp"
#include "monoclone/clone.hpp"
#include "monoclone/error.hpp"
#include "monoclone/lattice.hpp"
#include "monoclone/minorset.hpp"
#include "monoclone/semiaffine.hpp"
#include "monoclone/serialize.hpp"

using namespace monoclone;

namespace {

constexpr int kDomainExit = 1;
constexpr int kUnstableExit = 2;
constexpr int kCheckFailedExit = 3;

struct Options {
  std::uint32_t q = 0;
  std::uint32_t modulus = 0;
  std::string format = "text";
  std::optional<std::uint32_t> cap;
  bool strict = false;
  std::uint32_t width = 0;
  std::size_t limit = 200;
  std::string in;
  std::string offset;
  std::vector<std::string> args;
};

// Set whenever an answer could change at a larger cap.
bool g_unstable = false;

void note(bool stable) {
  if (!stable) g_unstable = true;
}

std::optional<std::uint32_t> cap_override(const Options& o) {
  if (o.cap) return o.cap;
  if (const char* env = std::getenv("MONOCLONE_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw DomainError(std::string("MONOCLONE_CAP is not a positive integer: ") + env);
    }
    return static_cast<std::uint32_t>(v);
  }
  return std::nullopt;
}

std::optional<CapPolicy> policy(const Options& o, const FieldParam& fp) {
  if (const auto c = cap_override(o)) return CapPolicy::with_cap(fp, *c);
  return std::nullopt;
}

FieldParam field(const Options& o) {
  if (o.q == 0) throw DomainError("--q is required");
  return FieldParam::make(o.q);
}

// "@file.json" loads a clone dump, anything else is a generator list.
Clone load_clone(const std::string& arg, const Options& o, const FieldParam& fp) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw DomainError("cannot read " + arg.substr(1));
    Json j;
    try {
      f >> j;
    } catch (const Json::exception& e) {
      throw ParseError(std::string("malformed JSON in ") + arg.substr(1) + ": " + e.what());
    }
    auto c = clone_from_json(j);
    if (!(c.field() == fp)) throw DomainError("clone in " + arg.substr(1) + " is over another field");
    return c;
  }
  auto gens = parse_monomial_list(arg, fp);
  return generate(gens, fp, policy(o, fp));
}

const std::string& arg(const Options& o, std::size_t i, const char* what) {
  if (i >= o.args.size()) throw DomainError(std::string("missing argument: ") + what);
  return o.args[i];
}

std::string yes(bool b) { return b ? "true" : "false"; }

void print_clone(const Clone& c, const Options& o) {
  note(c.stable());
  if (o.format == "json") {
    std::cout << to_json(c).dump(2) << "\n";
    return;
  }
  std::cout << "generators: " << label(c.generators()) << "\n";
  std::cout << "cap: " << c.cap().per_residue_cap << "\n";
  std::cout << "stable: " << yes(c.stable()) << "\n";
  if (c.characterization()) std::cout << "characterization: " << c.characterization()->description << "\n";
  if (!c.materialized()) return;
  std::cout << "size: " << c.size() << "\n";
  std::cout << "members:\n";
  // Walk the bits directly; large clones have far too many members to build.
  const auto box = c.box();
  const auto& bits = c.member_bits();
  std::size_t shown = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits.test(i)) continue;
    if (o.limit && shown == o.limit) {
      std::cout << "  ... " << c.size() - shown << " more (raise --limit, or 0 for all)\n";
      break;
    }
    std::cout << "  " << to_string(box.monomial(i)) << "\n";
    ++shown;
  }
}

void print_lattice(const CloneLattice& l, const Options& o) {
  note(l.stable);
  if (o.format == "dot") {
    std::cout << to_dot(l);
  } else if (o.format == "json") {
    std::cout << to_json(l).dump(2) << "\n";
  } else {
    const auto& d = l.diagram;
    std::cout << "nodes: " << d.nodes.size() << "\n";
    std::cout << "edges: " << d.edges.size() << "\n";
    std::cout << "complete: " << yes(l.complete) << "\n";
    std::cout << "stable: " << yes(l.stable) << "\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      std::cout << "  n" << i << " " << label(d.nodes[i].generators()) << " size=" << d.nodes[i].size()
                << "\n";
    }
    for (const auto& [a, b] : d.edges) std::cout << "  n" << a << " < n" << b << "\n";
    for (const auto& c : l.chain_witness) std::cout << "  chain " << label(c.generators()) << "\n";
  }
}

int run_closure(const Options& o) {
  const auto fp = field(o);
  print_clone(load_clone(arg(o, 0, "generators"), o, fp), o);
  return 0;
}

int run_member(const Options& o) {
  const auto fp = field(o);
  if (o.in.empty()) throw DomainError("member needs --in <generators>");
  const auto m = parse_monomial(arg(o, 0, "monomial"), fp);
  const auto a = member(m, load_clone(o.in, o, fp));
  note(a.exact());
  if (o.format == "json") {
    std::cout << Json{{"member", a.value}, {"exact", a.exact()}}.dump() << "\n";
  } else {
    std::cout << yes(a.value) << "\n";
  }
  return 0;
}

int run_compare(const Options& o) {
  const auto fp = field(o);
  const auto a = load_clone(arg(o, 0, "first clone"), o, fp);
  const auto b = load_clone(arg(o, 1, "second clone"), o, fp);
  const auto ab = subset(a, b);
  const auto ba = subset(b, a);
  const bool exact = ab.exact() && ba.exact();
  note(exact);
  const char* rel = ab.value ? (ba.value ? "equal" : "subset") : (ba.value ? "superset" : "incomparable");
  if (o.format == "json") {
    std::cout << Json{{"relation", rel}, {"exact", exact}}.dump() << "\n";
  } else {
    std::cout << rel << "\n";
  }
  return 0;
}

int run_join_meet(const Options& o, bool is_join) {
  const auto fp = field(o);
  const auto a = load_clone(arg(o, 0, "first clone"), o, fp);
  const auto b = load_clone(arg(o, 1, "second clone"), o, fp);
  print_clone(is_join ? join(a, b, policy(o, fp)) : meet(a, b), o);
  return 0;
}

EnumerationOptions enum_options(const Options& o) {
  EnumerationOptions e;
  e.width_bound = o.width;
  e.cap = cap_override(o);
  return e;
}

int run_lattice(const Options& o) {
  print_lattice(enumerate_lattice(field(o), enum_options(o)), o);
  return 0;
}

int run_idempotent(const Options& o) {
  print_lattice(idempotent_interval(field(o), enum_options(o)), o);
  return 0;
}

int run_atoms(const Options& o) {
  const auto fp = field(o);
  const auto as = atoms(fp);
  if (o.format == "json") {
    Json out = Json::array();
    for (const auto& a : as) out.push_back(to_json(a));
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& a : as) std::cout << label(a.generators()) << "\n";
  }
  return 0;
}

int run_coatoms(const Options& o) {
  const auto fp = field(o);
  const auto cs = coatoms(fp);
  if (o.format == "json") {
    Json out = Json::array();
    for (const auto& c : cs) {
      const auto cl = coatom_clone(c, fp);
      Json gens = Json::array();
      for (const auto& g : cl.generators()) gens.push_back(to_string(g));
      Json j = {{"kind", c.kind == CoatomDescriptor::Kind::interval ? "interval" : "k_d"},
                {"description", to_string(c, fp)},
                {"generators", gens}};
      if (c.kind == CoatomDescriptor::Kind::interval) {
        j["prime"] = c.prime;
      } else {
        j["d"] = c.d;
        j["t"] = c.t;
      }
      out.push_back(j);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& c : cs) std::cout << to_string(c, fp) << "\n";
  }
  return 0;
}

int run_interval(const Options& o) {
  const auto fp = field(o);
  const auto di = divisor_interval(fp);
  const auto n = di.divisors.size();
  if (o.format == "json") {
    Json clones = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      clones.push_back({{"divisor", di.divisors[i]}, {"generators", label(di.clones[i].generators())}});
    }
    Json inc = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(di.included[i][j].value);
      inc.push_back(row);
    }
    Json j = {{"q", fp.q()},
              {"clones", clones},
              {"included", inc},
              {"anti_isomorphic", di.anti_isomorphic},
              {"certified", di.certified}};
    if (di.enumerated_above) j["enumerated_above"] = *di.enumerated_above;
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::cout << di.divisors[i] << " -> " << label(di.clones[i].generators()) << "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && di.included[i][j].value) {
          std::cout << "C(" << di.divisors[i] << ") <= C(" << di.divisors[j] << ")\n";
        }
      }
    }
    std::cout << "inclusion iff divisibility: " << yes(di.anti_isomorphic) << "\n";
    std::cout << "certified: " << yes(di.certified) << "\n";
    if (di.enumerated_above) std::cout << "enumerated clones above C(q-1): " << *di.enumerated_above << "\n";
  }
  return 0;
}

int run_chain(const Options& o) {
  const auto fp = field(o);
  const auto& s = arg(o, 0, "chain length");
  std::uint32_t n = 0;
  try {
    n = static_cast<std::uint32_t>(std::stoul(s));
  } catch (const std::exception&) {
    throw DomainError("chain length is not a number: " + s);
  }
  const auto ch = ascending_chain(fp, n);
  bool exact = true;
  for (const auto& a : ch.strict) exact = exact && a.exact();
  note(exact);
  if (o.format == "json") {
    Json gens = Json::array();
    for (const auto& g : ch.generators) gens.push_back(to_string(g));
    Json strict = Json::array();
    for (const auto& a : ch.strict) strict.push_back(a.value);
    std::cout << Json{{"q", fp.q()}, {"k", ch.k}, {"d", ch.d}, {"generators", gens}, {"strict", strict}}.dump(2)
              << "\n";
  } else {
    for (std::size_t i = 0; i < ch.generators.size(); ++i) {
      if (i) std::cout << (ch.strict[i - 1].value ? " < " : " <= ");
      std::cout << "<" << to_string(ch.generators[i]) << ">";
    }
    std::cout << "\n";
  }
  return 0;
}

int run_single_gen(const Options& o) {
  const auto fp = field(o);
  const auto m1 = parse_monomial(arg(o, 0, "first monomial"), fp);
  const auto m2 = parse_monomial(arg(o, 1, "second monomial"), fp);
  const auto m = single_generator(m1, m2, fp);
  if (o.format == "json") {
    std::cout << to_json(m).dump() << "\n";
  } else {
    std::cout << to_string(m) << "\n";
  }
  return 0;
}

void print_linear(const LinearClone& c, const Options& o) {
  note(c.stable());
  if (o.format == "json") {
    std::cout << to_json(c).dump(2) << "\n";
    return;
  }
  std::cout << "modulus: " << c.modulus() << "\n";
  std::cout << "cap: " << c.cap() << "\n";
  std::cout << "generators: " << label(c.generators()) << "\n";
  std::cout << "size: " << c.size() << "\n";
  std::cout << "members:\n";
  for (const auto& f : c.members()) std::cout << "  " << to_string(f) << "\n";
}

int run_phi(const Options& o) {
  const auto fp = field(o);
  print_linear(phi_affine(load_clone(arg(o, 0, "generators"), o, fp), cap_override(o)), o);
  return 0;
}

std::uint32_t modulus(const Options& o) {
  if (o.modulus) return o.modulus;
  if (o.q) return field(o).order();
  throw DomainError("--modulus or --q is required");
}

int run_semiaffine_lattice(const Options& o) {
  const auto l = enumerate_semiaffine_lattice(modulus(o), cap_override(o));
  if (o.format == "dot") {
    std::cout << to_dot(l);
  } else if (o.format == "json") {
    std::cout << to_json(l).dump(2) << "\n";
  } else {
    const auto& d = l.diagram;
    std::cout << "nodes: " << d.nodes.size() << "\n";
    std::cout << "edges: " << d.edges.size() << "\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      std::cout << "  n" << i << " " << label(d.nodes[i].generators()) << "\n";
    }
    for (const auto& [a, b] : d.edges) std::cout << "  n" << a << " < n" << b << "\n";
  }
  return 0;
}

int run_fiber(const Options& o) {
  const auto fp = field(o);
  const auto lat = enumerate_lattice(fp, enum_options(o));
  note(lat.stable);
  const auto phis = phi_all(lat);
  std::vector<LinearClone> targets;
  if (o.args.empty()) {
    targets = enumerate_semiaffine_lattice(fp.order()).diagram.nodes;
  } else {
    std::vector<LinearForm> gens;
    for (const auto& a : o.args) gens.push_back(parse_linear_form(a, fp.order()));
    targets.push_back(linear_closure(gens, fp.order()));
  }
  Json out = Json::array();
  for (const auto& t : targets) {
    const auto f = fiber(t, lat, phis);
    Json clones = Json::array();
    for (auto i : f.nodes) clones.push_back(label(lat.diagram.nodes[i].generators()));
    if (o.format == "json") {
      out.push_back({{"linear_clone", label(t.generators())},
                     {"clones", clones},
                     {"all_contain_x1x2^(q-1)", f.all_contain_x1x2q}});
    } else {
      std::cout << label(t.generators()) << ":";
      for (auto i : f.nodes) std::cout << " " << label(lat.diagram.nodes[i].generators());
      std::cout << "\n";
    }
  }
  if (o.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

Point parse_point(const std::string& s, std::uint32_t dims) {
  Point p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      p.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    } catch (const std::exception&) {
      throw ParseError("offset coordinate is not a number: " + part);
    }
  }
  if (p.size() != dims) throw DomainError("offset needs " + std::to_string(dims) + " coordinates");
  return p;
}

int run_minorset(const Options& o) {
  const auto fp = field(o);
  const auto c = load_clone(arg(o, 0, "generators"), o, fp);
  note(c.stable());
  const auto s = phi_minor(c);
  if (!o.offset.empty()) {
    const auto b = parse_point(o.offset, fp.order());
    const auto m = minor_M(b, s);
    if (o.format == "json") {
      std::cout << Json{{"offset", b}, {"points", m}}.dump() << "\n";
    } else {
      for (const auto& t : m) {
        for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? " " : "") << t[i];
        std::cout << "\n";
      }
    }
    return 0;
  }
  if (o.format == "json") {
    std::cout << to_json(s).dump() << "\n";
  } else {
    for (const auto& p : s.points()) {
      for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? " " : "") << p[i];
      std::cout << "\n";
    }
  }
  return 0;
}

int run_check(const Options& o) {
  const auto results = run_checks(field(o));
  bool ok = true;
  Json out = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (o.format == "json") {
      out.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    }
  }
  if (o.format == "json") std::cout << out.dump(2) << "\n";
  return ok ? 0 : kCheckFailedExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monomial clones over finite fields"};
  app.require_subcommand(1);
  Options o;

  struct Verb {
    const char* name;
    const char* help;
    std::function<int(const Options&)> run;
  };
  const std::vector<Verb> verbs = {
      {"closure", "members of the clone generated by a list of monomials", run_closure},
      {"member", "is a monomial in the clone given by --in", run_member},
      {"compare", "inclusion between two clones", run_compare},
      {"join", "clone generated by two clones", [](const Options& x) { return run_join_meet(x, true); }},
      {"meet", "intersection of two clones", [](const Options& x) { return run_join_meet(x, false); }},
      {"lattice", "enumerate the lattice of monomial clones", run_lattice},
      {"atoms", "clones covering the projection clone", run_atoms},
      {"coatoms", "clones covered by the full clone", run_coatoms},
      {"interval", "clones x1...x_{1+a} for divisors a of q-1", run_interval},
      {"chain", "infinite ascending chain (q-1 not square-free)", run_chain},
      {"idempotent", "lattice of idempotent clones", run_idempotent},
      {"single-gen", "single generator of two idempotent monomials", run_single_gen},
      {"phi", "semi-affine image of a clone", run_phi},
      {"semiaffine-lattice", "lattice of 0-preserving semi-affine clones on Z_n", run_semiaffine_lattice},
      {"fiber", "monomial clones with a given semi-affine image", run_fiber},
      {"minorset", "q-minor set of a clone", run_minorset},
      {"check", "run the property battery for q", run_check},
  };

  const std::function<int(const Options&)>* chosen = nullptr;
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--q", o.q, "field size (a prime power)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--cap", o.cap, "per-residue count cap (overrides MONOCLONE_CAP)");
    sub->add_flag("--strict", o.strict, "exit 2 when an answer depends on the cap");
    sub->add_option("--width", o.width, "widest seed monomial for enumeration");
    sub->add_option("--limit", o.limit, "members listed in text output (0 for all)");
    sub->add_option("--in", o.in, "clone (generator list or @file.json)");
    sub->add_option("--modulus", o.modulus, "modulus of the semi-affine side");
    sub->add_option("--offset", o.offset, "offset b for M(b, S), comma separated");
    sub->add_option("args", o.args, "monomials, generator lists or @file.json");
    sub->callback([&chosen, &v] { chosen = &v.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kDomainExit;
  }

  try {
    const int rc = (*chosen)(o);
    if (rc != 0) return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  }
  if (g_unstable) {
    std::cerr << "warning: the answer depends on the cap; rerun with a larger --cap\n";
    if (o.strict) return kUnstableExit;
  }
  return 0;
}
