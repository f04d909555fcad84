// loewy: command-line front end to the B(alpha, n) algebra library.
//
// Exit codes: 0 success, 1 a check failed, 2 usage, parse or type error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loewy/acceptance.hpp"
#include "loewy/algebra.hpp"
#include "loewy/basis.hpp"
#include "loewy/error.hpp"
#include "loewy/expr.hpp"
#include "loewy/injectivity.hpp"
#include "loewy/json_io.hpp"
#include "loewy/twisted.hpp"

using namespace loewy;

namespace {

struct Outcome {
  json data;
  std::string text;
  int code = 0;
};

// --budget is either a bare count, used as the command's main size, or a
// list such as coord:4,limit:w*2,depth:3,count:60,samples:500,bound:512.
struct Budget {
  BasisBudget basis;
  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> bound;
};

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw Error(ErrorKind::Usage, "--budget " + key + " wants a natural, got '" + v + "'");
  return n;
}

Budget parse_budget(const std::string& text) {
  Budget b;
  if (text.empty()) return b;
  if (text.find(':') == std::string::npos) {
    b.count = to_u64("count", text);
    return b;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Usage, "--budget item '" + item + "' lacks ':'");
    std::string key = item.substr(0, colon), val = item.substr(colon + 1);
    if (key == "coord") {
      b.basis.max_coord = to_u64(key, val);
    } else if (key == "limit") {
      b.basis.max_limit_coord = Ordinal::parse(val);
    } else if (key == "depth") {
      b.basis.max_depth = static_cast<std::uint32_t>(to_u64(key, val));
    } else if (key == "count") {
      b.count = to_u64(key, val);
    } else if (key == "samples") {
      b.samples = to_u64(key, val);
    } else if (key == "bound") {
      b.bound = to_u64(key, val);
    } else {
      throw Error(ErrorKind::Usage, "unknown --budget key '" + key + "'");
    }
  }
  return b;
}

struct Flags {
  std::string field = "q";
  std::string level = "1";
  std::uint32_t width = 1;
  std::uint64_t seed = 1;
  std::string budget;
  std::string format = "text";
  std::string out;

  FieldDescriptor f() const { return FieldDescriptor::parse(field); }
  AlgebraDescriptor desc() const { return {f(), Ordinal::parse(level), width}; }
  Budget b() const { return parse_budget(budget); }
};

TupleElement eval_arg(const AlgebraDescriptor& d, const std::string& src) {
  return eval_expr(d, *parse_expr(d.field, src));
}

std::string report_text(const CheckReport& r) { return r.summary(); }

Outcome from_report(const CheckReport& r) { return {to_json(r), report_text(r), r.passed ? 0 : 1}; }

std::string optional_depth(const std::optional<Ordinal>& d) { return d ? d->to_string() : "none (zero element)"; }

// ---------------------------------------------------------------------------

Outcome cmd_eval(const Flags& fl, const std::string& src) {
  TupleElement x = eval_arg(fl.desc(), src);
  return {to_json(x), x.width() == 1 ? x[0].to_string() : x.to_string()};
}

Outcome cmd_qi(const Flags& fl, const std::string& src) {
  TupleElement x = eval_arg(fl.desc(), src);
  TupleElement s = quasi_inverse(x);
  bool ok = x * s * x == x && s * x * s == s;
  json j = {{"element", to_json(x)}, {"quasi_inverse", to_json(s)}, {"verified", ok}};
  std::string text = x.width() == 1 ? s[0].to_string() : s.to_string();
  if (!ok) text += "\nverification FAILED";
  return {j, text, ok ? 0 : 1};
}

Outcome cmd_depth(const Flags& fl, const std::string& src) {
  auto d = loewy_depth(eval_arg(fl.desc(), src));
  return {{{"depth", d ? json(d->to_string()) : json(nullptr)}}, optional_depth(d)};
}

Outcome cmd_dimseq(const Flags& fl) {
  DimensionSequence d = dimension_sequence(fl.desc());
  return {to_json(d), d.to_string()};
}

Outcome cmd_factor_eq(const Flags& fl, const std::string& other_field, const std::string& other_level,
                      std::uint32_t other_width, bool twisted) {
  DimensionSequence a = dimension_sequence(fl.desc());
  DimensionSequence b = twisted ? t_dimension_sequence(fl.f())
                                : dimension_sequence(AlgebraDescriptor(
                                      other_field.empty() ? fl.f() : FieldDescriptor::parse(other_field),
                                      Ordinal::parse(other_level.empty() ? fl.level : other_level), other_width));
  bool eq = factor_equivalent(a, b);
  return {{{"factor_equivalent", eq}, {"left", to_json(a)}, {"right", to_json(b)}},
          std::string(eq ? "factor equivalent" : "not factor equivalent") + "\n  " + a.to_string() + "\n  " +
              b.to_string()};
}

Outcome cmd_basis(const Flags& fl, const std::string& src, bool show_elements) {
  AlgebraDescriptor d = fl.desc();
  if (!src.empty()) {
    TupleElement x = eval_arg(d, src);
    BasisCoords c = to_basis_coords(x);
    bool ok = from_basis_coords(d, c) == x;
    json j = {{"coords", to_json(c)}, {"augmentation", augmentation(x).to_string()}, {"reconstructs", ok}};
    return {j, coords_to_string(c) + "\naugmentation " + augmentation(x).to_string(), ok ? 0 : 1};
  }
  Budget b = fl.b();
  BasisBudget bb = b.basis;
  bb.max_count = b.count.value_or(bb.max_count);
  json arr = json::array();
  std::string text;
  for (const auto& [idx, el] : enumerate_basis(d, bb)) {
    json item = {{"index", idx.to_string()}, {"depth", basis_depth(d, idx).to_string()}};
    text += idx.to_string();
    if (show_elements) {
      item["element"] = to_json(el);
      text += "  " + (el.width() == 1 ? el[0].to_string() : el.to_string());
    }
    arr.push_back(item);
    text += '\n';
  }
  if (!text.empty()) text.pop_back();
  return {arr, text};
}

Outcome cmd_closure(const Flags& fl) {
  Budget b = fl.b();
  BasisBudget bb = b.basis;
  bb.max_count = b.count.value_or(bb.max_count);
  return from_report(closure_check(fl.desc(), bb));
}

Outcome cmd_conormed(const Flags& fl, const std::string& gamma) {
  Budget b = fl.b();
  std::uint64_t samples = b.samples.value_or(b.count.value_or(1000));
  std::optional<Ordinal> g;
  if (!gamma.empty()) g = Ordinal::parse(gamma);
  return from_report(conormed_check(fl.desc(), g, samples, fl.seed));
}

Outcome cmd_cayley(const Flags& fl, const std::string& as) {
  Budget b = fl.b();
  BasisBudget bb = b.basis;
  bb.max_count = b.count.value_or(bb.max_count != 0 ? bb.max_count : 20);
  CayleyTable t = cayley_table(fl.desc(), bb);
  std::string text = as == "dot" ? t.to_dot() : t.to_csv();
  json rows = json::array();
  for (const auto& row : t.products) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.to_string());
    rows.push_back(r);
  }
  json idx = json::array();
  for (const auto& i : t.indices) idx.push_back(i.to_string());
  return {{{"indices", idx}, {"products", rows}, {as, text}}, text};
}

Outcome cmd_iso(const Flags& fl, const std::string& beta_text, const std::string& direction,
                const std::vector<std::string>& args) {
  const FieldDescriptor f = fl.f();
  const Ordinal alpha = Ordinal::parse(fl.level), beta = Ordinal::parse(beta_text);
  if (!(beta < alpha)) throw Error(ErrorKind::Usage, "iso needs --beta below --level");
  auto single = [&](const Ordinal& lvl, const std::string& src) { return eval_arg(AlgebraDescriptor(f, lvl), src)[0]; };
  if (direction == "forward") {
    if (args.size() != 2) throw Error(ErrorKind::Usage, "iso forward takes X (at beta) and Y (at level)");
    Element x = single(beta, args[0]), y = single(alpha, args[1]);
    Element z = swallow_forward(x, y);
    bool ok = swallow_backward(beta, z) == std::pair{x, y};
    return {{{"image", to_json(z)}, {"round_trip", ok}}, z.to_string() + (ok ? "" : "\nround trip FAILED"),
            ok ? 0 : 1};
  }
  if (direction == "backward") {
    if (args.size() != 1) throw Error(ErrorKind::Usage, "iso backward takes Z (at level)");
    Element z = single(alpha, args[0]);
    auto [x, y] = swallow_backward(beta, z);
    bool ok = swallow_forward(x, y) == z;
    return {{{"x", to_json(x)}, {"y", to_json(y)}, {"round_trip", ok}},
            "x = " + x.to_string() + "\ny = " + y.to_string() + (ok ? "" : "\nround trip FAILED"), ok ? 0 : 1};
  }
  throw Error(ErrorKind::Usage, "iso direction must be forward or backward, got '" + direction + "'");
}

Outcome cmd_twisted(const Flags& fl, const std::string& op, const std::vector<std::string>& args) {
  const FieldDescriptor f = fl.f();
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw Error(ErrorKind::Usage, "twisted " + op + " takes " + std::to_string(n) + " argument(s)");
  };
  auto generic = [&](const std::string& src) { return eval_arg(AlgebraDescriptor(f, Ordinal::finite(1)), src)[0]; };
  if (op == "mul") {
    want(2);
    TwistedElement r = TwistedElement::parse(f, args[0]) * TwistedElement::parse(f, args[1]);
    return {to_json(r), r.to_string()};
  }
  if (op == "qi") {
    want(1);
    TwistedElement a = TwistedElement::parse(f, args[0]);
    TwistedElement s = t_quasi_inverse(a);
    bool ok = a * s * a == a && s * a * s == s;
    return {{{"quasi_inverse", to_json(s)}, {"verified", ok}}, s.to_string(), ok ? 0 : 1};
  }
  if (op == "member") {
    want(1);
    Element x = generic(args[0]);
    bool in = t_membership(x);
    json j = {{"member", in}};
    std::string text = in ? "true" : "false";
    if (auto t = from_generic(x)) {
      j["twisted"] = to_json(*t);
      text += "  " + t->to_string();
    }
    return {j, text};
  }
  if (op == "psi") {
    want(1);
    TwistedElement t = psi_embed(generic(args[0]));
    return {to_json(t), t.to_string()};
  }
  throw Error(ErrorKind::Usage, "twisted operation must be mul, qi, member or psi, got '" + op + "'");
}

// socle-sum:CARD, socle-sum:0,1,2 or fg:EXPR;EXPR (expressions over B(1,1)).
IdealDescriptor parse_ideal(const FieldDescriptor& f, const std::string& text) {
  if (text.rfind("socle-sum:", 0) == 0) {
    std::string rest = text.substr(10);
    if (!rest.empty() && std::isdigit(static_cast<unsigned char>(rest[0]))) {
      std::vector<std::uint64_t> coords;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) coords.push_back(to_u64("socle-sum", item));
      return SocleDirectSum{SupportDescriptor::explicit_finite(coords), f};
    }
    return SocleDirectSum{SupportDescriptor::symbolic(SymbolicCardinal::parse(rest), "A"), f};
  }
  if (text.rfind("fg:", 0) == 0) {
    FinitelyGenerated fg;
    std::stringstream ss(text.substr(3));
    std::string item;
    while (std::getline(ss, item, ';')) fg.generators.push_back(eval_arg(AlgebraDescriptor(f, Ordinal::finite(1)), item)[0]);
    return fg;
  }
  throw Error(ErrorKind::Usage, "--ideal must start with socle-sum: or fg:, got '" + text + "'");
}

// inclusion, or table:ALPHA=COORD:VALUE|COORD:VALUE;ALPHA=...
HomDescriptor parse_hom(const FieldDescriptor& f, const std::string& text) {
  if (text == "inclusion") return Inclusion{};
  if (text.rfind("table:", 0) != 0) throw Error(ErrorKind::Usage, "--hom must be inclusion or table:..., got '" + text + "'");
  FiniteTable t;
  std::stringstream ss(text.substr(6));
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Usage, "table entry '" + entry + "' lacks '='");
    std::uint64_t alpha = to_u64("table", entry.substr(0, eq));
    std::map<std::uint64_t, FieldValue> values;
    std::stringstream vs(entry.substr(eq + 1));
    std::string kv;
    while (std::getline(vs, kv, '|')) {
      auto colon = kv.find(':');
      if (colon == std::string::npos) throw Error(ErrorKind::Usage, "table value '" + kv + "' lacks ':'");
      values.emplace(to_u64("table", kv.substr(0, colon)), FieldValue::parse(f, kv.substr(colon + 1)));
    }
    t.entries.emplace(alpha, MElement::explicit_values(std::move(values)));
  }
  return t;
}

Outcome cmd_baer(const Flags& fl, const std::string& lambda, const std::string& ideal, const std::string& hom) {
  const FieldDescriptor f = fl.f();
  SymbolicCardinal lam = SymbolicCardinal::parse(lambda);
  IdealDescriptor i = parse_ideal(f, ideal);
  HomDescriptor h = parse_hom(f, hom);
  Verdict v = baer_extend(lam, i, h);
  json j = to_json(v);
  j["lambda"] = lam.to_string();
  j["ideal"] = ideal_to_string(i);
  j["hom"] = hom_to_string(h);
  return {j, verdict_to_string(v)};
}

Outcome cmd_search(const Flags& fl, std::uint64_t p, std::uint32_t n, bool naive) {
  Budget b = fl.b();
  std::uint64_t bound = b.bound.value_or(b.count.value_or(256));
  MultBasisSearch s = finite_field_mult_basis_search(p, n, bound, naive ? SearchMode::Naive : SearchMode::Pruned);
  std::string text;
  if (s.bases_text.empty()) {
    text = "[] (no multiplicative basis)";
  } else {
    for (const auto& basis : s.bases_text) {
      text += "[";
      for (std::size_t i = 0; i < basis.size(); ++i) text += (i ? ", " : "") + basis[i];
      text += "]\n";
    }
    text.pop_back();
  }
  return {to_json(s), text};
}

Outcome cmd_selftest(const Flags& fl, const std::vector<int>& only) {
  AcceptanceOptions opts;
  opts.seed = fl.seed;
  opts.only = only;
  json arr = json::array();
  std::string text;
  bool all = true;
  for (const auto& c : run_acceptance(opts)) {
    json j = to_json(c.report);
    j["criterion"] = c.id;
    j["seconds"] = c.seconds;
    if (!c.notes.empty()) j["notes"] = c.notes;
    arr.push_back(j);
    text += c.line() + '\n';
    for (const auto& n : c.notes) text += "  note: " + n + '\n';
    all = all && c.report.passed;
  }
  text += all ? "selftest: PASS" : "selftest: FAIL";
  return {{{"passed", all}, {"criteria", arr}}, text, all ? 0 : 1};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic in the semiartinian regular algebras B(alpha, n)"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags fl;
  app.add_option("--field", fl.field, "q, f<p> or f<p>(x)")->capture_default_str();
  app.add_option("--level", fl.level, "ordinal level alpha, e.g. w*2+1")->capture_default_str();
  app.add_option("--width", fl.width, "top layer dimension n")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", fl.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--budget", fl.budget, "N, or coord:N,limit:ORD,depth:D,count:C,samples:S,bound:B");
  app.add_option("--format", fl.format, "json or text")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", fl.out, "write the result to this file");

  std::function<Outcome()> run;
  std::string expr;
  auto with_expr = [&](const char* name, const char* help, auto handler) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("expr", expr, "element expression")->required();
    sub->callback([&, handler] { run = [&, handler] { return handler(fl, expr); }; });
  };
  with_expr("eval", "evaluate an expression", cmd_eval);
  with_expr("qi", "reflexive quasi-inverse", cmd_qi);
  with_expr("depth", "Loewy depth", cmd_depth);

  app.add_subcommand("dimseq", "dimension sequence of B(level, width)")->callback([&] { run = [&] { return cmd_dimseq(fl); }; });

  std::string other_field, other_level;
  std::uint32_t other_width = 1;
  bool vs_twisted = false;
  auto* fe = app.add_subcommand("factor-eq", "compare dimension sequences");
  fe->add_option("--other-field", other_field);
  fe->add_option("--other-level", other_level);
  fe->add_option("--other-width", other_width);
  fe->add_flag("--twisted", vs_twisted, "compare with the twisted algebra over --field");
  fe->callback([&] { run = [&] { return cmd_factor_eq(fl, other_field, other_level, other_width, vs_twisted); }; });

  bool show_elements = false;
  auto* basis = app.add_subcommand("basis", "enumerate basis indices, or give the basis coordinates of EXPR");
  basis->add_option("expr", expr, "element expression");
  basis->add_flag("--elements", show_elements, "print the basis elements too");
  basis->callback([&] { run = [&] { return cmd_basis(fl, expr, show_elements); }; });

  app.add_subcommand("closure-check", "strong multiplicative closure of an enumerated basis")->callback([&] {
    run = [&] { return cmd_closure(fl); };
  });

  std::string gamma;
  auto* con = app.add_subcommand("conormed-check", "conormed property on random elements");
  con->add_option("--gamma", gamma, "restrict to depth below gamma");
  con->callback([&] { run = [&] { return cmd_conormed(fl, gamma); }; });

  std::string cayley_as = "csv";
  auto* cay = app.add_subcommand("cayley", "Cayley table of enumerated basis indices");
  cay->add_option("--as", cayley_as, "csv or dot")->capture_default_str()->check(CLI::IsMember({"csv", "dot"}));
  cay->callback([&] { run = [&] { return cmd_cayley(fl, cayley_as); }; });

  std::string beta, direction;
  std::vector<std::string> args;
  auto* iso = app.add_subcommand("iso", "swallow isomorphism B(beta,1) x B(level,1) -> B(level,1)");
  iso->add_option("direction", direction, "forward or backward")->required();
  iso->add_option("args", args, "forward: X Y; backward: Z")->required();
  iso->add_option("--beta", beta, "the swallowed level")->required();
  iso->callback([&] { run = [&] { return cmd_iso(fl, beta, direction, args); }; });

  std::string op;
  auto* tw = app.add_subcommand("twisted", "the twisted algebra over F_p(x) or F_p");
  tw->add_option("op", op, "mul, qi, member or psi")->required();
  tw->add_option("args", args, "twisted literals (mul, qi) or a B(1,1) expression (member, psi)")->required();
  tw->callback([&] { run = [&] { return cmd_twisted(fl, op, args); }; });

  std::string lambda, ideal, hom = "inclusion";
  auto* baer = app.add_subcommand("baer", "Baer criterion for M_lambda");
  baer->add_option("--lambda", lambda, "aleph:N, kappa or kappa+")->required();
  baer->add_option("--ideal", ideal, "socle-sum:CARD, socle-sum:0,1,2 or fg:EXPR;EXPR")->required();
  baer->add_option("--hom", hom, "inclusion or table:ALPHA=COORD:VALUE|...;...")->capture_default_str();
  baer->callback([&] { run = [&] { return cmd_baer(fl, lambda, ideal, hom); }; });

  std::uint64_t p = 2;
  std::uint32_t n = 2;
  bool naive = false;
  auto* search = app.add_subcommand("search-mult-basis", "multiplicative F_p-bases of F_{p^n}");
  search->add_option("--p", p)->required();
  search->add_option("--n", n)->required();
  search->add_flag("--naive", naive, "test every n-subset");
  search->callback([&] { run = [&] { return cmd_search(fl, p, n, naive); }; });

  std::vector<int> only;
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--only", only, "criterion numbers")->check(CLI::Range(1, 11));
  self->callback([&] { run = [&] { return cmd_selftest(fl, only); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Outcome o;
  try {
    o = run();
  } catch (const Error& e) {
    if (fl.format == "json") {
      std::cout << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::string body = fl.format == "json" ? o.data.dump(2) : o.text;
  if (!fl.out.empty()) {
    std::ofstream file(fl.out);
    if (!file) {
      std::cerr << "error: cannot write " << fl.out << '\n';
      return 2;
    }
    file << body << '\n';
  } else {
    std::cout << body << '\n';
  }
  return o.code;
}
