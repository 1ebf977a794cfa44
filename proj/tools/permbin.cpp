// permbin: decide, enumerate and descend permutation binomials a x^n + x^m.
//
// Exit codes: 0 holds / permutation, 1 violated / not a permutation,
// 2 usage or input error, 3 test methods disagree.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permbin/acceptance.hpp"
#include "permbin/io.hpp"

namespace {

using namespace permbin;
using io::json;

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDisagree = 3;

struct Config {
  u64 max_q = kDefaultMaxQ;
  unsigned workers = 1;
  std::string format = "json";
  bool assert_mode = false;
};

struct Flags {
  std::optional<u64> max_q;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::string config_path;
  bool assert_mode = false;

  std::optional<u64> q, p;
  std::optional<unsigned> r;
  std::string modulus;
  std::string binomial;
  std::string method = "criterion";

  std::optional<u64> d, m, n, max_n;
  bool prune = false;
  bool all = false;
  std::optional<unsigned> s;
  std::optional<u64> t;

  std::optional<u64> pmax, qmax;
  std::vector<std::string> checks;
  std::vector<int> only;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u64 parse_env_u64(const char* name) {
  const char* v = std::getenv(name);
  try {
    std::size_t pos = 0;
    const u64 x = std::stoull(v, &pos);
    if (pos != std::string(v).size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " must be a positive integer");
  }
}

/// defaults < config file < environment < flags
Config resolve_config(const Flags& fl) {
  Config cfg;
  if (!fl.config_path.empty()) {
    std::ifstream in(fl.config_path);
    if (!in) throw UsageError("cannot read config file " + fl.config_path);
    json j;
    try {
      j = json::parse(in);
      if (j.contains("max_q")) cfg.max_q = j.at("max_q").get<u64>();
      if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
      if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
      if (j.contains("assert")) cfg.assert_mode = j.at("assert").get<bool>();
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad config file: ") + e.what());
    }
  }
  if (std::getenv("PERMBIN_MAX_Q")) cfg.max_q = parse_env_u64("PERMBIN_MAX_Q");
  if (std::getenv("PERMBIN_WORKERS")) cfg.workers = static_cast<unsigned>(parse_env_u64("PERMBIN_WORKERS"));
  if (fl.max_q) cfg.max_q = *fl.max_q;
  if (fl.workers) cfg.workers = *fl.workers;
  if (fl.format) cfg.format = *fl.format;
  if (fl.assert_mode) cfg.assert_mode = true;
  if (cfg.max_q < 4) throw UsageError("max_q must be at least 4");
  if (cfg.workers < 1) throw UsageError("workers must be at least 1");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    throw UsageError("format must be json, csv or text");
  return cfg;
}

FieldCtx resolve_field(const Flags& fl, const Config& cfg) {
  if (fl.q && (fl.p || fl.r)) throw UsageError("give either --q or --p/--r, not both");
  if (fl.q) {
    if (!fl.modulus.empty()) throw UsageError("--modulus needs --p and --r");
    return make_field_of_order(*fl.q, cfg.max_q);
  }
  if (!fl.p) throw UsageError("a field is required: --q N or --p P --r R");
  const unsigned r = fl.r.value_or(1);
  std::optional<std::vector<u64>> modulus;
  if (!fl.modulus.empty()) modulus = parse_modulus(fl.modulus);
  return make_field(*fl.p, r, modulus, cfg.max_q);
}

Binomial resolve_binomial(const Flags& fl, const FieldCtx& ctx) {
  if (fl.binomial.empty()) throw UsageError("--binomial a,n,m is required");
  return parse_binomial(ctx, fl.binomial);
}

void print_json(const json& j) { std::cout << j.dump() << '\n'; }

// ---- test ------------------------------------------------------------------

PermVerdict run_method(Method m, const Binomial& f, const Config& cfg) {
  switch (m) {
    case Method::Brute: return brute_force_is_perm(f, cfg.max_q);
    case Method::HermiteDickson: return hermite_dickson_full(f, std::min(cfg.max_q, kHermiteDicksonMaxQ));
    case Method::Criterion: return binomial_criterion(f, cfg.max_q);
  }
  return {};
}

std::string witness_text(const FieldCtx& ctx, const Witness& w) {
  const json j = io::witness_to_json(ctx, w);
  return j.at("kind").get<std::string>() + (j.size() > 1 ? " " + j.dump() : "");
}

int cmd_test(const Flags& fl, const Config& cfg) {
  const FieldCtx ctx = resolve_field(fl, cfg);
  const Binomial f = resolve_binomial(fl, ctx);
  std::vector<Method> methods;
  if (fl.method == "brute") methods = {Method::Brute};
  else if (fl.method == "hd") methods = {Method::HermiteDickson};
  else if (fl.method == "criterion") methods = {Method::Criterion};
  else if (fl.method == "both") methods = {Method::Criterion, Method::Brute};
  else if (fl.method == "all") methods = {Method::Criterion, Method::HermiteDickson, Method::Brute};
  else throw UsageError("method must be brute, hd, criterion, both or all");

  std::vector<PermVerdict> verdicts;
  for (Method m : methods) verdicts.push_back(run_method(m, f, cfg));
  const bool agree = std::all_of(verdicts.begin(), verdicts.end(),
                                 [&](const PermVerdict& v) { return v.is_perm == verdicts.front().is_perm; });
  const PermVerdict& main = verdicts.front();

  if (cfg.format == "json") {
    json j = io::to_json(ctx, main);
    if (verdicts.size() > 1) {
      j["agree"] = agree;
      json others = json::array();
      for (std::size_t i = 1; i < verdicts.size(); ++i) others.push_back(io::to_json(ctx, verdicts[i]));
      j["others"] = std::move(others);
    }
    print_json(j);
  } else if (cfg.format == "csv") {
    std::cout << "method,is_perm,witness\n";
    for (const auto& v : verdicts)
      std::cout << to_string(v.method) << ',' << (v.is_perm ? "true" : "false") << ','
                << io::witness_to_json(ctx, v.witness).at("kind").get<std::string>() << '\n';
  } else {
    std::cout << format_binomial(f) << " over F_" << ctx.q() << " (d=" << f.d() << ")\n";
    for (const auto& v : verdicts)
      std::cout << "  " << to_string(v.method) << ": " << (v.is_perm ? "permutation" : "not a permutation") << "  "
                << witness_text(ctx, v.witness) << '\n';
  }
  if (!agree) return kExitDisagree;
  return main.is_perm ? kExitHolds : kExitViolated;
}

// ---- enumerate -------------------------------------------------------------

EnumerateFilters filters_of(const Flags& fl) {
  EnumerateFilters f;
  f.d = fl.d;
  f.m = fl.m;
  f.n = fl.n;
  f.max_n = fl.max_n;
  return f;
}

EnumerateOptions options_of(const Flags& fl, const Config& cfg) {
  EnumerateOptions o;
  o.prune = fl.prune;
  o.workers = cfg.workers;
  o.max_q = cfg.max_q;
  return o;
}

void print_rows(const FieldCtx& ctx, const std::vector<SurveyRow>& rows, const std::string& format) {
  if (format == "csv") {
    std::cout << io::csv_header() << '\n';
    for (const auto& r : rows) std::cout << io::to_csv(ctx, r) << '\n';
  } else if (format == "json") {
    for (const auto& r : rows) print_json(io::to_json(ctx, r));
  } else {
    for (const auto& r : rows)
      std::cout << format_element(ctx, r.a) << " x^" << r.n << " + x^" << r.m << "  d=" << r.d
                << "  class=" << format_element(ctx, r.class_id) << '\n';
  }
}

int cmd_enumerate(const Flags& fl, const Config& cfg) {
  const FieldCtx ctx = resolve_field(fl, cfg);
  const auto rows = enumerate_perm_binomials(ctx, filters_of(fl), options_of(fl, cfg));
  std::map<u64, std::size_t> per_d;
  for (const auto& r : rows) ++per_d[r.d];
  print_rows(ctx, rows, cfg.format);
  if (cfg.format == "json") {
    json counts = json::object();
    for (auto [d, c] : per_d) counts[std::to_string(d)] = c;
    print_json({{"summary", {{"q", ctx.q()}, {"total", rows.size()}, {"per_d", counts}}}});
  } else {
    for (auto [d, c] : per_d) std::cout << "# d=" << d << ": " << c << '\n';
    std::cout << "# total: " << rows.size() << '\n';
  }
  return kExitHolds;
}

// ---- classes ---------------------------------------------------------------

int cmd_classes(const Flags& fl, const Config& cfg) {
  const FieldCtx ctx = resolve_field(fl, cfg);
  std::vector<DClass> classes;
  if (fl.all) {
    u64 n = 0, m = 0;
    if (!fl.binomial.empty()) {
      const Binomial f = resolve_binomial(fl, ctx);
      n = f.n();
      m = f.m();
    } else if (fl.n && fl.m) {
      const Binomial f = make_binomial(ctx, ctx.one(), *fl.n, *fl.m);
      n = f.n();
      m = f.m();
    } else {
      throw UsageError("classes --all needs --binomial or --n and --m");
    }
    classes = all_d_classes(ctx, n, m);
  } else {
    classes.push_back(d_class(resolve_binomial(fl, ctx)));
  }
  json arr = json::array();
  for (const auto& c : classes) {
    const bool perm = binomial_criterion(c.base.with_coefficient(c.class_id), cfg.max_q).is_perm;
    if (cfg.format == "json") {
      arr.push_back(io::to_json(c, perm));
    } else {
      std::cout << "class " << format_element(ctx, c.class_id) << " size=" << c.size()
                << (perm ? " permutation" : "") << " :";
      for (auto e : c.members) std::cout << ' ' << format_element(ctx, e);
      std::cout << '\n';
    }
  }
  if (cfg.format == "json") print_json(fl.all ? arr : arr.at(0));
  return kExitHolds;
}

// ---- descend ---------------------------------------------------------------

int cmd_descend(const Flags& fl, const Config& cfg) {
  if (fl.s.has_value() == fl.t.has_value()) throw UsageError("descend needs exactly one of --s or --t");
  const FieldCtx ctx = resolve_field(fl, cfg);
  const Binomial f = resolve_binomial(fl, ctx);
  const DescentReport rep = fl.s ? thm9_coefficients(f, *fl.s) : thm9_part3(f, *fl.t);
  json j = io::to_json(ctx, rep);
  j["smallest_field"] = smallest_field(f);
  if (cfg.format == "json") {
    print_json(j);
  } else {
    std::cout << "s=" << rep.s << " exists=" << (rep.exists ? "yes" : "no") << " delta=" << rep.delta
              << " delta1=" << rep.delta1 << " delta2=" << rep.delta2 << '\n';
    for (std::size_t i = 0; i < rep.coefficients.size(); ++i) {
      std::cout << "  b=" << format_element(ctx, rep.coefficients[i]);
      if (i < rep.reduced.size()) {
        const auto& rf = rep.reduced[i];
        if (rf.kind == ReducedForm::Kind::Monomial)
          std::cout << "  reduced " << format_element(ctx, rf.coeff) << " x^" << rf.k;
        else
          std::cout << "  reduced " << format_element(ctx, rf.coeff) << " x^" << rf.n1 << " + x^" << rf.m1;
      }
      std::cout << '\n';
    }
  }
  if (cfg.assert_mode && rep.exists && !rep.validated) return kExitViolated;
  return kExitHolds;
}

// ---- bounds ----------------------------------------------------------------

int cmd_bounds(const Flags& fl, const Config& cfg) {
  std::vector<u64> qs;
  if (fl.pmax) qs = primes_up_to(*fl.pmax);
  else if (fl.qmax) qs = prime_powers_up_to(*fl.qmax);
  else if (fl.q || fl.p) qs = {resolve_field(fl, cfg).q()};
  else throw UsageError("bounds needs --pmax, --qmax or a field");
  for (u64 q : qs)
    if (q > cfg.max_q) throw Error(ErrorKind::CapExceeded, "q=" + std::to_string(q) + " exceeds max_q");

  std::vector<std::string> checks = fl.checks;
  if (checks.empty() || std::find(checks.begin(), checks.end(), "all") != checks.end())
    checks = {"thm7", "cor4", "cor5", "cor6", "cor8"};
  for (const auto& c : checks)
    if (c != "thm7" && c != "cor4" && c != "cor5" && c != "cor6" && c != "cor8")
      throw UsageError("unknown check '" + c + "'");

  const bool cor8_only = checks == std::vector<std::string>{"cor8"};
  const SurveyReport rep = cor8_only ? cor8_survey(qs, filters_of(fl), options_of(fl, cfg))
                                     : survey_report(qs, filters_of(fl), options_of(fl, cfg));
  std::map<u64, FieldCtx> fields;
  auto field_of = [&](u64 q) -> const FieldCtx& {
    auto it = fields.find(q);
    if (it == fields.end()) it = fields.emplace(q, make_field_of_order(q, cfg.max_q)).first;
    return it->second;
  };
  auto fmt_row = [&](const SurveyRow& r) {
    return json{{"q", r.q}, {"a", format_element(field_of(r.q), r.a)}, {"n", r.n}, {"m", r.m}, {"d", r.d}};
  };
  auto rows_json = [&](const std::vector<SurveyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(fmt_row(r));
    return arr;
  };

  json out = {{"fields", qs.size()}, {"rows", rep.rows.size()}};
  json counts = json::array();
  for (const auto& [key, c] : rep.counts) counts.push_back({{"q", key.first}, {"d", key.second}, {"count", c}});
  out["counts"] = std::move(counts);
  bool violated = false;
  for (const auto& c : checks) {
    json section;
    if (c == "thm7") {
      section = {{"violations", rows_json(rep.thm7_violations)}};
      json eq = json::array();
      std::set<std::pair<u64, u64>> seen;
      for (const auto& r : rep.thm7_equality)
        if (seen.insert({r.p, r.d}).second) eq.push_back({{"p", r.p}, {"d", r.d}});
      section["equality"] = std::move(eq);
      violated = violated || !rep.thm7_violations.empty();
    } else if (c == "cor4") {
      std::size_t exceptional = 0;
      for (const auto& r : rep.rows) exceptional += r.cor4 == Mark::Exceptional;
      section = {{"violations", rows_json(rep.cor4_violations)}, {"exceptional", exceptional}};
      violated = violated || !rep.cor4_violations.empty();
    } else if (c == "cor5") {
      section = {{"violations", rows_json(rep.cor5_violations)}};
      violated = violated || !rep.cor5_violations.empty();
    } else if (c == "cor6") {
      section = {{"violations", rows_json(rep.cor6_violations)}};
      violated = violated || !rep.cor6_violations.empty();
    } else {
      json conf = json::array();
      for (const auto& k : rep.cor8_confirmations)
        conf.push_back({{"q", k.q}, {"d", k.d}, {"case", std::string(to_string(k.which))}, {"found", k.found}});
      section = {{"violations", rows_json(rep.cor8_violations)}, {"confirmations", std::move(conf)}};
      violated = violated || !rep.cor8_violations.empty();
    }
    out[c] = std::move(section);
  }

  if (cfg.format == "json") {
    print_json(out);
  } else if (cfg.format == "csv") {
    std::cout << io::csv_header() << '\n';
    for (const auto& r : rep.rows) std::cout << io::to_csv(field_of(r.q), r) << '\n';
  } else {
    std::cout << "fields: " << qs.size() << "  permutation binomials: " << rep.rows.size() << '\n';
    for (const auto& c : checks)
      std::cout << "  " << c << ": " << out[c]["violations"].size() << " violation(s)\n";
  }
  return cfg.assert_mode && violated ? kExitViolated : kExitHolds;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const Flags& fl, const Config& cfg) {
  acceptance::Config ac;
  ac.max_q = cfg.max_q;
  ac.workers = cfg.workers;
  ac.only = fl.only;
  const auto results = acceptance::run(ac);
  for (const auto& r : results) std::cout << acceptance::format_line(r) << '\n';
  const bool ok = acceptance::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? kExitHolds : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation binomials over finite fields"};
  app.require_subcommand(1);
  Flags fl;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--max-q", fl.max_q, "largest field order accepted");
    sub->add_option("--workers", fl.workers, "worker threads for enumeration");
    sub->add_option("--format", fl.format, "json, csv or text");
    sub->add_option("--config", fl.config_path, "JSON config file");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--q", fl.q, "field order (prime or prime power)");
    sub->add_option("--p", fl.p, "characteristic");
    sub->add_option("--r", fl.r, "extension degree");
    sub->add_option("--modulus", fl.modulus, "monic modulus c0,c1,...,1");
  };
  auto add_filters = [&](CLI::App* sub) {
    sub->add_option("--d", fl.d, "only rows with this d = gcd(n-m, q-1)");
    sub->add_option("--m", fl.m, "only rows with this m");
    sub->add_option("--n", fl.n, "only rows with this n");
    sub->add_option("--max-n", fl.max_n, "only rows with n at most this");
    sub->add_flag("--prune", fl.prune, "skip shapes excluded by the prime-field bounds");
  };

  auto* test = app.add_subcommand("test", "decide whether a x^n + x^m permutes F_q");
  add_common(test);
  add_field(test);
  test->add_option("--binomial", fl.binomial, "a,n,m")->required();
  test->add_option("--method", fl.method, "brute, hd, criterion, both or all");

  auto* enumerate = app.add_subcommand("enumerate", "list all permutation binomials of F_q");
  add_common(enumerate);
  add_field(enumerate);
  add_filters(enumerate);

  auto* classes = app.add_subcommand("classes", "d-equivalence classes");
  add_common(classes);
  add_field(classes);
  classes->add_option("--binomial", fl.binomial, "a,n,m");
  classes->add_option("--n", fl.n, "shape exponent n (with --all)");
  classes->add_option("--m", fl.m, "shape exponent m (with --all)");
  classes->add_flag("--all", fl.all, "every class of the shape (n, m)");

  auto* descend = app.add_subcommand("descend", "descend a permutation binomial to a subfield");
  add_common(descend);
  add_field(descend);
  descend->add_option("--binomial", fl.binomial, "a,n,m")->required();
  descend->add_option("--s", fl.s, "subfield degree, dividing r");
  descend->add_option("--t", fl.t, "any degree; uses gcd(r, t)");
  descend->add_flag("--assert", fl.assert_mode, "exit 1 if the construction fails validation");

  auto* bounds = app.add_subcommand("bounds", "survey the bounds over a range of fields");
  add_common(bounds);
  add_field(bounds);
  add_filters(bounds);
  bounds->add_option("--pmax", fl.pmax, "all primes up to this value");
  bounds->add_option("--qmax", fl.qmax, "all prime powers up to this value");
  bounds->add_option("--check", fl.checks, "thm7, cor4, cor5, cor6, cor8 or all")->delimiter(',');
  bounds->add_flag("--assert", fl.assert_mode, "exit 1 if a requested check finds a violation");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify);
  verify->add_option("--only", fl.only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Config cfg = resolve_config(fl);
    if (test->parsed()) return cmd_test(fl, cfg);
    if (enumerate->parsed()) return cmd_enumerate(fl, cfg);
    if (classes->parsed()) return cmd_classes(fl, cfg);
    if (descend->parsed()) return cmd_descend(fl, cfg);
    if (bounds->parsed()) return cmd_bounds(fl, cfg);
    if (verify->parsed()) return cmd_verify(fl, cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
