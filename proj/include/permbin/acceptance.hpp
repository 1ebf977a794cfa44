#ifndef PERMBIN_ACCEPTANCE_HPP
#define PERMBIN_ACCEPTANCE_HPP

// Acceptance suite: eleven end-to-end checks with fixed fixtures, tolerances
// and time limits. Used by the `verify` command and the acceptance test binary.

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "permbin/bounds.hpp"
#include "permbin/descent.hpp"
#include "permbin/equivalence.hpp"
#include "permbin/permtest.hpp"

namespace permbin::acceptance {

enum class Status { Pass, Fail, Skip };

constexpr std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

struct CriterionResult {
  int id = 0;
  std::string name;
  Status status = Status::Fail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;
};

/// high*x^n + low*x^m before low-term canonicalization.
struct RawBinomial {
  i64 high;
  u64 n;
  i64 low;
  u64 m;
};

/// Expected values. Tests replace single entries to check that the suite notices.
struct Fixtures {
  // 1: x^4+3x, x^4-3x, x^5+2x^2, x^5-2x^2 over F_7.
  std::vector<RawBinomial> f7_listed{{1, 4, 3, 1}, {1, 4, -3, 1}, {1, 5, 2, 2}, {1, 5, -2, 2}};
  std::size_t f7_count = 4;
  // 2
  std::vector<u64> empty_fields{2, 3};
  // 3
  u64 oracle_max_q = 64;
  // 4: (p, d) pairs with p - 1 = d(d - 1).
  u64 thm7_max_p = 101;
  std::set<std::pair<u64, u64>> thm7_equality{{7, 3}, {31, 6}};
  // 5: (p, a, n) with m = 1, frozen from the brute-force oracle.
  u64 cor5_max_p = 101;
  std::set<std::tuple<u64, u64, u64>> cor5_violations{{7, 2, 4}, {7, 5, 4}};
  // 6
  u64 class_max_q = 64;
  // 7: F_9 = F_3[t]/(t^2 + 1).
  std::set<std::string> f9_quintic{"0,1", "0,2"};
  std::set<std::string> f9_cubic{"1,1", "1,2", "2,1", "2,2"};
  // 8: F_25, f = 3x^5 + x, descent to F_5.
  std::string f25_a = "3,0";
  std::set<std::string> f25_coefficients{"2,0", "3,0"};
  std::set<std::string> f25_reduced{"3,0", "4,0"};  // (b+1) of the monomial (b+1)x
  u64 f25_reduced_k = 1;
  // 9
  std::vector<u64> descent_fields{4, 8, 9, 16, 25, 27, 32, 49, 64};
  // 10: (q, d) spot checks.
  std::vector<std::pair<u64, u64>> cor8_spots{{125, 2}, {13, 3}, {49, 3}};
  // 11
  std::size_t random_trials = 10000;
  i64 claim2_max = 1000000;
  i64 lucas_max_l = 30;
  u64 lucas_max_p = 31;
  std::uint64_t seed = 0x5eed'2024ULL;
};

struct Config {
  u64 max_q = kDefaultMaxQ;
  unsigned workers = 1;
  std::vector<int> only;  // empty: every criterion
};

/// Wall-clock limits, in seconds, per criterion.
inline constexpr std::array<double, 12> kLimitSeconds{0, 1, 1, 300, 600, 300, 300, 1, 1, 600, 300, 30};

namespace detail {

struct Outcome {
  Status status;
  std::string detail;
};

inline Outcome pass(std::string s) { return {Status::Pass, std::move(s)}; }
inline Outcome fail(std::string s) { return {Status::Fail, std::move(s)}; }

inline std::string join(const std::set<std::string>& xs) {
  std::string out = "{";
  for (const auto& x : xs) out += (out.size() > 1 ? " " : "") + x;
  return out + "}";
}

inline Outcome f7_census(const Fixtures& fx, const Config& cfg) {
  const FieldCtx ctx = make_field_of_order(7, cfg.max_q);
  const auto rows = enumerate_perm_binomials(ctx, {}, {false, cfg.workers, cfg.max_q});
  std::set<std::tuple<u64, u64, u64>> found;
  for (const auto& r : rows) found.insert({r.a.code(), r.n, r.m});
  std::set<std::tuple<u64, u64, u64>> expected;
  for (const auto& pb : fx.f7_listed) {
    const FieldElement high = ctx.from_int(pb.high), low = ctx.from_int(pb.low);
    // Both forms must permute, confirming the rescaling by 1/low.
    const std::vector<Term> raw{{pb.n, high}, {pb.m, low}};
    const Binomial canon = canonicalize(ctx, high, pb.n, low, pb.m);
    if (!brute_force_poly(ctx, raw).is_perm || !brute_force_is_perm(canon).is_perm)
      return fail("listed binomial " + std::to_string(pb.high) + "x^" + std::to_string(pb.n) + "+" +
                  std::to_string(pb.low) + "x^" + std::to_string(pb.m) + " does not permute F_7");
    expected.insert({canon.a().code(), canon.n(), canon.m()});
  }
  if (rows.size() != fx.f7_count) return fail(std::to_string(rows.size()) + " rows, expected " + std::to_string(fx.f7_count));
  if (found != expected) return fail("enumerated set differs from the listed set");
  return pass("4 rows: 5x^4+x 2x^4+x 4x^5+x^2 3x^5+x^2");
}

inline Outcome empty_fields(const Fixtures& fx, const Config& cfg) {
  for (u64 q : fx.empty_fields) {
    const auto rows = enumerate_perm_binomials(make_field_of_order(q, cfg.max_q), {}, {false, cfg.workers, cfg.max_q});
    if (!rows.empty()) return fail("F_" + std::to_string(q) + " has " + std::to_string(rows.size()) + " rows");
  }
  return pass("no rows over F_2, F_3");
}

inline Outcome oracle_equivalence(const Fixtures& fx, const Config& cfg) {
  std::size_t checked = 0;
  for (u64 q : prime_powers_up_to(std::min(fx.oracle_max_q, cfg.max_q))) {
    const FieldCtx ctx = make_field_of_order(q, cfg.max_q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        // Non-coprime pairs are included so the normalize path is covered too.
        for (u64 c = 1; c < q; ++c) {
          const Binomial f = make_binomial(ctx, FieldElement{static_cast<std::uint32_t>(c)}, n, m);
          const bool bf = brute_force_is_perm(f).is_perm;
          const bool hd = hermite_dickson_full(f).is_perm;
          const bool cr = binomial_criterion(f).is_perm;
          ++checked;
          if (bf != hd || bf != cr)
            return fail("disagreement at q=" + std::to_string(q) + " " + format_binomial(f));
        }
      }
  }
  return pass(std::to_string(checked) + " binomials, zero disagreements");
}

inline Outcome thm7_sweep(const Fixtures& fx, const Config& cfg) {
  std::set<std::pair<u64, u64>> equality;
  std::size_t rows_seen = 0;
  for (u64 p : primes_up_to(fx.thm7_max_p)) {
    const auto rows = enumerate_perm_binomials(make_field_of_order(p, cfg.max_q), {}, {false, cfg.workers, cfg.max_q});
    for (const auto& r : rows) {
      ++rows_seen;
      if (!thm7_check(p, r.d)) return fail("violation at p=" + std::to_string(p) + " d=" + std::to_string(r.d));
      if (p - 1 == r.d * (r.d - 1)) equality.insert({p, r.d});
    }
  }
  std::string eq;
  for (auto [p, d] : equality) eq += " (" + std::to_string(p) + "," + std::to_string(d) + ")";
  if (equality != fx.thm7_equality) return fail("equality set" + eq + " differs from fixture");
  return pass(std::to_string(rows_seen) + " rows, zero violations, equality at" + eq);
}

inline Outcome cor5_audit(const Fixtures& fx, const Config& cfg) {
  std::set<std::tuple<u64, u64, u64>> reported, truth;
  for (u64 p : primes_up_to(fx.cor5_max_p)) {
    const FieldCtx ctx = make_field_of_order(p, cfg.max_q);
    for (u64 n = 2; n < p; ++n)
      for (u64 c = 1; c < p; ++c) {
        const Binomial f = make_binomial(ctx, FieldElement{static_cast<std::uint32_t>(c)}, n, 1);
        if (!brute_force_is_perm(f).is_perm) continue;
        // Oracle truth: the inequality evaluated directly on a brute-force permutation.
        if (static_cast<i64>(p) - 1 > (static_cast<i64>(n) - 1) * (static_cast<i64>(n) - 3)) truth.insert({p, c, n});
        if (!cor5_check(f).holds) reported.insert({p, c, n});
      }
  }
  if (reported != truth) return fail("cor5_check report differs from the oracle");
  if (reported != fx.cor5_violations) return fail(std::to_string(reported.size()) + " violations, fixture differs");
  std::string s;
  for (auto [p, a, n] : reported)
    s += " (p=" + std::to_string(p) + ",a=" + std::to_string(a) + ",n=" + std::to_string(n) + ")";
  return pass("violations match the oracle:" + s);
}

inline Outcome class_coherence(const Fixtures& fx, const Config& cfg) {
  std::size_t classes = 0;
  for (u64 q : prime_powers_up_to(std::min(fx.class_max_q, cfg.max_q))) {
    const FieldCtx ctx = make_field_of_order(q, cfg.max_q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        if (gcd(m, n) != 1) continue;
        const u64 d = gcd(n - m, q - 1);
        std::size_t covered = 0;
        for (const auto& cls : all_d_classes(ctx, n, m)) {
          ++classes;
          covered += cls.size();
          if (cls.size() != (q - 1) / d)
            return fail("class size " + std::to_string(cls.size()) + " at q=" + std::to_string(q) + " " +
                        format_binomial(cls.base));
          const bool first = brute_force_is_perm(cls.base.with_coefficient(cls.members.front())).is_perm;
          for (auto b : cls.members)
            if (brute_force_is_perm(cls.base.with_coefficient(b)).is_perm != first)
              return fail("mixed verdicts in class of " + format_binomial(cls.base));
        }
        if (covered != q - 1) return fail("classes do not cover F_q^* at q=" + std::to_string(q));
      }
  }
  return pass(std::to_string(classes) + " classes, all of size (q-1)/d and verdict-uniform");
}

inline std::set<std::string> perm_coefficients(const FieldCtx& ctx, u64 n, u64 m) {
  std::set<std::string> out;
  for (auto a : nonzero_elements(ctx))
    if (brute_force_is_perm(make_binomial(ctx, a, n, m)).is_perm) out.insert(format_element(ctx, a));
  return out;
}

inline Outcome f9_remark(const Fixtures& fx, const Config& cfg) {
  const FieldCtx ctx = make_field(3, 2, std::nullopt, cfg.max_q);
  const auto quintic = perm_coefficients(ctx, 5, 1);
  if (quintic != fx.f9_quintic) return fail("a x^5 + x permutes for " + join(quintic));
  for (const auto& s : quintic) {
    const FieldElement a = parse_element(ctx, s);
    if (ctx.mul(a, a) != ctx.neg(ctx.one())) return fail("coefficient " + s + " is not a square root of -1");
  }
  const auto cubic = perm_coefficients(ctx, 3, 1);
  std::set<std::string> nonsquare;
  for (auto a : nonzero_elements(ctx))
    if (!is_dth_power(ctx, ctx.neg(a), 2)) nonsquare.insert(format_element(ctx, a));
  if (cubic != fx.f9_cubic || cubic != nonsquare) return fail("a x^3 + x permutes for " + join(cubic));
  return pass("x^5: " + join(quintic) + ", x^3: " + join(cubic) + " (-a non-square)");
}

inline Outcome f25_descent(const Fixtures& fx, const Config& cfg) {
  const FieldCtx ctx = make_field(5, 2, std::nullopt, cfg.max_q);
  const Binomial f = make_binomial(ctx, parse_element(ctx, fx.f25_a), 5, 1);
  if (!brute_force_is_perm(f).is_perm) return fail("f does not permute F_25");
  if (is_dth_power(ctx, ctx.neg(f.a()), 4)) return fail("-a is a fourth power");
  const auto rep = thm9_coefficients(f, 1);
  std::set<std::string> coeffs, reduced;
  for (auto b : rep.coefficients) coeffs.insert(format_element(ctx, b));
  const u64 expected_count = gcd(4, (ctx.q() - 1) / f.d());
  if (!rep.exists || !rep.validated || coeffs != fx.f25_coefficients || rep.coefficients.size() != expected_count)
    return fail("coefficients " + join(coeffs));
  for (const auto& rf : rep.reduced) {
    if (rf.kind != ReducedForm::Kind::Monomial || rf.k != fx.f25_reduced_k || !rf.permutes_subfield)
      return fail("reduced form is not a permuting monomial");
    reduced.insert(format_element(ctx, rf.coeff));
  }
  if (reduced != fx.f25_reduced) return fail("reduced monomials " + join(reduced));
  return pass("coefficients " + join(coeffs) + ", reduced (b+1)x with b+1 in " + join(reduced));
}

inline Outcome descent_iff(const Fixtures& fx, const Config& cfg) {
  std::size_t pairs = 0;
  for (u64 q : fx.descent_fields) {
    if (q > cfg.max_q) return {Status::Skip, "q=" + std::to_string(q) + " above max_q"};
    const FieldCtx ctx = make_field_of_order(q, cfg.max_q);
    for (const auto& row : enumerate_perm_binomials(ctx, {}, {false, cfg.workers, cfg.max_q})) {
      const Binomial f = make_binomial(ctx, row.a, row.n, row.m);
      for (u64 s : divisors(ctx.r())) {
        ++pairs;
        const auto rep = thm9_coefficients(f, static_cast<unsigned>(s));
        const auto scan = descent_scan(f, static_cast<unsigned>(s));
        if (rep.exists != !scan.empty() || rep.coefficients != scan || (rep.exists && !rep.validated))
          return fail("mismatch at q=" + std::to_string(q) + " " + format_binomial(f) + " s=" + std::to_string(s));
      }
    }
  }
  return pass(std::to_string(pairs) + " (f, s) pairs, construction equals scan");
}

inline Outcome cor8_spots(const Fixtures& fx, const Config& cfg) {
  std::string out;
  bool capped = false;
  for (auto [q, d] : fx.cor8_spots) {
    const auto pp = prime_power_decompose(q);
    if (!pp) return fail(std::to_string(q) + " is not a prime power");
    const std::string tag = "F_" + std::to_string(q) + " d=" + std::to_string(d);
    const auto which = cor8_condition(pp->first, pp->second, d);
    if (!which) {
      out += " " + tag + ": SKIP (no case applies)";
      continue;
    }
    if (q > cfg.max_q) {
      out += " " + tag + ": SKIP (above max_q)";
      capped = true;
      continue;
    }
    EnumerateFilters filters;
    filters.d = d;
    const auto rows = enumerate_perm_binomials(make_field_of_order(q, cfg.max_q), filters, {false, cfg.workers, cfg.max_q});
    if (!rows.empty()) return fail(tag + ": " + std::to_string(rows.size()) + " permutation binomials found");
    out += " " + tag + ": none (case " + std::string(to_string(*which)) + ")";
  }
  if (capped) return {Status::Skip, out.substr(1)};
  return pass(out.substr(1));
}

inline Outcome helper_properties(const Fixtures& fx, const Config&) {
  std::mt19937_64 rng(fx.seed);
  std::uniform_int_distribution<i64> small(1, fx.claim2_max);
  for (std::size_t i = 0; i < fx.random_trials; ++i) {
    const i64 a = small(rng), b = small(rng), c = small(rng);
    if (!claim2_holds(a, b, c)) return fail("claim2 fails at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
  }
  for (u64 p : primes_up_to(fx.lucas_max_p)) {
    // Pascal's triangle mod p as the reference.
    std::vector<std::vector<i64>> pascal(static_cast<std::size_t>(fx.lucas_max_l) + 1);
    for (i64 l = 0; l <= fx.lucas_max_l; ++l) {
      auto& row = pascal[static_cast<std::size_t>(l)];
      row.assign(static_cast<std::size_t>(l) + 1, 1);
      for (i64 j = 1; j < l; ++j)
        row[static_cast<std::size_t>(j)] =
            (pascal[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)] +
             pascal[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j)]) % static_cast<i64>(p);
      for (i64 j = 0; j <= l; ++j)
        if (binom_mod_p(l, j, p) != static_cast<u64>(row[static_cast<std::size_t>(j)] % static_cast<i64>(p)))
          return fail("Lucas mismatch at C(" + std::to_string(l) + "," + std::to_string(j) + ") mod " + std::to_string(p));
    }
  }
  std::uniform_int_distribution<i64> wide(-(i64{1} << 40), i64{1} << 40);
  for (std::size_t i = 0; i < fx.random_trials; ++i) {
    i64 a = wide(rng), b = wide(rng);
    if (a == 0 && b == 0) b = 1;
    const auto t = ext_gcd(a, b);
    const i128 lhs = static_cast<i128>(t.u) * a + static_cast<i128>(t.v) * b;
    if (lhs != t.g || t.g != static_cast<i64>(gcd(static_cast<u64>(a < 0 ? -a : a), static_cast<u64>(b < 0 ? -b : b))))
      return fail("Bezout fails at " + std::to_string(a) + "," + std::to_string(b));
  }
  return pass(std::to_string(fx.random_trials) + " claim2 triples, Lucas l<=" + std::to_string(fx.lucas_max_l) +
              " p<=" + std::to_string(fx.lucas_max_p) + ", " + std::to_string(fx.random_trials) + " Bezout pairs");
}

}  // namespace detail

struct Criterion {
  int id;
  const char* name;
  std::function<detail::Outcome(const Fixtures&, const Config&)> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "F_7 census", detail::f7_census},
      {2, "empty small fields", detail::empty_fields},
      {3, "oracle equivalence q<=64", detail::oracle_equivalence},
      {4, "d(d-1) bound sweep p<=101", detail::thm7_sweep},
      {5, "(n-1)(n-3) bound audit p<=101", detail::cor5_audit},
      {6, "d-class coherence q<=64", detail::class_coherence},
      {7, "F_9 fixtures", detail::f9_remark},
      {8, "F_25 descent fixture", detail::f25_descent},
      {9, "subfield descent iff", detail::descent_iff},
      {10, "nonexistence spot checks", detail::cor8_spots},
      {11, "helper properties", detail::helper_properties},
  };
  return all;
}

inline std::vector<CriterionResult> run(const Config& cfg = {}, const Fixtures& fx = {}) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!cfg.only.empty() && std::find(cfg.only.begin(), cfg.only.end(), c.id) == cfg.only.end()) continue;
    CriterionResult res{c.id, c.name, Status::Fail, 0.0, kLimitSeconds[static_cast<std::size_t>(c.id)], {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      auto o = c.run(fx, cfg);
      res.status = o.status;
      res.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      res.status = Status::Fail;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.status == Status::Pass && res.seconds > res.limit_seconds) {
      res.status = Status::Fail;
      res.detail += " (time limit exceeded)";
    }
    out.push_back(std::move(res));
  }
  return out;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::Fail; });
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << to_string(r.status) << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << "  [" << std::fixed;
  os.precision(2);
  os << r.seconds << "s / " << r.limit_seconds << "s]  " << r.detail;
  return os.str();
}

}  // namespace permbin::acceptance

#endif  // PERMBIN_ACCEPTANCE_HPP
