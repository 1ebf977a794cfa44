#ifndef PERMBIN_BOUNDS_HPP
#define PERMBIN_BOUNDS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "permbin/equivalence.hpp"
#include "permbin/permtest.hpp"

namespace permbin {

enum class Claim { Thm7, Cor4, Cor5, Cor6, Cor8 };

constexpr std::string_view to_string(Claim c) noexcept {
  switch (c) {
    case Claim::Thm7: return "thm7";
    case Claim::Cor4: return "cor4";
    case Claim::Cor5: return "cor5";
    case Claim::Cor6: return "cor6";
    case Claim::Cor8: return "cor8";
  }
  return "?";
}

/// Outcome of a bound check on one parameter set.
enum class Mark { Holds, Violated, Exceptional, Inadmissible, Listed, NotApplicable };

constexpr std::string_view to_string(Mark m) noexcept {
  switch (m) {
    case Mark::Holds: return "holds";
    case Mark::Violated: return "violated";
    case Mark::Exceptional: return "exceptional";
    case Mark::Inadmissible: return "inadmissible";
    case Mark::Listed: return "listed";
    case Mark::NotApplicable: return "na";
  }
  return "?";
}

/// Exceptional case of the d(d-2) bound over F_p.
struct Cor4Exception {
  u64 d_mod_3;
  bool p_is_d2_minus_d_plus_1;
  bool n_zero_mod_period;  // n == 0 mod (p-1)/d
  bool m_zero_mod_period;  // m == 0 mod (p-1)/d

  friend bool operator==(const Cor4Exception&, const Cor4Exception&) = default;
};

struct BoundReport {
  Claim claim;
  bool holds;  // the stated inequality
  Mark mark;
  std::optional<Cor4Exception> exceptional;
  u64 p = 0, d = 0, n = 0, m = 0;
  std::string detail;
};

// ---- Single-parameter checks -----------------------------------------------

/// p - 1 <= d(d - 1).
constexpr bool thm7_check(u64 p, u64 d) noexcept { return p - 1 <= d * (d - 1); }

inline Cor4Exception cor4_exception_data(u64 p, u64 d, u64 n, u64 m) {
  const u64 period = (p - 1) / d;
  return {d % 3, p == d * d - d + 1, n % period == 0, m % period == 0};
}

/// p - 1 <= d(d - 2), except possibly when 3 | d, p = d^2 - d + 1 and n or m
/// is divisible by (p-1)/d. Anything else cannot carry a permutation binomial.
inline BoundReport cor4_admissible(u64 p, u64 d, u64 n, u64 m) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (n <= m || d == 0 || gcd(n - m, p - 1) != d)
    throw Error(ErrorKind::ParameterMismatch, "d must equal gcd(n-m, p-1)");
  BoundReport rep{Claim::Cor4, p - 1 <= d * (d >= 2 ? d - 2 : 0), Mark::Holds, std::nullopt, p, d, n, m, {}};
  if (d < 2) rep.holds = false;
  if (rep.holds) {
    rep.detail = std::to_string(p - 1) + " <= " + std::to_string(d * (d - 2));
    return rep;
  }
  const auto ex = cor4_exception_data(p, d, n, m);
  if (ex.d_mod_3 == 0 && ex.p_is_d2_minus_d_plus_1 && (ex.n_zero_mod_period || ex.m_zero_mod_period)) {
    rep.mark = Mark::Exceptional;
    rep.exceptional = ex;
    rep.detail = "exceptional: 3 | d, p = d^2-d+1, " + std::string(ex.n_zero_mod_period ? "n" : "m") +
                 " == 0 mod " + std::to_string((p - 1) / d);
  } else {
    rep.mark = Mark::Inadmissible;
    rep.detail = std::to_string(p - 1) + " > d(d-2) and not exceptional";
  }
  return rep;
}

/// p - 1 <= (n-1)(n-3) for a permutation binomial a x^n + x over F_p.
/// Reported, never asserted: the inequality fails for some genuine permutations.
inline BoundReport cor5_check(const Binomial& f) {
  const auto& ctx = f.ctx();
  if (!ctx.is_prime_field() || f.m() != 1)
    throw Error(ErrorKind::InvalidArgument, "cor5 applies to a x^n + x over a prime field");
  if (!brute_force_is_perm(f).is_perm)
    throw Error(ErrorKind::PreconditionNotPermutation, "binomial does not permute F_p");
  const u64 p = ctx.p();
  const i64 bound = (static_cast<i64>(f.n()) - 1) * (static_cast<i64>(f.n()) - 3);
  const bool ok = static_cast<i64>(p - 1) <= bound;
  return {Claim::Cor5, ok, ok ? Mark::Holds : Mark::Violated, std::nullopt, p, f.d(), f.n(), f.m(),
          std::to_string(p - 1) + (ok ? " <= " : " > ") + std::to_string(bound)};
}

/// The four exceptional permutation binomials with d <= 4, in a x^n + x^m form
/// over F_7: x^4 + 3x, x^4 - 3x, x^5 + 2x^2, x^5 - 2x^2.
struct Cor6Entry {
  u64 a, n, m;
};
inline constexpr std::array<Cor6Entry, 4> kCor6List{{{5, 4, 1}, {2, 4, 1}, {4, 5, 2}, {3, 5, 2}}};

inline bool cor6_membership(const Binomial& f) {
  const auto& ctx = f.ctx();
  if (!ctx.is_prime_field()) throw Error(ErrorKind::InvalidArgument, "cor6 applies to prime fields");
  if (ctx.p() != 7) return false;
  return std::any_of(kCor6List.begin(), kCor6List.end(),
                     [&](const Cor6Entry& e) { return f.a().code() == e.a && f.n() == e.n && f.m() == e.m; });
}

enum class Cor8Case { I, II, III, IV, V, VI, VII };

constexpr std::string_view to_string(Cor8Case c) noexcept {
  constexpr std::array<std::string_view, 7> names{"i", "ii", "iii", "iv", "v", "vi", "vii"};
  return names[static_cast<std::size_t>(c)];
}

/// First listed case under which F_{p^r} has no permutation binomial with this d.
constexpr std::optional<Cor8Case> cor8_condition(u64 p, u64 r, u64 d) noexcept {
  const bool r_odd = r % 2 == 1;
  if (r_odd && d == 2 && p != 3) return Cor8Case::I;
  if (r_odd && d == 4 && p != 5) return Cor8Case::II;
  if (std::gcd(r, u64{6}) == 1 && d == 3 && p != 7) return Cor8Case::III;
  if (std::gcd(r, u64{10}) == 1 && d == 5 && p != 11) return Cor8Case::IV;
  if (std::gcd(r, u64{6}) == 1 && d == 6 && p != 7 && p != 13 && p != 19 && p != 31) return Cor8Case::V;
  if (std::gcd(r, u64{42}) == 1 && d == 7 && p != 29) return Cor8Case::VI;
  if (r_odd && d == 8 && p != 17) return Cor8Case::VII;
  return std::nullopt;
}

// ---- Enumeration -----------------------------------------------------------

struct SurveyRow {
  u64 q = 0, p = 0;
  unsigned r = 0;
  FieldElement a;
  u64 n = 0, m = 0, d = 0;
  bool is_perm = false;
  FieldElement class_id;
  Mark thm7 = Mark::NotApplicable;
  Mark cor4 = Mark::NotApplicable;
  Mark cor5 = Mark::NotApplicable;
  Mark cor6 = Mark::NotApplicable;
  std::optional<Cor8Case> cor8;

  auto key() const noexcept { return std::tuple{q, n, m, a}; }
  friend bool operator==(const SurveyRow&, const SurveyRow&) = default;
};

struct EnumerateFilters {
  std::optional<u64> d, m, n, max_n;
};

struct EnumerateOptions {
  bool prune = false;  // skip shapes excluded by the d(d-1) and d(d-2) bounds (prime fields)
  unsigned workers = 1;
  u64 max_q = kDefaultMaxQ;
};

/// Fills the bound flags of a permutation row.
inline void annotate_row(const FieldCtx& ctx, SurveyRow& row) {
  if (ctx.is_prime_field()) {
    row.thm7 = thm7_check(row.p, row.d) ? Mark::Holds : Mark::Violated;
    row.cor4 = cor4_admissible(row.p, row.d, row.n, row.m).mark;
    if (row.m == 1) {
      const i64 bound = (static_cast<i64>(row.n) - 1) * (static_cast<i64>(row.n) - 3);
      row.cor5 = static_cast<i64>(row.p - 1) <= bound ? Mark::Holds : Mark::Violated;
    }
    if (row.d <= 4) {
      row.cor6 = cor6_membership(make_binomial(ctx, row.a, row.n, row.m)) ? Mark::Listed : Mark::Violated;
    } else {
      row.cor6 = Mark::Holds;
    }
  }
  row.cor8 = cor8_condition(row.p, row.r, row.d);
}

namespace detail {

inline bool shape_pruned(const FieldCtx& ctx, u64 n, u64 m, u64 d) {
  if (!ctx.is_prime_field()) return false;
  if (!thm7_check(ctx.p(), d)) return true;
  return cor4_admissible(ctx.p(), d, n, m).mark == Mark::Inadmissible;
}

inline void enumerate_shape(const FieldCtx& ctx, u64 n, u64 m, u64 d, std::vector<SurveyRow>& out) {
  CriterionPlan plan(ctx, n, m);
  // A = a^period runs over the d-th roots of unity g^(i*period).
  std::unordered_map<std::uint32_t, bool> verdict_by_power;
  bool any = false;
  for (u64 i = 0; i < d; ++i) {
    const FieldElement A = ctx.generator_power(static_cast<i64>(i * plan.period()));
    const bool perm = plan.is_perm(A);
    verdict_by_power.emplace(A.code(), perm);
    any = any || perm;
  }
  if (!any) return;
  for (u64 c = 1; c < ctx.q(); ++c) {
    const FieldElement a{static_cast<std::uint32_t>(c)};
    if (!verdict_by_power.at(plan.power_of(a).code())) continue;
    SurveyRow row;
    row.q = ctx.q();
    row.p = ctx.p();
    row.r = ctx.r();
    row.a = a;
    row.n = n;
    row.m = m;
    row.d = d;
    row.is_perm = true;
    row.class_id = class_id_of(ctx, a, d);
    annotate_row(ctx, row);
    out.push_back(row);
  }
}

}  // namespace detail

/// Every permutation binomial a x^n + x^m of F_q with gcd(m, n) = 1, in
/// (q, n, m, a) order. Each candidate is decided by binomial_criterion's plan.
inline std::vector<SurveyRow> enumerate_perm_binomials(const FieldCtx& ctx, const EnumerateFilters& filters = {},
                                                       const EnumerateOptions& options = {}) {
  if (ctx.q() > options.max_q) throw Error(ErrorKind::CapExceeded, "q exceeds cap");
  const u64 q = ctx.q();
  u64 n_hi = q - 1;
  if (filters.max_n) n_hi = std::min(n_hi, *filters.max_n);

  std::vector<u64> ns;
  for (u64 n = 2; n <= n_hi; ++n)
    if (!filters.n || *filters.n == n) ns.push_back(n);

  auto work = [&](std::size_t first, std::size_t stride, std::vector<SurveyRow>& out) {
    for (std::size_t idx = first; idx < ns.size(); idx += stride) {
      const u64 n = ns[idx];
      // With d fixed, only n - m in multiples of d can match.
      const u64 step = filters.d ? *filters.d : 1;
      for (u64 m = n > step ? n - step : 0; m >= 1 && m < n; m = m > step ? m - step : 0) {
        if (filters.m && *filters.m != m) continue;
        if (gcd(m, n) != 1) continue;
        const u64 d = gcd(n - m, q - 1);
        if (filters.d && *filters.d != d) continue;
        if (d == 1) continue;  // never a permutation: -1/a is always a first power
        if (options.prune && detail::shape_pruned(ctx, n, m, d)) continue;
        detail::enumerate_shape(ctx, n, m, d, out);
      }
    }
  };

  std::vector<SurveyRow> rows;
  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1) {
    work(0, 1, rows);
  } else {
    std::vector<std::vector<SurveyRow>> parts(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { work(w, workers, parts[w]); });
    }
    for (auto& part : parts) rows.insert(rows.end(), part.begin(), part.end());
  }
  std::sort(rows.begin(), rows.end(), [](const SurveyRow& x, const SurveyRow& y) { return x.key() < y.key(); });
  return rows;
}

// ---- Survey ----------------------------------------------------------------

struct Cor8Confirmation {
  u64 q, p;
  unsigned r;
  u64 d;
  Cor8Case which;
  std::size_t found;  // permutation binomials with this d; 0 confirms the case
};

struct SurveyReport {
  std::vector<SurveyRow> rows;
  std::map<std::pair<u64, u64>, std::size_t> counts;  // (q, d) -> rows
  std::vector<SurveyRow> thm7_equality;
  std::vector<SurveyRow> thm7_violations;
  std::vector<SurveyRow> cor4_violations;  // flagged inadmissible
  std::vector<SurveyRow> cor5_violations;
  std::vector<SurveyRow> cor6_violations;
  std::vector<SurveyRow> cor8_violations;
  std::vector<Cor8Confirmation> cor8_confirmations;
};

inline std::vector<u64> primes_up_to(u64 hi) {
  std::vector<u64> out;
  for (u64 p = 2; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline std::vector<u64> prime_powers_up_to(u64 hi) {
  std::vector<u64> out;
  for (u64 q = 2; q <= hi; ++q)
    if (prime_power_decompose(q)) out.push_back(q);
  return out;
}

inline SurveyReport survey_report(const std::vector<u64>& q_list, const EnumerateFilters& filters = {},
                                  const EnumerateOptions& options = {}) {
  SurveyReport rep;
  for (u64 q : q_list) {
    const FieldCtx ctx = make_field_of_order(q, options.max_q);
    auto rows = enumerate_perm_binomials(ctx, filters, options);
    std::map<u64, std::size_t> per_d;
    for (const auto& row : rows) {
      ++rep.counts[{q, row.d}];
      ++per_d[row.d];
      if (ctx.is_prime_field() && row.p - 1 == row.d * (row.d - 1)) rep.thm7_equality.push_back(row);
      if (row.thm7 == Mark::Violated) rep.thm7_violations.push_back(row);
      if (row.cor4 == Mark::Inadmissible) rep.cor4_violations.push_back(row);
      if (row.cor5 == Mark::Violated) rep.cor5_violations.push_back(row);
      if (row.cor6 == Mark::Violated) rep.cor6_violations.push_back(row);
      if (row.cor8) rep.cor8_violations.push_back(row);
    }
    for (u64 d : divisors(q - 1)) {
      if (filters.d && *filters.d != d) continue;
      if (auto c = cor8_condition(ctx.p(), ctx.r(), d)) rep.cor8_confirmations.push_back({q, ctx.p(), ctx.r(), d, *c, per_d[d]});
    }
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
  }
  return rep;
}

/// Survey restricted to the (q, d) pairs covered by a nonexistence case.
inline SurveyReport cor8_survey(const std::vector<u64>& q_list, const EnumerateFilters& filters = {},
                                const EnumerateOptions& options = {}) {
  SurveyReport rep;
  for (u64 q : q_list) {
    const FieldCtx ctx = make_field_of_order(q, options.max_q);
    for (u64 d : divisors(q - 1)) {
      if (filters.d && *filters.d != d) continue;
      const auto which = cor8_condition(ctx.p(), ctx.r(), d);
      if (!which) continue;
      EnumerateFilters flt = filters;
      flt.d = d;
      const auto rows = enumerate_perm_binomials(ctx, flt, options);
      for (const auto& row : rows) {
        ++rep.counts[{q, d}];
        rep.cor8_violations.push_back(row);
      }
      rep.cor8_confirmations.push_back({q, ctx.p(), ctx.r(), d, *which, rows.size()});
      rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    }
  }
  return rep;
}

}  // namespace permbin

#endif  // PERMBIN_BOUNDS_HPP
