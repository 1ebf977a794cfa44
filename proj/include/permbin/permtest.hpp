#ifndef PERMBIN_PERMTEST_HPP
#define PERMBIN_PERMTEST_HPP

#include <algorithm>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "permbin/binomial.hpp"

namespace permbin {

enum class Method { Brute, HermiteDickson, Criterion };

constexpr std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::HermiteDickson: return "hd";
    case Method::Criterion: return "criterion";
  }
  return "?";
}

/// f(x1) == f(x2) with x1 != x2.
struct CollisionPair {
  FieldElement x1;
  FieldElement x2;
  friend bool operator==(const CollisionPair&, const CollisionPair&) = default;
};

/// Full root set of f when it is not {0} alone (may be empty for general polys).
struct ExtraRoots {
  std::vector<FieldElement> roots;
  friend bool operator==(const ExtraRoots&, const ExtraRoots&) = default;
};

/// The reduced l-th power reaches the given degree (always q-1).
struct FailingExponent {
  u64 l;
  u64 degree;
  friend bool operator==(const FailingExponent&, const FailingExponent&) = default;
};

struct Clean {
  friend bool operator==(const Clean&, const Clean&) = default;
};

using Witness = std::variant<Clean, CollisionPair, ExtraRoots, FailingExponent>;

struct PermVerdict {
  bool is_perm = false;
  Witness witness;
  Method method = Method::Brute;
  std::vector<u64> checked_l;
};

inline constexpr u64 kHermiteDicksonMaxQ = 4096;

// ---- Brute force ----------------------------------------------------------

inline PermVerdict brute_force_poly(const FieldCtx& ctx, const std::vector<Term>& poly, u64 max_q = kDefaultMaxQ) {
  if (ctx.q() > max_q) throw Error(ErrorKind::CapExceeded, "brute force beyond cap");
  std::vector<std::int64_t> preimage(ctx.q(), -1);
  for (u64 c = 0; c < ctx.q(); ++c) {
    const FieldElement x{static_cast<std::uint32_t>(c)};
    const FieldElement y = evaluate_poly(ctx, poly, x);
    if (preimage[y.code()] >= 0) {
      return {false, CollisionPair{FieldElement{static_cast<std::uint32_t>(preimage[y.code()])}, x}, Method::Brute, {}};
    }
    preimage[y.code()] = static_cast<std::int64_t>(c);
  }
  return {true, Clean{}, Method::Brute, {}};
}

/// Marks all q images of f; the first repeated image yields the witness.
inline PermVerdict brute_force_is_perm(const Binomial& f, u64 max_q = kDefaultMaxQ) {
  const auto& ctx = f.ctx();
  if (ctx.q() > max_q) throw Error(ErrorKind::CapExceeded, "brute force beyond cap");
  std::vector<std::int64_t> preimage(ctx.q(), -1);
  for (u64 c = 0; c < ctx.q(); ++c) {
    const FieldElement x{static_cast<std::uint32_t>(c)};
    const FieldElement y = evaluate(f, x);
    if (preimage[y.code()] >= 0) {
      return {false, CollisionPair{FieldElement{static_cast<std::uint32_t>(preimage[y.code()])}, x}, Method::Brute, {}};
    }
    preimage[y.code()] = static_cast<std::int64_t>(c);
  }
  return {true, Clean{}, Method::Brute, {}};
}

// ---- Roots ----------------------------------------------------------------

/// x = 0 is the only root iff -a^{-1} is not a d-th power.
inline bool unique_root_check(const Binomial& f) {
  const auto& ctx = f.ctx();
  return !is_dth_power(ctx, ctx.neg(ctx.inv(f.a())), f.d());
}

/// All roots of f, sorted: 0 together with the solutions of x^(n-m) = -1/a.
inline std::vector<FieldElement> roots_of(const Binomial& f) {
  const auto& ctx = f.ctx();
  std::vector<FieldElement> roots{ctx.zero()};
  const FieldElement c = ctx.neg(ctx.inv(f.a()));
  const u64 d = f.d(), qm1 = ctx.q() - 1;
  if (is_dth_power(ctx, c, d)) {
    const auto bez = ext_gcd(static_cast<i64>(f.n() - f.m()), static_cast<i64>(qm1));
    const i64 log_c = static_cast<i64>(ctx.index(c));
    const i64 y0 = mod_floor(mod_floor(bez.u, static_cast<i64>(qm1)) * (log_c / static_cast<i64>(d)),
                             static_cast<i64>(qm1));
    for (u64 k = 0; k < d; ++k) roots.push_back(ctx.generator_power(y0 + static_cast<i64>(k * (qm1 / d))));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- Hermite-Dickson, full -------------------------------------------------

/// Generic oracle: unique root, then deg of reduced g^l <= q-2 for every
/// l in [1, q-2]. Powers are built by repeated multiplication modulo x^q - x.
inline PermVerdict hermite_dickson_full(const FieldCtx& ctx, const std::vector<Term>& poly,
                                        u64 max_q = kHermiteDicksonMaxQ) {
  const u64 q = ctx.q();
  if (q > max_q) throw Error(ErrorKind::CapExceeded, "Hermite-Dickson oracle beyond cap");
  const ReducedPoly g = reduce_poly(ctx, poly);
  std::vector<Term> sparse;
  for (const auto& [e, c] : g.terms()) sparse.push_back({e, c});

  std::vector<FieldElement> roots;
  for (u64 c = 0; c < q; ++c) {
    const FieldElement x{static_cast<std::uint32_t>(c)};
    if (evaluate_poly(ctx, sparse, x).is_zero()) roots.push_back(x);
  }
  PermVerdict v{false, Clean{}, Method::HermiteDickson, {}};
  if (roots.size() != 1) {
    v.witness = ExtraRoots{std::move(roots)};
    return v;
  }

  auto reduce = [q](u64 e) { return e == 0 ? u64{0} : (e - 1) % (q - 1) + 1; };
  std::vector<FieldElement> power(q), next(q);
  for (const auto& t : sparse) power[t.exponent] = t.coeff;
  for (u64 l = 1; l + 2 <= q; ++l) {
    if (l > 1) {
      std::fill(next.begin(), next.end(), FieldElement{});
      for (u64 e = 0; e < q; ++e) {
        if (power[e].is_zero()) continue;
        for (const auto& t : sparse) {
          auto& slot = next[reduce(e + t.exponent)];
          slot = ctx.add(slot, ctx.mul(power[e], t.coeff));
        }
      }
      power.swap(next);
    }
    v.checked_l.push_back(l);
    if (!power[q - 1].is_zero()) {
      v.witness = FailingExponent{l, q - 1};
      return v;
    }
  }
  v.is_perm = true;
  return v;
}

inline PermVerdict hermite_dickson_full(const Binomial& f, u64 max_q = kHermiteDicksonMaxQ) {
  return hermite_dickson_full(f.ctx(), terms_of(f), max_q);
}

// ---- Coefficient sums for d | l --------------------------------------------

struct SumTerm {
  u64 j;
  u64 binom;  // C(l, j) mod p
  u64 lambda;
  friend bool operator==(const SumTerm&, const SumTerm&) = default;
};

/// Indices j in [0, l] whose monomial x^((n-m)j + lm) lands on x^(q-1): they
/// form the progression j0 + lambda*(q-1)/d, lambda = 0..gamma_l.
struct SumSpec {
  u64 l;
  u64 j0;
  i64 gamma_l;  // -1 when j0 > l (empty sum)
  u64 period;   // (q-1)/d
  std::vector<SumTerm> terms;
};

namespace detail {

inline void check_lemma2_args(const Binomial& f, u64 l) {
  const u64 d = f.d();
  if (d == 1) throw Error(ErrorKind::DEqualsOne, "requires d > 1");
  if (l == 0 || l % d != 0) throw Error(ErrorKind::DNotDividingL, std::to_string(d) + " does not divide l=" + std::to_string(l));
  if (l + 2 > f.ctx().q()) throw Error(ErrorKind::InvalidArgument, "l must lie in [1, q-2]");
}

/// Smallest j0 >= 0 with (n-m) j0 + l m == 0 mod q-1, for d | l.
inline u64 smallest_j0(u64 n, u64 m, u64 d, u64 period, u64 l) {
  if (period == 1) return 0;
  const auto P = static_cast<i64>(period);
  const i64 rhs = mod_floor(-static_cast<i64>((l / d) % period) * static_cast<i64>(m % period), P);
  const auto inv = mod_inverse(static_cast<i64>(((n - m) / d) % period), P);
  // gcd((n-m)/d, (q-1)/d) = 1, so the inverse always exists.
  return static_cast<u64>(rhs) * static_cast<u64>(*inv) % period;
}

}  // namespace detail

inline SumSpec lemma2_terms(const Binomial& f, u64 l) {
  detail::check_lemma2_args(f, l);
  const u64 d = f.d(), period = (f.ctx().q() - 1) / d;
  SumSpec s{l, detail::smallest_j0(f.n(), f.m(), d, period, l), -1, period, {}};
  if (s.j0 <= l) s.gamma_l = static_cast<i64>((l - s.j0) / period);
  for (i64 lambda = 0; lambda <= s.gamma_l; ++lambda) {
    const u64 j = s.j0 + static_cast<u64>(lambda) * period;
    s.terms.push_back({j, binom_mod_p(static_cast<i64>(l), static_cast<i64>(j), f.ctx().p()), static_cast<u64>(lambda)});
  }
  return s;
}

/// Sum of C(l, j0 + lambda (q-1)/d) (a^((q-1)/d))^lambda; zero iff the reduced
/// l-th power has degree <= q-2.
inline FieldElement lemma2_sum(const Binomial& f, u64 l) {
  const auto& ctx = f.ctx();
  const SumSpec s = lemma2_terms(f, l);
  const FieldElement A = ctx.pow(f.a(), static_cast<i64>(s.period));
  FieldElement sum = ctx.zero();
  for (const auto& t : s.terms)
    sum = ctx.add(sum, ctx.mul(ctx.from_int(static_cast<i64>(t.binom)), ctx.pow(A, static_cast<i64>(t.lambda))));
  return sum;
}

/// The criterion for a fixed shape (n, m) with gcd(m, n) = 1 and d > 1. Its
/// dependence on a is only through A = a^((q-1)/d), a d-th root of unity, so
/// one plan serves every coefficient. Term lists are built lazily per l.
class CriterionPlan {
 public:
  CriterionPlan(FieldCtx ctx, u64 n, u64 m)
      : ctx_(std::move(ctx)), n_(n), m_(m), d_(gcd(n - m, ctx_.q() - 1)), period_((ctx_.q() - 1) / d_) {
    if (d_ == 1) throw Error(ErrorKind::DEqualsOne, "criterion plan requires d > 1");
    // -1/a is a d-th power iff A == (-1)^period.
    root_power_ = ctx_.pow(ctx_.neg(ctx_.one()), static_cast<i64>(period_));
    count_ = (ctx_.q() - 2) / d_;
  }

  u64 d() const noexcept { return d_; }
  u64 period() const noexcept { return period_; }
  std::size_t exponent_count() const noexcept { return count_; }

  FieldElement power_of(FieldElement a) const { return ctx_.pow(a, static_cast<i64>(period_)); }

  bool unique_root(FieldElement A) const noexcept { return A != root_power_; }

  /// Value of the sum for l = (k+1)*d at A.
  FieldElement sum_at(std::size_t k, FieldElement A) {
    const auto& coeffs = coefficients(k);
    FieldElement acc = ctx_.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = ctx_.add(ctx_.mul(acc, A), *it);
    return acc;
  }

  /// First l = kd whose sum is nonzero at A, or nullopt when all vanish.
  std::optional<u64> first_failing_l(FieldElement A, std::vector<u64>* trace = nullptr) {
    for (std::size_t k = 0; k < count_; ++k) {
      const u64 l = (k + 1) * d_;
      if (trace) trace->push_back(l);
      if (!sum_at(k, A).is_zero()) return l;
    }
    return std::nullopt;
  }

  bool is_perm(FieldElement A) { return unique_root(A) && !first_failing_l(A); }

 private:
  // Filled in order of k; callers walk k upward from 0.
  const std::vector<FieldElement>& coefficients(std::size_t k) {
    while (sums_.size() <= k) {
      const u64 l = (sums_.size() + 1) * d_;
      const u64 j0 = detail::smallest_j0(n_, m_, d_, period_, l);
      std::vector<FieldElement> c;
      for (u64 j = j0; j <= l; j += period_)
        c.push_back(ctx_.from_int(static_cast<i64>(binom_mod_p(static_cast<i64>(l), static_cast<i64>(j), ctx_.p()))));
      sums_.push_back(std::move(c));
    }
    return sums_[k];
  }

  FieldCtx ctx_;
  u64 n_, m_, d_, period_;
  FieldElement root_power_;
  std::size_t count_;
  std::vector<std::vector<FieldElement>> sums_;
};

/// Unique root plus vanishing coefficient sums for every multiple l of d in
/// [1, q-2]. Shapes with gcd(m, n) = k > 1 go through normalize().
inline PermVerdict binomial_criterion(const Binomial& f, u64 max_q = kDefaultMaxQ) {
  const auto& ctx = f.ctx();
  if (ctx.q() > max_q) throw Error(ErrorKind::CapExceeded, "criterion beyond cap");
  PermVerdict v{false, Clean{}, Method::Criterion, {}};

  if (gcd(f.m(), f.n()) > 1) {
    const auto norm = normalize(f);
    const u64 qm1 = ctx.q() - 1;
    if (!norm.k_coprime_q_minus_1) {
      // x -> x^k is not injective: any zeta != 1 with zeta^k = 1 collides with 1.
      const u64 g = gcd(norm.k, qm1);
      v.witness = CollisionPair{ctx.one(), ctx.generator_power(static_cast<i64>(qm1 / g))};
      return v;
    }
    PermVerdict inner = binomial_criterion(norm.inner, max_q);
    if (auto* er = std::get_if<ExtraRoots>(&inner.witness)) {
      // Roots of f are the k-th roots of roots of inner; x -> x^k is invertible.
      const i64 k_inv = *mod_inverse(static_cast<i64>(norm.k), static_cast<i64>(qm1));
      for (auto& x : er->roots) x = ctx.pow(x, k_inv);
      std::sort(er->roots.begin(), er->roots.end());
    }
    return inner;
  }

  if (f.d() == 1 || !unique_root_check(f)) {
    v.witness = ExtraRoots{roots_of(f)};
    return v;
  }
  CriterionPlan plan(ctx, f.n(), f.m());
  if (auto l = plan.first_failing_l(plan.power_of(f.a()), &v.checked_l)) {
    v.witness = FailingExponent{*l, ctx.q() - 1};
    return v;
  }
  v.is_perm = true;
  return v;
}

/// Re-checks a witness by evaluation (collisions, roots) or by recomputing the
/// reduced power (failing exponents).
inline bool witness_holds(const Binomial& f, const PermVerdict& v) {
  const auto& ctx = f.ctx();
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Clean>) {
          return v.is_perm;
        } else if constexpr (std::is_same_v<W, CollisionPair>) {
          return !v.is_perm && w.x1 != w.x2 && evaluate(f, w.x1) == evaluate(f, w.x2);
        } else if constexpr (std::is_same_v<W, ExtraRoots>) {
          if (v.is_perm || w.roots.size() == 1) return false;
          return std::all_of(w.roots.begin(), w.roots.end(), [&](FieldElement x) { return evaluate(f, x).is_zero(); });
        } else {
          // Coefficient of x^(q-1) in the reduced l-th power: sum over j of C(l,j) a^j
          // with (n-m)j + lm == 0 mod q-1.
          const u64 qm1 = ctx.q() - 1;
          FieldElement c = ctx.zero();
          for (u64 j = 0; j <= w.l; ++j) {
            const u64 e = (f.n() - f.m()) * j + w.l * f.m();
            if (e % qm1 != 0) continue;
            const auto b = binom_mod_p(static_cast<i64>(w.l), static_cast<i64>(j), ctx.p());
            c = ctx.add(c, ctx.mul(ctx.from_int(static_cast<i64>(b)), ctx.pow(f.a(), static_cast<i64>(j))));
          }
          return !v.is_perm && w.degree == qm1 && !c.is_zero();
        }
      },
      v.witness);
}

}  // namespace permbin

#endif  // PERMBIN_PERMTEST_HPP
