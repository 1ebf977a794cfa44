#ifndef PERMBIN_BINOMIAL_HPP
#define PERMBIN_BINOMIAL_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "permbin/field.hpp"

namespace permbin {

/// Exponent of x^k modulo x^q - x: 0 stays 0 (the constant), otherwise the
/// representative in [1, q-1] congruent to k mod q-1.
constexpr u64 reduce_exponent(u64 q, u64 k) noexcept {
  if (k == 0) return 0;
  return (k - 1) % (q - 1) + 1;
}

/// a*x^n + x^m over F_q with 1 <= m < n <= q-1 and a != 0.
class Binomial {
 public:
  const FieldCtx& ctx() const noexcept { return ctx_; }
  FieldElement a() const noexcept { return a_; }
  u64 n() const noexcept { return n_; }
  u64 m() const noexcept { return m_; }
  u64 d() const noexcept { return gcd(n_ - m_, ctx_.q() - 1); }

  Binomial with_coefficient(FieldElement b) const;

  friend bool operator==(const Binomial& x, const Binomial& y) noexcept {
    return x.ctx_ == y.ctx_ && x.a_ == y.a_ && x.n_ == y.n_ && x.m_ == y.m_;
  }

 private:
  friend Binomial make_binomial(const FieldCtx&, FieldElement, u64, u64);
  Binomial(FieldCtx ctx, FieldElement a, u64 n, u64 m) : ctx_(std::move(ctx)), a_(a), n_(n), m_(m) {}

  FieldCtx ctx_;
  FieldElement a_;
  u64 n_ = 0;
  u64 m_ = 0;
};

inline Binomial make_binomial(const FieldCtx& ctx, FieldElement a, u64 n, u64 m) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroCoefficient, "coefficient a must be nonzero");
  if (a.code() >= ctx.q()) throw Error(ErrorKind::InvalidArgument, "coefficient not in field");
  if (m == 0 || n == 0) throw Error(ErrorKind::DegenerateExponents, "exponents must be positive");
  const u64 rn = reduce_exponent(ctx.q(), n);
  const u64 rm = reduce_exponent(ctx.q(), m);
  if (rn == rm)
    throw Error(ErrorKind::DegenerateExponents,
                "x^" + std::to_string(n) + " and x^" + std::to_string(m) + " coincide on F_q");
  if (rn < rm)
    throw Error(ErrorKind::DegenerateExponents, "reduced exponents must satisfy m < n (got n=" +
                                                    std::to_string(rn) + ", m=" + std::to_string(rm) + ")");
  return Binomial(ctx, a, rn, rm);
}

inline Binomial Binomial::with_coefficient(FieldElement b) const { return make_binomial(ctx_, b, n_, m_); }

inline u64 d_of(const Binomial& f) noexcept { return f.d(); }

// ---- Reduction modulo x^q - x --------------------------------------------

struct Term {
  u64 exponent;
  FieldElement coeff;
};

/// Polynomial of degree <= q-1, equal as a function on F_q to its source.
class ReducedPoly {
 public:
  ReducedPoly() = default;
  explicit ReducedPoly(std::map<u64, FieldElement> terms) : terms_(std::move(terms)) {}

  const std::map<u64, FieldElement>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// -1 for the zero polynomial.
  i64 degree() const noexcept { return terms_.empty() ? -1 : static_cast<i64>(terms_.rbegin()->first); }

  FieldElement coefficient(u64 e) const noexcept {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement{} : it->second;
  }

  friend bool operator==(const ReducedPoly&, const ReducedPoly&) = default;

 private:
  std::map<u64, FieldElement> terms_;
};

inline ReducedPoly reduce_poly(const FieldCtx& ctx, const std::vector<Term>& poly) {
  std::map<u64, FieldElement> acc;
  for (const auto& t : poly) {
    const u64 e = reduce_exponent(ctx.q(), t.exponent);
    auto [it, inserted] = acc.try_emplace(e, t.coeff);
    if (!inserted) it->second = ctx.add(it->second, t.coeff);
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
  return ReducedPoly(std::move(acc));
}

inline FieldElement evaluate_poly(const FieldCtx& ctx, const std::vector<Term>& poly, FieldElement x) {
  FieldElement sum = ctx.zero();
  for (const auto& t : poly) sum = ctx.add(sum, ctx.mul(t.coeff, ctx.pow(x, static_cast<i64>(t.exponent))));
  return sum;
}

inline std::vector<Term> terms_of(const Binomial& f) {
  return {{f.n(), f.a()}, {f.m(), f.ctx().one()}};
}

// ---- Normalization of gcd(m, n) -------------------------------------------

struct NormalizationResult {
  u64 k;
  Binomial inner;            // exponents (n/k, m/k)
  bool k_coprime_q_minus_1;  // x -> x^k is a bijection of F_q
};

/// f(x) = inner(x^k) with k = gcd(m, n). f permutes F_q iff the flag holds and
/// inner permutes F_q.
inline NormalizationResult normalize(const Binomial& f) {
  const u64 k = gcd(f.m(), f.n());
  return {k, make_binomial(f.ctx(), f.a(), f.n() / k, f.m() / k), gcd(k, f.ctx().q() - 1) == 1};
}

inline FieldElement evaluate(const Binomial& f, FieldElement x) {
  const auto& ctx = f.ctx();
  return ctx.add(ctx.mul(f.a(), ctx.pow(x, static_cast<i64>(f.n()))), ctx.pow(x, static_cast<i64>(f.m())));
}

/// The binomial eta^(u(n-m)) * a * x^n + x^m, which as a function equals
/// eta^(-u m) * f(eta^u x).
inline Binomial scale_substitute(const Binomial& f, FieldElement eta, i64 u) {
  if (eta.is_zero()) throw Error(ErrorKind::ZeroEta, "eta must be nonzero");
  const auto& ctx = f.ctx();
  const i64 e = u * static_cast<i64>(f.n() - f.m());
  return f.with_coefficient(ctx.mul(ctx.pow(eta, e), f.a()));
}

/// high*x^n + low*x^m rescaled to coefficient 1 on x^m.
inline Binomial canonicalize(const FieldCtx& ctx, FieldElement high, u64 n, FieldElement low, u64 m) {
  if (low.is_zero()) throw Error(ErrorKind::ZeroCoefficient, "low-term coefficient must be nonzero");
  return make_binomial(ctx, ctx.div(high, low), n, m);
}

struct ScaledBinomial {
  FieldElement high;  // c*a
  FieldElement low;   // c
  u64 n;
  u64 m;
  Binomial canonical;  // c*f rescaled; the same permutation behaviour as c*f
};

inline ScaledBinomial scalar_multiple(const Binomial& f, FieldElement c) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroScalar, "scalar must be nonzero");
  const auto& ctx = f.ctx();
  const FieldElement high = ctx.mul(c, f.a());
  return {high, c, f.n(), f.m(), canonicalize(ctx, high, f.n(), c, f.m())};
}

// ---- Text format: "a,n,m" ------------------------------------------------

inline Binomial parse_binomial(const FieldCtx& ctx, std::string_view text) {
  const auto vals = detail::parse_int_list(text);
  if (vals.size() != ctx.r() + 2)
    throw Error(ErrorKind::ParseError, "binomial needs " + std::to_string(ctx.r()) + " coefficient(s) plus n,m");
  const i64 n = vals[vals.size() - 2], m = vals[vals.size() - 1];
  if (n <= 0 || m <= 0) throw Error(ErrorKind::DegenerateExponents, "exponents must be positive");
  std::vector<i64> coeffs(vals.begin(), vals.end() - 2);
  return make_binomial(ctx, ctx.from_coeffs(coeffs), static_cast<u64>(n), static_cast<u64>(m));
}

inline std::string format_binomial(const Binomial& f) {
  return format_element(f.ctx(), f.a()) + "," + std::to_string(f.n()) + "," + std::to_string(f.m());
}

}  // namespace permbin

#endif  // PERMBIN_BINOMIAL_HPP
