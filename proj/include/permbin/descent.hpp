#ifndef PERMBIN_DESCENT_HPP
#define PERMBIN_DESCENT_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "permbin/equivalence.hpp"
#include "permbin/permtest.hpp"

namespace permbin {

// ---- Integer claims --------------------------------------------------------

/// delta = lcm(delta1, delta2) with delta1 | u and delta2 | v. Each prime power
/// exactly dividing delta goes to delta1 when it divides u, else to delta2.
inline std::pair<u64, u64> claim1_decompose(u64 delta, u64 u, u64 v) {
  if (delta == 0 || u == 0 || v == 0) throw Error(ErrorKind::InvalidArgument, "claim1 needs positive integers");
  u64 d1 = 1, d2 = 1;
  for (const auto& pp : factorize(delta)) {
    if (u % pp.value == 0) {
      d1 *= pp.value;
    } else if (v % pp.value == 0) {
      d2 *= pp.value;
    } else {
      throw Error(ErrorKind::NoDecomposition,
                  std::to_string(delta) + " does not divide lcm(" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
  }
  return {d1, d2};
}

/// gcd(lcm(a, b), lcm(a, c)) == lcm(a, gcd(b, c)).
inline bool claim2_holds(i64 a, i64 b, i64 c) {
  if (a == 0 || b == 0 || c == 0) throw Error(ErrorKind::InvalidArgument, "claim2 needs nonzero integers");
  const auto ua = static_cast<u64>(a < 0 ? -a : a);
  const auto ub = static_cast<u64>(b < 0 ? -b : b);
  const auto uc = static_cast<u64>(c < 0 ? -c : c);
  return gcd(lcm(ua, ub), lcm(ua, uc)) == lcm(ua, gcd(ub, uc));
}

// ---- Reports ---------------------------------------------------------------

struct ReducedForm {
  enum class Kind { Monomial, Binomial };
  Kind kind = Kind::Binomial;
  FieldElement coeff;  // b + 1 for monomials, b for binomials
  u64 k = 0;           // monomial exponent
  u64 n1 = 0;
  u64 m1 = 0;
  u64 lambda = 0;  // n = (p^s - 1) lambda + n1
  u64 mu = 0;      // m = (p^s - 1) mu + m1
  // Binomial case: b x^(n1/g) + x^(m1/g) with g = gcd(m1, n1).
  u64 inner_gcd = 0;
  u64 inner_n = 0;
  u64 inner_m = 0;
  bool permutes_subfield = false;
};

struct DescentReport {
  unsigned s = 0;
  std::optional<u64> t;  // set by thm9_part3
  bool exists = false;
  u64 delta = 0;
  u64 delta1 = 0;
  u64 delta2 = 0;
  u64 delta_s = 0;  // gcd(p^s - 1, (q-1)/d)
  std::vector<FieldElement> coefficients;
  std::vector<ReducedForm> reduced;
  bool validated = false;  // every b lies in F_{p^s}, is d-equivalent to f, and permutes F_q
};

namespace detail {

inline u64 subfield_order_minus_one(const FieldCtx& ctx, unsigned s) {
  u64 v = 1;
  for (unsigned i = 0; i < s; ++i) v *= ctx.p();
  return v - 1;
}

inline void check_divides_r(const FieldCtx& ctx, unsigned s) {
  if (s == 0 || ctx.r() % s != 0)
    throw Error(ErrorKind::SNotDividingR, std::to_string(s) + " does not divide r=" + std::to_string(ctx.r()));
}

inline void require_permutation(const Binomial& f) {
  if (!binomial_criterion(f).is_perm) throw Error(ErrorKind::PreconditionNotPermutation, "binomial does not permute F_q");
}

inline bool existence_condition(const Binomial& f, unsigned s) {
  const auto& ctx = f.ctx();
  const u64 delta = element_order(ctx, f.a());
  return lcm(subfield_order_minus_one(ctx, s), (ctx.q() - 1) / f.d()) % delta == 0;
}

}  // namespace detail

/// A d-equivalent binomial with coefficient in F_{p^s} exists iff ord(a)
/// divides lcm(p^s - 1, (q-1)/d).
inline bool thm9_exists(const Binomial& f, unsigned s) {
  detail::check_divides_r(f.ctx(), s);
  detail::require_permutation(f);
  return detail::existence_condition(f, s);
}

/// Oracle: every b in F_{p^s}^* with b x^n + x^m d-equivalent to f, by scanning the subfield.
inline std::vector<FieldElement> descent_scan(const Binomial& f, unsigned s) {
  const auto& ctx = f.ctx();
  std::vector<FieldElement> out;
  for (auto b : subfield_nonzero(ctx, s))
    if (is_dth_power(ctx, ctx.div(b, f.a()), f.d())) out.push_back(b);
  return out;
}

/// Reduction of g (coefficient in F_{p^s}) modulo x^(p^s) - x.
inline ReducedForm thm9_reduce(const Binomial& g, unsigned s) {
  const auto& ctx = g.ctx();
  detail::check_divides_r(ctx, s);
  if (!subfield_contains(ctx, g.a(), s)) throw Error(ErrorKind::NotInSubfield, "coefficient not in F_{p^s}");
  detail::require_permutation(g);

  const u64 P = detail::subfield_order_minus_one(ctx, s);
  // Exponents are taken in [1, p^s - 1]; x^k and x^(k mod (p^s-1)) only
  // differ at 0 when the residue is 0.
  ReducedForm rf;
  rf.n1 = reduce_exponent(P + 1, g.n());
  rf.m1 = reduce_exponent(P + 1, g.m());
  rf.lambda = (g.n() - rf.n1) / P;
  rf.mu = (g.m() - rf.m1) / P;
  if (rf.n1 == rf.m1) {
    rf.kind = ReducedForm::Kind::Monomial;
    rf.coeff = ctx.add(g.a(), ctx.one());
    rf.k = rf.n1;
  } else {
    rf.kind = ReducedForm::Kind::Binomial;
    rf.coeff = g.a();
    rf.inner_gcd = gcd(rf.n1, rf.m1);
    rf.inner_n = rf.n1 / rf.inner_gcd;
    rf.inner_m = rf.m1 / rf.inner_gcd;
  }

  // The reduced map must agree with g on F_{p^s} and permute it.
  std::vector<FieldElement> sub = subfield_nonzero(ctx, s);
  sub.insert(sub.begin(), ctx.zero());
  std::vector<bool> hit(ctx.q(), false);
  bool ok = true;
  for (auto x : sub) {
    FieldElement y;
    if (rf.kind == ReducedForm::Kind::Monomial) {
      y = ctx.mul(rf.coeff, ctx.pow(x, static_cast<i64>(rf.k)));
    } else {
      y = ctx.add(ctx.mul(rf.coeff, ctx.pow(x, static_cast<i64>(rf.n1))), ctx.pow(x, static_cast<i64>(rf.m1)));
    }
    if (y != evaluate(g, x) || !subfield_contains(ctx, y, s) || hit[y.code()]) ok = false;
    hit[y.code()] = true;
  }
  rf.permutes_subfield = ok;
  return rf;
}

/// Constructs one descended coefficient from the decomposition of ord(a),
/// then all gcd(p^s - 1, (q-1)/d) of them.
inline DescentReport thm9_coefficients(const Binomial& f, unsigned s) {
  DescentReport rep;
  rep.s = s;
  if (!thm9_exists(f, s)) return rep;

  const auto& ctx = f.ctx();
  const u64 qm1 = ctx.q() - 1;
  const u64 P = detail::subfield_order_minus_one(ctx, s);
  const u64 Q = qm1 / f.d();
  rep.exists = true;
  rep.delta = element_order(ctx, f.a());
  std::tie(rep.delta1, rep.delta2) = claim1_decompose(rep.delta, P, Q);
  rep.delta_s = gcd(P, Q);

  // a = xi^(k (q-1)/delta); split k as i*delta2 + j*delta1 (mod delta).
  const FieldElement xi = ctx.generator();
  const u64 L = dlog(ctx, xi, f.a());
  const auto k = static_cast<i64>(L / (qm1 / rep.delta));
  const auto bez = ext_gcd(static_cast<i64>(rep.delta2), static_cast<i64>(rep.delta1));
  const i64 i = mod_floor(bez.u * k, static_cast<i64>(rep.delta1));
  const i64 j = mod_floor(bez.v * k, static_cast<i64>(rep.delta2));
  const FieldElement eps = ctx.pow(xi, -j * static_cast<i64>(qm1 / rep.delta2));
  const FieldElement b0 = ctx.mul(eps, f.a());
  // b0 = (xi^((q-1)/delta1))^i lies in the subgroup of order delta1 | p^s - 1.
  const bool split_ok = b0 == ctx.pow(xi, i * static_cast<i64>(qm1 / rep.delta1));

  const FieldElement root = ctx.generator_power(static_cast<i64>(qm1 / rep.delta_s));
  FieldElement z = ctx.one();
  for (u64 t = 0; t < rep.delta_s; ++t) {
    rep.coefficients.push_back(ctx.mul(z, b0));
    z = ctx.mul(z, root);
  }
  std::sort(rep.coefficients.begin(), rep.coefficients.end());

  rep.validated = split_ok;
  for (auto b : rep.coefficients) {
    const Binomial g = f.with_coefficient(b);
    if (!subfield_contains(ctx, b, s) || !are_d_equivalent(f, g) || !binomial_criterion(g).is_perm) {
      rep.validated = false;
      continue;
    }
    rep.reduced.push_back(thm9_reduce(g, s));
  }
  return rep;
}

/// ord(a) | lcm(p^t - 1, (q-1)/d), evaluated prime power by prime power so
/// that p^t never has to be formed.
inline bool thm9_condition_at(const Binomial& f, u64 t) {
  const auto& ctx = f.ctx();
  const u64 Q = (ctx.q() - 1) / f.d();
  const u64 delta = element_order(ctx, f.a());
  for (const auto& pp : factorize(delta))
    if (Q % pp.value != 0 && !divides_pow_minus_one(pp.value, ctx.p(), t)) return false;
  return true;
}

/// Descent into F_{p^t} cap F_q = F_{p^gcd(r, t)} for any t >= 1.
inline DescentReport thm9_part3(const Binomial& f, u64 t) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  detail::require_permutation(f);
  const auto s = static_cast<unsigned>(gcd(f.ctx().r(), t));
  DescentReport rep = thm9_coefficients(f, s);
  rep.t = t;
  return rep;
}

/// Degree s0 of the smallest subfield holding the coefficient of some
/// d-equivalent binomial: gcd of all admissible divisors of r.
inline unsigned smallest_field(const Binomial& f) {
  detail::require_permutation(f);
  u64 s0 = 0;
  for (u64 s : divisors(f.ctx().r()))
    if (detail::existence_condition(f, static_cast<unsigned>(s))) s0 = gcd(s0, s);
  return static_cast<unsigned>(s0);
}

/// Same quantity by scanning divisors of r in increasing order.
inline unsigned smallest_field_scan(const Binomial& f) {
  detail::require_permutation(f);
  for (u64 s : divisors(f.ctx().r()))
    if (detail::existence_condition(f, static_cast<unsigned>(s))) return static_cast<unsigned>(s);
  return f.ctx().r();
}

/// Conjugating the coefficient by Frobenius keeps the smallest field; also
/// checks that admissible subfields are closed under intersection.
inline bool prop2_check(const Binomial& f, u64 e) {
  detail::require_permutation(f);
  const Binomial conj = f.with_coefficient(frobenius(f.ctx(), f.a(), e));
  if (smallest_field(f) != smallest_field(conj)) return false;
  std::vector<u64> admissible;
  for (u64 s : divisors(f.ctx().r()))
    if (detail::existence_condition(f, static_cast<unsigned>(s))) admissible.push_back(s);
  for (u64 s1 : admissible)
    for (u64 s2 : admissible)
      if (!detail::existence_condition(f, static_cast<unsigned>(gcd(s1, s2)))) return false;
  return true;
}

/// For odd p and an admissible s, gcd(d, p^s - 1) != 1.
inline bool remark_gcd_property(const Binomial& f, unsigned s) {
  const auto& ctx = f.ctx();
  if (ctx.p() == 2) throw Error(ErrorKind::PreconditionFailed, "requires odd characteristic");
  if (!thm9_exists(f, s)) throw Error(ErrorKind::PreconditionFailed, "no d-equivalent binomial over F_{p^s}");
  return gcd(f.d(), detail::subfield_order_minus_one(ctx, s)) != 1;
}

}  // namespace permbin

#endif  // PERMBIN_DESCENT_HPP
