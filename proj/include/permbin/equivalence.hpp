#ifndef PERMBIN_EQUIVALENCE_HPP
#define PERMBIN_EQUIVALENCE_HPP

#include <algorithm>
#include <vector>

#include "permbin/binomial.hpp"

namespace permbin {

/// Coefficients {eps * a : eps in (F_q^*)^d} for a fixed shape (n, m).
struct DClass {
  Binomial base;
  std::vector<FieldElement> members;  // ascending canonical order
  FieldElement class_id;              // smallest member

  std::size_t size() const noexcept { return members.size(); }
};

namespace detail {

inline void check_same_shape(const Binomial& f, const Binomial& g) {
  if (!(f.ctx() == g.ctx()) || f.n() != g.n() || f.m() != g.m())
    throw Error(ErrorKind::ShapeMismatch, "d-equivalence needs the same field and the same (n, m)");
}

}  // namespace detail

inline bool are_d_equivalent(const Binomial& f, const Binomial& g) {
  detail::check_same_shape(f, g);
  const auto& ctx = f.ctx();
  return is_dth_power(ctx, ctx.div(g.a(), f.a()), f.d());
}

inline DClass d_class(const Binomial& f) {
  const auto& ctx = f.ctx();
  const u64 d = f.d();
  const u64 size = (ctx.q() - 1) / d;
  const FieldElement step = ctx.generator_power(static_cast<i64>(d));  // generates the d-th powers
  std::vector<FieldElement> members;
  members.reserve(size);
  FieldElement eps = ctx.one();
  for (u64 i = 0; i < size; ++i) {
    members.push_back(ctx.mul(eps, f.a()));
    eps = ctx.mul(eps, step);
  }
  std::sort(members.begin(), members.end());
  const FieldElement id = members.front();
  return {f, std::move(members), id};
}

/// Smallest member of the class of `a` without listing the class: the first
/// element, in canonical order, whose index agrees with a's modulo d.
inline FieldElement class_id_of(const FieldCtx& ctx, FieldElement a, u64 d) {
  const u64 target = ctx.index(a) % d;
  for (u64 c = 1; c < ctx.q(); ++c) {
    const FieldElement e{static_cast<std::uint32_t>(c)};
    if (ctx.index(e) % d == target) return e;
  }
  return a;
}

/// Partition of all q-1 coefficients for the shape (n, m) into d-classes,
/// ordered by class id.
inline std::vector<DClass> all_d_classes(const FieldCtx& ctx, u64 n, u64 m) {
  std::vector<DClass> out;
  std::vector<bool> seen(ctx.q(), false);
  for (u64 c = 1; c < ctx.q(); ++c) {
    if (seen[c]) continue;
    DClass cls = d_class(make_binomial(ctx, FieldElement{static_cast<std::uint32_t>(c)}, n, m));
    for (auto e : cls.members) seen[e.code()] = true;
    out.push_back(std::move(cls));
  }
  return out;
}

/// g(x) = eta^(-u m) f(eta^u x), with u (n-m) + v (q-1) = d and eta^d = b/a.
struct Lemma3Witness {
  FieldElement eta;
  i64 u;
  i64 v;
  bool identity_verified;
};

inline Lemma3Witness lemma3_transform_check(const Binomial& f, const Binomial& g) {
  detail::check_same_shape(f, g);
  const auto& ctx = f.ctx();
  const u64 d = f.d(), qm1 = ctx.q() - 1;
  const FieldElement ratio = ctx.div(g.a(), f.a());
  if (!is_dth_power(ctx, ratio, d)) throw Error(ErrorKind::NotEquivalent, "b/a is not a d-th power");

  const FieldElement xi = ctx.generator();
  const u64 e = dlog(ctx, xi, ratio);  // d | e since ratio is a d-th power
  FieldElement eta = ctx.pow(xi, static_cast<i64>(e / d));
  if (ctx.pow(eta, static_cast<i64>(d)) != ratio) {
    // Exhaustive fallback.
    for (u64 c = 1; c < ctx.q(); ++c) {
      const FieldElement cand{static_cast<std::uint32_t>(c)};
      if (ctx.pow(cand, static_cast<i64>(d)) == ratio) {
        eta = cand;
        break;
      }
    }
  }

  const auto bez = ext_gcd(static_cast<i64>(f.n() - f.m()), static_cast<i64>(qm1));
  const FieldElement eta_u = ctx.pow(eta, bez.u);
  const FieldElement scale = ctx.pow(eta, -bez.u * static_cast<i64>(f.m()));
  bool ok = true;
  for (u64 c = 0; c < ctx.q() && ok; ++c) {
    const FieldElement x{static_cast<std::uint32_t>(c)};
    ok = evaluate(g, x) == ctx.mul(scale, evaluate(f, ctx.mul(eta_u, x)));
  }
  return {eta, bez.u, bez.v, ok};
}

}  // namespace permbin

#endif  // PERMBIN_EQUIVALENCE_HPP
