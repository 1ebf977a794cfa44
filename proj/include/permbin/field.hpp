#ifndef PERMBIN_FIELD_HPP
#define PERMBIN_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "permbin/error.hpp"
#include "permbin/integer.hpp"

namespace permbin {

inline constexpr u64 kDefaultMaxQ = u64{1} << 20;

/// Element of F_q stored as its index in the canonical enumeration order.
///
/// The index of (c0, c1, ..., c_{r-1}) is c0*p^(r-1) + c1*p^(r-2) + ... + c_{r-1},
/// so ascending codes enumerate coefficient vectors lexicographically with c0
/// most significant. For prime fields the code is the residue itself.
class FieldElement {
 public:
  constexpr FieldElement() noexcept = default;
  constexpr explicit FieldElement(std::uint32_t code) noexcept : code_(code) {}

  constexpr std::uint32_t code() const noexcept { return code_; }
  constexpr bool is_zero() const noexcept { return code_ == 0; }

  friend constexpr auto operator<=>(FieldElement, FieldElement) noexcept = default;

 private:
  std::uint32_t code_ = 0;
};

namespace detail {

using Poly = std::vector<u64>;  // little-endian coefficients over Z_p

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = pow_mod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const u64 c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(out), m, p);
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1U;
  }
  return result;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or test: monic m of degree r is irreducible iff gcd(x^(p^k) - x, m) = 1
/// for every k <= r/2.
inline bool is_irreducible(const Poly& m, u64 p) {
  const std::size_t r = m.size() - 1;
  if (r == 0) return false;
  if (r == 1) return true;
  Poly h{0, 1};
  for (std::size_t k = 1; k <= r / 2; ++k) {
    h = poly_powmod(h, p, m, p);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    const Poly g = poly_gcd(m, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct FieldData {
  u64 p = 0;
  unsigned r = 0;
  u64 q = 0;
  Poly modulus;                   // c0..c_r including the leading 1; empty for r == 1
  std::vector<u64> place;         // place[i] = p^(r-1-i), weight of coefficient c_i
  std::vector<std::uint32_t> exp; // exp[k] = code of g^k, 0 <= k < 2(q-1)
  std::vector<std::uint32_t> log; // log[code] for nonzero codes
  std::vector<std::uint32_t> one_plus;  // one_plus[k] = code of 1 + g^k (extension fields)
  std::vector<std::uint32_t> neg;       // additive inverse (extension fields, p odd)
  std::vector<PrimePower> factors;      // of q - 1
  FieldElement generator;
};

}  // namespace detail

/// Immutable description of F_q. Copies share the same tables.
class FieldCtx {
 public:
  FieldCtx() = default;

  u64 p() const noexcept { return d_->p; }
  unsigned r() const noexcept { return d_->r; }
  u64 q() const noexcept { return d_->q; }
  bool is_prime_field() const noexcept { return d_->r == 1; }

  /// Modulus coefficients c0..c_r (monic, so the last entry is 1); empty for prime fields.
  const std::vector<u64>& modulus() const noexcept { return d_->modulus; }
  FieldElement generator() const noexcept { return d_->generator; }
  const std::vector<PrimePower>& factors_q_minus_1() const noexcept { return d_->factors; }

  FieldElement zero() const noexcept { return FieldElement{0}; }
  FieldElement one() const noexcept { return from_int(1); }

  /// Image of an integer in the prime subfield.
  FieldElement from_int(i64 k) const noexcept {
    const auto res = static_cast<u64>(mod_floor(k, static_cast<i64>(d_->p)));
    return FieldElement{static_cast<std::uint32_t>(res * d_->place[0])};
  }

  FieldElement element(u64 code) const {
    if (code >= d_->q) throw Error(ErrorKind::InvalidArgument, "element code out of range");
    return FieldElement{static_cast<std::uint32_t>(code)};
  }

  FieldElement from_coeffs(const std::vector<i64>& coeffs) const {
    if (coeffs.size() != d_->r)
      throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(d_->r) + " coefficients");
    u64 code = 0;
    for (unsigned i = 0; i < d_->r; ++i)
      code += static_cast<u64>(mod_floor(coeffs[i], static_cast<i64>(d_->p))) * d_->place[i];
    return FieldElement{static_cast<std::uint32_t>(code)};
  }

  std::vector<u64> coeffs(FieldElement a) const {
    std::vector<u64> out(d_->r);
    for (unsigned i = 0; i < d_->r; ++i) out[i] = a.code() / d_->place[i] % d_->p;
    return out;
  }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    if (d_->r == 1) return FieldElement{static_cast<std::uint32_t>((u64{a.code()} + b.code()) % d_->p)};
    if (d_->p == 2) return FieldElement{a.code() ^ b.code()};
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Zech: a + b = a * (1 + b/a).
    const u64 qm1 = d_->q - 1;
    const u64 la = d_->log[a.code()], lb = d_->log[b.code()];
    const std::uint32_t s = d_->one_plus[(lb + qm1 - la) % qm1];
    if (s == 0) return FieldElement{0};
    return FieldElement{d_->exp[la + d_->log[s]]};
  }

  FieldElement neg(FieldElement a) const noexcept {
    if (d_->r == 1) return FieldElement{static_cast<std::uint32_t>((d_->p - a.code()) % d_->p)};
    if (d_->p == 2) return a;
    return FieldElement{d_->neg[a.code()]};
  }

  FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a.is_zero() || b.is_zero()) return FieldElement{0};
    if (d_->r == 1) return FieldElement{static_cast<std::uint32_t>(u64{a.code()} * b.code() % d_->p)};
    return FieldElement{d_->exp[d_->log[a.code()] + d_->log[b.code()]]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const u64 qm1 = d_->q - 1;
    return FieldElement{d_->exp[(qm1 - d_->log[a.code()]) % qm1]};
  }

  FieldElement div(FieldElement a, FieldElement b) const {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return mul(a, inv(b));
  }

  /// a^e for any integer e; negative exponents go through the inverse.
  FieldElement pow(FieldElement a, i64 e) const {
    if (a.is_zero()) {
      if (e < 0) throw Error(ErrorKind::ZeroToNegativePower, "0^" + std::to_string(e));
      return e == 0 ? one() : zero();
    }
    const auto qm1 = static_cast<i64>(d_->q - 1);
    const auto k = static_cast<u64>(mod_floor(e, qm1));
    const auto idx = static_cast<u128>(d_->log[a.code()]) * k % static_cast<u64>(qm1);
    return FieldElement{d_->exp[static_cast<std::size_t>(idx)]};
  }

  /// Discrete log of a nonzero element to the cached generator.
  u64 index(FieldElement a) const {
    if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "index of zero");
    return d_->log[a.code()];
  }

  /// g^k for the cached generator g.
  FieldElement generator_power(i64 k) const noexcept {
    return FieldElement{d_->exp[static_cast<std::size_t>(mod_floor(k, static_cast<i64>(d_->q - 1)))]};
  }

  bool same_field(const FieldCtx& other) const noexcept {
    return d_ == other.d_ || (d_->p == other.d_->p && d_->r == other.d_->r && d_->modulus == other.d_->modulus);
  }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept { return a.same_field(b); }

  explicit operator bool() const noexcept { return d_ != nullptr; }

 private:
  friend FieldCtx make_field(u64, unsigned, std::optional<std::vector<u64>>, u64);
  explicit FieldCtx(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  std::shared_ptr<const detail::FieldData> d_;
};

namespace detail {

/// Lexicographically smallest monic irreducible of degree r, ordered by (c0, ..., c_{r-1}).
inline Poly default_modulus(u64 p, unsigned r) {
  u64 count = 1;
  for (unsigned i = 0; i < r; ++i) count *= p;
  for (u64 idx = 0; idx < count; ++idx) {
    Poly m(r + 1, 0);
    u64 v = idx;
    for (unsigned i = 0; i < r; ++i) {  // c0 is the most significant digit of idx
      m[r - 1 - i] = v % p;
      v /= p;
    }
    m[r] = 1;
    if (m[0] != 0 && is_irreducible(m, p)) return m;
  }
  throw Error(ErrorKind::NotIrreducible, "no irreducible polynomial found");
}

inline void build_tables(FieldData& fd) {
  const u64 p = fd.p, q = fd.q;
  const unsigned r = fd.r;
  auto decode = [&](u64 code) {
    Poly c(r);
    for (unsigned i = 0; i < r; ++i) c[i] = code / fd.place[i] % p;
    return c;
  };
  auto encode = [&](const Poly& c) {
    u64 code = 0;
    for (unsigned i = 0; i < r && i < c.size(); ++i) code += c[i] * fd.place[i];
    return code;
  };
  auto raw_mul = [&](const Poly& a, const Poly& b) {
    if (r == 1) return Poly{a[0] * b[0] % p};
    Poly out = poly_mulmod(a, b, fd.modulus, p);
    out.resize(r, 0);
    return out;
  };
  auto raw_pow = [&](Poly base, u64 e) {
    Poly result(r, 0);
    result[0] = 1 % p;
    while (e > 0) {
      if (e & 1U) result = raw_mul(result, base);
      base = raw_mul(base, base);
      e >>= 1U;
    }
    return result;
  };

  fd.factors = factorize(q - 1);
  const u64 one_code = encode(Poly{1});
  for (u64 code = 1; code < q; ++code) {
    const Poly cand = decode(code);
    bool ok = true;
    for (const auto& f : fd.factors) {
      if (encode(raw_pow(cand, (q - 1) / f.prime)) == one_code) {
        ok = false;
        break;
      }
    }
    if (ok) {
      fd.generator = FieldElement{static_cast<std::uint32_t>(code)};
      break;
    }
  }

  fd.exp.assign(2 * (q - 1) + 1, 0);
  fd.log.assign(q, 0);
  const Poly g = decode(fd.generator.code());
  Poly x(r, 0);
  x[0] = 1 % p;
  for (u64 k = 0; k < q - 1; ++k) {
    const u64 c = encode(x);
    fd.exp[k] = static_cast<std::uint32_t>(c);
    fd.exp[k + q - 1] = static_cast<std::uint32_t>(c);
    fd.log[c] = static_cast<std::uint32_t>(k);
    x = raw_mul(x, g);
  }

  if (r > 1 && p != 2) {
    fd.neg.assign(q, 0);
    for (u64 code = 0; code < q; ++code) {
      Poly c = decode(code);
      for (auto& v : c) v = (p - v) % p;
      fd.neg[code] = static_cast<std::uint32_t>(encode(c));
    }
    fd.one_plus.assign(q - 1, 0);
    for (u64 k = 0; k < q - 1; ++k) {
      Poly c = decode(fd.exp[k]);
      c[0] = (c[0] + 1) % p;
      fd.one_plus[k] = static_cast<std::uint32_t>(encode(c));
    }
  }
}

}  // namespace detail

/// Builds and validates F_{p^r}. Without a modulus, extension fields use the
/// lexicographically smallest monic irreducible of degree r.
inline FieldCtx make_field(u64 p, unsigned r, std::optional<std::vector<u64>> modulus = std::nullopt,
                           u64 max_q = kDefaultMaxQ) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const auto q = checked_pow(p, r, max_q);
  if (!q) throw Error(ErrorKind::CapExceeded, "p^r exceeds cap " + std::to_string(max_q));
  if (*q > (u64{1} << 31)) throw Error(ErrorKind::CapExceeded, "q too large for element codes");

  auto fd = std::make_shared<detail::FieldData>();
  fd->p = p;
  fd->r = r;
  fd->q = *q;
  fd->place.assign(r, 1);
  for (unsigned i = r - 1; i-- > 0;) fd->place[i] = fd->place[i + 1] * p;

  if (r > 1) {
    if (modulus) {
      detail::Poly m = *modulus;
      if (m.size() != r + 1 || m.back() != 1)
        throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree " + std::to_string(r));
      for (auto c : m)
        if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient not reduced mod p");
      if (!detail::is_irreducible(m, p)) throw Error(ErrorKind::NotIrreducible, "modulus is reducible");
      fd->modulus = std::move(m);
    } else {
      fd->modulus = detail::default_modulus(p, r);
    }
  } else if (modulus && !(modulus->size() == 2 && modulus->back() == 1)) {
    throw Error(ErrorKind::InvalidArgument, "prime field modulus must be linear");
  }

  detail::build_tables(*fd);
  return FieldCtx(std::move(fd));
}

/// Field of order q (a prime power).
inline FieldCtx make_field_of_order(u64 q, u64 max_q = kDefaultMaxQ) {
  if (q > max_q) throw Error(ErrorKind::CapExceeded, "q exceeds cap " + std::to_string(max_q));
  const auto pk = prime_power_decompose(q);
  if (!pk) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(pk->first, pk->second, std::nullopt, max_q);
}

inline std::vector<FieldElement> nonzero_elements(const FieldCtx& ctx) {
  std::vector<FieldElement> out;
  out.reserve(ctx.q() - 1);
  for (u64 c = 1; c < ctx.q(); ++c) out.emplace_back(static_cast<std::uint32_t>(c));
  return out;
}

// ---- Multiplicative structure ----------------------------------------------

/// Least e >= 1 with a^e = 1, by stripping prime factors of q - 1.
inline u64 element_order(const FieldCtx& ctx, FieldElement a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "order of zero");
  u64 order = ctx.q() - 1;
  for (const auto& f : ctx.factors_q_minus_1()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (ctx.pow(a, static_cast<i64>(order / f.prime)) != ctx.one()) break;
      order /= f.prime;
    }
  }
  return order;
}

/// First element in canonical order whose multiplicative order is q - 1.
inline FieldElement find_generator(const FieldCtx& ctx) {
  for (u64 c = 1; c < ctx.q(); ++c) {
    const FieldElement e{static_cast<std::uint32_t>(c)};
    if (element_order(ctx, e) == ctx.q() - 1) return e;
  }
  throw Error(ErrorKind::PreconditionFailed, "no generator");  // unreachable for a field
}

inline constexpr u64 kBruteForceDlogLimit = u64{1} << 16;

/// Least e >= 0 with base^e = target.
inline u64 dlog(const FieldCtx& ctx, FieldElement base, FieldElement target) {
  if (base.is_zero() || target.is_zero()) throw Error(ErrorKind::ZeroElement, "dlog of zero");
  const u64 n = element_order(ctx, base);
  if (ctx.q() <= kBruteForceDlogLimit) {
    FieldElement x = ctx.one();
    for (u64 e = 0; e < n; ++e) {
      if (x == target) return e;
      x = ctx.mul(x, base);
    }
    throw Error(ErrorKind::NotInSubgroup, "target not in subgroup generated by base");
  }
  // Baby-step giant-step.
  u64 m = 1;
  while (m * m < n) ++m;
  std::unordered_map<std::uint32_t, u64> baby;
  baby.reserve(m);
  FieldElement x = ctx.one();
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(x.code(), j);
    x = ctx.mul(x, base);
  }
  const FieldElement giant = ctx.pow(base, -static_cast<i64>(m));
  FieldElement y = target;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(y.code()); it != baby.end()) {
      const u64 e = i * m + it->second;
      if (e < n) return e;
    }
    y = ctx.mul(y, giant);
  }
  throw Error(ErrorKind::NotInSubgroup, "target not in subgroup generated by base");
}

/// a in (F_q^*)^d, tested as a^((q-1)/d) == 1. Requires d | q - 1.
inline bool is_dth_power(const FieldCtx& ctx, FieldElement a, u64 d) {
  if (d == 0 || (ctx.q() - 1) % d != 0)
    throw Error(ErrorKind::DNotDividing, std::to_string(d) + " does not divide q-1");
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "d-th power test of zero");
  return ctx.pow(a, static_cast<i64>((ctx.q() - 1) / d)) == ctx.one();
}

/// a^(p^e).
inline FieldElement frobenius(const FieldCtx& ctx, FieldElement a, u64 e) {
  if (a.is_zero()) return a;
  const u64 k = pow_mod(ctx.p(), e, ctx.q() - 1);
  return ctx.pow(a, static_cast<i64>(k));
}

inline bool subfield_contains(const FieldCtx& ctx, FieldElement a, unsigned s) {
  if (s == 0 || ctx.r() % s != 0)
    throw Error(ErrorKind::SNotDividingR, std::to_string(s) + " does not divide " + std::to_string(ctx.r()));
  return frobenius(ctx, a, s) == a;
}

/// Nonzero elements of the subfield F_{p^s}, in canonical order.
inline std::vector<FieldElement> subfield_nonzero(const FieldCtx& ctx, unsigned s) {
  if (s == 0 || ctx.r() % s != 0)
    throw Error(ErrorKind::SNotDividingR, std::to_string(s) + " does not divide " + std::to_string(ctx.r()));
  std::vector<FieldElement> out;
  for (u64 c = 1; c < ctx.q(); ++c) {
    const FieldElement e{static_cast<std::uint32_t>(c)};
    if (frobenius(ctx, e, s) == e) out.push_back(e);
  }
  return out;
}

// ---- Text format ------------------------------------------------------------

namespace detail {

inline std::vector<i64> parse_int_list(std::string_view text) {
  std::vector<i64> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw Error(ErrorKind::ParseError, "empty field in '" + std::string(text) + "'");
    std::size_t used = 0;
    i64 v = 0;
    try {
      v = std::stoll(std::string(tok), &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(tok) + "'");
    }
    if (used != tok.size()) throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(tok) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Prime fields: decimal residue. Extension fields: "c0,c1,...,c_{r-1}".
inline std::string format_element(const FieldCtx& ctx, FieldElement a) {
  if (ctx.is_prime_field()) return std::to_string(a.code());
  std::string out;
  for (auto c : ctx.coeffs(a)) {
    if (!out.empty()) out += ',';
    out += std::to_string(c);
  }
  return out;
}

inline FieldElement parse_element(const FieldCtx& ctx, std::string_view text) {
  const auto vals = detail::parse_int_list(text);
  if (vals.size() != ctx.r())
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(ctx.r()) + " coefficients in '" + std::string(text) + "'");
  return ctx.from_coeffs(vals);
}

inline std::vector<u64> parse_modulus(std::string_view text) {
  std::vector<u64> out;
  for (auto v : detail::parse_int_list(text)) {
    if (v < 0) throw Error(ErrorKind::ParseError, "negative modulus coefficient");
    out.push_back(static_cast<u64>(v));
  }
  return out;
}

inline std::string format_modulus(const FieldCtx& ctx) {
  std::string out;
  for (auto c : ctx.modulus()) {
    if (!out.empty()) out += ',';
    out += std::to_string(c);
  }
  return out;
}

}  // namespace permbin

#endif  // PERMBIN_FIELD_HPP
