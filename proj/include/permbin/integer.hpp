#ifndef PERMBIN_INTEGER_HPP
#define PERMBIN_INTEGER_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "permbin/error.hpp"

namespace permbin {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

/// Bezout data: u*x + v*y == g, g >= 0.
struct IntTriple {
  i64 g = 0;
  i64 u = 0;
  i64 v = 0;
};

inline IntTriple ext_gcd(i64 x, i64 y) {
  if (x == 0 && y == 0) throw Error(ErrorKind::BothZero, "ext_gcd(0, 0)");
  i64 old_r = x, r = y;
  i64 old_u = 1, u = 0;
  i64 old_v = 0, v = 1;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_u = std::exchange(u, old_u - q * u);
    old_v = std::exchange(v, old_v - q * v);
  }
  if (old_r < 0) return {-old_r, -old_u, -old_v};
  return {old_r, old_u, old_v};
}

inline u64 gcd(u64 x, u64 y) noexcept { return std::gcd(x, y); }

inline u64 lcm(u64 x, u64 y) noexcept {
  if (x == 0 || y == 0) return 0;
  return x / std::gcd(x, y) * y;
}

/// Nonnegative representative of x mod m (m > 0).
inline i64 mod_floor(i64 x, i64 m) noexcept {
  const i64 r = x % m;
  return r < 0 ? r + m : r;
}

/// Inverse of x modulo m, or nullopt when gcd(x, m) != 1.
inline std::optional<i64> mod_inverse(i64 x, i64 m) {
  if (m == 1) return 0;
  const auto t = ext_gcd(mod_floor(x, m), m);
  if (t.g != 1) return std::nullopt;
  return mod_floor(t.u, m);
}

inline u64 pow_mod(u64 base, u64 e, u64 m) noexcept {
  if (m == 1) return 0;
  u128 result = 1, b = base % m;
  while (e > 0) {
    if (e & 1U) result = result * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return static_cast<u64>(result);
}

inline bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

struct PrimePower {
  u64 prime;
  unsigned exponent;
  u64 value;  // prime^exponent

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes ascending.
inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  for (u64 k = 2; k * k <= n; ++k) {
    if (n % k != 0) continue;
    PrimePower pp{k, 0, 1};
    while (n % k == 0) {
      n /= k;
      ++pp.exponent;
      pp.value *= k;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    out.push_back(k);
    if (k != n / k) out.push_back(n / k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// base^e, or nullopt if the result exceeds limit.
inline std::optional<u64> checked_pow(u64 base, unsigned e, u64 limit) noexcept {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > limit / base) return std::nullopt;
    r *= base;
  }
  if (r > limit) return std::nullopt;
  return r;
}

/// If n == p^k for a prime p and k >= 1, returns (p, k).
inline std::optional<std::pair<u64, unsigned>> prime_power_decompose(u64 n) {
  const auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return std::pair{f[0].prime, f[0].exponent};
}

/// C(l, j) mod p by Lucas: product of digit-wise binomials in base p.
inline u64 binom_mod_p(i64 l, i64 j, u64 p) {
  if (j < 0 || l < 0 || j > l) return 0;
  auto small = [p](u64 n, u64 k) -> u64 {
    // n, k < p: C(n, k) = n! / (k! (n-k)!) mod p via multiplicative formula.
    if (k > n) return 0;
    u64 num = 1, den = 1;
    for (u64 i = 0; i < k; ++i) {
      num = num * ((n - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    return num * pow_mod(den, p - 2, p) % p;
  };
  u64 result = 1 % p;
  u64 ll = static_cast<u64>(l), jj = static_cast<u64>(j);
  while (ll > 0 || jj > 0) {
    const u64 ld = ll % p, jd = jj % p;
    if (jd > ld) return 0;
    result = result * small(ld, jd) % p;
    ll /= p;
    jj /= p;
  }
  return result;
}

/// True iff m^k == 1 modulo `modulus_pp`, i.e. modulus_pp divides m^k - 1.
inline bool divides_pow_minus_one(u64 modulus_pp, u64 m, u64 k) noexcept {
  return modulus_pp == 1 || pow_mod(m, k, modulus_pp) == 1 % modulus_pp;
}

}  // namespace permbin

#endif  // PERMBIN_INTEGER_HPP
