#include <gtest/gtest.h>

#include "permbin/permtest.hpp"

using namespace permbin;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

const FieldCtx& f7() {
  static const FieldCtx ctx = make_field(7, 1);
  return ctx;
}

Binomial f7b(u64 a, u64 n, u64 m) { return make_binomial(f7(), f7().element(a), n, m); }

std::vector<u64> prime_powers(u64 hi) {
  std::vector<u64> out;
  for (u64 q = 2; q <= hi; ++q)
    if (prime_power_decompose(q)) out.push_back(q);
  return out;
}

std::size_t brute_root_count(const Binomial& f) {
  std::size_t c = 0;
  for (u64 x = 0; x < f.ctx().q(); ++x) c += evaluate(f, FieldElement{static_cast<std::uint32_t>(x)}).is_zero();
  return c;
}

}  // namespace

TEST(BruteForce, Examples) {
  EXPECT_TRUE(brute_force_is_perm(f7b(5, 4, 1)).is_perm);
  const auto v = brute_force_is_perm(f7b(1, 4, 1));
  EXPECT_FALSE(v.is_perm);
  ASSERT_TRUE(std::holds_alternative<CollisionPair>(v.witness));
  const auto cp = std::get<CollisionPair>(v.witness);
  EXPECT_EQ(cp.x1, f7().zero());
  EXPECT_EQ(cp.x2, f7().element(3));
  EXPECT_EQ(v.method, Method::Brute);
}

TEST(BruteForce, DEqualsOneNeverPermutes) {
  for (u64 q : {5, 7, 8, 9, 11, 13}) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        if (gcd(n - m, q - 1) != 1) continue;
        for (auto a : nonzero_elements(ctx)) {
          ASSERT_FALSE(brute_force_is_perm(make_binomial(ctx, a, n, m)).is_perm);
        }
      }
  }
}

TEST(BruteForce, CapExceeded) {
  const auto ctx = make_field_of_order(64);
  expect_error(ErrorKind::CapExceeded, [&] { brute_force_is_perm(make_binomial(ctx, ctx.one(), 5, 1), 32); });
  expect_error(ErrorKind::CapExceeded, [&] { hermite_dickson_full(make_binomial(ctx, ctx.one(), 5, 1), 32); });
}

TEST(UniqueRoot, Examples) {
  EXPECT_TRUE(unique_root_check(f7b(5, 4, 1)));
  EXPECT_FALSE(unique_root_check(f7b(6, 4, 1)));
  EXPECT_FALSE(unique_root_check(f7b(3, 3, 2)));
  EXPECT_EQ(roots_of(f7b(6, 4, 1)).size(), 4u);
}

TEST(UniqueRoot, MatchesBruteForceCount) {
  for (u64 q : prime_powers(64)) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; m += 2)
        for (auto a : nonzero_elements(ctx)) {
          const auto f = make_binomial(ctx, a, n, m);
          ASSERT_EQ(unique_root_check(f), brute_root_count(f) == 1) << q << " " << format_binomial(f);
          ASSERT_EQ(roots_of(f).size(), brute_root_count(f));
        }
  }
}

TEST(HermiteDickson, Examples) {
  const auto& ctx = f7();
  EXPECT_TRUE(hermite_dickson_full(ctx, {{1, ctx.one()}}).is_perm);
  EXPECT_TRUE(hermite_dickson_full(f7b(5, 4, 1)).is_perm);
  const auto v = hermite_dickson_full(ctx, {{2, ctx.one()}});
  EXPECT_FALSE(v.is_perm);
  ASSERT_TRUE(std::holds_alternative<FailingExponent>(v.witness));
  EXPECT_EQ(std::get<FailingExponent>(v.witness).l, 3u);
  EXPECT_EQ(std::get<FailingExponent>(v.witness).degree, 6u);
}

TEST(HermiteDickson, GeneralPolynomialsAgreeWithBruteForce) {
  for (u64 q : {4, 5, 7, 8, 9}) {
    const auto ctx = make_field_of_order(q);
    // Three-term polynomials c1 x^e1 + c2 x^e2 + x.
    for (u64 e1 = 2; e1 < q; ++e1)
      for (u64 e2 = 1; e2 < e1; ++e2)
        for (u64 c1 = 1; c1 < q; ++c1)
          for (u64 c2 = 0; c2 < q; c2 += 2) {
            const std::vector<Term> poly{{e1, ctx.element(c1)}, {e2, ctx.element(c2)}, {1, ctx.one()}};
            ASSERT_EQ(hermite_dickson_full(ctx, poly).is_perm, brute_force_poly(ctx, poly).is_perm);
          }
  }
}

TEST(Lemma2, TermExamples) {
  auto s = lemma2_terms(f7b(5, 4, 1), 3);
  EXPECT_EQ(s.j0, 1u);
  EXPECT_EQ(s.gamma_l, 1);
  ASSERT_EQ(s.terms.size(), 2u);
  EXPECT_EQ(s.terms[0].j, 1u);
  EXPECT_EQ(s.terms[1].j, 3u);

  s = lemma2_terms(f7b(3, 5, 2), 3);
  EXPECT_EQ(s.j0, 0u);
  ASSERT_EQ(s.terms.size(), 2u);
  EXPECT_EQ(s.terms[0].j, 0u);
  EXPECT_EQ(s.terms[1].j, 2u);
}

TEST(Lemma2, AtMostOneTermWhenPeriodExceedsL) {
  const auto ctx = make_field_of_order(29);
  std::size_t single = 0;
  for (u64 n = 2; n < 29; ++n)
    for (u64 m = 1; m < n; ++m) {
      const auto f = make_binomial(ctx, ctx.one(), n, m);
      if (f.d() == 1) continue;
      const auto s = lemma2_terms(f, f.d());
      if (s.period <= f.d()) continue;
      ASSERT_LE(s.terms.size(), 1u);
      if (s.terms.empty()) continue;
      ++single;
      EXPECT_EQ(s.terms[0].j, s.j0);
      EXPECT_EQ(s.terms[0].binom, binom_mod_p(static_cast<i64>(f.d()), static_cast<i64>(s.j0), 29));
    }
  EXPECT_GT(single, 0u);
}

TEST(Lemma2, Invariants) {
  for (u64 q : {13, 16, 25, 27, 31}) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        const auto f = make_binomial(ctx, ctx.generator(), n, m);
        const u64 d = f.d();
        if (d == 1) continue;
        for (u64 l = d; l + 2 <= q; l += d) {
          const auto s = lemma2_terms(f, l);
          ASSERT_LT(s.j0, s.period);
          ASSERT_EQ(((n - m) * s.j0 + l * m) % (q - 1), 0u);
          for (const auto& t : s.terms) {
            ASSERT_LE(t.j, l);
            ASSERT_EQ(t.j % s.period, s.j0);
          }
        }
      }
  }
}

TEST(Lemma2, SumExamples) {
  EXPECT_EQ(lemma2_sum(f7b(5, 4, 1), 3), f7().zero());
  EXPECT_EQ(lemma2_sum(f7b(3, 4, 1), 3), f7().element(5));
  EXPECT_EQ(lemma2_sum(f7b(2, 4, 1), 3), f7().zero());
}

TEST(Lemma2, Errors) {
  expect_error(ErrorKind::DEqualsOne, [] { lemma2_terms(f7b(1, 3, 2), 2); });
  expect_error(ErrorKind::DNotDividingL, [] { lemma2_terms(f7b(5, 4, 1), 2); });
  expect_error(ErrorKind::InvalidArgument, [] { lemma2_terms(f7b(5, 4, 1), 6); });
}

// Sum zero <=> the reduced l-th power has degree <= q-2, in both directions.
TEST(Lemma2, SumVanishesIffDegreeDrops) {
  for (u64 q : prime_powers(32)) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        if (gcd(n - m, q - 1) == 1 || gcd(n, m) != 1) continue;
        for (auto a : nonzero_elements(ctx)) {
          const auto f = make_binomial(ctx, a, n, m);
          std::vector<Term> power{{0, ctx.one()}};
          for (u64 l = 1; l + 2 <= q; ++l) {
            std::vector<Term> next;
            for (const auto& t : power)
              for (const auto& s : terms_of(f)) next.push_back({t.exponent + s.exponent, ctx.mul(t.coeff, s.coeff)});
            const auto red = reduce_poly(ctx, next);
            power.clear();
            for (const auto& [e, c] : red.terms()) power.push_back({e, c});
            if (l % f.d() != 0) {
              ASSERT_TRUE(red.coefficient(q - 1).is_zero());
              continue;
            }
            ASSERT_EQ(lemma2_sum(f, l).is_zero(), red.coefficient(q - 1).is_zero())
                << q << " " << format_binomial(f) << " l=" << l;
          }
        }
      }
  }
}

TEST(Criterion, Examples) {
  auto v = binomial_criterion(f7b(5, 4, 1));
  EXPECT_TRUE(v.is_perm);
  EXPECT_EQ(v.checked_l, (std::vector<u64>{3}));
  EXPECT_EQ(v.method, Method::Criterion);

  v = binomial_criterion(f7b(3, 4, 1));
  EXPECT_FALSE(v.is_perm);
  ASSERT_TRUE(std::holds_alternative<FailingExponent>(v.witness));
  EXPECT_EQ(std::get<FailingExponent>(v.witness).l, 3u);

  const auto f9 = make_field(3, 2);
  v = binomial_criterion(make_binomial(f9, parse_element(f9, "0,1"), 5, 1));
  EXPECT_TRUE(v.is_perm);
  EXPECT_EQ(v.checked_l, (std::vector<u64>{4}));
}

TEST(Criterion, TraceLengthIsFloorOfQMinus2OverD) {
  for (u64 q : prime_powers(64)) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        if (gcd(m, n) != 1 || gcd(n - m, q - 1) == 1) continue;
        for (auto a : nonzero_elements(ctx)) {
          const auto f = make_binomial(ctx, a, n, m);
          const auto v = binomial_criterion(f);
          if (v.is_perm) {
            ASSERT_EQ(v.checked_l.size(), (q - 2) / f.d());
          }
        }
      }
  }
}

// Criterion, full Hermite-Dickson and brute force agree on every binomial,
// including non-coprime (n, m).
TEST(Criterion, ThreeOraclesAgree) {
  for (u64 q : prime_powers(32)) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m)
        for (auto a : nonzero_elements(ctx)) {
          const auto f = make_binomial(ctx, a, n, m);
          const auto bf = brute_force_is_perm(f);
          const auto hd = hermite_dickson_full(f);
          const auto cr = binomial_criterion(f);
          ASSERT_EQ(bf.is_perm, hd.is_perm) << q << " " << format_binomial(f);
          ASSERT_EQ(bf.is_perm, cr.is_perm) << q << " " << format_binomial(f);
          ASSERT_TRUE(witness_holds(f, bf));
          ASSERT_TRUE(witness_holds(f, hd));
          ASSERT_TRUE(witness_holds(f, cr)) << q << " " << format_binomial(f);
        }
  }
}

TEST(Criterion, ScalingInvariance) {
  for (u64 q : {7, 9, 13, 16, 25}) {
    const auto ctx = make_field_of_order(q);
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m)
        for (auto a : nonzero_elements(ctx)) {
          const auto f = make_binomial(ctx, a, n, m);
          const bool base = binomial_criterion(f).is_perm;
          for (auto c : nonzero_elements(ctx)) {
            const auto s = scalar_multiple(f, c);
            const std::vector<Term> scaled{{s.n, s.high}, {s.m, s.low}};
            ASSERT_EQ(brute_force_poly(ctx, scaled).is_perm, base);
            ASSERT_EQ(binomial_criterion(s.canonical).is_perm, base);
          }
        }
  }
}

TEST(Criterion, PlanMemoMatchesDirectCalls) {
  const auto ctx = make_field_of_order(61);
  CriterionPlan plan(ctx, 11, 1);  // d = 10
  EXPECT_EQ(plan.d(), 10u);
  EXPECT_EQ(plan.exponent_count(), 5u);
  for (auto a : nonzero_elements(ctx)) {
    const auto f = make_binomial(ctx, a, 11, 1);
    EXPECT_EQ(plan.is_perm(plan.power_of(a)), binomial_criterion(f).is_perm);
  }
  expect_error(ErrorKind::DEqualsOne, [&] { CriterionPlan(ctx, 2, 1); });
}

TEST(Witness, CorruptedWitnessIsRejected) {
  const auto f = f7b(1, 4, 1);
  PermVerdict v{false, CollisionPair{f7().element(1), f7().element(2)}, Method::Brute, {}};
  EXPECT_FALSE(witness_holds(f, v));
  v.witness = ExtraRoots{{f7().zero()}};
  EXPECT_FALSE(witness_holds(f, v));
  v.witness = FailingExponent{3, 6};
  EXPECT_FALSE(witness_holds(f7b(5, 4, 1), v));
}
