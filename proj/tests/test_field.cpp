#include <gtest/gtest.h>

#include "permbin/field.hpp"

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

FieldElement el(const FieldCtx& ctx, const char* text) { return parse_element(ctx, text); }

}  // namespace

TEST(MakeField, PrimeField) {
  const auto f7 = make_field(7, 1);
  EXPECT_EQ(f7.q(), 7u);
  EXPECT_TRUE(f7.is_prime_field());
  EXPECT_TRUE(f7.modulus().empty());
}

TEST(MakeField, DefaultModuli) {
  EXPECT_EQ(format_modulus(make_field(3, 2)), "1,0,1");  // t^2 + 1
  EXPECT_EQ(format_modulus(make_field(5, 2)), "1,1,1");  // t^2 + t + 1
  EXPECT_EQ(format_modulus(make_field(2, 3)), "1,0,1,1");  // t^3 + t^2 + 1
}

TEST(MakeField, Errors) {
  expect_error(ErrorKind::NotPrime, [] { make_field(6, 1); });
  expect_error(ErrorKind::NotIrreducible, [] { make_field(5, 2, std::vector<u64>{1, 0, 1}); });
  expect_error(ErrorKind::InvalidArgument, [] { make_field(5, 2, std::vector<u64>{1, 0, 2}); });
  expect_error(ErrorKind::InvalidArgument, [] { make_field(5, 0); });
  expect_error(ErrorKind::CapExceeded, [] { make_field(7, 3, std::nullopt, 100); });
  expect_error(ErrorKind::NotPrime, [] { make_field_of_order(12); });
  EXPECT_NO_THROW(make_field(3, 2, std::vector<u64>{1, 0, 1}));
}

TEST(Arithmetic, SpecExamples) {
  const auto f7 = make_field(7, 1);
  EXPECT_EQ(f7.mul(f7.element(3), f7.element(5)), f7.one());
  EXPECT_EQ(f7.pow(f7.element(3), 6), f7.one());
  EXPECT_EQ(f7.pow(f7.element(2), 3), f7.one());

  const auto f9 = make_field(3, 2);
  const auto t = el(f9, "0,1");
  EXPECT_EQ(f9.mul(t, t), f9.from_int(2));
  EXPECT_EQ(f9.pow(t, 4), f9.one());
  EXPECT_EQ(f9.add(t, f9.zero()), t);
}

TEST(Arithmetic, FieldAxiomsExhaustive) {
  for (u64 q : {2, 3, 4, 5, 8, 9, 16, 25, 27}) {
    const auto ctx = make_field_of_order(q);
    for (u64 x = 0; x < q; ++x)
      for (u64 y = 0; y < q; ++y) {
        const auto a = ctx.element(x), b = ctx.element(y);
        ASSERT_EQ(ctx.add(a, b), ctx.add(b, a));
        ASSERT_EQ(ctx.mul(a, b), ctx.mul(b, a));
        ASSERT_EQ(ctx.sub(ctx.add(a, b), b), a);
        if (!b.is_zero()) {
          ASSERT_EQ(ctx.mul(ctx.div(a, b), b), a);
        }
        for (u64 z = 0; z < q; z += 3) {
          const auto c = ctx.element(z);
          ASSERT_EQ(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
          ASSERT_EQ(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        }
      }
  }
}

TEST(Arithmetic, AdditionIsCoefficientwise) {
  const auto ctx = make_field(5, 3);
  for (u64 x = 0; x < ctx.q(); x += 7)
    for (u64 y = 0; y < ctx.q(); y += 11) {
      const auto cx = ctx.coeffs(ctx.element(x)), cy = ctx.coeffs(ctx.element(y));
      std::vector<i64> sum;
      for (unsigned i = 0; i < ctx.r(); ++i) sum.push_back(static_cast<i64>((cx[i] + cy[i]) % 5));
      ASSERT_EQ(ctx.add(ctx.element(x), ctx.element(y)), ctx.from_coeffs(sum));
    }
}

TEST(Arithmetic, ZeroHandling) {
  const auto f7 = make_field(7, 1);
  expect_error(ErrorKind::DivisionByZero, [&] { f7.inv(f7.zero()); });
  expect_error(ErrorKind::ZeroToNegativePower, [&] { f7.pow(f7.zero(), -1); });
  EXPECT_EQ(f7.pow(f7.zero(), 0), f7.one());
  EXPECT_EQ(f7.pow(f7.element(3), -1), f7.element(5));
}

TEST(Order, Examples) {
  const auto f7 = make_field(7, 1);
  EXPECT_EQ(element_order(f7, f7.one()), 1u);
  EXPECT_EQ(element_order(f7, f7.element(2)), 3u);
  const auto f9 = make_field(3, 2);
  EXPECT_EQ(element_order(f9, el(f9, "0,1")), 4u);
  expect_error(ErrorKind::ZeroElement, [&] { element_order(f7, f7.zero()); });
}

TEST(Generator, Examples) {
  EXPECT_EQ(find_generator(make_field(7, 1)).code(), 3u);
  EXPECT_EQ(find_generator(make_field(5, 1)).code(), 2u);
  EXPECT_EQ(find_generator(make_field(2, 1)).code(), 1u);
  for (u64 q : {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128}) {
    const auto ctx = make_field_of_order(q);
    EXPECT_EQ(element_order(ctx, ctx.generator()), q - 1) << q;
  }
}

TEST(Dlog, Examples) {
  const auto f7 = make_field(7, 1);
  EXPECT_EQ(dlog(f7, f7.element(3), f7.one()), 0u);
  EXPECT_EQ(dlog(f7, f7.element(3), f7.element(6)), 3u);
  expect_error(ErrorKind::NotInSubgroup, [&] { dlog(f7, f7.element(2), f7.element(5)); });
}

TEST(Dlog, BabyStepGiantStepOnLargeField) {
  const auto ctx = make_field(3, 11);  // q = 177147 > brute-force limit
  const auto g = ctx.generator();
  for (i64 k : {0, 1, 2, 1000, 177145}) EXPECT_EQ(dlog(ctx, g, ctx.pow(g, k)), static_cast<u64>(k));
  const auto h = ctx.pow(g, 2);
  EXPECT_EQ(dlog(ctx, h, ctx.pow(g, 10)), 5u);
  expect_error(ErrorKind::NotInSubgroup, [&] { dlog(ctx, h, g); });
}

TEST(DthPower, Examples) {
  const auto f7 = make_field(7, 1);
  EXPECT_TRUE(is_dth_power(f7, f7.one(), 3));
  EXPECT_FALSE(is_dth_power(f7, f7.element(2), 3));
  EXPECT_TRUE(is_dth_power(f7, f7.element(6), 3));
  expect_error(ErrorKind::DNotDividing, [&] { is_dth_power(f7, f7.one(), 4); });
  expect_error(ErrorKind::ZeroElement, [&] { is_dth_power(f7, f7.zero(), 3); });
}

TEST(DthPower, MatchesImageOfPowerMap) {
  for (u64 q : {13, 16, 25, 27}) {
    const auto ctx = make_field_of_order(q);
    for (u64 d : divisors(q - 1)) {
      std::vector<bool> image(q, false);
      for (auto x : nonzero_elements(ctx)) image[ctx.pow(x, static_cast<i64>(d)).code()] = true;
      for (auto a : nonzero_elements(ctx)) EXPECT_EQ(is_dth_power(ctx, a, d), image[a.code()]);
    }
  }
}

TEST(Frobenius, Examples) {
  const auto f9 = make_field(3, 2);
  const auto t = el(f9, "0,1");
  EXPECT_EQ(frobenius(f9, t, 1), f9.neg(t));
  EXPECT_EQ(frobenius(f9, t, 0), t);
  const auto f25 = make_field(5, 2);
  EXPECT_EQ(frobenius(f25, f25.from_int(3), 1), f25.from_int(3));
}

TEST(Frobenius, IsAFieldAutomorphism) {
  for (u64 q : {8, 9, 27, 64, 125}) {
    const auto ctx = make_field_of_order(q);
    for (u64 e = 0; e <= ctx.r(); ++e)
      for (u64 x = 0; x < q; ++x)
        for (u64 y = 0; y < q; y += 5) {
          const auto a = ctx.element(x), b = ctx.element(y);
          ASSERT_EQ(frobenius(ctx, ctx.add(a, b), e), ctx.add(frobenius(ctx, a, e), frobenius(ctx, b, e)));
          ASSERT_EQ(frobenius(ctx, ctx.mul(a, b), e), ctx.mul(frobenius(ctx, a, e), frobenius(ctx, b, e)));
        }
  }
}

TEST(Subfield, Examples) {
  const auto f9 = make_field(3, 2);
  EXPECT_FALSE(subfield_contains(f9, el(f9, "0,1"), 1));
  EXPECT_TRUE(subfield_contains(f9, f9.from_int(2), 1));
  const auto f25 = make_field(5, 2);
  EXPECT_TRUE(subfield_contains(f25, f25.from_int(3), 1));
  expect_error(ErrorKind::SNotDividingR, [&] { subfield_contains(make_field(2, 6), f9.zero(), 4); });
  const auto f64 = make_field(2, 6);
  for (unsigned s : {1U, 2U, 3U, 6U}) EXPECT_EQ(subfield_nonzero(f64, s).size(), (u64{1} << s) - 1);
}

TEST(TextFormat, RoundTrip) {
  const auto f9 = make_field(3, 2);
  EXPECT_EQ(format_element(f9, f9.one()), "1,0");
  EXPECT_EQ(format_element(make_field(7, 1), make_field(7, 1).element(5)), "5");
  for (auto a : nonzero_elements(f9)) EXPECT_EQ(parse_element(f9, format_element(f9, a)), a);
  // Negative and out-of-range coefficients reduce mod p.
  EXPECT_EQ(parse_element(f9, "-1,4"), parse_element(f9, "2,1"));
  expect_error(ErrorKind::ParseError, [&] { parse_element(f9, "1"); });
  expect_error(ErrorKind::ParseError, [&] { parse_element(f9, "1,x"); });
}

TEST(CanonicalOrder, FirstCoefficientMostSignificant) {
  const auto f9 = make_field(3, 2);
  std::vector<std::string> texts;
  for (u64 c = 0; c < 9; ++c) texts.push_back(format_element(f9, f9.element(c)));
  EXPECT_EQ(texts, (std::vector<std::string>{"0,0", "0,1", "0,2", "1,0", "1,1", "1,2", "2,0", "2,1", "2,2"}));
}
