#include <gtest/gtest.h>

#include <set>

#include "permbin/bounds.hpp"

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

std::set<std::tuple<u64, u64, u64>> triples(const std::vector<SurveyRow>& rows) {
  std::set<std::tuple<u64, u64, u64>> out;
  for (const auto& r : rows) out.insert({r.a.code(), r.n, r.m});
  return out;
}

}  // namespace

TEST(Thm7, Examples) {
  EXPECT_TRUE(thm7_check(7, 3));
  EXPECT_TRUE(thm7_check(31, 6));
  EXPECT_FALSE(thm7_check(11, 2));
  const auto f11 = make_field(11, 1);
  EnumerateFilters flt;
  flt.d = 2;
  EXPECT_TRUE(enumerate_perm_binomials(f11, flt).empty());
}

TEST(Cor4, Examples) {
  auto rep = cor4_admissible(7, 3, 4, 1);
  EXPECT_EQ(rep.mark, Mark::Exceptional);
  ASSERT_TRUE(rep.exceptional);
  EXPECT_EQ(rep.exceptional->d_mod_3, 0u);
  EXPECT_TRUE(rep.exceptional->p_is_d2_minus_d_plus_1);
  EXPECT_TRUE(rep.exceptional->n_zero_mod_period);
  EXPECT_FALSE(rep.holds);

  rep = cor4_admissible(13, 4, 5, 1);
  EXPECT_EQ(rep.mark, Mark::Inadmissible);

  rep = cor4_admissible(7, 6, 7, 1);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.mark, Mark::Holds);

  expect_error(ErrorKind::ParameterMismatch, [] { cor4_admissible(7, 2, 4, 1); });
  expect_error(ErrorKind::NotPrime, [] { cor4_admissible(9, 2, 3, 1); });
}

TEST(Cor4, ExceptionRecomputableFromParameters) {
  for (u64 p : primes_up_to(61)) {
    for (u64 n = 2; n < p; ++n)
      for (u64 m = 1; m < n; ++m) {
        const u64 d = gcd(n - m, p - 1);
        const auto rep = cor4_admissible(p, d, n, m);
        if (rep.exceptional) { ASSERT_EQ(*rep.exceptional, cor4_exception_data(rep.p, rep.d, rep.n, rep.m)); }
        ASSERT_EQ(rep.p, p);
        ASSERT_EQ(rep.n, n);
      }
  }
}

TEST(Cor5, Examples) {
  const auto f7 = make_field(7, 1);
  auto rep = cor5_check(make_binomial(f7, f7.element(5), 4, 1));
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(rep.mark, Mark::Violated);
  expect_error(ErrorKind::PreconditionNotPermutation, [&] { cor5_check(make_binomial(f7, f7.element(3), 4, 1)); });
  expect_error(ErrorKind::InvalidArgument, [&] { cor5_check(make_binomial(f7, f7.element(4), 5, 2)); });

  const auto f31 = make_field(31, 1);
  EnumerateFilters flt;
  flt.m = 1;
  bool found = false;
  for (const auto& row : enumerate_perm_binomials(f31, flt)) {
    if ((row.n - 1) * (row.n - 3) < 30) continue;
    EXPECT_TRUE(cor5_check(make_binomial(f31, row.a, row.n, 1)).holds);
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Cor6, Membership) {
  const auto f7 = make_field(7, 1);
  EXPECT_TRUE(cor6_membership(canonicalize(f7, f7.one(), 4, f7.element(3), 1)));
  EXPECT_TRUE(cor6_membership(canonicalize(f7, f7.one(), 5, f7.element(5), 2)));
  EXPECT_FALSE(cor6_membership(make_binomial(f7, f7.element(3), 4, 1)));
  std::size_t members = 0;
  for (u64 n = 2; n < 7; ++n)
    for (u64 m = 1; m < n; ++m)
      for (u64 a = 1; a < 7; ++a) members += cor6_membership(make_binomial(f7, f7.element(a), n, m));
  EXPECT_EQ(members, 4u);
}

TEST(Cor8, Examples) {
  EXPECT_EQ(cor8_condition(5, 3, 2), Cor8Case::I);
  EXPECT_EQ(cor8_condition(13, 1, 3), Cor8Case::III);
  EXPECT_EQ(cor8_condition(3, 3, 2), std::nullopt);
  EXPECT_EQ(cor8_condition(7, 1, 6), std::nullopt);
  EXPECT_EQ(cor8_condition(37, 1, 6), Cor8Case::V);
  EXPECT_EQ(cor8_condition(29, 1, 7), std::nullopt);
  EXPECT_EQ(cor8_condition(17, 1, 8), std::nullopt);
  EXPECT_EQ(cor8_condition(41, 1, 8), Cor8Case::VII);
  EXPECT_EQ(cor8_condition(7, 2, 3), std::nullopt);
}

TEST(Enumerate, Examples) {
  const auto f7 = make_field(7, 1);
  EXPECT_EQ(triples(enumerate_perm_binomials(f7)),
            (std::set<std::tuple<u64, u64, u64>>{{5, 4, 1}, {2, 4, 1}, {4, 5, 2}, {3, 5, 2}}));
  EXPECT_TRUE(enumerate_perm_binomials(make_field(2, 1)).empty());
  EXPECT_TRUE(enumerate_perm_binomials(make_field(3, 1)).empty());

  const auto f9 = make_field(3, 2);
  EnumerateFilters flt;
  flt.n = 5;
  flt.m = 1;
  std::set<std::string> coeffs;
  for (const auto& row : enumerate_perm_binomials(f9, flt)) coeffs.insert(format_element(f9, row.a));
  EXPECT_EQ(coeffs, (std::set<std::string>{"0,1", "0,2"}));

  EnumerateOptions opt;
  opt.max_q = 5;
  expect_error(ErrorKind::CapExceeded, [&] { enumerate_perm_binomials(f7, {}, opt); });
}

TEST(Enumerate, SortedAndAnnotated) {
  const auto ctx = make_field(31, 1);
  const auto rows = enumerate_perm_binomials(ctx);
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); }));
  for (const auto& r : rows) {
    EXPECT_TRUE(r.is_perm);
    EXPECT_EQ(r.thm7, Mark::Holds);
    EXPECT_NE(r.cor4, Mark::Inadmissible);
    EXPECT_EQ(gcd(r.n, r.m), 1u);
    EXPECT_EQ(r.class_id, class_id_of(ctx, r.a, r.d));
  }
}

// Counts frozen from an independent exhaustive run (Python, brute force).
TEST(Enumerate, PrimeFieldCensus) {
  const std::map<u64, std::size_t> expected{
      {2, 0},    {3, 0},    {5, 0},    {7, 4},    {11, 16},  {13, 8},   {17, 24},  {19, 66},  {23, 100},
      {29, 116}, {31, 224}, {37, 180}, {41, 144}, {43, 348}, {47, 484}, {53, 376}, {59, 784}, {61, 720},
      {67, 1000}, {71, 816}, {73, 912}, {79, 1344}, {83, 1600}, {89, 1056}, {97, 2016}, {101, 1692}};
  for (auto [p, count] : expected) EXPECT_EQ(enumerate_perm_binomials(make_field(p, 1)).size(), count) << p;
}

TEST(Enumerate, MatchesBruteForceOnSmallFields) {
  for (u64 q : prime_powers_up_to(32)) {
    const auto ctx = make_field_of_order(q);
    std::set<std::tuple<u64, u64, u64>> brute;
    for (u64 n = 2; n < q; ++n)
      for (u64 m = 1; m < n; ++m) {
        if (gcd(m, n) != 1) continue;
        for (auto a : nonzero_elements(ctx))
          if (brute_force_is_perm(make_binomial(ctx, a, n, m)).is_perm) brute.insert({a.code(), n, m});
      }
    EXPECT_EQ(triples(enumerate_perm_binomials(ctx)), brute) << q;
  }
}

TEST(Enumerate, PruningPreservesRows) {
  for (u64 q : prime_powers_up_to(32)) {
    const auto ctx = make_field_of_order(q);
    EnumerateOptions pruned;
    pruned.prune = true;
    EXPECT_EQ(enumerate_perm_binomials(ctx), enumerate_perm_binomials(ctx, {}, pruned)) << q;
  }
}

TEST(Enumerate, WorkerCountDoesNotChangeOutput) {
  for (u64 q : {61, 64, 81}) {
    const auto ctx = make_field_of_order(q);
    EnumerateOptions many;
    many.workers = 5;
    EXPECT_EQ(enumerate_perm_binomials(ctx), enumerate_perm_binomials(ctx, {}, many)) << q;
  }
}

TEST(Enumerate, FiltersRestrictRows) {
  const auto ctx = make_field(43, 1);
  const auto all = enumerate_perm_binomials(ctx);
  EnumerateFilters flt;
  flt.d = 14;
  flt.max_n = 30;
  const auto some = enumerate_perm_binomials(ctx, flt);
  std::vector<SurveyRow> expected;
  for (const auto& r : all)
    if (r.d == 14 && r.n <= 30) expected.push_back(r);
  EXPECT_EQ(some, expected);
  EXPECT_FALSE(some.empty());
}

TEST(Survey, Thm7AndSmallD) {
  const auto rep = survey_report(primes_up_to(101));
  EXPECT_TRUE(rep.thm7_violations.empty());
  EXPECT_TRUE(rep.cor4_violations.empty());
  EXPECT_TRUE(rep.cor6_violations.empty());
  std::set<std::pair<u64, u64>> eq;
  for (const auto& r : rep.thm7_equality) eq.insert({r.p, r.d});
  EXPECT_EQ(eq, (std::set<std::pair<u64, u64>>{{7, 3}, {31, 6}}));
  // Every permutation binomial with d <= 4 lies over F_7 with d = 3.
  for (const auto& r : rep.rows)
    if (r.d <= 4) {
      EXPECT_EQ(r.p, 7u);
      EXPECT_EQ(r.d, 3u);
      EXPECT_EQ(r.cor6, Mark::Listed);
    }
  std::set<std::tuple<u64, u64, u64>> cor5;
  for (const auto& r : rep.cor5_violations) cor5.insert({r.p, r.a.code(), r.n});
  EXPECT_EQ(cor5, (std::set<std::tuple<u64, u64, u64>>{{7, 2, 4}, {7, 5, 4}}));
}

TEST(Survey, Cor8NonexistenceUpTo1024) {
  const auto rep = cor8_survey(prime_powers_up_to(1024));
  EXPECT_TRUE(rep.cor8_violations.empty());
  EXPECT_TRUE(rep.rows.empty());
  for (const auto& c : rep.cor8_confirmations) EXPECT_EQ(c.found, 0u) << "q=" << c.q << " d=" << c.d;
  EXPECT_GT(rep.cor8_confirmations.size(), 300u);
  bool f125 = false;
  for (const auto& c : rep.cor8_confirmations) f125 = f125 || (c.q == 125 && c.d == 2 && c.which == Cor8Case::I);
  EXPECT_TRUE(f125);
}

TEST(Survey, Cor8SurveyMatchesFullSurvey) {
  const auto qs = prime_powers_up_to(128);
  const auto full = survey_report(qs);
  const auto fast = cor8_survey(qs);
  ASSERT_EQ(full.cor8_confirmations.size(), fast.cor8_confirmations.size());
  for (std::size_t i = 0; i < full.cor8_confirmations.size(); ++i) {
    EXPECT_EQ(full.cor8_confirmations[i].q, fast.cor8_confirmations[i].q);
    EXPECT_EQ(full.cor8_confirmations[i].d, fast.cor8_confirmations[i].d);
    EXPECT_EQ(full.cor8_confirmations[i].found, fast.cor8_confirmations[i].found);
  }
}
