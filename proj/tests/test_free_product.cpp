#include <gtest/gtest.h>

#include <random>

#include "unitri/free_product.hpp"
#include "unitri/partition.hpp"

using namespace unitri;

namespace {

Word random_word(std::uint64_t p, int syllables, std::mt19937_64& rng) {
  std::vector<Syllable> s;
  char letter = rng() % 2 ? 'x' : 'y';
  for (int k = 0; k < syllables; ++k) {
    s.push_back({letter, 1 + rng() % (p - 1)});
    letter = letter == 'x' ? 'y' : 'x';
  }
  return Word(p, s);
}

// s and t written out entry by entry
UniTriWindow naive_s(const RingPtr& R, int n) {
  UniTriWindow x(R, n);
  for (int k = 1; 2 * k <= n; ++k) x.set(2 * k - 1, 2 * k, 1);
  return x;
}

UniTriWindow naive_t(const RingPtr& R, int n) {
  UniTriWindow x(R, n);
  for (int k = 1; 2 * k + 1 <= n; ++k) x.set(2 * k, 2 * k + 1, 1);
  return x;
}

}  // namespace

TEST(Word, ReductionMergesAndDrops) {
  Word w(3, {{'x', 1}, {'x', 2}, {'y', 4}, {'y', 0}, {'x', 1}});
  EXPECT_EQ(to_string(w), "y x");
  EXPECT_EQ(w.length(), 2);
  EXPECT_EQ(w.exponents(), (std::vector<std::uint64_t>{0, 1, 1, 0}));
  EXPECT_TRUE((w * w.inverse()).empty());
}

TEST(Word, TextRoundTrip) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Word w = random_word(5, static_cast<int>(rng() % 7), rng);
    EXPECT_EQ(parse_word(to_string(w), 5), w);
  }
  EXPECT_EQ(to_string(parse_word("x^2 y x y^2", 3)), "x^2 y x y^2");
  EXPECT_EQ(parse_word("xyx^-1", 3), Word(3, {{'x', 1}, {'y', 1}, {'x', 2}}));
  EXPECT_TRUE(parse_word("1", 3).empty());
  EXPECT_THROW(parse_word("x z", 3), Error);
  EXPECT_THROW(parse_word("x^", 3), Error);
}

TEST(Phi, GeneratorsAndIdentity) {
  auto R = Ring::prime_field(3);
  EXPECT_EQ(phi(Word::x(3), R, 8), naive_s(R, 8));
  EXPECT_EQ(phi(Word::y(3), R, 8), naive_t(R, 8));
  EXPECT_TRUE(phi(Word(3), R, 8).is_identity());
  EXPECT_EQ(shift(naive_s(R, 8), 2), naive_s(R, 6));
  EXPECT_THROW(phi(Word::x(3), Ring::prime_field(5), 4), Error);
}

TEST(Phi, XYMatchesProduct) {
  auto R = Ring::prime_field(3);
  const auto x = phi(parse_word("x y", 3), R, 6);
  EXPECT_EQ(x, naive_s(R, 6) * naive_t(R, 6));
  EXPECT_EQ(x.get(1, 2), 1u);
  EXPECT_EQ(x.get(2, 3), 1u);
  EXPECT_EQ(x.get(1, 3), 1u);
  EXPECT_EQ(x.get(3, 5), 1u);
  EXPECT_EQ(x.get(2, 4), 0u);
}

TEST(Phi, Homomorphism) {
  auto R = Ring::prime_field(5);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const Word a = random_word(5, static_cast<int>(rng() % 6), rng);
    const Word b = random_word(5, static_cast<int>(rng() % 6), rng);
    ASSERT_EQ(phi(a * b, R, 10), phi(a, R, 10) * phi(b, R, 10));
  }
}

TEST(Phi, ImagesArePeriodic) {
  auto R = Ring::prime_field(3);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto x = phi(random_word(3, static_cast<int>(rng() % 8), rng), R, 10);
    ASSERT_TRUE(is_periodic(x, 2));
    ASSERT_TRUE(is_periodic(truncate(x, 8), 2));
  }
}

TEST(ClosedForm, AllTuplesWindow8) {
  for (std::uint64_t p : {3u, 5u}) {
    auto R = Ring::prime_field(p);
    for (Coeff a = 0; a < p; ++a)
      for (Coeff b = 0; b < p; ++b)
        for (Coeff c = 0; c < p; ++c)
          for (Coeff d = 0; d < p; ++d) {
            const auto direct = s_power(R, 8, a) * t_power(R, 8, b) * s_power(R, 8, c) * t_power(R, 8, d);
            ASSERT_EQ(closed_form_4(a, b, c, d, R, 8), direct) << a << b << c << d;
            ASSERT_EQ(phi(Word(p, {{'x', a}, {'y', b}, {'x', c}, {'y', d}}), R, 8), direct);
          }
  }
}

TEST(ClosedForm, Examples) {
  auto R = Ring::prime_field(3);
  const auto x = closed_form_4(1, 1, 1, 1, R, 8);
  EXPECT_EQ(x.get(1, 2), 2u);
  EXPECT_EQ(x.get(1, 3), 0u);
  EXPECT_EQ(x.get(1, 4), 1u);
  EXPECT_EQ(x.get(1, 5), 1u);
  EXPECT_EQ(x.get(1, 6), 0u);
  EXPECT_EQ(closed_form_4(1, 0, 1, 0, R, 8), s_power(R, 8, 2));
  EXPECT_EQ(closed_form_4(0, 2, 0, 2, R, 8), t_power(R, 8, 1));
}

TEST(ReadLength, ThreeCases) {
  auto R = Ring::prime_field(3);
  auto r = read_length(phi(parse_word("x y x y", 3), R, 8));
  EXPECT_EQ(r.length, 2);
  EXPECT_EQ(r.which, LengthCase::i);
  r = read_length(phi(parse_word("y x y", 3), R, 8));
  EXPECT_EQ(r.length, 2);
  EXPECT_EQ(r.which, LengthCase::ii);
  r = read_length(phi(parse_word("y^2 x", 3), R, 8));
  EXPECT_EQ(r.length, 2);
  EXPECT_EQ(r.which, LengthCase::iii);
  EXPECT_EQ(read_length(phi(Word(3), R, 8)).length, 0);
  EXPECT_THROW(read_length(phi(parse_word("x y x", 3), R, 8)), Error);
  EXPECT_THROW(read_length(phi(parse_word("x y x y x y", 3), R, 6)), Error);
}

TEST(ReadLength, RandomWordsAgreeWithSyllables) {
  auto R = Ring::prime_field(5);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 400; ++k) {
    const Word w = random_word(5, 1 + static_cast<int>(rng() % 7), rng);
    const auto x = phi(w, R, 2 * w.length() + 3);
    const bool starts_x = w.syllables().front().letter == 'x';
    const bool ends_y = w.syllables().back().letter == 'y';
    if (starts_x && !ends_y) {
      EXPECT_THROW(read_length(x), Error);
      continue;
    }
    const auto r = read_length(x);
    EXPECT_EQ(r.length, w.length()) << to_string(w);
    const LengthCase want = starts_x ? LengthCase::i : (ends_y ? LengthCase::ii : LengthCase::iii);
    EXPECT_EQ(r.which, want) << to_string(w);
  }
}

TEST(FreeProduct, XiFormula) {
  EXPECT_EQ(xi(5), 6);
  EXPECT_EQ(xi(4), 4);
  EXPECT_EQ(xi(8), 10);
  EXPECT_EQ(two_periodic_log_order(3), 3);
  EXPECT_THROW(xi(1), Error);
}

TEST(FreeProduct, ClosureOrderMatchesXi) {
  auto R = Ring::prime_field(3);
  for (int n = 3; n <= 7; ++n) {
    const std::vector<UniTriWindow> gens{naive_s(R, n), naive_t(R, n)};
    std::uint64_t want = 1;
    for (int k = 0; k < xi(n); ++k) want *= 3;
    EXPECT_EQ(closure_order(gens), want) << n;
    EXPECT_EQ(polycyclic_log_order(gens), xi(n)) << n;
  }
}

TEST(FreeProduct, TwoPeriodicGroupOrder) {
  auto R = Ring::prime_field(3);
  for (int n = 3; n <= 6; ++n) {
    const auto gens = two_periodic_generators(R, n);
    EXPECT_EQ(static_cast<int>(gens.size()), two_periodic_log_order(n));
    std::uint64_t count = 0;
    bool periodic = true;
    for (const auto& x : closure_elements(gens)) {
      ++count;
      periodic = periodic && is_periodic(x, 2);
    }
    std::uint64_t want = 1;
    for (int k = 0; k < two_periodic_log_order(n); ++k) want *= 3;
    EXPECT_EQ(count, want) << n;
    EXPECT_TRUE(periodic);
  }
}

TEST(FreeProduct, GammaFiltrationCompatibility) {
  auto R = Ring::prime_field(3);
  const int n = 10;
  std::mt19937_64 rng(31);
  auto diagram = [&](int d) { return gamma(d).with_window(n).diagram(); };
  for (int k = 0; k < 100; ++k) {
    const Word a = random_word(3, 1 + static_cast<int>(rng() % 4), rng);
    const Word b = random_word(3, 1 + static_cast<int>(rng() % 4), rng);
    const Word c = random_word(3, 1 + static_cast<int>(rng() % 4), rng);
    EXPECT_TRUE(membership(phi(a, R, n), diagram(1)));
    EXPECT_TRUE(membership(phi(commutator(a, b), R, n), diagram(2)));
    EXPECT_TRUE(membership(phi(commutator(commutator(a, b), c), R, n), diagram(3)));
    std::uint64_t sx = 0, sy = 0;
    for (const auto& s : a.syllables()) (s.letter == 'x' ? sx : sy) += s.exp;
    if (sx % 3 != 0 || sy % 3 != 0) {
      EXPECT_FALSE(membership(phi(a, R, n), diagram(2))) << to_string(a);
    }
  }
}
