#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "unitri/field_extension.hpp"

using namespace unitri;

namespace {

// all of G_n(q) by counting through the entries
std::vector<UniTriWindow> all_elements(const RingPtr& R, int n) {
  const int m = n * (n - 1) / 2;
  std::vector<Coeff> digits(static_cast<std::size_t>(m), 0);
  std::vector<UniTriWindow> out;
  while (true) {
    UniTriWindow x(R, n);
    int t = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) x.set(i, j, digits[t++]);
    out.push_back(x);
    int k = 0;
    while (k < m && ++digits[k] == R->order()) digits[k++] = 0;
    if (k == m) break;
  }
  return out;
}

UniTriWindow with_valuation(const RingPtr& R, int n, int v, std::mt19937_64& rng) {
  UniTriWindow x = random_element(R, n, rng);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= std::min(v, n); ++j) x.set(i, j, 0);
  return x;
}

}  // namespace

TEST(Alpha, IdentityAndBlockExample) {
  EmbeddingContext ctx(Ring::ext_field(3, 2));
  EXPECT_TRUE(ctx.alpha(UniTriWindow::identity(ctx.fq(), 3)).is_identity());
  const Coeff x = ctx.fq()->basis_element(1);
  const auto y = ctx.alpha(UniTriWindow::elementary(ctx.fq(), 2, 1, 2, x));
  EXPECT_EQ(y.n(), 4);
  EXPECT_EQ(y.get(1, 3), 0u);
  EXPECT_EQ(y.get(1, 4), 2u);
  EXPECT_EQ(y.get(2, 3), 1u);
  EXPECT_EQ(y.get(2, 4), 0u);
  EXPECT_EQ(y.get(1, 2), 0u);
  EXPECT_EQ(y.get(3, 4), 0u);
}

TEST(Alpha, InjectiveHomomorphism) {
  std::mt19937_64 rng(1);
  for (int f : {2, 3}) {
    EmbeddingContext ctx(Ring::ext_field(3, f));
    for (int k = 0; k < 500; ++k) {
      const auto x = random_element(ctx.fq(), 4, rng);
      const auto y = random_element(ctx.fq(), 4, rng);
      ASSERT_EQ(ctx.alpha(x * y), ctx.alpha(x) * ctx.alpha(y));
      if (x != y) {
        ASSERT_NE(ctx.alpha(x), ctx.alpha(y));
      }
      if (!x.is_identity()) {
        ASSERT_FALSE(ctx.alpha(x).is_identity());
      }
    }
  }
}

TEST(Beta, InjectiveHomomorphismAndKronecker) {
  std::mt19937_64 rng(2);
  EmbeddingContext ctx(Ring::ext_field(3, 2));
  EXPECT_TRUE(ctx.beta(UniTriWindow::identity(ctx.fp(), 3)).is_identity());
  auto e = ctx.alpha(ctx.beta(UniTriWindow::elementary(ctx.fp(), 2, 1, 2, 1)));
  auto want = UniTriWindow::identity(ctx.fp(), 4);
  want.set(1, 3, 1);
  want.set(2, 4, 1);
  EXPECT_EQ(e, want);
  for (int k = 0; k < 500; ++k) {
    const auto x = random_element(ctx.fp(), 5, rng);
    const auto y = random_element(ctx.fp(), 5, rng);
    ASSERT_EQ(ctx.beta(x * y), ctx.beta(x) * ctx.beta(y));
    ASSERT_EQ(ctx.alpha(ctx.beta(x)), ctx.kronecker(x));
    if (x != y) {
      ASSERT_NE(ctx.beta(x), ctx.beta(y));
    }
  }
}

TEST(Alpha, ValuationRelation) {
  std::mt19937_64 rng(3);
  for (int f : {2, 3}) {
    EmbeddingContext ctx(Ring::ext_field(3, f));
    const int n = 12 / f;
    for (int k = 0; k < 200; ++k) {
      const auto x = with_valuation(ctx.fq(), n, static_cast<int>(rng() % (n + 1)), rng);
      const int v = valuation(x);
      const int w = valuation(ctx.alpha(x));
      ASSERT_GE(w, f * v);
      ASSERT_LT(w, f * (v + 1));
    }
  }
}

TEST(Alpha, BlockIndex) {
  auto F9 = Ring::ext_field(3, 2);
  EXPECT_EQ(regular_rep_image_count(*F9), 9u);
  EXPECT_EQ(block_index_log(*F9), 2);
  EXPECT_EQ(block_index_log(*Ring::ext_field(3, 3)), 6);
  EXPECT_EQ(block_index_log(*Ring::ext_field(5, 2)), 2);
}

TEST(Sandwich, FormulaMatchesGeneratedOrder) {
  for (int f : {2, 3}) {
    EmbeddingContext ctx(Ring::ext_field(3, f));
    for (int n = 2; n <= 10; ++n) {
      const auto t = alpha_image_term(*ctx.fq(), n);
      EXPECT_EQ(polycyclic_log_order(alpha_image_generators(ctx, n)), t.log_order) << f << " " << n;
    }
  }
}

TEST(Sandwich, BoundsAndLimit) {
  for (int f : {2, 3, 4}) {
    auto F = Ring::ext_field(3, f);
    for (int n = 2; n <= 300; ++n) {
      const auto t = alpha_image_term(*F, n);
      ASSERT_LE(t.lower, t.log_order);
      ASSERT_LE(t.log_order, t.upper);
    }
    const auto t = alpha_image_term(*F, 1000);
    const double inv = 1.0 / f;
    EXPECT_LT(std::abs(to_double(t.lower_ratio) - inv), 1e-2);
    EXPECT_LT(std::abs(to_double(t.upper_ratio) - inv), 1e-2);
    EXPECT_LT(std::abs(to_double(t.a_n) - inv), 1e-2);
  }
}

TEST(Beta, ImageDimension) {
  for (int f : {2, 3}) {
    EmbeddingContext ctx(Ring::ext_field(3, f));
    for (int n = 2; n <= 6; ++n) {
      std::vector<UniTriWindow> gens;
      for (const auto& g : standard_generators(ctx.fp(), n)) gens.push_back(ctx.beta(g));
      const int logp = polycyclic_log_order(gens);
      EXPECT_EQ(Rational(logp, f), beta_image_log_q(n, f));
      EXPECT_EQ(beta_image_log_q(n, f) / Rational(n * (n - 1), 2), Rational(1, f));
    }
  }
}

TEST(Centralizer, IdentityGivesEverything) {
  auto R = Ring::prime_field(3);
  const auto c = centralizer_solve({UniTriWindow::identity(R, 5)}, R, 5);
  EXPECT_EQ(c.log_order, 10);
}

TEST(Centralizer, AlphaImageIsTopRightCorner) {
  EmbeddingContext ctx(Ring::ext_field(3, 2));
  std::vector<UniTriWindow> gens;
  for (const auto& g : standard_generators(ctx.fq(), 3)) gens.push_back(ctx.alpha(g));
  const auto c = centralizer_solve(gens, ctx.fp(), 6);
  EXPECT_EQ(c.log_order, 4);
  EXPECT_EQ(centralizer_support(c, 6), (std::vector<Square>{{1, 5}, {1, 6}, {2, 5}, {2, 6}}));
}

TEST(Centralizer, PartitionSubgroupIsOrthogonal) {
  auto R = Ring::prime_field(3);
  const PartitionDiagram mu(5, {{3, 4}});
  const auto c = centralizer_solve(materialize(mu, R, 5), R, 5);
  auto perp = orthogonal(mu).diagram.squares();
  std::sort(perp.begin(), perp.end());
  EXPECT_EQ(c.log_order, static_cast<int>(perp.size()));
  EXPECT_EQ(centralizer_support(c, 5), perp);
  EXPECT_EQ(c.log_order, 7);
}

TEST(Centralizer, CountMatchesEnumeration) {
  std::mt19937_64 rng(4);
  auto R = Ring::prime_field(3);
  const auto all = all_elements(R, 4);
  for (int k = 0; k < 10; ++k) {
    std::vector<UniTriWindow> gens;
    for (int g = 0; g <= k % 3; ++g) gens.push_back(with_valuation(R, 4, static_cast<int>(rng() % 3), rng));
    std::uint64_t count = 0;
    for (const auto& x : all) {
      bool ok = true;
      for (const auto& g : gens) ok = ok && x * g == g * x;
      count += ok;
    }
    const auto c = centralizer_solve(gens, R, 4);
    std::uint64_t want = 1;
    for (int t = 0; t < c.log_order; ++t) want *= 3;
    EXPECT_EQ(count, want);
  }
}

TEST(Centralizer, BasisCommutes) {
  std::mt19937_64 rng(5);
  for (auto R : {Ring::prime_field(5), Ring::ext_field(3, 2)}) {
    for (int k = 0; k < 20; ++k) {
      std::vector<UniTriWindow> gens{with_valuation(R, 6, 2, rng), with_valuation(R, 6, 3, rng)};
      const auto c = centralizer_solve(gens, R, 6);
      for (const auto& b : c.basis)
        for (const auto& g : gens) ASSERT_EQ(b * g, g * b);
    }
  }
}
