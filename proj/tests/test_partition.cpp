#include <gtest/gtest.h>

#include <random>
#include <set>

#include "unitri/partition.hpp"

using namespace unitri;

namespace {

using SquareSet = std::set<Square>;

// Repeated rescan of all triples until nothing changes.
SquareSet oracle_closure(SquareSet s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto a : s)
      for (auto b : s)
        if (a.c == b.r && !s.count({a.r, b.c})) {
          s.insert({a.r, b.c});
          changed = true;
          break;
        }
  }
  return s;
}

SquareSet as_set(const PartitionDiagram& d) {
  auto v = d.squares();
  return {v.begin(), v.end()};
}

std::vector<Square> all_squares(int N) {
  std::vector<Square> out;
  for (int c = 2; c <= N; ++c)
    for (int r = 1; r < c; ++r) out.push_back({r, c});
  return out;
}

// Every rectangle-closed subset of the window, as square sets.
std::vector<SquareSet> closed_subsets(int N) {
  const auto sq = all_squares(N);
  std::vector<SquareSet> out;
  for (std::uint32_t mask = 0; mask < (1u << sq.size()); ++mask) {
    SquareSet s;
    for (std::size_t k = 0; k < sq.size(); ++k)
      if (mask >> k & 1) s.insert(sq[k]);
    if (oracle_closure(s) == s) out.push_back(s);
  }
  return out;
}

PartitionDiagram random_diagram(std::mt19937_64& rng, int N, Tail tail = {}) {
  std::bernoulli_distribution coin(0.2);
  std::vector<Square> sq;
  for (auto s : all_squares(N))
    if (coin(rng)) sq.push_back(s);
  return PartitionDiagram::closure(N, sq, tail);
}

// Brute force: x in P_mu with g x g^{-1} in P_mu for generators of both.
bool conjugation_normal(const PartitionDiagram& mu, const RingPtr& R, int n) {
  for (const auto& x : materialize(mu, R, n))
    for (const auto& g : standard_generators(R, n)) {
      if (!membership(g * x * g.inverse(), mu)) return false;
      if (!membership(g.inverse() * x * g, mu)) return false;
    }
  return true;
}

// Smallest normal subgroup containing gens: close under conjugation by generators.
std::vector<UniTriWindow> normal_closure_elements(std::vector<UniTriWindow> gens, const RingPtr& R, int n) {
  const auto G = standard_generators(R, n);
  for (;;) {
    auto elems = closure_elements(gens);
    std::set<std::string> keys;
    for (const auto& e : elems) keys.insert(e.key());
    std::vector<UniTriWindow> extra;
    for (const auto& x : gens)
      for (const auto& g : G) {
        auto y = g * x * g.inverse();
        if (!keys.count(y.key())) extra.push_back(y);
      }
    if (extra.empty()) return elems;
    gens.insert(gens.end(), extra.begin(), extra.end());
  }
}

std::uint64_t pow3(std::int64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= 3;
  return r;
}

}  // namespace

TEST(Partition, RectClosureExamples) {
  EXPECT_EQ(as_set(rect_closure({{1, 2}, {2, 3}}, 4)), (SquareSet{{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(as_set(rect_closure({{3, 4}}, 5)), (SquareSet{{3, 4}}));
  EXPECT_EQ(as_set(rect_closure({{1, 2}, {2, 3}, {3, 4}}, 4)),
            (SquareSet{{1, 2}, {2, 3}, {3, 4}, {1, 3}, {2, 4}, {1, 4}}));
  EXPECT_THROW(PartitionDiagram(4, {{1, 2}, {2, 3}}), Error);
}

TEST(Partition, LatticeExamples) {
  const auto u = Partition({0, 1, 1}).diagram(), v = Partition({0, 0, 2}).diagram();
  EXPECT_EQ(Partition::from_diagram(lattice_union(u, v)), Partition({0, 1, 2}));
  EXPECT_EQ(lattice_intersect(u, u), u);
  EXPECT_EQ(as_set(lattice_union(rect_closure({{3, 4}}, 5), rect_closure({{4, 5}}, 5))),
            (SquareSet{{3, 4}, {4, 5}, {3, 5}}));
  // constant against affine tails: windows extend until one dominates
  const auto g = gamma(2).diagram(), r = rectangular(3, 3).diagram();
  const auto m = lattice_union(g, r);
  for (int c = 2; c <= 20; ++c) EXPECT_EQ(m.column_count(c), std::max(std::max(0, c - 2), c >= 5 ? 3 : 0)) << c;
  const auto n = lattice_intersect(g, r);
  for (int c = 2; c <= 20; ++c) EXPECT_EQ(n.column_count(c), std::min(std::max(0, c - 2), c >= 5 ? 3 : 0)) << c;
}

TEST(Partition, MaxSubpartition) {
  EXPECT_EQ(max_subpartition(PartitionDiagram(3, {{1, 3}, {2, 3}})).height(3), 2);
  EXPECT_EQ(max_subpartition(PartitionDiagram(3, {{2, 3}})).height(3), 0);
  EXPECT_EQ(max_subpartition(PartitionDiagram(4, {{1, 4}, {3, 4}})).height(4), 1);
}

TEST(Partition, OrthogonalExamples) {
  const int N = 7;
  const auto mu = rect_closure({{3, 4}}, N);
  const auto perp = orthogonal(mu);
  EXPECT_FALSE(perp.tail_exact);
  for (auto s : all_squares(N)) EXPECT_EQ(perp.diagram.contains(s.r, s.c), s.r != 4 && s.c != 3);
  const auto z = centre(mu);
  EXPECT_TRUE(z.tail_exact);
  EXPECT_EQ(z.diagram, mu);

  const auto empty = orthogonal(PartitionDiagram(5, {}));
  EXPECT_TRUE(empty.tail_exact);
  EXPECT_EQ(empty.diagram, PartitionDiagram::full(5));

  const auto full5 = PartitionDiagram::closure(5, all_squares(5));
  EXPECT_EQ(as_set(orthogonal(full5).diagram), (SquareSet{{1, 5}}));

  // an affine tail meets every row, so nothing is orthogonal to it
  const auto g = orthogonal(gamma(3).diagram());
  EXPECT_TRUE(g.tail_exact);
  EXPECT_EQ(count_upto(g.diagram, 30), 0);
}

TEST(Partition, NormalCoreAndClosure) {
  const auto mu = rect_closure({{3, 4}}, 6);
  EXPECT_EQ(count_upto(normal_core(mu), 50), 0);
  const auto Nc = filtration(3);
  EXPECT_EQ(normal_core(Nc.diagram()), Nc);
  EXPECT_EQ(normal_closure(Nc.diagram()), Nc);

  const auto cl = normal_closure(mu);
  EXPECT_EQ(cl, Partition({0, 0, 3}, Tail::constant(3)));
  EXPECT_EQ(count_upto(cl, 6), 9);

  const auto two = normal_closure(rect_closure({{2, 3}, {4, 5}}, 6));
  for (int c = 2; c <= 6; ++c)
    for (int r = 1; r < c; ++r) {
      const bool covered = (r <= 2 && c >= 3) || (r <= 4 && c >= 5);
      EXPECT_EQ(two.diagram().contains(r, c), covered) << r << "," << c;
    }
}

TEST(Partition, NormalClosureOracle) {
  // normal closure of 1+e_34 in G_6(3)
  auto R = Ring::prime_field(3);
  const auto elems = normal_closure_elements({UniTriWindow::elementary(R, 6, 3, 4, 1)}, R, 6);
  const auto cl = normal_closure(rect_closure({{3, 4}}, 6));
  EXPECT_EQ(elems.size(), pow3(count_upto(cl, 6)));
  for (const auto& x : elems) EXPECT_TRUE(membership(x, cl.diagram()));
}

TEST(Partition, NormalCoreConjugateIntersection) {
  // core of P_{(3,4)} in G_5(3): elements of P whose conjugates by all of G stay in P
  auto R = Ring::prime_field(3);
  const auto mu = rect_closure({{3, 4}}, 5);
  const auto G = closure_elements(standard_generators(R, 5));
  std::uint64_t core = 0;
  for (const auto& x : closure_elements(materialize(mu, R, 5))) {
    bool stays = true;
    for (const auto& g : G)
      if (!membership(g * x * g.inverse(), mu)) {
        stays = false;
        break;
      }
    core += stays;
  }
  EXPECT_EQ(core, 1u);
  EXPECT_EQ(count_upto(normal_core(mu), 5), 0);
}

TEST(Partition, NormalCoreOracleRandom) {
  // conjugate intersection against the height-min rule, full tails so the
  // window is faithful
  auto R = Ring::prime_field(3);
  std::mt19937_64 rng(41);
  const int n = 4;
  const auto G = closure_elements(standard_generators(R, n));
  for (int t = 0; t < 25; ++t) {
    const auto mu = random_diagram(rng, n, Tail::affine(1));
    std::uint64_t core = 0;
    for (const auto& x : closure_elements(materialize(mu, R, n))) {
      bool stays = true;
      for (const auto& g : G)
        if (!membership(g * x * g.inverse(), mu)) {
          stays = false;
          break;
        }
      core += stays;
    }
    EXPECT_EQ(core, pow3(count_upto(normal_core(mu), n)));
  }
}

TEST(Partition, NormalityAgreesWithConjugation) {
  auto R = Ring::prime_field(3);
  for (int N : {3, 4, 5}) {
    for (const auto& s : closed_subsets(N)) {
      const PartitionDiagram mu(N, {s.begin(), s.end()}, Tail::affine(1));
      ASSERT_EQ(is_normal(mu), conjugation_normal(mu, R, N)) << N << " " << s.size();
    }
  }
}

TEST(Partition, NormalityExamples) {
  for (int d = 1; d <= 4; ++d) {
    EXPECT_TRUE(is_normal(gamma(d)));
    EXPECT_EQ(is_open(gamma(d)), d == 1);
  }
  EXPECT_TRUE(is_normal(filtration(4)));
  EXPECT_TRUE(is_open(filtration(4)));
  std::vector<Square> gap;
  for (int i = 1; i + 2 <= 9; ++i) gap.push_back({i, i + 2});
  EXPECT_FALSE(is_normal(rect_closure(gap, 9)));
}

TEST(Partition, BracketFormulas) {
  EXPECT_EQ(bracket_with_G(gamma(1)), gamma(2));
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(bracket_with_G(gamma(d)), gamma(d + 1));
  for (int c = 1; c <= 5; ++c) {
    const auto b = bracket_with_G(rectangular(c, c));
    // the corner (c, c+2) disappears, everything else stays
    for (int j = 2; j <= 3 * c + 4; ++j) {
      const int expect = j <= c + 1 ? 0 : (j == c + 2 ? c - 1 : c);
      EXPECT_EQ(b.height(j), expect) << c << " " << j;
    }
  }
  EXPECT_THROW(bracket_with_G(Partition({0, 2, 1})), Error);
}

TEST(Partition, BracketMatchesCommutatorClosure) {
  auto R = Ring::prime_field(3);
  const int n = 5;
  for (const auto& mu : {gamma(1), gamma(2), rectangular(2, 2)}) {
    std::vector<UniTriWindow> comms;
    for (const auto& a : materialize(mu.diagram(), R, n))
      for (const auto& b : standard_generators(R, n)) comms.push_back(commutator(a, b));
    const auto elems = normal_closure_elements(comms, R, n);
    const auto br = bracket_with_G(mu);
    EXPECT_EQ(elems.size(), pow3(count_upto(br, n))) << to_string(mu);
    for (const auto& x : elems) EXPECT_TRUE(membership(x, br.diagram()));
  }
}

TEST(Partition, CenterPreimage) {
  EXPECT_EQ(count_upto(center_preimage(Partition({0})), 40), 0);
  // superdiagonal squares only cover squares of gamma_2
  const auto g2 = center_preimage(gamma(2));
  EXPECT_EQ(g2, gamma(1));
  const auto rc = center_preimage(rectangular(3, 3));
  for (int j = 2; j <= 12; ++j) EXPECT_EQ(rc.height(j), j <= 3 ? 0 : (j == 4 ? 1 : 3)) << j;
  EXPECT_THROW(center_preimage(Partition({1, 0})), Error);
}

TEST(Partition, CenterPreimageMatchesCentrality) {
  // (i,j) is in the preimage iff [1+e_ij, g] lands in P_mu for each generator g
  auto R = Ring::prime_field(3);
  std::mt19937_64 rng(43);
  const int n = 5;
  const auto G = standard_generators(R, n);
  for (int t = 0; t < 40; ++t) {
    std::vector<int> p;
    int h = 0;
    for (int j = 2; j <= n; ++j) {
      h = std::min(j - 1, h + static_cast<int>(rng() % 2));
      p.push_back(h);
    }
    const Partition mu(p, Tail::affine(1));
    const auto hat = center_preimage(mu).diagram();
    for (auto s : all_squares(n)) {
      bool central = true;
      for (const auto& g : G)
        central = central && membership(commutator(UniTriWindow::elementary(R, n, s.r, s.c, 1), g), mu.diagram());
      EXPECT_EQ(hat.contains(s.r, s.c), central) << to_string(mu) << " " << s.r << "," << s.c;
    }
  }
}

TEST(Partition, Counting) {
  auto F9 = Ring::ext_field(3, 2);
  for (int d = 1; d <= 5; ++d)
    for (int n = d; n <= 30; ++n) {
      EXPECT_EQ(count_upto(gamma(d), n), (n + 1 - d) * (n - d) / 2);
      EXPECT_EQ(count_upto(gamma(d).diagram(), n), (n + 1 - d) * (n - d) / 2);
      EXPECT_EQ(quotient_order(gamma(d), n, *F9), big_pow(9, (n + 1 - d) * (n - d) / 2));
    }
  EXPECT_EQ(count_upto(PartitionDiagram::full(4), 9), 36);
}

TEST(Partition, Membership) {
  auto R = Ring::prime_field(3);
  const auto mu = rect_closure({{3, 4}}, 5);
  EXPECT_TRUE(membership(UniTriWindow::identity(R, 5), mu));
  EXPECT_TRUE(membership(UniTriWindow::elementary(R, 5, 3, 4, 1), mu));
  EXPECT_FALSE(membership(UniTriWindow::elementary(R, 5, 1, 2, 1), mu));
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const auto d = random_diagram(rng, 5);
    const auto elems = closure_elements(materialize(d, R, 5));
    EXPECT_EQ(elems.size(), pow3(count_upto(d, 5)));
    for (const auto& x : elems) ASSERT_TRUE(membership(x, d));
  }
}

TEST(Partition, Families) {
  for (int j = 2; j <= 12; ++j) EXPECT_EQ(gamma(2).height(j), j - 2);
  for (int j = 2; j <= 12; ++j) EXPECT_EQ(derived(3).height(j), std::max(0, j - 4));
  EXPECT_EQ(derived(3).with_window(7).parts(), (std::vector<int>{0, 0, 0, 1, 2, 3}));
  EXPECT_THROW(rectangular(2, 3), Error);
  for (int j = 2; j <= 9; ++j) EXPECT_EQ(filtration(4).height(j), j <= 4 ? 0 : j - 1);
  const auto st = string_blocks({2, 2, 2});
  EXPECT_EQ(st.parts(), (std::vector<int>{0, 2, 2, 4, 4}));
  EXPECT_TRUE(is_normal(st));
}

TEST(Partition, RectangularIsAbelian) {
  auto R = Ring::prime_field(3);
  const auto elems = closure_elements(materialize(rectangular(2, 2).diagram(), R, 5));
  EXPECT_EQ(elems.size(), 81u);
  for (const auto& a : elems)
    for (const auto& b : elems) ASSERT_EQ(a * b, b * a);
}

TEST(Partition, StringDecomposition) {
  auto R = Ring::prime_field(3);
  std::mt19937_64 rng(53);
  const std::vector<int> blocks{2, 2, 2};
  const auto mu = string_blocks(blocks).diagram();
  for (int t = 0; t < 200; ++t) {
    const auto x = random_element(R, 6, rng);
    auto [p, s] = string_decompose(x, blocks);
    EXPECT_EQ(p * s, x);
    EXPECT_TRUE(membership(p, mu));
    for (const auto& e : s.entries()) EXPECT_EQ((e.i - 1) / 2, (e.j - 1) / 2);
  }
  auto [p, s] = string_decompose(UniTriWindow::elementary(R, 6, 1, 2, 1), blocks);
  EXPECT_TRUE(p.is_identity());
  auto [p2, s2] = string_decompose(UniTriWindow::elementary(R, 6, 1, 5, 1), blocks);
  EXPECT_TRUE(s2.is_identity());
  EXPECT_THROW(string_decompose(UniTriWindow::identity(R, 6), {2, 3}), Error);
}

TEST(Partition, TextRoundTrip) {
  const auto g2 = gamma(2);
  EXPECT_EQ(to_string(g2), "(0^1|tail=affine:2)");
  const Partition mu({0, 0, 1, 1, 2, 2, 2}, Tail::constant(2));
  EXPECT_EQ(to_string(mu), "(0^2,1^2,2^3|tail=const:2)");
  EXPECT_EQ(parse_partition(to_string(mu)), mu);
  EXPECT_EQ(parse_partition("(0,1,2)"), Partition({0, 1, 2}));
  EXPECT_THROW(parse_partition("0,1"), Error);
  EXPECT_THROW(parse_partition("(0^x)"), Error);
  EXPECT_THROW(parse_partition("(2)"), Error);
}

TEST(PartitionProperty, ClosureAndLattice) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 200; ++t) {
    const int N = 3 + static_cast<int>(rng() % 5);
    std::vector<Square> raw;
    for (auto s : all_squares(N))
      if (rng() % 4 == 0) raw.push_back(s);
    const auto a = rect_closure(raw, N);
    EXPECT_EQ(as_set(a), oracle_closure({raw.begin(), raw.end()}));
    EXPECT_EQ(rect_closure(a.squares(), N), a);
    const auto b = random_diagram(rng, N);
    EXPECT_EQ(lattice_union(a, lattice_intersect(a, b)), a);
    EXPECT_EQ(lattice_intersect(a, lattice_union(a, b)), a);
    EXPECT_EQ(lattice_union(a, b), lattice_union(b, a));
    EXPECT_EQ(lattice_intersect(a, b), lattice_intersect(b, a));
  }
}

TEST(PartitionProperty, CoreInsideClosure) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const int N = 3 + static_cast<int>(rng() % 6);
    const Tail tails[] = {Tail{}, Tail::constant(static_cast<int>(rng() % N)), Tail::affine(1 + static_cast<int>(rng() % 4))};
    const auto mu = random_diagram(rng, N, tails[rng() % 3]);
    const auto core = normal_core(mu), cl = normal_closure(mu);
    EXPECT_TRUE(is_normal(core));
    EXPECT_TRUE(is_normal(cl));
    for (int c = 2; c <= 3 * N; ++c)
      for (int r = 1; r < c; ++r) {
        if (r <= core.height(c)) {
          EXPECT_TRUE(mu.contains(r, c));
        }
        if (mu.contains(r, c)) {
          EXPECT_LE(r, cl.height(c));
        }
      }
    EXPECT_EQ(normal_core(core.diagram()), core);
    EXPECT_EQ(normal_closure(cl.diagram()), cl);
  }
}

TEST(PartitionProperty, CentralizerSupportIsOrthogonal) {
  // brute force commuting in G_4(3): 1+e_kl commutes with all of P_mu iff (k,l) in mu-perp
  auto R = Ring::prime_field(3);
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const auto mu = random_diagram(rng, 5);
    const auto perp = orthogonal(mu).diagram;
    const auto gens = materialize(mu, R, 5);
    for (auto s : all_squares(5)) {
      const auto x = UniTriWindow::elementary(R, 5, s.r, s.c, 1);
      bool commutes = true;
      for (const auto& g : gens) commutes = commutes && (x * g == g * x);
      EXPECT_EQ(perp.contains(s.r, s.c), commutes);
    }
  }
}
