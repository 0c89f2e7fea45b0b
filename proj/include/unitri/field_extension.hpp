#pragma once

// alpha_f: G(q) -> G(p) replaces each entry by its f x f regular
// representation; beta_f: G(p) -> G(q) includes the coefficients.
// Also the linear centralizer solver.

#include <set>
#include <string>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/linalg.hpp"
#include "unitri/matrix.hpp"
#include "unitri/partition.hpp"
#include "unitri/rational.hpp"
#include "unitri/ring.hpp"

namespace unitri {

class EmbeddingContext {
 public:
  explicit EmbeddingContext(RingPtr fq) : fq_(std::move(fq)), fp_(Ring::prime_field(fq_->p())) {
    if (!fq_->is_field()) throw Error("embedding needs a field F_q");
  }

  const RingPtr& fq() const noexcept { return fq_; }
  const RingPtr& fp() const noexcept { return fp_; }
  int f() const noexcept { return fq_->f(); }

  UniTriWindow alpha(const UniTriWindow& x) const {
    if (!same_ring(x.ring(), fq_)) throw Error("alpha_f expects an element over F_q of the context");
    const int f = this->f();
    UniTriWindow y(fp_, x.n() * f);
    for (const auto& e : x.entries()) {
      const auto block = fq_->regular_rep(e.value);
      for (int a = 0; a < f; ++a)
        for (int b = 0; b < f; ++b) y.set((e.i - 1) * f + a + 1, (e.j - 1) * f + b + 1, block[a][b]);
    }
    return y;
  }

  UniTriWindow beta(const UniTriWindow& x) const {
    if (!same_ring(x.ring(), fp_)) throw Error("beta_f expects an element over F_p");
    UniTriWindow y(fq_, x.n());
    for (const auto& e : x.entries()) y.set(e.i, e.j, fq_->from_int(static_cast<std::int64_t>(e.value)));
    return y;
  }

  /// x tensor I_f
  UniTriWindow kronecker(const UniTriWindow& x) const {
    const int f = this->f();
    UniTriWindow y(fp_, x.n() * f);
    for (const auto& e : x.entries())
      for (int a = 1; a <= f; ++a) y.set((e.i - 1) * f + a, (e.j - 1) * f + a, e.value);
    return y;
  }

 private:
  RingPtr fq_, fp_;
};

/// Number of distinct regular representations, i.e. q when the map is injective.
inline std::uint64_t regular_rep_image_count(const Ring& Fq) {
  std::set<Mat> seen;
  for (Coeff a = 0; a < Fq.order(); ++a) seen.insert(Fq.regular_rep(a));
  return seen.size();
}

/// log_p |Mat_f(F_p) : image of F_q| = f^2 - (log_p of the image size).
inline int block_index_log(const Ring& Fq) {
  const int f = Fq.f();
  std::uint64_t count = regular_rep_image_count(Fq);
  int k = 0;
  while (count > 1) {
    count /= Fq.p();
    ++k;
  }
  return f * f - k;
}

/// F_p-rank of lambda -> (first s columns of its regular representation).
inline int partial_block_rank(const Ring& Fq, int s) {
  const int f = Fq.f();
  if (s <= 0) return 0;
  Mat rows;
  for (int c = 0; c < f; ++c) {
    const auto m = Fq.regular_rep(Fq.basis_element(c));
    std::vector<Coeff> v;
    for (int a = 0; a < f; ++a)
      for (int b = 0; b < s; ++b) v.push_back(m[a][b]);
    rows.push_back(std::move(v));
  }
  return rank(*Ring::prime_field(Fq.p()), rows, f * s);
}

struct SandwichTerm {
  int n;
  std::int64_t log_order;  // log_p |H_n|, H = image of alpha_f at window n
  std::int64_t lower;      // f r(r-1)/2
  std::int64_t upper;      // f r(r+1)/2
  Rational a_n, lower_ratio, upper_ratio;  // each over n(n-1)/2
};

/// n = r f + s: r full block columns contribute f each per block, the partial
/// block column contributes the rank of the truncated regular representation.
inline SandwichTerm alpha_image_term(const Ring& Fq, int n) {
  if (n < 2) throw Error("n must be >= 2");
  const int f = Fq.f();
  const std::int64_t r = n / f, s = n % f;
  SandwichTerm t;
  t.n = n;
  t.log_order = f * r * (r - 1) / 2 + r * partial_block_rank(Fq, static_cast<int>(s));
  t.lower = f * r * (r - 1) / 2;
  t.upper = f * r * (r + 1) / 2;
  const BigInt denom = BigInt(n) * (n - 1) / 2;
  t.a_n = Rational(BigInt(t.log_order), denom);
  t.lower_ratio = Rational(BigInt(t.lower), denom);
  t.upper_ratio = Rational(BigInt(t.upper), denom);
  return t;
}

/// Generators of the alpha_f image truncated to window n over F_p.
inline std::vector<UniTriWindow> alpha_image_generators(const EmbeddingContext& ctx, int n) {
  const int blocks = (n + ctx.f() - 1) / ctx.f();
  std::vector<UniTriWindow> gens{UniTriWindow::identity(ctx.fp(), n)};
  for (const auto& g : standard_generators(ctx.fq(), std::max(blocks, 1))) gens.push_back(truncate(ctx.alpha(g), n));
  return gens;
}

/// log_q |K_n| for K = beta_f(G(p)): n(n-1)/(2f), a p-power rescaled by 1/f.
inline Rational beta_image_log_q(int n, int f) { return Rational(BigInt(n) * (n - 1), BigInt(2 * f)); }

struct CentralizerResult {
  int log_order;                   // dimension over the coefficient field
  std::vector<UniTriWindow> basis;  // 1 + B for B in a basis of the solution space
};

/// C(gens) inside G_n: x = 1 + X commutes with y = 1 + Y iff XY = YX, which
/// is linear in the strictly upper entries of X.
inline CentralizerResult centralizer_solve(const std::vector<UniTriWindow>& gens, const RingPtr& ring, int n) {
  const Ring& F = *ring;
  if (!F.is_field()) throw Error("centralizer solve needs a field");
  for (const auto& g : gens)
    if (g.n() != n || !same_ring(g.ring(), ring)) throw Error("generator window/ring mismatch");
  std::vector<std::pair<int, int>> var;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) var.emplace_back(i, j);
  const int nv = static_cast<int>(var.size());
  auto index = [&](int i, int j) { return static_cast<std::size_t>((i - 1) * (2 * n - i) / 2 + (j - i - 1)); };
  Mat eqs;
  for (const auto& y : gens) {
    // (XY - YX)_{ik} = sum_j X_ij Y_jk - sum_j Y_ij X_jk
    for (int i = 1; i <= n; ++i)
      for (int k = i + 2; k <= n; ++k) {
        std::vector<Coeff> row(static_cast<std::size_t>(nv), 0);
        bool any = false;
        for (int j = i + 1; j < k; ++j) {
          if (const Coeff c = y.get(j, k); c != 0) {
            auto& v = row[index(i, j)];
            v = F.add(v, c);
            any = true;
          }
          if (const Coeff c = y.get(i, j); c != 0) {
            auto& v = row[index(j, k)];
            v = F.sub(v, c);
            any = true;
          }
        }
        if (any) eqs.push_back(std::move(row));
      }
  }
  CentralizerResult res;
  const Mat ns = nullspace(F, eqs, nv);
  res.log_order = static_cast<int>(ns.size());
  for (const auto& v : ns) {
    UniTriWindow x(ring, n);
    for (int t = 0; t < nv; ++t) x.set(var[t].first, var[t].second, v[t]);
    res.basis.push_back(std::move(x));
  }
  return res;
}

/// Whether 1 + c e_ij lies in the centralizer for every c, judged on the solution basis.
inline bool centralizer_contains_square(const CentralizerResult& c, int i, int j) {
  if (c.basis.empty()) return false;
  const RingPtr& ring = c.basis.front().ring();
  const int n = c.basis.front().n();
  Mat rows;
  for (const auto& b : c.basis) {
    std::vector<Coeff> v;
    for (int r = 1; r <= n; ++r)
      for (int s = r + 1; s <= n; ++s) v.push_back(b.get(r, s));
    rows.push_back(std::move(v));
  }
  const int cols = n * (n - 1) / 2;
  const int before = rank(*ring, rows, cols);
  std::vector<Coeff> unit(static_cast<std::size_t>(cols), 0);
  unit[static_cast<std::size_t>((i - 1) * (2 * n - i) / 2 + (j - i - 1))] = 1;
  rows.push_back(unit);
  return rank(*ring, rows, cols) == before;
}

/// Support squares of the centralizer when it is spanned by unit matrices, else empty.
inline std::vector<Square> centralizer_support(const CentralizerResult& c, int n) {
  std::vector<Square> sq;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (centralizer_contains_square(c, i, j)) sq.push_back({i, j});
  if (static_cast<int>(sq.size()) != c.log_order) return {};
  return sq;
}

}  // namespace unitri
