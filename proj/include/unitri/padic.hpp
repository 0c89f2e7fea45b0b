#pragma once

// Truncations G_n(Z/p^l) of G(Z_p): the subgroups U_n(k), the filtration V_n,
// ideal partition subgroups P_mu(p^k Z_p) and their dimension sequences.

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/hausdorff.hpp"
#include "unitri/matrix.hpp"
#include "unitri/partition.hpp"
#include "unitri/rational.hpp"
#include "unitri/ring.hpp"

namespace unitri {

namespace detail {

inline const Ring& padic_ring(const UniTriWindow& x) {
  const Ring& R = *x.ring();
  if (R.kind() != RingKind::trunc_int) throw Error("expected an element over Z/p^k");
  return R;
}

inline std::uint64_t ipow(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

/// Squares of mu inside an n x n window, larger or smaller than mu's own.
template <class Mu>
std::vector<Square> window_squares(const Mu& mu, int n) {
  std::vector<Square> sq;
  for (int c = 2; c <= n; ++c)
    for (int r = 1; r < c; ++r) {
      bool in = false;
      if constexpr (std::is_same_v<Mu, Partition>)
        in = r <= mu.height(c);
      else
        in = mu.contains(r, c);
      if (in) sq.push_back({r, c});
    }
  return sq;
}

}  // namespace detail

/// Truncation level l of x over Z/p^l.
inline int level(const UniTriWindow& x) { return detail::padic_ring(x).k(); }

/// x lies in U_n(k): the leading n x n entries are divisible by p^k.
inline bool u_membership(const UniTriWindow& x, int n, int k) {
  const Ring& R = detail::padic_ring(x);
  if (k > R.k()) throw Error("k = " + std::to_string(k) + " exceeds the truncation level " + std::to_string(R.k()));
  if (n > x.n()) throw Error("n exceeds the window");
  if (k < 0 || n < 1) throw Error("need n >= 1 and k >= 0");
  const std::uint64_t pk = detail::ipow(R.p(), k);
  for (const auto& e : x.entries())
    if (e.j <= n && e.value % pk != 0) return false;
  return true;
}

/// Largest n <= min(window, level) with x in V_n = U_n(n).
inline int v_valuation(const UniTriWindow& x) {
  const int top = std::min(x.n(), level(x));
  int n = 1;
  while (n < top && u_membership(x, n + 1, n + 1)) ++n;
  return n;
}

/// Image in G_n(Z/p^k), k <= level.
inline UniTriWindow reduce(const UniTriWindow& x, int n, const RingPtr& target) {
  const Ring& R = detail::padic_ring(x);
  if (target->kind() != RingKind::trunc_int || target->p() != R.p()) throw Error("reduction target must be Z/p^k");
  if (target->k() > R.k()) throw Error("cannot lift to a finer truncation");
  if (n > x.n()) throw Error("n exceeds the window");
  UniTriWindow y(target, n);
  for (const auto& e : x.entries())
    if (e.j <= n) y.set(e.i, e.j, e.value % target->order());
  return y;
}

/// log_p of the number of V_m-cosets (m = max(n,k)) making up U_n(k):
/// within the leading m x m block, the n x n entries have m - k free digits
/// and the remaining entries m digits.
inline std::int64_t u_coset_log(int n, int k) {
  const std::int64_t m = std::max(n, k);
  const std::int64_t inner = std::int64_t{n} * (n - 1) / 2, outer = m * (m - 1) / 2 - inner;
  return (m - k) * inner + m * outer;
}

/// The same count as given by ranging g over G_m(p^k Z_p / p^m Z_p) with m = max(n,k).
inline std::int64_t u_coset_log_union_formula(int n, int k) {
  const std::int64_t m = std::max(n, k);
  const std::int64_t lo = std::min(n, k);
  return (m - lo) * (m * (m - 1) / 2);
}

/// Enumerates G_m(Z/p^m) and counts the elements in U_n(k).
inline std::uint64_t u_coset_count_enumerated(int n, int k, std::uint64_t p) {
  const int m = std::max(n, k);
  auto R = Ring::trunc_int(p, m);
  const int slots = m * (m - 1) / 2;
  std::vector<Coeff> digits(static_cast<std::size_t>(slots), 0);
  std::uint64_t count = 0;
  while (true) {
    UniTriWindow x(R, m);
    int t = 0;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j) x.set(i, j, digits[t++]);
    count += u_membership(x, n, k);
    int s = 0;
    while (s < slots && ++digits[s] == R->order()) digits[s++] = 0;
    if (s == slots) break;
  }
  return count;
}

struct IdealOrder {
  std::int64_t log_order;  // log_p |image of P_mu(p^k Z_p) in G_n(Z/p^n)|
  std::int64_t formula;    // (n-k) |mu|_n
  bool verified;           // log_order came from a complete closure
};

/// Generators 1 + p^k e_ij, (i,j) in mu, over Z/p^n.
template <class Mu>
std::vector<UniTriWindow> ideal_generators(const Mu& mu, int k, int n, std::uint64_t p) {
  auto R = Ring::trunc_int(p, n);
  const Coeff pk = detail::ipow(p, k);
  std::vector<UniTriWindow> gens{UniTriWindow::identity(R, n)};
  for (const auto& s : detail::window_squares(mu, n)) gens.push_back(UniTriWindow::elementary(R, n, s.r, s.c, pk));
  return gens;
}

/// Closure when p^formula fits under the cap, else the formula, flagged unverified.
template <class Mu>
IdealOrder ideal_partition_log_order(const Mu& mu, int k, int n, std::uint64_t p, std::uint64_t cap = default_closure_cap) {
  if (k < 0 || k >= n) throw Error("need 0 <= k < n");
  IdealOrder r;
  r.formula = static_cast<std::int64_t>(n - k) * count_upto(mu, n);
  r.log_order = r.formula;
  r.verified = false;
  const double est = static_cast<double>(r.formula) * std::log2(static_cast<double>(p));
  if (est > std::log2(static_cast<double>(cap))) return r;
  try {
    r.log_order = log_p_exact(closure_order(ideal_generators(mu, k, n, p), cap), p);
    r.verified = true;
  } catch (const ClosureCapExceeded&) {
  }
  return r;
}

struct PadicSequence {
  DimSequence seq;
  std::vector<bool> verified;
  /// k >= 1 and the sequence stays positive: at odds with the claimed dimension 0.
  bool zero_dimension_discrepancy = false;
  std::string note;
};

/// a_n = log_p |P_mu(p^k Z_p) V_n / V_n| / (n * n(n-1)/2), n = 2..N.
template <class Mu>
PadicSequence dim_sequence_padic(const Mu& mu, int k, int N, std::uint64_t p, std::uint64_t cap = 20'000) {
  if (N < 2) throw Error("N must be >= 2");
  if (k < 0) throw Error("k must be >= 0");
  PadicSequence out;
  out.seq.source = "p-adic k=" + std::to_string(k);
  for (int n = 2; n <= N; ++n) {
    std::int64_t log = 0;
    bool ver = true;
    if (k < n) {
      const auto r = ideal_partition_log_order(mu, k, n, p, cap);
      log = r.log_order;
      ver = r.verified;
    }
    // for k >= n the generators vanish mod p^n
    out.seq.terms.emplace_back(Rational(BigInt(log) * 2, BigInt(n) * n * (n - 1)));
    out.seq.counts.emplace_back(log);
    out.verified.push_back(ver);
  }
  attach_limit(out.seq);
  if (k >= 1 && out.seq.terms.back() > 0) {
    out.zero_dimension_discrepancy = true;
    out.note = "proper ideal: the sequence tends to the density of mu, not to 0";
  }
  return out;
}

/// A conjugate g^-1 h g (g = 1 + e_{r,r+1}, h an ideal generator) leaving the
/// mu-supported set, if any.
struct ConjugateViolation {
  Square generator;
  int row;
};

template <class Mu>
std::optional<ConjugateViolation> ideal_conjugate_violation(const Mu& mu, int k, int n, std::uint64_t p) {
  auto R = Ring::trunc_int(p, n);
  const Coeff pk = detail::ipow(p, k);
  const auto squares = detail::window_squares(mu, n);
  const PartitionDiagram dia(n, squares);
  for (const auto& s : squares) {
    const auto h = UniTriWindow::elementary(R, n, s.r, s.c, pk);
    for (int r = 1; r < n; ++r) {
      const auto g = UniTriWindow::elementary(R, n, r, r + 1, 1);
      for (const auto& y : {g.inverse() * h * g, g * h * g.inverse()}) {
        bool ok = membership(y, dia);
        for (const auto& e : y.entries()) ok = ok && e.value % pk == 0;
        if (!ok) return ConjugateViolation{s, r};
      }
    }
  }
  return std::nullopt;
}

}  // namespace unitri
