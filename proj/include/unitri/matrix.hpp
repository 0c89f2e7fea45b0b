#pragma once

// n x n upper unitriangular matrices over a coefficient ring, the filtration
// valuation and group closure enumeration.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <stop_token>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/rational.hpp"
#include "unitri/ring.hpp"

namespace unitri {

/// One strictly upper entry (i, j, value), indices 1-based.
struct Entry {
  int i;
  int j;
  Coeff value;
  bool operator==(const Entry&) const = default;
};

/// Window of the infinite unitriangular group: diagonal 1, entries (i, j) for
/// 1 <= i < j <= n. Entries are stored packed row by row.
class UniTriWindow {
 public:
  UniTriWindow(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {
    if (!ring_) throw Error("null ring descriptor");
    if (n_ < 1) throw Error("window must be >= 1");
    data_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0);
  }

  static UniTriWindow identity(RingPtr ring, int n) { return {std::move(ring), n}; }

  /// 1 + a e_{ij}
  static UniTriWindow elementary(RingPtr ring, int n, int i, int j, Coeff a) {
    UniTriWindow x(std::move(ring), n);
    x.set(i, j, a);
    return x;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  int n() const noexcept { return n_; }

  Coeff get(int i, int j) const {
    check_index(i, j);
    return data_[offset(i, j)];
  }

  void set(int i, int j, Coeff a) {
    check_index(i, j);
    if (!ring_->contains(a)) throw Error("coefficient out of canonical range");
    data_[offset(i, j)] = a;
  }

  bool is_identity() const {
    for (Coeff c : data_)
      if (c != 0) return false;
    return true;
  }

  /// Nonzero entries in row-major order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if (Coeff c = data_[offset(i, j)]; c != 0) out.push_back({i, j, c});
    return out;
  }

  friend bool operator==(const UniTriWindow& a, const UniTriWindow& b) {
    return a.n_ == b.n_ && same_ring(a.ring_, b.ring_) && a.data_ == b.data_;
  }

  friend UniTriWindow operator*(const UniTriWindow& x, const UniTriWindow& y) {
    x.check_compatible(y);
    const Ring& R = *x.ring_;
    const int n = x.n_;
    UniTriWindow z(x.ring_, n);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        Coeff acc = R.add(x.data_[offset(n, i, j)], y.data_[offset(n, i, j)]);
        for (int k = i + 1; k < j; ++k) {
          const Coeff a = x.data_[offset(n, i, k)];
          if (a == 0) continue;
          const Coeff b = y.data_[offset(n, k, j)];
          if (b != 0) acc = R.add(acc, R.mul(a, b));
        }
        z.data_[offset(n, i, j)] = acc;
      }
    }
    return z;
  }

  UniTriWindow& operator*=(const UniTriWindow& y) { return *this = *this * y; }

  /// Back substitution: z_ij = -x_ij - sum_{i<k<j} x_ik z_kj, rows bottom-up.
  UniTriWindow inverse() const {
    const Ring& R = *ring_;
    UniTriWindow z(ring_, n_);
    for (int i = n_ - 1; i >= 1; --i) {
      for (int j = i + 1; j <= n_; ++j) {
        Coeff acc = data_[offset(i, j)];
        for (int k = i + 1; k < j; ++k) {
          const Coeff a = data_[offset(i, k)];
          if (a == 0) continue;
          const Coeff b = z.data_[offset(k, j)];
          if (b != 0) acc = R.add(acc, R.mul(a, b));
        }
        z.data_[offset(i, j)] = R.neg(acc);
      }
    }
    return z;
  }

  UniTriWindow pow(std::uint64_t e) const {
    UniTriWindow r(ring_, n_);
    UniTriWindow b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Canonical bit-packed string of the entries; equal keys iff equal matrices.
  std::string key() const {
    const int bits = code_bits();
    std::string s((data_.size() * bits + 7) / 8, '\0');
    std::size_t pos = 0;
    for (Coeff c : data_)
      for (int b = 0; b < bits; ++b, ++pos)
        if (c >> b & 1) s[pos / 8] = static_cast<char>(s[pos / 8] | (1 << (pos % 8)));
    return s;
  }

  static UniTriWindow from_key(RingPtr ring, int n, const std::string& key) {
    UniTriWindow x(std::move(ring), n);
    const int bits = x.code_bits();
    std::size_t pos = 0;
    for (Coeff& c : x.data_) {
      c = 0;
      for (int b = 0; b < bits; ++b, ++pos)
        if (key[pos / 8] >> (pos % 8) & 1) c |= Coeff{1} << b;
    }
    return x;
  }

  void check_compatible(const UniTriWindow& o) const {
    if (n_ != o.n_) throw Error("window mismatch (" + std::to_string(n_) + " vs " + std::to_string(o.n_) + ")");
    if (!same_ring(ring_, o.ring_)) throw Error("ring descriptor mismatch");
  }

  const std::vector<Coeff>& raw() const noexcept { return data_; }

 private:
  static std::size_t offset(int n, int i, int j) {
    return static_cast<std::size_t>(i - 1) * (2 * n - i) / 2 + static_cast<std::size_t>(j - i - 1);
  }
  std::size_t offset(int i, int j) const { return offset(n_, i, j); }

  void check_index(int i, int j) const {
    if (i < 1 || j > n_ || i >= j)
      throw Error("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside window " +
                  std::to_string(n_));
  }

  int code_bits() const {
    const std::uint64_t top = ring_->order() - 1;
    int w = 1;
    while (w < 64 && (top >> w) != 0) ++w;
    return w;
  }

  RingPtr ring_;
  int n_;
  std::vector<Coeff> data_;
};

/// x^{-1} y^{-1} x y
inline UniTriWindow commutator(const UniTriWindow& x, const UniTriWindow& y) {
  x.check_compatible(y);
  return x.inverse() * y.inverse() * x * y;
}

/// Largest m such that the leading m x m block of x is the identity. Returns n
/// for the identity window (indistinguishable from 1 at this truncation).
inline int valuation(const UniTriWindow& x) {
  int best = x.n();
  for (const auto& e : x.entries()) best = std::min(best, e.j - 1);
  return best;
}

struct MetricConfig {
  Rational epsilon;

  explicit MetricConfig(Rational eps) : epsilon(std::move(eps)) {
    if (epsilon <= 0 || epsilon >= 1) throw Error("epsilon must lie in (0,1)");
  }
  static MetricConfig for_ring(const Ring& R) { return MetricConfig(Rational(1, R.p())); }
};

/// eps^valuation(x^{-1} y); 0 when x and y agree on the window.
inline Rational distance(const UniTriWindow& x, const UniTriWindow& y, const MetricConfig& m) {
  const UniTriWindow d = x.inverse() * y;
  if (d.is_identity()) return 0;
  Rational r = 1;
  for (int k = 0; k < valuation(d); ++k) r *= m.epsilon;
  return r;
}

/// Drops the first d rows and columns.
inline UniTriWindow shift(const UniTriWindow& x, int d) {
  if (d < 0 || d >= x.n()) throw Error("shift must satisfy 0 <= d < n");
  UniTriWindow y(x.ring(), x.n() - d);
  for (const auto& e : x.entries())
    if (e.i > d) y.set(e.i - d, e.j - d, e.value);
  return y;
}

/// Leading m x m block.
inline UniTriWindow truncate(const UniTriWindow& x, int m) {
  if (m < 1 || m > x.n()) throw Error("truncation window must lie in [1, n]");
  UniTriWindow y(x.ring(), m);
  for (const auto& e : x.entries())
    if (e.j <= m) y.set(e.i, e.j, e.value);
  return y;
}

/// x_{ij} = x_{i+d,j+d} wherever both squares lie in the window.
inline bool is_periodic(const UniTriWindow& x, int d) {
  if (d < 1) throw Error("period must be >= 1");
  for (int i = 1; i <= x.n(); ++i)
    for (int j = i + 1; j + d <= x.n(); ++j)
      if (x.get(i, j) != x.get(i + d, j + d)) return false;
  return true;
}

inline UniTriWindow random_element(const RingPtr& ring, int n, std::mt19937_64& rng) {
  UniTriWindow x(ring, n);
  std::uniform_int_distribution<Coeff> dist(0, ring->order() - 1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) x.set(i, j, dist(rng));
  return x;
}

/// Superdiagonal generators 1 + b e_{i,i+1} for b running over the F_p-basis
/// of the ring (the single element 1 for Z/p^k and F_p).
inline std::vector<UniTriWindow> standard_generators(const RingPtr& ring, int n) {
  std::vector<UniTriWindow> gens;
  const int f = ring->kind() == RingKind::ext_field ? ring->f() : 1;
  for (int i = 1; i < n; ++i)
    for (int c = 0; c < f; ++c) gens.push_back(UniTriWindow::elementary(ring, n, i, i + 1, ring->basis_element(c)));
  return gens;
}

inline constexpr std::uint64_t default_closure_cap = 2'000'000;

namespace detail {

template <class Visit>
void closure_bfs(const std::vector<UniTriWindow>& gens, std::uint64_t cap, std::stop_token stop, Visit&& visit) {
  if (gens.empty()) throw Error("closure needs at least one generator (use the identity)");
  for (const auto& g : gens) gens.front().check_compatible(g);
  const RingPtr& ring = gens.front().ring();
  const int n = gens.front().n();
  const UniTriWindow one = UniTriWindow::identity(ring, n);
  // the frontier is kept as keys; they fit the small-string buffer for the
  // windows in reach, so neither set nor queue allocates per element
  std::unordered_set<std::string> seen;
  std::deque<std::string> queue;
  seen.insert(one.key());
  queue.push_back(one.key());
  visit(one);
  std::uint64_t expansions = 0;
  while (!queue.empty()) {
    const UniTriWindow x = UniTriWindow::from_key(ring, n, queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      if (++expansions % 10'000 == 0 && stop.stop_requested()) throw Cancelled();
      const UniTriWindow y = x * g;
      auto [it, fresh] = seen.insert(y.key());
      if (fresh) {
        if (seen.size() > cap) throw ClosureCapExceeded(seen.size(), cap);
        visit(y);
        queue.push_back(*it);
      }
    }
  }
}

}  // namespace detail

/// Order of the subgroup generated by gens, by breadth-first closure under
/// right multiplication (finite, so the monoid closure is the group).
inline std::uint64_t closure_order(const std::vector<UniTriWindow>& gens, std::uint64_t cap = default_closure_cap,
                                   std::stop_token stop = {}) {
  std::uint64_t count = 0;
  detail::closure_bfs(gens, cap, stop, [&](const UniTriWindow&) { ++count; });
  return count;
}

/// All elements of the generated subgroup, identity first.
inline std::vector<UniTriWindow> closure_elements(const std::vector<UniTriWindow>& gens,
                                                  std::uint64_t cap = default_closure_cap, std::stop_token stop = {}) {
  std::vector<UniTriWindow> out;
  detail::closure_bfs(gens, cap, stop, [&](const UniTriWindow& x) { out.push_back(x); });
  return out;
}

/// Exact F_p-logarithm of the order of <gens> for field coefficients, via a
/// polycyclic sifting table along the refinement of the lower central series
/// ordered by (superdiagonal, row, power-basis digit). No enumeration, so any
/// window size is in reach.
inline int polycyclic_log_order(const std::vector<UniTriWindow>& gens) {
  if (gens.empty()) return 0;
  for (const auto& g : gens) gens.front().check_compatible(g);
  const RingPtr& ring = gens.front().ring();
  if (!ring->is_field()) throw Error("polycyclic order requires a field");
  const int n = gens.front().n();
  const int f = ring->f();
  const std::uint64_t p = ring->p();

  auto lead = [&](const UniTriWindow& x) -> std::tuple<int, std::uint64_t> {
    int slot = 0;
    for (int d = 1; d < n; ++d)
      for (int i = 1; i + d <= n; ++i) {
        const auto dig = ring->digits(x.get(i, i + d));
        for (int c = 0; c < f; ++c, ++slot)
          if (dig[c] != 0) return {slot, dig[c]};
      }
    return {-1, 0};
  };

  std::vector<std::optional<UniTriWindow>> table(static_cast<std::size_t>(n) * (n - 1) / 2 * f);
  std::vector<UniTriWindow> members;
  std::deque<UniTriWindow> pending(gens.begin(), gens.end());
  while (!pending.empty()) {
    UniTriWindow g = std::move(pending.front());
    pending.pop_front();
    for (;;) {
      auto [slot, v] = lead(g);
      if (slot < 0) break;
      if (table[slot]) {
        g = g * table[slot]->pow(p - v);
        continue;
      }
      UniTriWindow h = g.pow(detail::powmod(v, p - 2, p));
      for (const auto& m : members) pending.push_back(commutator(h, m));
      pending.push_back(h.pow(p));
      table[slot] = h;
      members.push_back(h);
      break;
    }
  }
  return static_cast<int>(members.size());
}

}  // namespace unitri
