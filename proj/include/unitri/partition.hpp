#pragma once

// Partition diagrams, partitions and the calculus of partition subgroups.
//
// A diagram lives on a finite window of columns 2..N plus a tail describing
// every column beyond N as a full top segment of a given height. Partitions
// are recorded by their column heights mu_2, mu_3, ..., mu_N.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/matrix.hpp"
#include "unitri/rational.hpp"

namespace unitri {

struct Square {
  int r;
  int c;
  auto operator<=>(const Square&) const = default;
};

/// Column heights beyond the window: 0, a constant d, or j - c0.
struct Tail {
  enum class Kind { empty, constant, affine };
  Kind kind = Kind::empty;
  int value = 0;

  static Tail none() { return {}; }
  static Tail constant(int d) { return d == 0 ? Tail{} : Tail{Kind::constant, d}; }
  static Tail affine(int c0) { return {Kind::affine, c0}; }

  int height(int j) const {
    switch (kind) {
      case Kind::empty:
        return 0;
      case Kind::constant:
        return value;
      case Kind::affine:
        return std::max(0, j - value);
    }
    return 0;
  }

  /// Validates the tail against a window N (constant d <= N, affine c0 >= 1).
  void check(int window) const {
    if (kind == Kind::constant && (value < 0 || value > window))
      throw Error("constant tail must satisfy 0 <= d <= window");
    if (kind == Kind::affine && value < 1) throw Error("affine tail needs c0 >= 1");
  }

  bool operator==(const Tail&) const = default;
};

class PartitionDiagram {
 public:
  /// The squares must already be closed under completing rectangles.
  PartitionDiagram(int window, const std::vector<Square>& squares, Tail tail = {}) : N_(window), tail_(tail) {
    if (N_ < 2) throw Error("window must be >= 2");
    tail_.check(N_);
    grid_.assign(static_cast<std::size_t>(N_) * N_, 0);
    for (const auto& s : squares) {
      check_square(s);
      grid_[idx(s.r, s.c)] = 1;
    }
    if (!is_closed()) throw Error("squares are not closed under completing rectangles");
  }

  /// Least rectangle-closed superset of the squares.
  static PartitionDiagram closure(int window, const std::vector<Square>& squares, Tail tail = {}) {
    PartitionDiagram d(Blank{}, window, Tail{});
    d.tail_ = tail;
    d.tail_.check(window);
    for (const auto& s : squares) {
      d.check_square(s);
      d.grid_[d.idx(s.r, s.c)] = 1;
    }
    d.close();
    return d;
  }

  /// Every square, every column.
  static PartitionDiagram full(int window) {
    PartitionDiagram d(Blank{}, window, Tail::affine(1));
    for (int c = 2; c <= window; ++c)
      for (int r = 1; r < c; ++r) d.grid_[d.idx(r, c)] = 1;
    return d;
  }

  int window() const noexcept { return N_; }
  const Tail& tail() const noexcept { return tail_; }

  bool contains(int r, int c) const {
    if (r < 1 || c <= r) return false;
    if (c <= N_) return grid_[idx(r, c)] != 0;
    return r <= tail_.height(c);
  }

  /// Squares inside the window, column-major.
  std::vector<Square> squares() const {
    std::vector<Square> out;
    for (int c = 2; c <= N_; ++c)
      for (int r = 1; r < c; ++r)
        if (grid_[idx(r, c)]) out.push_back({r, c});
    return out;
  }

  int column_count(int c) const {
    if (c > N_) return tail_.height(c);
    int k = 0;
    for (int r = 1; r < c; ++r) k += grid_[idx(r, c)];
    return k;
  }

  /// Same set of squares on a window M >= N (tail columns materialized).
  PartitionDiagram with_window(int M) const {
    if (M < N_) throw Error("cannot shrink a diagram window");
    PartitionDiagram d(Blank{}, M, tail_);
    for (int c = 2; c <= M; ++c)
      for (int r = 1; r < c; ++r)
        if (contains(r, c)) d.grid_[d.idx(r, c)] = 1;
    return d;
  }

  friend bool operator==(const PartitionDiagram& a, const PartitionDiagram& b) {
    const int M = std::max(a.N_, b.N_);
    if (a.N_ != M) return a.with_window(M) == b;
    if (b.N_ != M) return a == b.with_window(M);
    return a.grid_ == b.grid_ && a.tail_ == b.tail_;
  }

 private:
  struct Blank {};
  PartitionDiagram(Blank, int window, Tail tail) : N_(window), tail_(tail) {
    if (N_ < 2) throw Error("window must be >= 2");
    grid_.assign(static_cast<std::size_t>(N_) * N_, 0);
  }

  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r - 1) * N_ + (c - 1); }

  void check_square(const Square& s) const {
    if (s.r < 1 || s.c <= s.r || s.c > N_)
      throw Error("square (" + std::to_string(s.r) + "," + std::to_string(s.c) + ") outside window " +
                  std::to_string(N_));
  }

  bool is_closed() const {
    for (int i = 1; i <= N_; ++i)
      for (int j = i + 1; j <= N_; ++j) {
        if (!grid_[idx(i, j)]) continue;
        for (int k = j + 1; k <= N_; ++k)
          if (grid_[idx(j, k)] && !grid_[idx(i, k)]) return false;
      }
    return true;
  }

  void close() {
    // (i,j),(j,k) => (i,k); iterating j in increasing order reaches the fixpoint
    // in one pass per j since new squares (i,k) only feed later middles.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 2; j < N_; ++j)
        for (int i = 1; i < j; ++i) {
          if (!grid_[idx(i, j)]) continue;
          for (int k = j + 1; k <= N_; ++k)
            if (grid_[idx(j, k)] && !grid_[idx(i, k)]) {
              grid_[idx(i, k)] = 1;
              changed = true;
            }
        }
    }
  }

  int N_;
  std::vector<char> grid_;
  Tail tail_;
};

/// Column heights mu_2..mu_N plus a tail. Every column is a full top segment.
class Partition {
 public:
  explicit Partition(std::vector<int> parts, Tail tail = {}) : parts_(std::move(parts)), tail_(tail) {
    if (parts_.empty()) throw Error("a partition needs at least the part mu_2");
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      const int j = static_cast<int>(k) + 2;
      if (parts_[k] < 0 || parts_[k] > j - 1)
        throw Error("part mu_" + std::to_string(j) + " = " + std::to_string(parts_[k]) + " outside [0, " +
                    std::to_string(j - 1) + "]");
    }
    tail_.check(window());
  }

  int window() const noexcept { return static_cast<int>(parts_.size()) + 1; }
  const std::vector<int>& parts() const noexcept { return parts_; }
  const Tail& tail() const noexcept { return tail_; }

  /// mu_j for any j >= 2 (tail beyond the window); mu_1 = 0.
  int height(int j) const {
    if (j < 2) return 0;
    if (j <= window()) return parts_[j - 2];
    return tail_.height(j);
  }

  PartitionDiagram diagram() const {
    std::vector<Square> sq;
    for (int j = 2; j <= window(); ++j)
      for (int r = 1; r <= height(j); ++r) sq.push_back({r, j});
    return PartitionDiagram(window(), sq, tail_);
  }

  Partition with_window(int M) const {
    if (M < window()) throw Error("cannot shrink a partition window");
    std::vector<int> p;
    for (int j = 2; j <= M; ++j) p.push_back(height(j));
    return Partition(std::move(p), tail_);
  }

  /// The partition recorded by a diagram whose columns are full top segments.
  static std::optional<Partition> from_diagram(const PartitionDiagram& d) {
    std::vector<int> p;
    for (int c = 2; c <= d.window(); ++c) {
      int h = 0;
      while (h + 1 < c && d.contains(h + 1, c)) ++h;
      if (d.column_count(c) != h) return std::nullopt;
      p.push_back(h);
    }
    return Partition(std::move(p), d.tail());
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    const int M = std::max(a.window(), b.window());
    for (int j = 2; j <= M; ++j)
      if (a.height(j) != b.height(j)) return false;
    return a.tail_ == b.tail_;
  }

 private:
  std::vector<int> parts_;
  Tail tail_;
};

// ---------------------------------------------------------------------------
// Lattice

inline PartitionDiagram rect_closure(const std::vector<Square>& squares, int window) {
  return PartitionDiagram::closure(window, squares);
}

namespace detail {

/// Combined tail for pointwise max (want_max) or min of heights, and the least
/// window from which that combination has the returned shape.
inline std::pair<Tail, int> combine_tails(const Tail& a, const Tail& b, bool want_max, int window) {
  using K = Tail::Kind;
  if (a.kind == K::empty) return {want_max ? b : a, window};
  if (b.kind == K::empty) return {want_max ? a : b, window};
  if (a.kind == b.kind) {
    if (a.kind == K::constant) return {Tail::constant(want_max ? std::max(a.value, b.value) : std::min(a.value, b.value)), window};
    return {Tail::affine(want_max ? std::min(a.value, b.value) : std::max(a.value, b.value)), window};
  }
  const Tail& c = a.kind == K::constant ? a : b;
  const Tail& f = a.kind == K::affine ? a : b;
  // j - c0 >= d exactly when j >= d + c0
  const int from = std::max(window, c.value + f.value - 1);
  return {want_max ? f : c, from};
}

}  // namespace detail

/// Smallest diagram containing both; windows are aligned by extension.
inline PartitionDiagram lattice_union(const PartitionDiagram& a, const PartitionDiagram& b) {
  auto [tail, M] = detail::combine_tails(a.tail(), b.tail(), true, std::max(a.window(), b.window()));
  const auto A = a.with_window(M), B = b.with_window(M);
  auto sq = A.squares();
  const auto sb = B.squares();
  sq.insert(sq.end(), sb.begin(), sb.end());
  return PartitionDiagram::closure(M, sq, tail);
}

inline PartitionDiagram lattice_intersect(const PartitionDiagram& a, const PartitionDiagram& b) {
  auto [tail, M] = detail::combine_tails(a.tail(), b.tail(), false, std::max(a.window(), b.window()));
  const auto A = a.with_window(M), B = b.with_window(M);
  std::vector<Square> sq;
  for (const auto& s : A.squares())
    if (B.contains(s.r, s.c)) sq.push_back(s);
  return PartitionDiagram(M, sq, tail);
}

/// Heights of the full top segments contained in each column.
inline Partition max_subpartition(const PartitionDiagram& mu) {
  std::vector<int> p;
  for (int c = 2; c <= mu.window(); ++c) {
    int h = 0;
    while (h + 1 < c && mu.contains(h + 1, c)) ++h;
    p.push_back(h);
  }
  return Partition(std::move(p), mu.tail());
}

// ---------------------------------------------------------------------------
// Orthogonal diagram and centre

struct TailedResult {
  PartitionDiagram diagram;
  /// False when the columns past the window follow no expressible tail; the
  /// diagram is then exact on its window only and carries an empty tail.
  bool tail_exact;
};

namespace detail {

/// Reads a tail off a square predicate by scanning columns N+1..3N+3.
inline std::optional<Tail> infer_tail(const std::function<bool(int, int)>& pred, int N) {
  const int horizon = 3 * N + 3;
  std::vector<int> h;
  for (int c = N + 1; c <= horizon; ++c) {
    int k = 0;
    while (k + 1 < c && pred(k + 1, c)) ++k;
    for (int r = k + 1; r < c; ++r)
      if (pred(r, c)) return std::nullopt;
    h.push_back(k);
  }
  if (std::all_of(h.begin(), h.end(), [&](int v) { return v == h.front(); }))
    return h.front() <= N ? std::optional<Tail>(Tail::constant(h.front())) : std::nullopt;
  const int c0 = horizon - h.back();
  if (c0 < 1) return std::nullopt;
  for (int c = N + 1; c <= horizon; ++c)
    if (h[c - N - 1] != std::max(0, c - c0)) return std::nullopt;
  return Tail::affine(c0);
}

inline TailedResult diagram_from_predicate(const std::function<bool(int, int)>& pred, int N) {
  std::vector<Square> sq;
  for (int c = 2; c <= N; ++c)
    for (int r = 1; r < c; ++r)
      if (pred(r, c)) sq.push_back({r, c});
  auto tail = infer_tail(pred, N);
  return {PartitionDiagram::closure(N, sq, tail.value_or(Tail{})), tail.has_value()};
}

/// Column index k carries a square of mu.
inline bool is_column_of(const PartitionDiagram& mu, int k) { return mu.column_count(k) > 0; }

/// Row index l carries a square of mu (tail rows included).
inline bool is_row_of(const PartitionDiagram& mu, int l) {
  for (int c = l + 1; c <= mu.window(); ++c)
    if (mu.contains(l, c)) return true;
  switch (mu.tail().kind) {
    case Tail::Kind::empty:
      return false;
    case Tail::Kind::constant:
      return l <= mu.tail().value;
    case Tail::Kind::affine:
      return true;
  }
  return false;
}

}  // namespace detail

/// mu-perp: squares (k,l) with k never a column and l never a row of mu.
inline TailedResult orthogonal(const PartitionDiagram& mu) {
  const int N = mu.window();
  std::vector<char> col(static_cast<std::size_t>(3 * N + 5), 0), row(col.size(), 0);
  for (std::size_t k = 1; k < col.size(); ++k) {
    col[k] = detail::is_column_of(mu, static_cast<int>(k));
    row[k] = detail::is_row_of(mu, static_cast<int>(k));
  }
  auto pred = [&](int k, int l) {
    return k < l && !col[static_cast<std::size_t>(k)] && !row[static_cast<std::size_t>(l)];
  };
  return detail::diagram_from_predicate(pred, N);
}

/// zeta_mu = mu intersected with mu-perp.
inline TailedResult centre(const PartitionDiagram& mu) {
  const int N = mu.window();
  std::vector<char> col(static_cast<std::size_t>(3 * N + 5), 0), row(col.size(), 0);
  for (std::size_t k = 1; k < col.size(); ++k) {
    col[k] = detail::is_column_of(mu, static_cast<int>(k));
    row[k] = detail::is_row_of(mu, static_cast<int>(k));
  }
  auto pred = [&](int k, int l) {
    return mu.contains(k, l) && !col[static_cast<std::size_t>(k)] && !row[static_cast<std::size_t>(l)];
  };
  return detail::diagram_from_predicate(pred, N);
}

// ---------------------------------------------------------------------------
// Normality

/// Partition with non-decreasing heights, tail included.
inline bool is_normal(const Partition& mu) {
  for (int j = 2; j <= mu.window(); ++j)
    if (mu.height(j + 1) < mu.height(j)) return false;
  return true;
}

inline bool is_normal(const PartitionDiagram& mu) {
  auto p = Partition::from_diagram(mu);
  return p && is_normal(*p);
}

/// Open subgroups contain every square beyond some column.
inline bool is_open(const PartitionDiagram& mu) {
  return mu.tail().kind == Tail::Kind::affine && mu.tail().value == 1;
}
inline bool is_open(const Partition& mu) { return mu.tail().kind == Tail::Kind::affine && mu.tail().value == 1; }

/// Largest normal partition inside mu: mu'_j = min_{k >= j} lambda_k.
inline Partition normal_core(const PartitionDiagram& mu) {
  const Partition lam = max_subpartition(mu);
  const int N = lam.window();
  std::vector<int> p(static_cast<std::size_t>(N - 1));
  int run = lam.tail().kind == Tail::Kind::empty ? 0 : lam.height(N + 1);
  for (int j = N; j >= 2; --j) {
    run = std::min(run, lam.height(j));
    p[j - 2] = run;
  }
  return Partition(std::move(p), lam.tail());
}

/// Smallest normal partition containing mu: mu''_j = max{r : (r,c) in mu, c <= j}.
inline Partition normal_closure(const PartitionDiagram& mu) {
  int N = mu.window();
  int top = 0;
  std::vector<int> p;
  for (int c = 2; c <= N; ++c) {
    for (int r = c - 1; r > top; --r)
      if (mu.contains(r, c)) {
        top = r;
        break;
      }
    p.push_back(top);
  }
  const Tail& t = mu.tail();
  switch (t.kind) {
    case Tail::Kind::empty:
      return Partition(std::move(p), Tail::constant(top));
    case Tail::Kind::constant:
      return Partition(std::move(p), Tail::constant(std::max(top, t.value)));
    case Tail::Kind::affine: {
      // extend until the affine heights dominate the running maximum
      while (t.height(N + 1) < top) {
        ++N;
        top = std::max(top, t.height(N));
        p.push_back(top);
      }
      return Partition(std::move(p), t);
    }
  }
  return Partition(std::move(p));
}

inline void require_normal(const Partition& mu) {
  if (!is_normal(mu)) throw Error("partition is not normal (heights must be non-decreasing)");
}

/// [P_mu, G] = P_mu' where mu' holds the squares strictly covered by mu:
/// mu'_l = max(mu_{l-1}, mu_l - 1).
inline Partition bracket_with_G(const Partition& mu) {
  require_normal(mu);
  const int M = mu.window() + 1;
  std::vector<int> p;
  for (int l = 2; l <= M; ++l) p.push_back(std::max(mu.height(l - 1), mu.height(l) - 1));
  Tail t = mu.tail();
  if (t.kind == Tail::Kind::affine) t = Tail::affine(t.value + 1);
  return Partition(std::move(p), t);
}

/// Squares all of whose strictly covered squares lie in mu:
/// hat_j = min(mu_{j+1}, mu_j + 1), capped at j - 1.
inline Partition center_preimage(const Partition& mu) {
  require_normal(mu);
  std::vector<int> p;
  for (int j = 2; j <= mu.window(); ++j) p.push_back(std::min({mu.height(j + 1), mu.height(j) + 1, j - 1}));
  Tail t = mu.tail();
  if (t.kind == Tail::Kind::affine) t = Tail::affine(std::max(t.value - 1, 1));
  return Partition(std::move(p), t);
}

// ---------------------------------------------------------------------------
// Counting and membership

/// |mu|_n: squares in columns up to and including n.
inline std::int64_t count_upto(const PartitionDiagram& mu, int n) {
  std::int64_t k = 0;
  for (int c = 2; c <= n; ++c) k += mu.column_count(c);
  return k;
}

inline std::int64_t count_upto(const Partition& mu, int n) {
  std::int64_t k = 0;
  for (int c = 2; c <= n; ++c) k += mu.height(c);
  return k;
}

/// |P_mu N_n / N_n| = q^{|mu|_n}
template <class Mu>
BigInt quotient_order(const Mu& mu, int n, const Ring& ring) {
  return big_pow(ring.order(), static_cast<std::uint64_t>(count_upto(mu, n)));
}

inline bool membership(const UniTriWindow& x, const PartitionDiagram& mu) {
  for (const auto& e : x.entries())
    if (!mu.contains(e.i, e.j)) return false;
  return true;
}

/// Generators 1 + b e_rc of the window truncation of P_mu, b over the F_p-basis.
inline std::vector<UniTriWindow> materialize(const PartitionDiagram& mu, const RingPtr& ring, int n) {
  std::vector<UniTriWindow> gens{UniTriWindow::identity(ring, n)};
  const int f = ring->kind() == RingKind::ext_field ? ring->f() : 1;
  for (int c = 2; c <= n; ++c)
    for (int r = 1; r < c; ++r)
      if (mu.contains(r, c))
        for (int b = 0; b < f; ++b) gens.push_back(UniTriWindow::elementary(ring, n, r, c, ring->basis_element(b)));
  return gens;
}

// ---------------------------------------------------------------------------
// Named families

/// gamma_d(G): heights (0^{d-1}, 1, 2, ...).
inline Partition gamma(int d) {
  if (d < 1) throw Error("gamma needs d >= 1");
  return Partition({std::max(0, 2 - d)}, Tail::affine(d));
}

/// G^{(d)}: offset 2^{d-1}.
inline Partition derived(int d) {
  if (d < 1 || d > 30) throw Error("derived needs 1 <= d <= 30");
  const int c0 = 1 << (d - 1);
  return Partition({std::max(0, 2 - c0)}, Tail::affine(c0));
}

/// (0^c, d, d, ...): columns 2..c+1 empty, constant height d after.
inline Partition rectangular(int c, int d) {
  if (c < 1 || d < 1 || d > c) throw Error("rectangular needs 1 <= d <= c");
  return Partition(std::vector<int>(static_cast<std::size_t>(c), 0), Tail::constant(d));
}

/// N_c: the leading c x c block vanishes, every later column is full.
inline Partition filtration(int c) {
  if (c < 1) throw Error("filtration needs c >= 1");
  if (c == 1) return Partition({1}, Tail::affine(1));
  return Partition(std::vector<int>(static_cast<std::size_t>(c - 1), 0), Tail::affine(1));
}

/// Staircase complementing the block-diagonal product of G_{n_1}, G_{n_2}, ...:
/// a column in block b has height n_1 + ... + n_{b-1}. Past the window the next
/// block is unbounded.
inline Partition string_blocks(const std::vector<int>& blocks) {
  if (blocks.empty()) throw Error("need at least one block");
  std::vector<int> p;
  int start = 0;
  for (int b : blocks) {
    if (b < 1) throw Error("block sizes must be positive");
    for (int k = 0; k < b; ++k)
      if (start + k + 1 >= 2) p.push_back(start);
    start += b;
  }
  if (p.empty()) p.push_back(0);
  return Partition(std::move(p), Tail::constant(start));
}

/// x = p * s with s block-diagonal and p in the staircase subgroup.
inline std::pair<UniTriWindow, UniTriWindow> string_decompose(const UniTriWindow& x, const std::vector<int>& blocks) {
  int total = 0;
  for (int b : blocks) {
    if (b < 1) throw Error("block sizes must be positive");
    total += b;
  }
  if (total != x.n()) throw Error("block sizes sum to " + std::to_string(total) + ", window is " + std::to_string(x.n()));
  std::vector<int> block_of(static_cast<std::size_t>(total) + 1);
  int j = 1;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int k = 0; k < blocks[b]; ++k) block_of[j++] = static_cast<int>(b);
  UniTriWindow s(x.ring(), x.n());
  for (const auto& e : x.entries())
    if (block_of[e.i] == block_of[e.j]) s.set(e.i, e.j, e.value);
  return {x * s.inverse(), s};
}

// ---------------------------------------------------------------------------
// Text form: (0^2,1^2,2^3|tail=const:2)

inline std::string tail_text(const Tail& t) {
  switch (t.kind) {
    case Tail::Kind::empty:
      return "empty";
    case Tail::Kind::constant:
      return "const:" + std::to_string(t.value);
    case Tail::Kind::affine:
      return "affine:" + std::to_string(t.value);
  }
  return {};
}

inline std::string to_string(const Partition& mu) {
  std::string out = "(";
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size();) {
    std::size_t k = i;
    while (k < p.size() && p[k] == p[i]) ++k;
    if (i) out += ",";
    out += std::to_string(p[i]) + "^" + std::to_string(k - i);
    i = k;
  }
  return out + "|tail=" + tail_text(mu.tail()) + ")";
}

inline Tail parse_tail(const std::string& s) {
  auto num = [&](const std::string& v) {
    std::size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(v, &pos);
    } catch (const std::exception&) {
      throw Error("bad tail '" + s + "'");
    }
    if (pos != v.size()) throw Error("bad tail '" + s + "'");
    return x;
  };
  if (s == "empty") return {};
  if (s.rfind("const:", 0) == 0) return Tail::constant(num(s.substr(6)));
  if (s.rfind("affine:", 0) == 0) return Tail::affine(num(s.substr(7)));
  throw Error("bad tail '" + s + "'");
}

inline Partition parse_partition(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw Error("partition must be written (parts|tail=...)");
  s = s.substr(1, s.size() - 2);
  Tail tail;
  if (auto bar = s.find('|'); bar != std::string::npos) {
    const std::string t = s.substr(bar + 1);
    if (t.rfind("tail=", 0) != 0) throw Error("expected tail=... after '|'");
    tail = parse_tail(t.substr(5));
    s = s.substr(0, bar);
  }
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw Error("empty part in partition");
    int v = 0, rep = 1;
    try {
      const auto caret = tok.find('^');
      std::size_t pos = 0;
      v = std::stoi(tok.substr(0, caret), &pos);
      if (pos != (caret == std::string::npos ? tok.size() : caret)) throw Error("");
      if (caret != std::string::npos) {
        rep = std::stoi(tok.substr(caret + 1), &pos);
        if (pos != tok.size() - caret - 1) throw Error("");
      }
    } catch (const std::exception&) {
      throw Error("bad part '" + tok + "'");
    }
    if (rep < 1) throw Error("bad repeat count in '" + tok + "'");
    parts.insert(parts.end(), static_cast<std::size_t>(rep), v);
  }
  return Partition(std::move(parts), tail);
}

}  // namespace unitri
