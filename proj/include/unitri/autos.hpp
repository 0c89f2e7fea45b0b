#pragma once

// Automorphisms of G_n(q): the flip tau, field automorphisms, diagonal and
// inner conjugation, central maps and extremal maps, plus the machinery that
// extends a table of generator images to a map on all of G_n(q).

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/linalg.hpp"
#include "unitri/matrix.hpp"
#include "unitri/ring.hpp"

namespace unitri {

/// One letter 1 + a e_{row,row+1} of a word in the superdiagonal generators.
struct GenLetter {
  int row;
  Coeff a;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};

using GenWord = std::vector<GenLetter>;

inline GenWord inverse(const Ring& R, const GenWord& w) {
  GenWord v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) v.push_back({it->row, R.neg(it->a)});
  return v;
}

inline UniTriWindow evaluate(const GenWord& w, const RingPtr& ring, int n) {
  UniTriWindow x = UniTriWindow::identity(ring, n);
  for (const auto& l : w) x = x * UniTriWindow::elementary(ring, n, l.row, l.row + 1, l.a);
  return x;
}

namespace detail {

/// x = prod over (d ascending, i ascending) of 1 + c e_{i,i+d}
inline std::vector<Entry> elementary_sequence(const UniTriWindow& x) {
  const RingPtr& ring = x.ring();
  const Ring& R = *ring;
  const int n = x.n();
  UniTriWindow y = x;
  std::vector<Entry> seq;
  for (int d = 1; d < n; ++d)
    for (int i = 1; i + d <= n; ++i) {
      const Coeff c = y.get(i, i + d);
      if (c == 0) continue;
      seq.push_back({i, i + d, c});
      y = UniTriWindow::elementary(ring, n, i, i + d, R.neg(c)) * y;
    }
  return seq;
}

/// 1 + a e_{ij} = A B A^-1 B^-1 with A = 1 + a e_{i,j-1}, B = 1 + e_{j-1,j}
inline GenWord elementary_word(const Ring& R, int i, int j, Coeff a) {
  if (j == i + 1) return {{i, a}};
  const GenWord A = elementary_word(R, i, j - 1, a);
  const GenWord B{{j - 1, R.one()}};
  GenWord w = A;
  w.insert(w.end(), B.begin(), B.end());
  const GenWord Ai = inverse(R, A), Bi = inverse(R, B);
  w.insert(w.end(), Ai.begin(), Ai.end());
  w.insert(w.end(), Bi.begin(), Bi.end());
  return w;
}

}  // namespace detail

/// A word in the superdiagonal generators evaluating to x.
inline GenWord elementary_factorization(const UniTriWindow& x) {
  GenWord w;
  for (const auto& e : detail::elementary_sequence(x)) {
    const auto part = detail::elementary_word(*x.ring(), e.i, e.j, e.value);
    w.insert(w.end(), part.begin(), part.end());
  }
  return w;
}

/// images[r-1][c] is the image of 1 + basis_c e_{r,r+1}.
struct GeneratorImages {
  RingPtr ring;
  int n;
  std::vector<std::vector<UniTriWindow>> images;
};

/// The map on G_n(q) determined by generator images, evaluated through the
/// elementary factorization; elementary images are cached.
class Extension {
 public:
  explicit Extension(GeneratorImages table) : t_(std::move(table)) {
    const Ring& R = *t_.ring;
    if (!R.is_field()) throw Error("generator images need a field");
    if (static_cast<int>(t_.images.size()) != t_.n - 1) throw Error("need images for rows 1..n-1");
    for (const auto& row : t_.images) {
      if (static_cast<int>(row.size()) != R.f()) throw Error("need one image per basis element");
      for (const auto& g : row)
        if (g.n() != t_.n || !same_ring(g.ring(), t_.ring)) throw Error("image window/ring mismatch");
    }
  }

  const GeneratorImages& table() const noexcept { return t_; }

  /// Image of 1 + a e_{r,r+1}, a = sum k_c basis_c.
  UniTriWindow generator(int r, Coeff a) const {
    const auto co = t_.ring->coords(a);
    UniTriWindow x = UniTriWindow::identity(t_.ring, t_.n);
    for (std::size_t c = 0; c < co.size(); ++c)
      if (co[c] != 0) x = x * t_.images[r - 1][c].pow(co[c]);
    return x;
  }

  UniTriWindow elementary(int i, int j, Coeff a) const {
    const auto key = std::make_tuple(i, j, a);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    UniTriWindow x = [&] {
      if (j == i + 1) return generator(i, a);
      const UniTriWindow A = elementary(i, j - 1, a);
      const UniTriWindow B = generator(j - 1, t_.ring->one());
      return A * B * A.inverse() * B.inverse();
    }();
    cache_.emplace(key, x);
    return x;
  }

  UniTriWindow operator()(const UniTriWindow& x) const {
    if (x.n() != t_.n || !same_ring(x.ring(), t_.ring)) throw Error("argument window/ring mismatch");
    UniTriWindow y = UniTriWindow::identity(t_.ring, t_.n);
    for (const auto& e : detail::elementary_sequence(x)) y = y * elementary(e.i, e.j, e.value);
    return y;
  }

 private:
  GeneratorImages t_;
  mutable std::map<std::tuple<int, int, Coeff>, UniTriWindow> cache_;
};

struct HomReport {
  int trials = 0;
  int failures = 0;
  int superdiagonal_rank = 0;  // F_p-rank of the images modulo the derived subgroup
  int full_rank = 0;           // f(n-1)
  bool multiplicative() const noexcept { return failures == 0; }
  bool bijective() const noexcept { return superdiagonal_rank == full_rank; }
  bool ok() const noexcept { return multiplicative() && bijective(); }
};

/// Multiplicativity on random pairs; bijectivity from the images spanning
/// G/[G,G] (a p-group endomorphism onto the Frattini quotient is onto).
inline HomReport verify_homomorphism(const GeneratorImages& table, int trials = 500, std::uint64_t seed = 1) {
  const Extension ext(table);
  const Ring& R = *table.ring;
  const int n = table.n, f = R.f();
  HomReport rep;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < trials; ++k) {
    const auto x = random_element(table.ring, n, rng);
    const auto y = random_element(table.ring, n, rng);
    if (ext(x * y) != ext(x) * ext(y)) ++rep.failures;
  }
  Mat rows;
  for (const auto& row : table.images)
    for (const auto& g : row) {
      std::vector<Coeff> v;
      for (int i = 1; i < n; ++i)
        for (Coeff c : R.coords(g.get(i, i + 1))) v.push_back(c);
      rows.push_back(std::move(v));
    }
  rep.full_rank = f * (n - 1);
  rep.superdiagonal_rank = rank(*Ring::prime_field(R.p()), rows, rep.full_rank);
  return rep;
}

inline bool is_homomorphism(const GeneratorImages& table, int trials = 500, std::uint64_t seed = 1) {
  return verify_homomorphism(table, trials, seed).ok();
}

enum class Side { left, right };

struct AutDescriptor {
  enum class Kind { tau, field, diagonal, inner, central, extremal };
  Kind kind = Kind::tau;
  int nu = 1;                   // field: power of frobenius
  std::vector<Coeff> diag;      // diagonal: d_1..d_n
  std::optional<UniTriWindow> g;  // inner
  int r = 0;                    // central: row of the tracked superdiagonal entry
  Mat lambda;                   // central: F_p-matrix, column c = coords of lambda(basis_c)
  Coeff b = 0;                  // extremal
  Side side = Side::left;

  static AutDescriptor tau() { return {}; }
  static AutDescriptor field(int nu) {
    AutDescriptor a;
    a.kind = Kind::field;
    a.nu = nu;
    return a;
  }
  static AutDescriptor diagonal(std::vector<Coeff> d) {
    AutDescriptor a;
    a.kind = Kind::diagonal;
    a.diag = std::move(d);
    return a;
  }
  static AutDescriptor inner(UniTriWindow g) {
    AutDescriptor a;
    a.kind = Kind::inner;
    a.g = std::move(g);
    return a;
  }
  static AutDescriptor central(int r, Mat lambda) {
    AutDescriptor a;
    a.kind = Kind::central;
    a.r = r;
    a.lambda = std::move(lambda);
    return a;
  }
  /// lambda = multiplication by b
  static AutDescriptor central_scalar(int r, const Ring& R, Coeff b) { return central(r, R.regular_rep(b)); }
  static AutDescriptor extremal(Coeff b, Side side) {
    AutDescriptor a;
    a.kind = Kind::extremal;
    a.b = b;
    a.side = side;
    return a;
  }
};

inline std::string kind_name(AutDescriptor::Kind k) {
  switch (k) {
    case AutDescriptor::Kind::tau:
      return "tau";
    case AutDescriptor::Kind::field:
      return "field";
    case AutDescriptor::Kind::diagonal:
      return "diagonal";
    case AutDescriptor::Kind::inner:
      return "inner";
    case AutDescriptor::Kind::central:
      return "central";
    default:
      return "extremal";
  }
}

namespace detail {

inline Coeff apply_linear(const Ring& R, const Mat& lambda, Coeff a) {
  const auto co = R.coords(a);
  const int f = R.f();
  std::vector<Coeff> out(static_cast<std::size_t>(f), 0);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) out[i] = (out[i] + lambda[i][j] * co[j]) % R.p();
  return R.from_coords(out);
}

inline GeneratorImages extremal_images(const AutDescriptor& aut, const RingPtr& ring, int n) {
  const Ring& R = *ring;
  GeneratorImages t{ring, n, {}};
  for (int r = 1; r < n; ++r) {
    t.images.emplace_back();
    for (int c = 0; c < R.f(); ++c) {
      const Coeff a = R.basis_element(c);
      UniTriWindow g = UniTriWindow::elementary(ring, n, r, r + 1, a);
      if (aut.side == Side::left && r == 1) g.set(2, n, R.mul(a, aut.b));
      if (aut.side == Side::right && r == n - 1) g.set(1, n - 1, R.mul(a, aut.b));
      t.images.back().push_back(std::move(g));
    }
  }
  return t;
}

inline void check_descriptor(const AutDescriptor& aut, const RingPtr& ring, int n) {
  const Ring& R = *ring;
  using K = AutDescriptor::Kind;
  switch (aut.kind) {
    case K::field:
      if (aut.nu < 0) throw Error("frobenius power must be >= 0");
      break;
    case K::diagonal:
      if (static_cast<int>(aut.diag.size()) != n) throw Error("diagonal needs n entries");
      for (Coeff d : aut.diag)
        if (!R.contains(d) || !R.is_unit(d)) throw Error("diagonal entries must be units");
      break;
    case K::inner:
      if (!aut.g || aut.g->n() != n || !same_ring(aut.g->ring(), ring))
        throw Error("inner automorphism needs an element of the same group");
      break;
    case K::central:
      if (aut.r == 1 || aut.r == n - 1) throw Error("inner, use inner kind");
      if (n < 4 || aut.r < 2 || aut.r > n - 2) throw Error("central map needs 2 <= r <= n-2");
      if (static_cast<int>(aut.lambda.size()) != R.f()) throw Error("lambda must be f x f");
      for (const auto& row : aut.lambda)
        if (static_cast<int>(row.size()) != R.f()) throw Error("lambda must be f x f");
      break;
    case K::extremal:
      if (n < 4) throw Error("extremal maps need n >= 4");
      if (!R.contains(aut.b)) throw Error("extremal parameter out of range");
      break;
    default:
      break;
  }
}

}  // namespace detail

inline UniTriWindow apply(const AutDescriptor& aut, const UniTriWindow& x) {
  const RingPtr& ring = x.ring();
  const Ring& R = *ring;
  const int n = x.n();
  if (!R.is_field()) throw Error("automorphisms are implemented over fields");
  detail::check_descriptor(aut, ring, n);
  using K = AutDescriptor::Kind;
  UniTriWindow y(ring, n);
  switch (aut.kind) {
    case K::tau: {
      // D J (x^-1)^T J D with D = diag((-1)^i): generators flip about the antidiagonal
      const UniTriWindow xi = x.inverse();
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const Coeff c = xi.get(n + 1 - j, n + 1 - i);
          y.set(i, j, (i + j) % 2 ? R.neg(c) : c);
        }
      return y;
    }
    case K::field:
      for (const auto& e : x.entries()) {
        Coeff c = e.value;
        for (int k = 0; k < aut.nu % std::max(R.f(), 1); ++k) c = R.frobenius(c);
        y.set(e.i, e.j, c);
      }
      return y;
    case K::diagonal:
      for (const auto& e : x.entries()) y.set(e.i, e.j, R.mul(R.mul(aut.diag[e.i - 1], e.value), R.inv(aut.diag[e.j - 1])));
      return y;
    case K::inner:
      return *aut.g * x * aut.g->inverse();
    case K::central:
      y = x;
      y.set(1, n, R.add(x.get(1, n), detail::apply_linear(R, aut.lambda, x.get(aut.r, aut.r + 1))));
      return y;
    default:
      return Extension(detail::extremal_images(aut, ring, n))(x);
  }
}

inline GeneratorImages generator_images(const AutDescriptor& aut, const RingPtr& ring, int n) {
  if (aut.kind == AutDescriptor::Kind::extremal) {
    detail::check_descriptor(aut, ring, n);
    return detail::extremal_images(aut, ring, n);
  }
  GeneratorImages t{ring, n, {}};
  for (int r = 1; r < n; ++r) {
    t.images.emplace_back();
    for (int c = 0; c < ring->f(); ++c)
      t.images.back().push_back(apply(aut, UniTriWindow::elementary(ring, n, r, r + 1, ring->basis_element(c))));
  }
  return t;
}

struct AutReport {
  HomReport hom;
  int mismatches = 0;  // apply vs the extension of its generator images
  bool ok() const noexcept { return hom.ok() && mismatches == 0; }
};

/// Checks the generator-image extension is a bijective homomorphism and
/// agrees with apply() on random elements.
inline AutReport verify_automorphism(const AutDescriptor& aut, const RingPtr& ring, int n, int trials = 500,
                                     std::uint64_t seed = 1) {
  AutReport rep;
  const GeneratorImages t = generator_images(aut, ring, n);
  rep.hom = verify_homomorphism(t, trials, seed);
  const Extension ext(t);
  std::mt19937_64 rng(seed + 1);
  for (int k = 0; k < trials / 5 + 1; ++k) {
    const auto x = random_element(ring, n, rng);
    if (apply(aut, x) != ext(x)) ++rep.mismatches;
  }
  return rep;
}

/// All central maps (each r, each elementary lambda) and extremal maps (each
/// side, each basis b) at window n.
inline std::vector<AutDescriptor> central_extremal_family(const Ring& R, int n) {
  std::vector<AutDescriptor> out;
  const int f = R.f();
  for (int r = 2; r <= n - 2; ++r)
    for (int u = 0; u < f; ++u)
      for (int v = 0; v < f; ++v) {
        Mat lambda(f, std::vector<Coeff>(f, 0));
        lambda[u][v] = 1;
        out.push_back(AutDescriptor::central(r, lambda));
      }
  if (n >= 4)
    for (Side s : {Side::left, Side::right})
      for (int c = 0; c < f; ++c) out.push_back(AutDescriptor::extremal(R.basis_element(c), s));
  return out;
}

/// log_p of the group generated by the central and extremal maps, as the
/// F_p-rank of their deviations g -> psi(g) g^-1 on the generators.
inline int central_extremal_log_order(const RingPtr& ring, int n) {
  const Ring& R = *ring;
  Mat rows;
  for (const auto& aut : central_extremal_family(R, n)) {
    const GeneratorImages t = generator_images(aut, ring, n);
    std::vector<Coeff> v;
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < R.f(); ++c) {
        const auto g = UniTriWindow::elementary(ring, n, r, r + 1, R.basis_element(c));
        const auto dev = t.images[r - 1][c] * g.inverse();
        for (int i = 1; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j)
            for (Coeff co : R.coords(dev.get(i, j))) v.push_back(co);
      }
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return 0;
  return rank(*Ring::prime_field(R.p()), rows, static_cast<int>(rows.front().size()));
}

}  // namespace unitri
