#pragma once

// Truncated automorphisms t -> t + sum_{j>=2} a_j t^j of F_q[[t]] and their
// matrix image: row i of sigma(u) holds the coefficients of u(t)^i.

#include <string>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/matrix.hpp"
#include "unitri/ring.hpp"

namespace unitri {

class SeriesAut {
 public:
  /// Identity t -> t, kept to degree N.
  SeriesAut(RingPtr ring, int degree) : ring_(std::move(ring)), N_(degree) {
    if (!ring_->is_field()) throw Error("series need a field of coefficients");
    if (N_ < 1) throw Error("series degree must be >= 1");
    a_.assign(static_cast<std::size_t>(N_) + 1, 0);
    a_[1] = 1;
  }

  /// Coefficients a_2..a_N.
  static SeriesAut from_coeffs(RingPtr ring, const std::vector<Coeff>& tail) {
    SeriesAut u(std::move(ring), static_cast<int>(tail.size()) + 1);
    for (std::size_t k = 0; k < tail.size(); ++k) u.set(static_cast<int>(k) + 2, tail[k]);
    return u;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  int degree() const noexcept { return N_; }

  /// Coefficient of t^j (a_1 = 1, a_0 = 0).
  Coeff coeff(int j) const {
    if (j < 0 || j > N_) throw Error("coefficient index outside the truncation");
    return a_[j];
  }

  void set(int j, Coeff c) {
    if (j < 2 || j > N_) throw Error("only a_2..a_N can be set");
    if (!ring_->contains(c)) throw Error("coefficient out of canonical range");
    a_[j] = c;
  }

  /// a_2..a_N
  std::vector<Coeff> coeffs() const { return {a_.begin() + 2, a_.end()}; }

  bool is_identity() const {
    for (int j = 2; j <= N_; ++j)
      if (a_[j] != 0) return false;
    return true;
  }

  /// Same series cut (or zero-padded) to degree M.
  SeriesAut with_degree(int M) const {
    SeriesAut v(ring_, M);
    for (int j = 2; j <= std::min(M, N_); ++j) v.a_[j] = a_[j];
    return v;
  }

  /// Full coefficient vector, index = degree.
  const std::vector<Coeff>& poly() const noexcept { return a_; }

  friend bool operator==(const SeriesAut& u, const SeriesAut& v) {
    return u.N_ == v.N_ && same_ring(u.ring_, v.ring_) && u.a_ == v.a_;
  }

 private:
  RingPtr ring_;
  int N_;
  std::vector<Coeff> a_;
};

namespace detail {

/// a * b mod t^{N+1}
inline std::vector<Coeff> series_mul(const Ring& R, const std::vector<Coeff>& a, const std::vector<Coeff>& b, int N) {
  std::vector<Coeff> c(static_cast<std::size_t>(N) + 1, 0);
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
      if (b[j] != 0) c[i + j] = R.add(c[i + j], R.mul(a[i], b[j]));
  }
  return c;
}

/// u(v(t)) mod t^{N+1}, Horner in v.
inline std::vector<Coeff> series_substitute(const Ring& R, const std::vector<Coeff>& u, const std::vector<Coeff>& v,
                                            int N) {
  std::vector<Coeff> acc(static_cast<std::size_t>(N) + 1, 0);
  for (int j = static_cast<int>(u.size()) - 1; j >= 1; --j) {
    acc[0] = R.add(acc[0], u[j]);
    acc = series_mul(R, acc, v, N);
  }
  return acc;
}

inline void check_same(const SeriesAut& u, const SeriesAut& v) {
  if (!same_ring(u.ring(), v.ring())) throw Error("ring descriptor mismatch");
  if (u.degree() != v.degree()) throw Error("series degree mismatch");
}

}  // namespace detail

/// Apply u, then v: t u with t replaced by t v, i.e. u(v(t)).
inline SeriesAut compose(const SeriesAut& u, const SeriesAut& v) {
  detail::check_same(u, v);
  const auto c = detail::series_substitute(*u.ring(), u.poly(), v.poly(), u.degree());
  SeriesAut w(u.ring(), u.degree());
  for (int j = 2; j <= u.degree(); ++j) w.set(j, c[j]);
  return w;
}

/// Reversion: the w with compose(u, w) = t, solved one degree at a time
/// (the t^k coefficient of u(w) is c_k plus terms in c_2..c_{k-1}).
inline SeriesAut invert(const SeriesAut& u) {
  const Ring& R = *u.ring();
  SeriesAut w(u.ring(), u.degree());
  for (int k = 2; k <= u.degree(); ++k) {
    const auto c = detail::series_substitute(R, u.poly(), w.poly(), k);
    w.set(k, R.neg(c[k]));
  }
  return w;
}

/// e_r[alpha]: t -> t + alpha t^{r+1}
inline SeriesAut generator(int r, Coeff alpha, const RingPtr& ring, int degree) {
  if (r < 1) throw Error("generator index r must be >= 1");
  if (r + 1 > degree) throw Error("generator e_" + std::to_string(r) + " needs degree >= " + std::to_string(r + 1));
  SeriesAut u(ring, degree);
  u.set(r + 1, alpha);
  return u;
}

/// Row i holds the coefficients of u(t)^i in degrees i..m.
inline UniTriWindow sigma(const SeriesAut& u, int m) {
  if (m < 1) throw Error("window must be >= 1");
  if (u.degree() < m) throw Error("series degree " + std::to_string(u.degree()) + " below window " + std::to_string(m));
  const Ring& R = *u.ring();
  UniTriWindow x(u.ring(), m);
  std::vector<Coeff> power = u.poly();
  for (int i = 1; i <= m; ++i) {
    if (i > 1) power = detail::series_mul(R, power, u.poly(), m);
    for (int j = i + 1; j <= m; ++j) x.set(i, j, power[j]);
  }
  return x;
}

/// Closed form of sigma(e_r[alpha]): entry (i,j) = binom(i, (j-i)/r) alpha^{(j-i)/r}
/// when r divides j - i.
inline UniTriWindow g_formula(int r, Coeff alpha, const RingPtr& ring, int m) {
  if (r < 1) throw Error("generator index r must be >= 1");
  const Ring& R = *ring;
  // Pascal's triangle reduced into the ring
  std::vector<std::vector<Coeff>> binom(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    binom[i].assign(static_cast<std::size_t>(i) + 1, R.one());
    for (int k = 1; k < i; ++k) binom[i][k] = R.add(binom[i - 1][k - 1], binom[i - 1][k]);
  }
  UniTriWindow x(ring, m);
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      if ((j - i) % r != 0) continue;
      const int k = (j - i) / r;
      if (k > i) continue;
      x.set(i, j, R.mul(binom[i][k], R.pow(alpha, static_cast<std::uint64_t>(k))));
    }
  return x;
}

/// The series read off the first row of x.
inline SeriesAut first_row_series(const UniTriWindow& x) {
  SeriesAut u(x.ring(), std::max(x.n(), 1));
  for (int j = 2; j <= x.n(); ++j) u.set(j, x.get(1, j));
  return u;
}

/// x is the sigma-image of its own first row.
inline bool first_row_membership(const UniTriWindow& x) {
  if (!x.ring()->is_field()) return false;
  if (x.n() < 2) return true;
  return sigma(first_row_series(x), x.n()) == x;
}

}  // namespace unitri
