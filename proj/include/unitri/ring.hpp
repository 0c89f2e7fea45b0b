#pragma once

// Exact coefficient rings: F_p, F_q = F_p[x]/(m(x)) and Z/p^k.
//
// Elements are carried as a single 64-bit code. For F_p and Z/p^k the code
// is the canonical residue; for F_q it is sum_i c_i p^i over the power-basis
// digits c_i of the representative polynomial. Matrices and series store raw
// codes next to a shared descriptor, RingElem is the checked wrapper.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitri/error.hpp"

namespace unitri {

using Coeff = std::uint64_t;

enum class RingKind { prime_field, ext_field, trunc_int };

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Dense polynomial over F_p, coefficients low-to-high, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (!a.empty() && a.size() - 1 >= dm) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), m, p);
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or test: m of degree f is irreducible iff gcd(m, x^{p^i} - x) = 1 for i <= f/2.
inline bool is_irreducible(const Poly& m, std::uint64_t p) {
  const std::size_t f = m.size() - 1;
  if (f == 0) return false;
  if (f == 1) return true;
  const Poly x = {0, 1};
  Poly h = x;
  for (std::size_t i = 1; i <= f / 2; ++i) {
    // h <- h^p mod m
    Poly acc = {1};
    Poly base = h;
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    h = acc;
    Poly g = poly_gcd(m, poly_sub(h, x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Immutable ring descriptor. Construct through the static factories.
class Ring {
 public:
  static constexpr int max_degree = 8;
  static constexpr std::uint64_t max_prime = (std::uint64_t{1} << 31) - 1;

  static RingPtr prime_field(std::uint64_t p) {
    check_prime(p);
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::prime_field;
    r->p_ = p;
    r->order_ = p;
    r->modulus_ = {0, 1};
    r->basis_ = {{1}};
    return r;
  }

  /// F_q with the lexicographically least monic irreducible modulus of degree f.
  static RingPtr ext_field(std::uint64_t p, int f) {
    check_prime(p);
    check_degree(p, f);
    if (f == 1) return prime_field(p);
    // Enumerate the non-leading coefficients as a base-p counter, most significant
    // digit c_{f-1}; the first irreducible hit is the least in written order.
    detail::Poly m(static_cast<std::size_t>(f) + 1, 0);
    m[f] = 1;
    for (;;) {
      if (m[0] != 0 && detail::is_irreducible(m, p)) break;
      int i = 0;
      while (i < f && ++m[i] == p) m[i++] = 0;
      if (i == f) throw Error("no irreducible polynomial found");
    }
    return ext_field(p, m);
  }

  /// F_q = F_p[x]/(modulus) with modulus low-to-high and monic; optional basis of
  /// power-basis coordinate vectors (defaults to 1, x, ..., x^{f-1}).
  static RingPtr ext_field(std::uint64_t p, std::vector<std::uint64_t> modulus,
                           std::vector<std::vector<std::uint64_t>> basis = {}) {
    check_prime(p);
    for (auto& c : modulus) c %= p;
    detail::trim(modulus);
    if (modulus.size() < 2) throw Error("modulus must have degree >= 1");
    if (modulus.back() != 1) throw Error("modulus must be monic");
    const int f = static_cast<int>(modulus.size()) - 1;
    check_degree(p, f);
    if (!detail::is_irreducible(modulus, p)) throw Error("modulus is not irreducible over F_p");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = f == 1 ? RingKind::prime_field : RingKind::ext_field;
    r->p_ = p;
    r->f_ = f;
    r->modulus_ = std::move(modulus);
    r->order_ = 1;
    for (int i = 0; i < f; ++i) r->order_ *= p;
    if (f == 1) {
      r->modulus_ = {0, 1};
      r->basis_ = {{1}};
      return r;
    }
    r->set_basis(std::move(basis));
    r->build_tables();
    return r;
  }

  static RingPtr trunc_int(std::uint64_t p, int k) {
    check_prime(p);
    if (k < 1) throw Error("truncation exponent must be >= 1");
    unsigned __int128 order = 1;
    for (int i = 0; i < k; ++i) {
      order *= p;
      if (order > (static_cast<unsigned __int128>(1) << 62)) throw Error("p^k exceeds 2^62");
    }
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::trunc_int;
    r->p_ = p;
    r->k_ = k;
    r->order_ = static_cast<std::uint64_t>(order);
    r->modulus_ = {0, 1};
    r->basis_ = {{1}};
    return r;
  }

  RingKind kind() const noexcept { return kind_; }
  std::uint64_t p() const noexcept { return p_; }
  int f() const noexcept { return f_; }
  int k() const noexcept { return k_; }
  /// Number of elements: q for fields, p^k for Z/p^k.
  std::uint64_t order() const noexcept { return order_; }
  bool is_field() const noexcept { return kind_ != RingKind::trunc_int; }
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
  const std::vector<std::vector<std::uint64_t>>& basis() const noexcept { return basis_; }
  bool has_power_basis() const noexcept { return power_basis_; }

  bool operator==(const Ring& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && f_ == o.f_ && k_ == o.k_ && modulus_ == o.modulus_ &&
           basis_ == o.basis_;
  }

  std::string describe() const {
    switch (kind_) {
      case RingKind::prime_field:
        return "F_" + std::to_string(p_);
      case RingKind::trunc_int:
        return "Z/" + std::to_string(p_) + "^" + std::to_string(k_);
      case RingKind::ext_field:
        return "F_" + std::to_string(p_) + "^" + std::to_string(f_) + "[" + poly_text(modulus_) + "]";
    }
    return {};
  }

  Coeff zero() const noexcept { return 0; }
  Coeff one() const noexcept { return 1; }

  bool contains(Coeff a) const noexcept { return a < order_; }

  Coeff from_int(std::int64_t v) const {
    const std::uint64_t m = kind_ == RingKind::ext_field ? p_ : order_;
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<Coeff>(r);
  }

  Coeff add(Coeff a, Coeff b) const {
    if (kind_ != RingKind::ext_field) {
      const Coeff s = a + b;
      return s >= order_ ? s - order_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * order_ + b];
    Coeff r = 0, place = 1;
    for (int i = 0; i < f_; ++i) {
      r += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return r;
  }

  Coeff neg(Coeff a) const {
    if (kind_ != RingKind::ext_field) return a == 0 ? 0 : order_ - a;
    Coeff r = 0, place = 1;
    for (int i = 0; i < f_; ++i) {
      const Coeff d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * place;
      a /= p_;
      place *= p_;
    }
    return r;
  }

  Coeff sub(Coeff a, Coeff b) const { return add(a, neg(b)); }

  Coeff mul(Coeff a, Coeff b) const {
    if (kind_ != RingKind::ext_field) return detail::mulmod(a, b, order_);
    if (!mul_table_.empty()) return mul_table_[a * order_ + b];
    return from_digits(detail::poly_mulmod(digits(a), digits(b), modulus_, p_));
  }

  Coeff pow(Coeff a, std::uint64_t e) const {
    Coeff r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  bool is_unit(Coeff a) const {
    if (kind_ == RingKind::trunc_int) return a % p_ != 0;
    return a != 0;
  }

  Coeff inv(Coeff a) const {
    if (!is_unit(a)) throw Error("not invertible: " + to_string(a) + " in " + describe());
    switch (kind_) {
      case RingKind::prime_field:
        return detail::powmod(a, p_ - 2, p_);
      case RingKind::ext_field:
        return pow(a, order_ - 2);
      case RingKind::trunc_int: {
        // unit group of Z/p^k has order p^{k-1}(p-1)
        const std::uint64_t phi = order_ / p_ * (p_ - 1);
        return detail::powmod(a, phi - 1, order_);
      }
    }
    return 0;
  }

  /// x -> x^p. Identity on F_p; Z/p^k is rejected.
  Coeff frobenius(Coeff a) const {
    if (kind_ == RingKind::trunc_int) throw Error("frobenius requires a field descriptor");
    if (kind_ == RingKind::prime_field) return a;
    return pow(a, p_);
  }

  /// Power-basis digits of an F_q element (length f).
  detail::Poly digits(Coeff a) const {
    detail::Poly d(static_cast<std::size_t>(f_), 0);
    for (int i = 0; i < f_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Coeff from_digits(std::span<const std::uint64_t> d) const {
    Coeff r = 0, place = 1;
    for (std::size_t i = 0; i < d.size() && i < static_cast<std::size_t>(f_); ++i) {
      r += (d[i] % p_) * place;
      place *= p_;
    }
    return r;
  }

  /// F_p coordinates of a in the descriptor's basis.
  std::vector<Coeff> coords(Coeff a) const {
    auto d = digits(a);
    if (power_basis_) return d;
    std::vector<Coeff> c(static_cast<std::size_t>(f_), 0);
    for (int i = 0; i < f_; ++i)
      for (int j = 0; j < f_; ++j) c[i] = (c[i] + detail::mulmod(basis_inv_[i][j], d[j], p_)) % p_;
    return c;
  }

  Coeff from_coords(std::span<const Coeff> c) const {
    Coeff r = 0;
    for (int j = 0; j < f_ && j < static_cast<int>(c.size()); ++j)
      r = add(r, mul(from_int(static_cast<std::int64_t>(c[j] % p_)), basis_element(j)));
    return r;
  }

  Coeff basis_element(int j) const { return from_digits(basis_[j]); }

  /// f x f matrix over F_p of multiplication by lambda: column j holds the
  /// coordinates of lambda * basis_j.
  std::vector<std::vector<Coeff>> regular_rep(Coeff lambda) const {
    std::vector<std::vector<Coeff>> m(f_, std::vector<Coeff>(f_, 0));
    for (int j = 0; j < f_; ++j) {
      auto c = coords(mul(lambda, basis_element(j)));
      for (int i = 0; i < f_; ++i) m[i][j] = c[i];
    }
    return m;
  }

  std::string to_string(Coeff a) const {
    if (kind_ != RingKind::ext_field) return std::to_string(a);
    return poly_text(digits(a));
  }

  /// Parses the canonical text form; integers are reduced into the ring.
  Coeff parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw Error("empty coefficient");
    if (kind_ != RingKind::ext_field || s.find('x') == std::string::npos) {
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(s, &pos);
      } catch (const std::exception&) {
        throw Error("bad coefficient '" + s + "'");
      }
      if (pos != s.size()) throw Error("bad coefficient '" + s + "'");
      return from_int(v);
    }
    detail::Poly d(static_cast<std::size_t>(f_), 0);
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t end = s.find('+', i);
      if (end == std::string::npos) end = s.size();
      std::string term = s.substr(i, end - i);
      if (term.empty()) throw Error("bad coefficient '" + s + "'");
      std::uint64_t c = 1;
      std::size_t e = 0;
      const auto xpos = term.find('x');
      if (xpos == std::string::npos) {
        c = std::stoull(term) % p_;
      } else {
        if (xpos > 0) c = std::stoull(term.substr(0, xpos)) % p_;
        e = 1;
        if (xpos + 1 < term.size()) {
          if (term[xpos + 1] != '^') throw Error("bad coefficient '" + s + "'");
          e = std::stoull(term.substr(xpos + 2));
        }
      }
      // fold x^e back into the power basis
      detail::Poly t(e + 1, 0);
      t[e] = c;
      t = detail::poly_mod(std::move(t), modulus_, p_);
      for (std::size_t j = 0; j < t.size(); ++j) d[j] = (d[j] + t[j]) % p_;
      i = end + 1;
    }
    return from_digits(d);
  }

 private:
  Ring() = default;

  static void check_prime(std::uint64_t p) {
    if (p == 2) throw Error("p must be an odd prime");
    if (p > max_prime) throw Error("p exceeds 2^31 - 1");
    if (!detail::is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  }

  static void check_degree(std::uint64_t p, int f) {
    if (f < 1 || f > max_degree) throw Error("extension degree must lie in [1, 8]");
    unsigned __int128 q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    if (q > (static_cast<unsigned __int128>(1) << 62)) throw Error("q = p^f exceeds 2^62");
  }

  static std::string poly_text(const detail::Poly& d) {
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (d[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  void set_basis(std::vector<std::vector<std::uint64_t>> basis) {
    if (basis.empty()) {
      for (int i = 0; i < f_; ++i) {
        std::vector<std::uint64_t> e(static_cast<std::size_t>(f_), 0);
        e[i] = 1;
        basis.push_back(std::move(e));
      }
    }
    if (static_cast<int>(basis.size()) != f_) throw Error("basis must have f elements");
    for (auto& b : basis) {
      b.resize(static_cast<std::size_t>(f_), 0);
      for (auto& c : b) c %= p_;
    }
    basis_ = basis;
    power_basis_ = true;
    for (int i = 0; i < f_; ++i)
      for (int j = 0; j < f_; ++j) power_basis_ = power_basis_ && basis_[i][j] == (i == j ? 1u : 0u);
    if (power_basis_) return;
    // Invert the matrix whose columns are the basis vectors (Gauss-Jordan over F_p).
    std::vector<std::vector<std::uint64_t>> a(f_, std::vector<std::uint64_t>(2 * f_, 0));
    for (int i = 0; i < f_; ++i) {
      for (int j = 0; j < f_; ++j) a[i][j] = basis_[j][i];
      a[i][f_ + i] = 1;
    }
    for (int col = 0; col < f_; ++col) {
      int piv = col;
      while (piv < f_ && a[piv][col] == 0) ++piv;
      if (piv == f_) throw Error("basis vectors are linearly dependent");
      std::swap(a[piv], a[col]);
      const std::uint64_t inv = detail::powmod(a[col][col], p_ - 2, p_);
      for (auto& v : a[col]) v = detail::mulmod(v, inv, p_);
      for (int r = 0; r < f_; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const std::uint64_t c = a[r][col];
        for (int j = 0; j < 2 * f_; ++j) a[r][j] = (a[r][j] + p_ - detail::mulmod(c, a[col][j], p_)) % p_;
      }
    }
    basis_inv_.assign(f_, std::vector<std::uint64_t>(f_, 0));
    for (int i = 0; i < f_; ++i)
      for (int j = 0; j < f_; ++j) basis_inv_[i][j] = a[i][f_ + j];
  }

  void build_tables() {
    if (order_ > 1024) return;
    std::vector<Coeff> add_t(order_ * order_), mul_t(order_ * order_);
    for (Coeff a = 0; a < order_; ++a) {
      const auto da = digits(a);
      for (Coeff b = 0; b < order_; ++b) {
        const auto db = digits(b);
        detail::Poly s(static_cast<std::size_t>(f_));
        for (int i = 0; i < f_; ++i) s[i] = (da[i] + db[i]) % p_;
        add_t[a * order_ + b] = from_digits(s);
        mul_t[a * order_ + b] = from_digits(detail::poly_mulmod(da, db, modulus_, p_));
      }
    }
    add_table_ = std::move(add_t);
    mul_table_ = std::move(mul_t);
  }

  RingKind kind_ = RingKind::prime_field;
  std::uint64_t p_ = 3;
  int f_ = 1;
  int k_ = 1;
  std::uint64_t order_ = 3;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::vector<std::uint64_t>> basis_inv_;
  bool power_basis_ = true;
  std::vector<Coeff> add_table_;
  std::vector<Coeff> mul_table_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

/// Checked element: a code together with its descriptor.
class RingElem {
 public:
  RingElem(RingPtr ring, Coeff value) : ring_(std::move(ring)), value_(value) {
    if (!ring_->contains(value_)) throw Error("coefficient out of canonical range");
  }

  static RingElem from_int(RingPtr ring, std::int64_t v) {
    const Coeff c = ring->from_int(v);
    return {std::move(ring), c};
  }

  const RingPtr& ring() const noexcept { return ring_; }
  Coeff value() const noexcept { return value_; }

  friend RingElem operator+(const RingElem& a, const RingElem& b) {
    check(a, b);
    return {a.ring_, a.ring_->add(a.value_, b.value_)};
  }
  friend RingElem operator-(const RingElem& a, const RingElem& b) {
    check(a, b);
    return {a.ring_, a.ring_->sub(a.value_, b.value_)};
  }
  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    check(a, b);
    return {a.ring_, a.ring_->mul(a.value_, b.value_)};
  }
  RingElem operator-() const { return {ring_, ring_->neg(value_)}; }
  RingElem inv() const { return {ring_, ring_->inv(value_)}; }
  RingElem frobenius() const { return {ring_, ring_->frobenius(value_)}; }
  RingElem pow(std::uint64_t e) const { return {ring_, ring_->pow(value_, e)}; }

  friend bool operator==(const RingElem& a, const RingElem& b) {
    return same_ring(a.ring_, b.ring_) && a.value_ == b.value_;
  }

  std::string to_string() const { return ring_->to_string(value_); }

 private:
  static void check(const RingElem& a, const RingElem& b) {
    if (!same_ring(a.ring_, b.ring_)) throw Error("ring descriptor mismatch");
  }

  RingPtr ring_;
  Coeff value_;
};

}  // namespace unitri
