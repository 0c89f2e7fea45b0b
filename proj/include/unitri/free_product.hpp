#pragma once

// Words in C_p * C_p = <x> * <y> and their images under x -> s, y -> t, where
// s = 1 + sum e_{2k-1,2k} and t = 1 + sum e_{2k,2k+1} are 2-periodic.

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/matrix.hpp"
#include "unitri/ring.hpp"

namespace unitri {

struct Syllable {
  char letter;  // 'x' or 'y'
  std::uint64_t exp;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  explicit Word(std::uint64_t p) : p_(p) {
    if (p < 2) throw Error("word exponents need p >= 2");
  }

  /// Reduces: exponents mod p, zero syllables dropped, equal neighbours merged.
  Word(std::uint64_t p, const std::vector<Syllable>& syllables) : Word(p) {
    for (const auto& s : syllables) push(s);
  }

  static Word x(std::uint64_t p, std::uint64_t a = 1) { return Word(p, {{'x', a}}); }
  static Word y(std::uint64_t p, std::uint64_t b = 1) { return Word(p, {{'y', b}}); }

  std::uint64_t p() const noexcept { return p_; }
  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }

  /// The l of the form x^{a_1} y^{b_1} ... x^{a_l} y^{b_l} (a_1 and b_l may vanish).
  int length() const {
    if (syl_.empty()) return 0;
    int n = static_cast<int>(syl_.size());
    if (syl_.front().letter == 'y') ++n;
    if (syl_.back().letter == 'x') ++n;
    return n / 2;
  }

  /// (a_1, b_1, ..., a_l, b_l) with the padding zeros.
  std::vector<std::uint64_t> exponents() const {
    std::vector<std::uint64_t> e;
    if (!syl_.empty() && syl_.front().letter == 'y') e.push_back(0);
    for (const auto& s : syl_) e.push_back(s.exp);
    if (e.size() % 2) e.push_back(0);
    return e;
  }

  Word inverse() const {
    Word w(p_);
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.push({it->letter, p_ - it->exp});
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    if (a.p_ != b.p_) throw Error("words over different p");
    Word w = a;
    for (const auto& s : b.syl_) w.push(s);
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.p_ == b.p_ && a.syl_ == b.syl_; }

 private:
  void push(Syllable s) {
    if (s.letter != 'x' && s.letter != 'y') throw Error(std::string("unknown letter '") + s.letter + "'");
    s.exp %= p_;
    if (s.exp == 0) return;
    if (!syl_.empty() && syl_.back().letter == s.letter) {
      syl_.back().exp = (syl_.back().exp + s.exp) % p_;
      if (syl_.back().exp == 0) syl_.pop_back();
      return;
    }
    syl_.push_back(s);
  }

  std::uint64_t p_;
  std::vector<Syllable> syl_;
};

inline Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

/// "x^2 y x y^2"; the identity prints as "1".
inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += s.letter;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

/// Letters x, y with optional ^e (e may be negative); whitespace optional.
inline Word parse_word(const std::string& text, std::uint64_t p) {
  std::vector<Syllable> syl;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "1") return Word(p);
  while (skip(), i < text.size()) {
    const char c = text[i++];
    if (c != 'x' && c != 'y') throw Error("bad word '" + text + "': unexpected '" + std::string(1, c) + "'");
    std::int64_t e = 1;
    skip();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip();
      const std::size_t start = i;
      if (i < text.size() && text[i] == '-') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      try {
        e = std::stoll(text.substr(start, i - start));
      } catch (const std::exception&) {
        throw Error("bad exponent in word '" + text + "'");
      }
    }
    const auto m = static_cast<std::int64_t>(p);
    syl.push_back({c, static_cast<std::uint64_t>(((e % m) + m) % m)});
  }
  return Word(p, syl);
}

/// s^a = 1 + a sum e_{2k-1,2k}  (the e_{2k-1,2k} multiply to zero)
inline UniTriWindow s_power(const RingPtr& ring, int n, Coeff a) {
  UniTriWindow x(ring, n);
  for (int i = 1; i < n; i += 2) x.set(i, i + 1, a);
  return x;
}

/// t^b = 1 + b sum e_{2k,2k+1}
inline UniTriWindow t_power(const RingPtr& ring, int n, Coeff b) {
  UniTriWindow x(ring, n);
  for (int i = 2; i < n; i += 2) x.set(i, i + 1, b);
  return x;
}

inline UniTriWindow phi(const Word& w, const RingPtr& ring, int n) {
  if (n < 2) throw Error("window must be >= 2");
  if (ring->kind() != RingKind::prime_field || ring->p() != w.p()) throw Error("phi needs the prime field F_p of the word");
  UniTriWindow x = UniTriWindow::identity(ring, n);
  for (const auto& s : w.syllables())
    x = x * (s.letter == 'x' ? s_power(ring, n, s.exp) : t_power(ring, n, s.exp));
  return x;
}

inline UniTriWindow phi(const Word& w, int n) { return phi(w, Ring::prime_field(w.p()), n); }

/// s^a t^b s^c t^d from its entry template, repeated with period 2.
inline UniTriWindow closed_form_4(Coeff a, Coeff b, Coeff c, Coeff d, const RingPtr& ring, int n) {
  const Ring& R = *ring;
  const Coeff odd[] = {R.add(a, c), R.add(R.add(R.mul(a, b), R.mul(c, d)), R.mul(a, d)), R.mul(R.mul(a, b), c),
                       R.mul(R.mul(R.mul(a, b), c), d)};
  const Coeff even[] = {R.add(b, d), R.mul(b, c), R.mul(R.mul(b, c), d)};
  UniTriWindow x(ring, n);
  for (int i = 1; i < n; ++i) {
    const bool is_odd = i % 2 == 1;
    const int len = is_odd ? 4 : 3;
    for (int k = 1; k <= len && i + k <= n; ++k) x.set(i, i + k, is_odd ? odd[k - 1] : even[k - 1]);
  }
  return x;
}

enum class LengthCase { i, ii, iii };

struct LengthReading {
  int length;
  LengthCase which;
};

inline std::string to_string(LengthCase c) {
  switch (c) {
    case LengthCase::i:
      return "i";
    case LengthCase::ii:
      return "ii";
    default:
      return "iii";
  }
}

/// Recovers l from the last nonzero squares (1,c1) and (2,c2):
///   (i)   c1 = c2 = 2l+1
///   (ii)  c1 = 2l-1, c2 = 2l+1
///   (iii) c1 = 2(l-1), c2 = 2l
/// The identity reads as l = 0, case (i).
inline LengthReading read_length(const UniTriWindow& x) {
  const int n = x.n();
  if (x.is_identity()) return {0, LengthCase::i};
  if (n < 3) throw Error("window too small to read a word length");
  auto last = [&](int row) {
    int c = row;
    for (int j = row + 1; j <= n; ++j)
      if (x.get(row, j) != 0) c = j;
    return c;
  };
  const int c1 = last(1), c2 = last(2);
  if (c1 >= n || c2 >= n) throw Error("support reaches the window edge; enlarge the window");
  if (c1 == c2 && c1 % 2 == 1) return {(c1 - 1) / 2, LengthCase::i};
  if (c2 == c1 + 2 && c1 % 2 == 1) return {(c1 + 1) / 2, LengthCase::ii};
  if (c2 == c1 + 2 && c1 % 2 == 0) return {c1 / 2 + 1, LengthCase::iii};
  throw Error("not a recognized phi-image");
}

/// log_p |<s,t> N_n : N_n|
inline int xi(int n) {
  if (n < 2) throw Error("n must be >= 2");
  return n - 2 + (n + 1) / 2;
}

/// log_p of the group of 2-periodic elements at window n.
inline int two_periodic_log_order(int n) {
  if (n < 2) throw Error("n must be >= 2");
  return 2 * n - 3;
}

/// 1 + sum_k e_{2k-1+r, 2k-1+r+d}: the 2-periodic element with ones on
/// diagonal d of the rows of parity r (0 = odd rows, 1 = even rows).
inline UniTriWindow periodic_unit(const RingPtr& ring, int n, int r, int d) {
  UniTriWindow x(ring, n);
  for (int i = 1 + r; i + d <= n; i += 2) x.set(i, i + d, ring->one());
  return x;
}

/// Generators of the 2-periodic elements at window n (2n-3 of them).
inline std::vector<UniTriWindow> two_periodic_generators(const RingPtr& ring, int n) {
  std::vector<UniTriWindow> g;
  for (int d = 1; d < n; ++d) {
    g.push_back(periodic_unit(ring, n, 0, d));
    if (d + 2 <= n) g.push_back(periodic_unit(ring, n, 1, d));
  }
  return g;
}

}  // namespace unitri
