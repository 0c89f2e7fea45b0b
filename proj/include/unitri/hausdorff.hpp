#pragma once

// Dimension sequences a_n = log|H_n| / log|G_n| as exact rationals, the
// partition realizing a prescribed dimension, and monotone normalization.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/matrix.hpp"
#include "unitri/partition.hpp"
#include "unitri/rational.hpp"

namespace unitri {

/// alpha as an exact rational, or as a truncated decimal of an irrational.
class AlphaTarget {
 public:
  static AlphaTarget rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("alpha denominator is zero");
    AlphaTarget a;
    a.value_ = Rational(num, den);
    a.check_range();
    return a;
  }

  /// A decimal string "0.xxxx"; the value is treated as known to the given digits.
  static AlphaTarget decimal(const std::string& text) {
    const auto dot = text.find('.');
    std::string digits = text;
    int frac = 0;
    if (dot != std::string::npos) {
      frac = static_cast<int>(text.size() - dot - 1);
      digits = text.substr(0, dot) + text.substr(dot + 1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error("bad decimal alpha '" + text + "'");
    // cpp_int reads a leading zero as an octal prefix
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    AlphaTarget a;
    a.value_ = Rational(BigInt(digits), big_pow(10, static_cast<std::uint64_t>(frac)));
    a.exact_ = false;
    a.digits_ = frac;
    a.text_ = text;
    a.check_range();
    return a;
  }

  /// Named constants: "pi-inv" (1/pi) and "e-3" (e^-3), 66 digits.
  static AlphaTarget named(const std::string& name) {
    if (name == "pi-inv")
      return decimal("0.318309886183790671537767526745028724068919291480912897495334688118");
    if (name == "e-3")
      return decimal("0.0497870683678639429793424156500617766316995921884232155676277276061");
    throw Error("unknown constant '" + name + "' (known: pi-inv, e-3)");
  }

  /// Accepts "p/q", "const:NAME", or a decimal.
  static AlphaTarget parse(const std::string& text) {
    if (text.rfind("const:", 0) == 0) return named(text.substr(6));
    if (auto slash = text.find('/'); slash != std::string::npos) {
      BigInt num, den;
      try {
        num = BigInt(text.substr(0, slash));
        den = BigInt(text.substr(slash + 1));
      } catch (const std::runtime_error&) {
        throw Error("bad rational alpha '" + text + "'");
      }
      return rational(num, den);
    }
    return decimal(text);
  }

  const Rational& value() const noexcept { return value_; }
  bool exact() const noexcept { return exact_; }

  std::string to_string() const {
    if (!exact_) return text_;
    return value_.str();
  }

  /// floor(alpha * t); for decimals, errors out when the floor is not pinned
  /// down by the available digits.
  BigInt floor_times(const BigInt& t) const {
    const Rational x = value_ * t;
    const BigInt fl = numerator(x) / denominator(x);
    if (exact_) return fl;
    // true value lies in [x, x + t * 10^-digits]; require clearance from both
    // the integer below and the one above, with at least 1e-30 to spare
    const Rational err(t, big_pow(10, static_cast<std::uint64_t>(digits_)));
    const Rational guard = std::max(err, Rational(1, big_pow(10, 30)));
    const Rational frac = x - Rational(fl);
    if (frac <= guard || Rational(1) - frac <= guard + err)
      throw Error("ambiguous floor at scale " + t.str() + ": alpha needs more digits");
    return fl;
  }

 private:
  void check_range() const {
    if (value_ < 0 || value_ > 1) throw Error("alpha must lie in [0,1]");
  }

  Rational value_;
  bool exact_ = true;
  int digits_ = 0;
  std::string text_;
};

struct DimSequence {
  std::string source;
  /// a_n for n = 2, 3, ...
  std::vector<Rational> terms;
  /// log numerator per term (|mu|_n, or log_p |H_n|)
  std::vector<BigInt> counts;
  /// mu_n per term when the source is a partition, else empty
  std::vector<int> parts;
  std::optional<Rational> limit_estimate;

  int first_n() const noexcept { return 2; }
  const Rational& at(int n) const { return terms.at(static_cast<std::size_t>(n - 2)); }
  int last_n() const noexcept { return static_cast<int>(terms.size()) + 1; }
};

inline constexpr int limit_window = 50;
inline constexpr double limit_tolerance = 1e-9;

/// Attaches a limit estimate when the last 50 terms move monotonically
/// (within 1e-9); the estimate is the final term.
inline void attach_limit(DimSequence& s) {
  s.limit_estimate.reset();
  if (static_cast<int>(s.terms.size()) < limit_window) return;
  const std::size_t from = s.terms.size() - limit_window;
  bool up = true, down = true;
  for (std::size_t k = from + 1; k < s.terms.size(); ++k) {
    const double d = to_double(s.terms[k] - s.terms[k - 1]);
    up = up && d >= -limit_tolerance;
    down = down && d <= limit_tolerance;
  }
  if (up || down) s.limit_estimate = s.terms.back();
}

namespace detail {

template <class Mu>
DimSequence dim_sequence_counts(const Mu& mu, int N, std::string source, bool with_parts) {
  if (N < 2) throw Error("N must be >= 2");
  DimSequence s;
  s.source = std::move(source);
  std::int64_t count = 0;
  for (int n = 2; n <= N; ++n) {
    int col = 0;
    if constexpr (std::is_same_v<Mu, Partition>)
      col = mu.height(n);
    else
      col = mu.column_count(n);
    count += col;
    s.terms.emplace_back(Rational(2 * BigInt(count), BigInt(n) * (n - 1)));
    s.counts.emplace_back(count);
    if (with_parts) s.parts.push_back(col);
  }
  attach_limit(s);
  return s;
}

}  // namespace detail

/// a_n = 2 |mu|_n / (n(n-1)), n = 2..N.
inline DimSequence dim_sequence_partition(const Partition& mu, int N) {
  return detail::dim_sequence_counts(mu, N, "partition " + to_string(mu), true);
}

inline DimSequence dim_sequence_partition(const PartitionDiagram& mu, int N) {
  return detail::dim_sequence_counts(mu, N, "partition diagram", true);
}

/// Parts mu_2 = b_2, mu_n = b_n - b_{n-1} with b_n = floor(alpha n(n-1)/2).
inline Partition partition_for_alpha(const AlphaTarget& alpha, int N) {
  if (N < 2) throw Error("N must be >= 2");
  std::vector<int> parts;
  BigInt prev = 0;
  for (int n = 2; n <= N; ++n) {
    const BigInt b = alpha.floor_times(BigInt(n) * (n - 1) / 2);
    const BigInt part = b - prev;
    if (part < 0 || part > n - 1) throw Error("part mu_" + std::to_string(n) + " out of range");
    parts.push_back(static_cast<int>(part));
    prev = b;
  }
  return Partition(std::move(parts));
}

/// Sorts the parts into non-decreasing order, moving bulging squares right.
/// A partition without tail receives the constant tail of its largest part.
inline Partition monotone_normalize(const Partition& mu) {
  std::vector<int> p = mu.parts();
  std::sort(p.begin(), p.end());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] > static_cast<int>(k) + 1) throw Error("not normalizable by rearrangement");
  Tail tail = mu.tail();
  const int top = p.back();
  const int N = mu.window();
  if (tail.kind == Tail::Kind::empty) tail = Tail::constant(top);
  if (tail.height(N + 1) < top) throw Error("not normalizable by rearrangement: tail below the largest part");
  return Partition(std::move(p), tail);
}

/// Generator family: the truncations at window n.
using GeneratorFamily = std::function<std::vector<UniTriWindow>(int n)>;

enum class OrderMethod { closure, polycyclic };

/// Exact log_p of a p-power.
inline int log_p_exact(std::uint64_t order, std::uint64_t p) {
  int k = 0;
  while (order > 1) {
    if (order % p != 0) throw Error("order " + std::to_string(order) + " is not a power of p");
    order /= p;
    ++k;
  }
  return k;
}

/// a_n = log_p |<gens at n>| / (f n(n-1)/2), n = 2..N.
inline DimSequence dim_sequence_group(const GeneratorFamily& family, int N, std::uint64_t cap = default_closure_cap,
                                      OrderMethod method = OrderMethod::closure, std::string source = "group") {
  if (N < 2) throw Error("N must be >= 2");
  DimSequence s;
  s.source = std::move(source);
  for (int n = 2; n <= N; ++n) {
    const auto gens = family(n);
    if (gens.empty()) throw Error("generator family returned nothing");
    const Ring& R = *gens.front().ring();
    const int f = R.kind() == RingKind::ext_field ? R.f() : 1;
    int logp = 0;
    if (method == OrderMethod::closure)
      logp = log_p_exact(closure_order(gens, cap), R.p());
    else
      logp = polycyclic_log_order(gens);
    s.terms.emplace_back(Rational(BigInt(2 * logp), BigInt(f) * n * (n - 1)));
    s.counts.emplace_back(logp);
  }
  attach_limit(s);
  return s;
}

/// CSV: n,a_n_num,a_n_den,decimal,mu_n,count
inline std::string to_csv(const DimSequence& s, int decimals = 12) {
  std::string out = "n,a_n_num,a_n_den,decimal,mu_n,count\n";
  for (std::size_t k = 0; k < s.terms.size(); ++k) {
    const Rational& a = s.terms[k];
    out += std::to_string(k + 2) + "," + numerator(a).str() + "," + denominator(a).str() + "," +
           to_decimal(a, decimals) + "," + (s.parts.empty() ? std::string() : std::to_string(s.parts[k])) + "," +
           s.counts[k].str() + "\n";
  }
  return out;
}

}  // namespace unitri
