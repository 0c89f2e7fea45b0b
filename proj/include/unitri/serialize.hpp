#pragma once

// JSON forms of rings, matrices, series, partitions and dimension sequences.
// Rationals travel as num/den strings; decimals appear only as display fields.

#include <string>
#include <vector>

#include "json.hpp"
#include "unitri/error.hpp"
#include "unitri/hausdorff.hpp"
#include "unitri/matrix.hpp"
#include "unitri/nottingham.hpp"
#include "unitri/partition.hpp"
#include "unitri/rational.hpp"
#include "unitri/ring.hpp"

namespace unitri {

using json = nlohmann::json;

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(std::string("bad field '") + key + "'");
  }
}

}  // namespace detail

inline json ring_to_json(const Ring& R) {
  json j;
  j["p"] = R.p();
  switch (R.kind()) {
    case RingKind::prime_field:
      j["kind"] = "prime";
      break;
    case RingKind::ext_field:
      j["kind"] = "ext";
      j["f"] = R.f();
      j["modulus"] = R.modulus();
      if (!R.has_power_basis()) j["basis"] = R.basis();
      break;
    case RingKind::trunc_int:
      j["kind"] = "trunc";
      j["k"] = R.k();
      break;
  }
  return j;
}

inline RingPtr ring_from_json(const json& j) {
  const auto p = detail::field<std::uint64_t>(j, "p");
  const std::string kind = j.contains("kind") ? detail::field<std::string>(j, "kind") : std::string("auto");
  if (kind == "prime") return Ring::prime_field(p);
  if (kind == "trunc") return Ring::trunc_int(p, detail::field<int>(j, "k"));
  if (kind == "ext" || kind == "auto") {
    if (j.contains("modulus")) {
      std::vector<std::vector<std::uint64_t>> basis;
      if (j.contains("basis")) basis = detail::field<std::vector<std::vector<std::uint64_t>>>(j, "basis");
      return Ring::ext_field(p, detail::field<std::vector<std::uint64_t>>(j, "modulus"), basis);
    }
    if (j.contains("k")) return Ring::trunc_int(p, detail::field<int>(j, "k"));
    const int f = j.contains("f") ? detail::field<int>(j, "f") : 1;
    return f == 1 ? Ring::prime_field(p) : Ring::ext_field(p, f);
  }
  throw Error("unknown ring kind '" + kind + "'");
}

inline json matrix_to_json(const UniTriWindow& x) {
  json entries = json::array();
  for (const auto& e : x.entries()) entries.push_back({e.i, e.j, x.ring()->to_string(e.value)});
  return {{"ring", ring_to_json(*x.ring())}, {"n", x.n()}, {"entries", entries}};
}

inline UniTriWindow matrix_from_json(const json& j) {
  const RingPtr R = ring_from_json(detail::field<json>(j, "ring"));
  UniTriWindow x(R, detail::field<int>(j, "n"));
  for (const auto& e : detail::field<json>(j, "entries")) {
    if (!e.is_array() || e.size() != 3) throw Error("matrix entries are [i, j, value]");
    const std::string v = e[2].is_string() ? e[2].get<std::string>() : e[2].dump();
    x.set(e[0].get<int>(), e[1].get<int>(), R->parse(v));
  }
  return x;
}

inline json series_to_json(const SeriesAut& u) {
  json c = json::array();
  for (Coeff a : u.coeffs()) c.push_back(u.ring()->to_string(a));
  return {{"ring", ring_to_json(*u.ring())}, {"coeffs", c}};
}

/// {"ring": ..., "coeffs": [a_2, ..., a_N]}; "q": {"p","f"} is accepted for the ring.
inline SeriesAut series_from_json(const json& j) {
  const RingPtr R = ring_from_json(j.contains("ring") ? j.at("ring") : detail::field<json>(j, "q"));
  std::vector<Coeff> c;
  for (const auto& a : detail::field<json>(j, "coeffs")) c.push_back(R->parse(a.is_string() ? a.get<std::string>() : a.dump()));
  return SeriesAut::from_coeffs(R, c);
}

inline json tail_to_json(const Tail& t) {
  switch (t.kind) {
    case Tail::Kind::constant:
      return {{"kind", "constant"}, {"d", t.value}};
    case Tail::Kind::affine:
      return {{"kind", "affine"}, {"c0", t.value}};
    default:
      return {{"kind", "empty"}};
  }
}

inline Tail tail_from_json(const json& j) {
  const auto kind = detail::field<std::string>(j, "kind");
  if (kind == "empty") return Tail::none();
  if (kind == "constant") return Tail::constant(detail::field<int>(j, "d"));
  if (kind == "affine") return Tail::affine(detail::field<int>(j, "c0"));
  throw Error("unknown tail kind '" + kind + "'");
}

/// parts start at mu_2
inline json partition_to_json(const Partition& mu) { return {{"parts", mu.parts()}, {"tail", tail_to_json(mu.tail())}}; }

inline Partition partition_from_json(const json& j) {
  Tail t;
  if (j.contains("tail")) t = tail_from_json(j.at("tail"));
  return Partition(detail::field<std::vector<int>>(j, "parts"), t);
}

inline json rational_to_json(const Rational& r) { return {{"num", numerator(r).str()}, {"den", denominator(r).str()}}; }

inline json sequence_to_json(const DimSequence& s, int decimals = 12) {
  json terms = json::array();
  for (std::size_t k = 0; k < s.terms.size(); ++k) {
    json t = rational_to_json(s.terms[k]);
    t["n"] = k + 2;
    t["count"] = s.counts[k].str();
    t["decimal"] = to_decimal(s.terms[k], decimals);
    if (!s.parts.empty()) t["mu_n"] = s.parts[k];
    terms.push_back(t);
  }
  json j = {{"source", s.source}, {"terms", terms}};
  j["limit_estimate"] = s.limit_estimate ? rational_to_json(*s.limit_estimate) : json(nullptr);
  return j;
}

}  // namespace unitri
