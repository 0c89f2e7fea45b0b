#pragma once

// Gaussian elimination over a finite field given as a Ring.

#include <vector>

#include "unitri/error.hpp"
#include "unitri/ring.hpp"

namespace unitri {

using Mat = std::vector<std::vector<Coeff>>;

struct Echelon {
  Mat rows;                 // reduced row echelon form, zero rows removed
  std::vector<int> pivots;  // pivot column of each row
};

inline Echelon row_reduce(const Ring& F, Mat m, int cols) {
  if (!F.is_field()) throw Error("linear algebra needs a field");
  Echelon e;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Coeff s = F.inv(m[r][c]);
    for (auto& v : m[r]) v = F.mul(v, s);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][c] == 0) continue;
      const Coeff t = m[k][c];
      for (int j = c; j < cols; ++j) m[k][j] = F.sub(m[k][j], F.mul(t, m[r][j]));
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

inline int rank(const Ring& F, const Mat& m, int cols) { return static_cast<int>(row_reduce(F, m, cols).pivots.size()); }

/// Basis of { v : m v = 0 }.
inline Mat nullspace(const Ring& F, const Mat& m, int cols) {
  const Echelon e = row_reduce(F, m, cols);
  std::vector<int> pivot_row(static_cast<std::size_t>(cols), -1);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) pivot_row[e.pivots[r]] = static_cast<int>(r);
  Mat basis;
  for (int free = 0; free < cols; ++free) {
    if (pivot_row[free] >= 0) continue;
    std::vector<Coeff> v(static_cast<std::size_t>(cols), 0);
    v[free] = F.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.rows[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace unitri
