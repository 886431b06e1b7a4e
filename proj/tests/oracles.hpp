#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// a Leibniz-expansion determinant, the minor-gcd route to invariant factors,
// and a reachability-based unimodularity check.

#include <numeric>
#include <vector>

#include "edrlab/euclidean.hpp"
#include "edrlab/matrix.hpp"

namespace oracles {

using edrlab::FMat;
using edrlab::Ring;
using edrlab::Zint;

// 6-term Leibniz sum for a 3x3 matrix (sign handled via ring negation).
inline std::uint32_t leibniz_det3(const FMat& A) {
  const Ring& R = A.R;
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const bool odd[6] = {false, true, true, false, false, true};
  std::uint32_t acc = R->zero();
  for (int p = 0; p < 6; ++p) {
    std::uint32_t term = R->one();
    for (std::uint32_t i = 0; i < 3; ++i)
      term = R->mul(term, A.at(i, static_cast<std::uint32_t>(perms[p][i])));
    acc = odd[p] ? R->sub(acc, term) : R->add(acc, term);
  }
  return acc;
}

inline std::uint32_t leibniz_det2(const FMat& A) {
  const Ring& R = A.R;
  return R->sub(R->mul(A.at(0, 0), A.at(1, 1)), R->mul(A.at(0, 1), A.at(1, 0)));
}

// gcd of all k x k minors of an integer matrix, computed by cofactor
// expansion over explicit row/column subsets.
inline Zint minor_det(const std::vector<std::vector<Zint>>& a,
                      const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return a[rows[0]][cols[0]];
  Zint acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    Zint term = a[rows[0]][cols[j]] * minor_det(a, sub_rows, sub_cols);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

template <class F>
void for_subsets(std::size_t n, std::size_t k, F&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] + (k - i) < n + 0) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

inline Zint minor_gcd(const std::vector<std::vector<Zint>>& a, std::size_t k) {
  const std::size_t m = a.size(), n = a[0].size();
  Zint g = 0;
  for_subsets(m, k, [&](const std::vector<std::size_t>& rows) {
    for_subsets(n, k, [&](const std::vector<std::size_t>& cols) {
      g = boost::multiprecision::gcd(g, minor_det(a, rows, cols));
    });
  });
  return g < 0 ? Zint(-g) : g;
}

// invariant factors d_1 | d_2 | ... from minor gcds: d_k = g_k / g_{k-1}
inline std::vector<Zint> invariant_factors_by_minors(
    const std::vector<std::vector<Zint>>& a) {
  const std::size_t k = std::min(a.size(), a[0].size());
  std::vector<Zint> out;
  Zint prev = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    Zint g = minor_gcd(a, i);
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Unimodularity by brute subset-sum reachability of 1 (independent of the
// maximal-ideal route in the library).
inline bool reachable_unimodular(const Ring& R, const std::vector<std::uint32_t>& v) {
  std::vector<char> reach(R->size(), 0);
  reach[R->zero()] = 1;
  for (std::uint32_t g : v) {
    std::vector<char> next = reach;
    for (std::uint32_t s = 0; s < R->size(); ++s) {
      if (!reach[s]) continue;
      for (std::uint32_t r = 0; r < R->size(); ++r) next[R->add(s, R->mul(r, g))] = 1;
    }
    reach = std::move(next);
  }
  return reach[R->one()] != 0;
}

}  // namespace oracles
