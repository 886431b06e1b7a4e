#pragma once

// Dense matrices over a finite ring, determinants by cofactor expansion,
// GL/SL enumeration caches, and the MAN-equivalence search.

#include <array>
#include <unordered_map>

#include "edrlab/structure.hpp"

namespace edrlab {

struct FMat {
  Ring R;
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::uint32_t> a;  // row-major indices

  FMat() = default;
  FMat(Ring r, std::uint32_t m, std::uint32_t n)
      : R(std::move(r)), rows(m), cols(n), a(static_cast<std::size_t>(m) * n, 0) {
    if (m < 1 || n < 1) fail(Error::Kind::Precondition, "matrix must be at least 1x1");
  }
  static FMat of(Ring r, std::uint32_t m, std::uint32_t n,
                 std::initializer_list<long long> vals) {
    FMat M(std::move(r), m, n);
    std::size_t i = 0;
    for (long long v : vals) M.a[i++] = M.R->from_int(v);
    return M;
  }
  std::uint32_t& at(std::uint32_t i, std::uint32_t j) {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  bool operator==(const FMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  std::string str() const {
    std::string s = "[";
    for (std::uint32_t i = 0; i < rows; ++i) {
      s += "[";
      for (std::uint32_t j = 0; j < cols; ++j) {
        if (j) s += ",";
        s += R->elem_str(at(i, j));
      }
      s += "]";
      if (i + 1 < rows) s += ",";
    }
    return s + "]";
  }
};

// Parses "[[a,b],[c,d]]" with entries in the owning ring's literal syntax.
inline FMat parse_matrix(const Ring& R, const std::string& text) {
  std::string s = detail::trim(text);
  if (s.size() < 4 || s.front() != '[' || s.back() != ']')
    fail(Error::Kind::Parse, "matrix literal must look like [[a,b],[c,d]]");
  std::vector<std::vector<std::string>> cells;
  {
    std::string inner = s.substr(1, s.size() - 2);
    int depth = 0;
    std::string cur;
    std::vector<std::string> row_texts;
    for (char c : inner) {
      if (c == '[') {
        if (depth == 0) cur.clear();
        ++depth;
      }
      if (depth > 0) cur += c;
      if (c == ']') {
        --depth;
        if (depth == 0) row_texts.push_back(cur);
      }
    }
    if (row_texts.empty()) fail(Error::Kind::Parse, "empty matrix literal");
    for (const auto& rt : row_texts) {
      auto parts = detail::split_top(rt.substr(1, rt.size() - 2), ',');
      std::vector<std::string> row;
      for (auto& p : parts) row.push_back(detail::trim(p));
      cells.push_back(std::move(row));
    }
  }
  const std::uint32_t m = static_cast<std::uint32_t>(cells.size());
  const std::uint32_t n = static_cast<std::uint32_t>(cells[0].size());
  for (const auto& row : cells)
    if (row.size() != n) fail(Error::Kind::Parse, "ragged matrix literal");
  FMat M(R, m, n);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < n; ++j) M.at(i, j) = R->parse_elem(cells[i][j]);
  return M;
}

inline FMat identity_mat(const Ring& R, std::uint32_t n) {
  FMat I(R, n, n);
  for (std::uint32_t i = 0; i < n; ++i) I.at(i, i) = R->one();
  return I;
}

inline FMat mat_mul(const FMat& A, const FMat& B) {
  if (A.cols != B.rows) fail(Error::Kind::Precondition, "matrix size mismatch in product");
  const Ring& R = A.R;
  FMat C(R, A.rows, B.cols);
  for (std::uint32_t i = 0; i < A.rows; ++i)
    for (std::uint32_t j = 0; j < B.cols; ++j) {
      std::uint32_t s = R->zero();
      for (std::uint32_t k = 0; k < A.cols; ++k)
        s = R->add(s, R->mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = s;
    }
  return C;
}

inline FMat transpose(const FMat& A) {
  FMat T(A.R, A.cols, A.rows);
  for (std::uint32_t i = 0; i < A.rows; ++i)
    for (std::uint32_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

inline bool is_symmetric(const FMat& A) {
  if (A.rows != A.cols) return false;
  for (std::uint32_t i = 0; i < A.rows; ++i)
    for (std::uint32_t j = i + 1; j < A.cols; ++j)
      if (A.at(i, j) != A.at(j, i)) return false;
  return true;
}

inline bool is_upper_triangular(const FMat& A) {
  for (std::uint32_t i = 1; i < A.rows; ++i)
    for (std::uint32_t j = 0; j < i && j < A.cols; ++j)
      if (A.at(i, j) != A.R->zero()) return false;
  return true;
}

// Cofactor-expansion determinants for the two sizes every criterion uses.
inline std::uint32_t det2(const FMat& A) {
  if (A.rows != 2 || A.cols != 2) fail(Error::Kind::Precondition, "det2 needs a 2x2 matrix");
  const Ring& R = A.R;
  return R->sub(R->mul(A.at(0, 0), A.at(1, 1)), R->mul(A.at(0, 1), A.at(1, 0)));
}

inline std::uint32_t det3(const FMat& A) {
  if (A.rows != 3 || A.cols != 3) fail(Error::Kind::Precondition, "det3 needs a 3x3 matrix");
  const Ring& R = A.R;
  auto m2 = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return R->sub(R->mul(a, d), R->mul(b, c));
  };
  std::uint32_t t0 = R->mul(A.at(0, 0), m2(A.at(1, 1), A.at(1, 2), A.at(2, 1), A.at(2, 2)));
  std::uint32_t t1 = R->mul(A.at(0, 1), m2(A.at(1, 0), A.at(1, 2), A.at(2, 0), A.at(2, 2)));
  std::uint32_t t2 = R->mul(A.at(0, 2), m2(A.at(1, 0), A.at(1, 1), A.at(2, 0), A.at(2, 1)));
  return R->add(R->sub(t0, t1), t2);
}

inline std::uint32_t det_any(const FMat& A) {
  if (A.rows != A.cols) fail(Error::Kind::Precondition, "determinant of non-square matrix");
  if (A.rows == 1) return A.at(0, 0);
  if (A.rows == 2) return det2(A);
  if (A.rows == 3) return det3(A);
  fail(Error::Kind::Size, "determinants implemented for n <= 3");
}

// Um(M_{m x n}(R)): the ideal generated by all entries is R.
inline bool is_unimodular_matrix(const FMat& A) {
  return is_unimodular_span(maximal_ideal_masks(A.R), A.a.data(), A.a.size());
}

inline UnimodularWitness unimodular_matrix_witness(const FMat& A) {
  return unimodular_vector(A.R, A.a);
}

// ---------------------------------------------------------------------------
// GL_n enumeration (n in {2,3}), determinant filter with a cheap first-row
// prune. Cached per (ring, n); SL sublist tagged.

struct GLCache {
  Ring R;
  std::uint32_t n = 0;
  std::vector<std::array<std::uint32_t, 9>> mats;  // entries row-major, padded
  std::vector<std::uint32_t> dets;
  std::vector<char> in_sl;
  std::vector<std::uint32_t> inv_index;  // position of the inverse matrix
  std::unordered_map<std::uint64_t, std::uint32_t> pos;

  std::uint64_t key(const std::uint32_t* e) const {
    std::uint64_t k = 0;
    for (std::uint32_t i = 0; i < n * n; ++i) k = k * R->size() + e[i];
    return k;
  }
  FMat materialize(std::uint32_t idx) const {
    FMat M(R, n, n);
    for (std::uint32_t i = 0; i < n * n; ++i) M.a[i] = mats[idx][i];
    return M;
  }
  std::size_t count() const { return mats.size(); }
  std::size_t sl_count() const {
    std::size_t c = 0;
    for (char b : in_sl) c += b != 0;
    return c;
  }
  std::uint32_t index_of(const FMat& M) const {
    auto it = pos.find(key(M.a.data()));
    if (it == pos.end()) fail(Error::Kind::Logic, "matrix not in GL cache");
    return it->second;
  }
  bool contains(const FMat& M) const { return pos.count(key(M.a.data())) != 0; }
};

namespace detail {

inline GLCache build_gl(const Ring& R, std::uint32_t n, std::uint64_t budget_cells) {
  const std::uint64_t N = R->size();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n * n; ++i) {
    total *= N;
    if (total > budget_cells)
      fail(Error::Kind::Budget, "GL enumeration budget exceeded for " + R->spec());
  }
  GLCache g;
  g.R = R;
  g.n = n;
  const auto& U = R->units();
  std::array<std::uint32_t, 9> e{};
  FMat M(R, n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t t = code;
    for (std::uint32_t i = n * n; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(t % N);
      t /= N;
    }
    // prune: an all-zero first row can never reach a unit determinant
    bool zero_row = true;
    for (std::uint32_t j = 0; j < n; ++j) zero_row = zero_row && e[j] == R->zero();
    if (zero_row && !R->is_zero_ring()) continue;
    std::copy(e.begin(), e.begin() + n * n, M.a.begin());
    std::uint32_t d = (n == 2) ? det2(M) : det3(M);
    if (!U.is_unit[d]) continue;
    g.pos.emplace(g.key(e.data()), static_cast<std::uint32_t>(g.mats.size()));
    g.mats.push_back(e);
    g.dets.push_back(d);
    g.in_sl.push_back(d == R->one() ? 1 : 0);
  }
  // inverses via the adjugate divided by the determinant
  g.inv_index.resize(g.mats.size());
  for (std::uint32_t idx = 0; idx < g.mats.size(); ++idx) {
    FMat A = g.materialize(idx);
    std::uint32_t dinv = U.inv_of[g.dets[idx]];
    FMat B(R, n, n);
    if (n == 2) {
      B.at(0, 0) = R->mul(dinv, A.at(1, 1));
      B.at(0, 1) = R->mul(dinv, R->neg(A.at(0, 1)));
      B.at(1, 0) = R->mul(dinv, R->neg(A.at(1, 0)));
      B.at(1, 1) = R->mul(dinv, A.at(0, 0));
    } else {
      auto cof = [&](std::uint32_t r0, std::uint32_t c0) {
        std::uint32_t rr[2], cc[2], k = 0;
        for (std::uint32_t i = 0; i < 3; ++i)
          if (i != r0) rr[k++] = i;
        k = 0;
        for (std::uint32_t j = 0; j < 3; ++j)
          if (j != c0) cc[k++] = j;
        std::uint32_t m = R->sub(R->mul(A.at(rr[0], cc[0]), A.at(rr[1], cc[1])),
                                 R->mul(A.at(rr[0], cc[1]), A.at(rr[1], cc[0])));
        return ((r0 + c0) % 2) ? R->neg(m) : m;
      };
      for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 3; ++j) B.at(i, j) = R->mul(dinv, cof(j, i));
    }
    g.inv_index[idx] = g.pos.at(g.key(B.a.data()));
  }
  return g;
}

struct GLRegistry {
  std::mutex mu;
  std::map<std::pair<const FiniteRing*, std::uint32_t>, std::shared_ptr<const GLCache>> m;
};

inline GLRegistry& gl_registry() {
  static GLRegistry r;
  return r;
}

}  // namespace detail

// Complete GL_n(R) for n in {2,3}; throws Budget when |R|^(n^2) exceeds the
// cell budget (default 2^26).
inline std::shared_ptr<const GLCache> enumerate_GL(const Ring& R, std::uint32_t n,
                                                   std::uint64_t budget_cells = 1ull << 26) {
  if (n != 2 && n != 3) fail(Error::Kind::Precondition, "GL enumeration supports n in {2,3}");
  auto& reg = detail::gl_registry();
  {
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.m.find({R.get(), n});
    if (it != reg.m.end()) return it->second;
  }
  auto g = std::make_shared<const GLCache>(detail::build_gl(R, n, budget_cells));
  std::lock_guard<std::mutex> lk(reg.mu);
  auto [it, _] = reg.m.emplace(std::make_pair(R.get(), n), std::move(g));
  return it->second;
}

// ---------------------------------------------------------------------------
// Equivalence A ~ B: exists (M, N) in GL_2^2 with M A N = B. Outer loop over
// M, N solved by direct scan; deterministic first witness.

struct EquivalenceResult {
  Tri equivalent = Tri::False;
  std::optional<std::pair<FMat, FMat>> witness;  // (M, N)
};

inline EquivalenceResult are_equivalent(const FMat& A, const FMat& B, Budget& budget) {
  if (A.rows != 2 || A.cols != 2 || B.rows != 2 || B.cols != 2)
    fail(Error::Kind::Precondition, "equivalence search is 2x2 only");
  const Ring& R = A.R;
  EquivalenceResult out;
  auto gl = enumerate_GL(R, 2);
  for (std::uint32_t mi = 0; mi < gl->count(); ++mi) {
    FMat MA = mat_mul(gl->materialize(mi), A);
    for (std::uint32_t ni = 0; ni < gl->count(); ++ni) {
      if (!budget.spend()) {
        out.equivalent = Tri::Unknown;
        return out;
      }
      if (mat_mul(MA, gl->materialize(ni)) == B) {
        out.equivalent = Tri::True;
        out.witness = {gl->materialize(mi), gl->materialize(ni)};
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The SL_2 matrix turning diag(d,0) into diag(e,0) when Rd = Re:
// N = [[v, -1], [1-uv, u]] where d = e u and e = d v.

inline FMat lemma1_matrix(const Ring& R, std::uint32_t d, std::uint32_t e) {
  const auto& dv = R->div();
  std::uint32_t u, v;
  if (d == e) {
    u = v = R->one();
  } else {
    u = dv.first(e, d);  // least u with e u = d
    v = dv.first(d, e);  // least v with d v = e
    if (u == UnitGroup::npos || v == UnitGroup::npos)
      fail(Error::Kind::Precondition, "Rd != Re: " + R->elem_str(d) + " vs " + R->elem_str(e));
  }
  FMat N(R, 2, 2);
  N.at(0, 0) = v;
  N.at(0, 1) = R->neg(R->one());
  N.at(1, 0) = R->sub(R->one(), R->mul(u, v));
  N.at(1, 1) = u;
  // By construction det N = vu + (1 - uv) = 1; check the displayed identity.
  FMat D(R, 2, 2), E(R, 2, 2);
  D.at(0, 0) = d;
  E.at(0, 0) = e;
  if (det2(N) != R->one() || !(mat_mul(N, D) == E))
    fail(Error::Kind::Logic, "lemma1_matrix identity failed");
  return N;
}

}  // namespace edrlab
