#pragma once

// The 2x2 matrix properties: simply extendable, extendable, determinant
// liftable, weakly determinant liftable, non-full, and diagonal reduction.
// All searches are definitional, scan in lexicographic order (first witness
// is reported), and spend a node budget.
//
// For the bordered matrix [[a,b,e],[c,d,f],[g,h,i]],
//   det = i*det(A) + f*(b g - a h) + e*(c h - d g),
// so the corner entry i enters linearly: candidates for i come from the
// per-ring division cache instead of a fifth nested loop.

#include "edrlab/matrix.hpp"

namespace edrlab {

enum class PropKind { SimplyExtendable, Extendable, DetLiftable, WeaklyDetLiftable };

inline const char* prop_name(PropKind p) {
  switch (p) {
    case PropKind::SimplyExtendable: return "simply_extendable";
    case PropKind::Extendable: return "extendable";
    case PropKind::DetLiftable: return "det_liftable";
    default: return "weakly_det_liftable";
  }
}

namespace lift {

struct SearchHit {
  Tri val = Tri::False;
  std::optional<FMat> witness;
};

inline void require_2x2_unimodular(const FMat& A) {
  if (A.rows != 2 || A.cols != 2)
    fail(Error::Kind::Precondition, "property defined for 2x2 matrices");
  if (!is_unimodular_matrix(A))
    fail(Error::Kind::Precondition, "matrix is not unimodular: " + A.str());
}

inline FMat bordered(const FMat& A, std::uint32_t e, std::uint32_t f, std::uint32_t g,
                     std::uint32_t h, std::uint32_t i) {
  FMat W(A.R, 3, 3);
  W.at(0, 0) = A.at(0, 0);
  W.at(0, 1) = A.at(0, 1);
  W.at(0, 2) = e;
  W.at(1, 0) = A.at(1, 0);
  W.at(1, 1) = A.at(1, 1);
  W.at(1, 2) = f;
  W.at(2, 0) = g;
  W.at(2, 1) = h;
  W.at(2, 2) = i;
  return W;
}

// Simply extendable: completion with (3,3) = 0, i.e. f P + e Q = 1 where
// P = b g - a h and Q = c h - d g. Scan order (g, h, e); f is solved through
// the division cache, so the whole search is |R|^3 with O(1) nodes.
inline Tri search_simply_extendable(const FMat& A, Budget& budget, FMat* wit = nullptr) {
  const Ring& R = A.R;
  const std::uint32_t n = R->size();
  const std::uint32_t a = A.at(0, 0), b = A.at(0, 1), c = A.at(1, 0), d = A.at(1, 1);
  const auto& dv = R->div();
  const auto& masks = maximal_ideal_masks(R);
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h) {
      if (!budget.spend()) return Tri::Unknown;
      const std::uint32_t P = R->sub(R->mul(b, g), R->mul(a, h));
      const std::uint32_t Q = R->sub(R->mul(c, h), R->mul(d, g));
      // f P + e Q = 1 is solvable at this (g,h) iff (P,Q) is unimodular
      std::uint32_t pq[2] = {P, Q};
      if (!is_unimodular_span(masks, pq, 2)) continue;
      if (!budget.spend(n)) return Tri::Unknown;
      for (std::uint32_t e = 0; e < n; ++e) {
        const std::uint32_t rhs = R->sub(R->one(), R->mul(e, Q));
        const std::uint32_t f = dv.first(P, rhs);
        if (f == UnitGroup::npos) continue;
        if (wit) *wit = bordered(A, e, f, g, h, R->zero());
        return Tri::True;
      }
    }
  return Tri::False;
}

// Extendable: det = i det(A) + f P + e Q = 1, so the corner must solve
// det(A) * i = 1 - f P - e Q; equivalently 1 - f P - e Q lies in R det(A).
// For each (g,h,e) the admissible f solve f P = (1 - e Q) - w for some w in
// the determinant ideal, so f comes from |I| division-cache lookups (the
// least such f, keeping the witness identical to a plain lexicographic scan).
inline Tri search_extendable(const FMat& A, Budget& budget, FMat* wit = nullptr) {
  const Ring& R = A.R;
  const std::uint32_t n = R->size();
  const std::uint32_t a = A.at(0, 0), b = A.at(0, 1), c = A.at(1, 0), d = A.at(1, 1);
  const std::uint32_t delta = det2(A);
  const auto& dv = R->div();
  if (R->units().is_unit[delta]) {
    // any border works; the first one in scan order is all zeros
    if (wit) {
      std::uint32_t i = R->mul(R->units().inv_of[delta], R->one());
      *wit = bordered(A, R->zero(), R->zero(), R->zero(), R->zero(), i);
    }
    return Tri::True;
  }
  const IdealSet& I = principal_ideal_cached(R, delta);
  const auto& masks = maximal_ideal_masks(R);
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h) {
      if (!budget.spend()) return Tri::Unknown;
      const std::uint32_t P = R->sub(R->mul(b, g), R->mul(a, h));
      const std::uint32_t Q = R->sub(R->mul(c, h), R->mul(d, g));
      // solvable at this (g,h) iff (delta, P, Q) is unimodular
      std::uint32_t dpq[3] = {delta, P, Q};
      if (!is_unimodular_span(masks, dpq, 3)) continue;
      for (std::uint32_t e = 0; e < n; ++e) {
        if (!budget.spend(I.elems.size())) return Tri::Unknown;
        const std::uint32_t base = R->sub(R->one(), R->mul(e, Q));
        std::uint32_t best_f = UnitGroup::npos;
        for (std::uint32_t w : I.elems) {
          std::uint32_t f = dv.first(P, R->sub(base, w));
          if (f < best_f) best_f = f;
        }
        if (best_f == UnitGroup::npos) continue;
        const std::uint32_t val = R->sub(base, R->mul(best_f, P));
        const std::uint32_t i = dv.first(delta, val);
        if (i == UnitGroup::npos)
          fail(Error::Kind::Logic, "corner solve failed despite ideal membership");
        if (wit) *wit = bordered(A, e, best_f, g, h, i);
        return Tri::True;
      }
    }
  return Tri::False;
}

// Determinant liftable: unimodular B with det(B) = 0 congruent to A mod
// R det(A). Weakly determinant liftable drops unimodularity. The last
// congruence slot is solved linearly through the division cache.
inline Tri search_det_liftable(const FMat& A, Budget& budget, bool weak,
                               FMat* wit = nullptr) {
  const Ring& R = A.R;
  const std::uint32_t delta = det2(A);
  if (R->units().is_unit[delta]) {
    // congruence class is all of M_2: diag(1, 0) (or 0 for the weak case)
    FMat B(R, 2, 2);
    if (!weak) B.at(0, 0) = R->one();
    if (wit) *wit = B;
    return Tri::True;
  }
  const IdealSet& I = principal_ideal_cached(R, delta);
  const auto& dv = R->div();
  const auto& masks = maximal_ideal_masks(R);
  const std::uint32_t a = A.at(0, 0), b = A.at(0, 1), c = A.at(1, 0), d = A.at(1, 1);
  for (std::uint32_t i1 : I.elems) {
    const std::uint32_t b11 = R->add(a, i1);
    for (std::uint32_t i2 : I.elems) {
      const std::uint32_t b12 = R->add(b, i2);
      for (std::uint32_t i3 : I.elems) {
        if (!budget.spend(I.elems.size())) return Tri::Unknown;
        const std::uint32_t b21 = R->add(c, i3);
        // need b11 * b22 = b12 * b21 with b22 = d + i4, i4 in I
        const std::uint32_t rhs = R->mul(b12, b21);
        for (const std::uint32_t* it = dv.begin(b11, rhs); it != dv.end(b11, rhs); ++it) {
          const std::uint32_t b22 = *it;
          if (!I.contains(R->sub(b22, d))) continue;
          std::uint32_t entries[4] = {b11, b12, b21, b22};
          if (!weak && !is_unimodular_span(masks, entries, 4)) continue;
          if (wit) {
            FMat B(R, 2, 2);
            B.at(0, 0) = b11;
            B.at(0, 1) = b12;
            B.at(1, 0) = b21;
            B.at(1, 1) = b22;
            *wit = std::move(B);
          }
          return Tri::True;
        }
      }
    }
  }
  return Tri::False;
}

// ---------------------------------------------------------------------------
// Upper-triangular criteria (used as in-op cross-checks and by the scans
// that quantify over upper-triangular matrices only).

// exists (e,f) in Um(R^2) with (a e, b e + c f) in Um(R^2)
inline Tri criterion_se_ut(const Ring& R, std::uint32_t a, std::uint32_t b,
                           std::uint32_t c, Budget& budget,
                           std::pair<std::uint32_t, std::uint32_t>* wit = nullptr) {
  const auto& masks = maximal_ideal_masks(R);
  const std::uint32_t n = R->size();
  for (std::uint32_t e = 0; e < n; ++e) {
    if (!budget.spend(n)) return Tri::Unknown;
    for (std::uint32_t f = 0; f < n; ++f) {
      std::uint32_t ef[2] = {e, f};
      if (!is_unimodular_span(masks, ef, 2)) continue;
      std::uint32_t pair2[2] = {R->mul(a, e), R->add(R->mul(b, e), R->mul(c, f))};
      if (!is_unimodular_span(masks, pair2, 2)) continue;
      if (wit) *wit = {e, f};
      return Tri::True;
    }
  }
  return Tri::False;
}

// exists (e,g) with (a e, b e + c g, a c) in Um(R^3)
inline Tri criterion_e_ut(const Ring& R, std::uint32_t a, std::uint32_t b,
                          std::uint32_t c, Budget& budget) {
  const auto& masks = maximal_ideal_masks(R);
  const std::uint32_t n = R->size();
  const std::uint32_t ac = R->mul(a, c);
  for (std::uint32_t e = 0; e < n; ++e) {
    if (!budget.spend(n)) return Tri::Unknown;
    for (std::uint32_t g = 0; g < n; ++g) {
      std::uint32_t t[3] = {R->mul(a, e), R->add(R->mul(b, e), R->mul(c, g)), ac};
      if (is_unimodular_span(masks, t, 3)) return Tri::True;
    }
  }
  return Tri::False;
}

// exists (x,y,z,w) with a x + b y + c w = 1 and x w = y z
inline Tri criterion_dl_ut(const Ring& R, std::uint32_t a, std::uint32_t b,
                           std::uint32_t c, Budget& budget,
                           std::array<std::uint32_t, 4>* wit = nullptr) {
  const std::uint32_t n = R->size();
  const auto& dv = R->div();
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!budget.spend(n)) return Tri::Unknown;
      const std::uint32_t rest = R->sub(R->sub(R->one(), R->mul(a, x)), R->mul(b, y));
      // w with c w = rest, then z with y z = x w
      for (const std::uint32_t* wp = dv.begin(c, rest); wp != dv.end(c, rest); ++wp) {
        const std::uint32_t xw = R->mul(x, *wp);
        std::uint32_t z = dv.first(y, xw);
        if (z == UnitGroup::npos) continue;
        if (wit) *wit = {x, y, z, *wp};
        return Tri::True;
      }
    }
  return Tri::False;
}

// exists (x,y,z,w) with 1 - a x - b y - c w + a c (x w - y z) = 0,
// equivalently (1-a x)(1-c w) = y (b + a c z)
inline Tri criterion_wdl_ut(const Ring& R, std::uint32_t a, std::uint32_t b,
                            std::uint32_t c, Budget& budget,
                            std::array<std::uint32_t, 4>* wit = nullptr) {
  const std::uint32_t n = R->size();
  const auto& dv = R->div();
  const std::uint32_t ac = R->mul(a, c);
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t lx = R->sub(R->one(), R->mul(a, x));
    for (std::uint32_t w = 0; w < n; ++w) {
      if (!budget.spend(n)) return Tri::Unknown;
      const std::uint32_t lhs = R->mul(lx, R->sub(R->one(), R->mul(c, w)));
      for (std::uint32_t z = 0; z < n; ++z) {
        const std::uint32_t divisor = R->add(b, R->mul(ac, z));
        std::uint32_t y = dv.first(divisor, lhs);
        if (y == UnitGroup::npos) continue;
        if (wit) *wit = {x, y, z, w};
        return Tri::True;
      }
    }
  }
  return Tri::False;
}

// ---------------------------------------------------------------------------
// Non-full: B = [l; m] [o, q].

struct NonFullResult {
  Tri val = Tri::False;
  std::optional<std::array<std::uint32_t, 4>> lmoq;
};

inline NonFullResult search_non_full(const FMat& B, Budget& budget) {
  if (B.rows != 2 || B.cols != 2)
    fail(Error::Kind::Precondition, "non-full is a 2x2 notion");
  const Ring& R = B.R;
  NonFullResult out;
  if (det2(B) != R->zero()) return out;  // products of rank-one factors have det 0
  const auto& dv = R->div();
  const std::uint32_t b11 = B.at(0, 0), b12 = B.at(0, 1), b21 = B.at(1, 0),
                      b22 = B.at(1, 1);
  const std::uint32_t n = R->size();
  for (std::uint32_t l = 0; l < n; ++l) {
    if (!budget.spend(n)) {
      out.val = Tri::Unknown;
      return out;
    }
    for (const std::uint32_t* op = dv.begin(l, b11); op != dv.end(l, b11); ++op) {
      const std::uint32_t o = *op;
      for (const std::uint32_t* qp = dv.begin(l, b12); qp != dv.end(l, b12); ++qp) {
        const std::uint32_t q = *qp;
        for (const std::uint32_t* mp = dv.begin(o, b21); mp != dv.end(o, b21); ++mp) {
          const std::uint32_t m = *mp;
          if (R->mul(m, q) != b22) continue;
          out.val = Tri::True;
          out.lmoq = {l, m, o, q};
          return out;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal reduction: M B N = diag with d_i | d_{i+1}.

struct DiagReduction {
  Tri val = Tri::False;
  std::optional<FMat> M, N, D;
};

inline bool divides_in(const Ring& R, std::uint32_t u, std::uint32_t v) {
  return R->div().divides(u, v);
}

// Constructive route for chain local rings: some entry divides every other
// entry (ideals are totally ordered), so greedy pivoting always succeeds.
DiagReduction diag_reduce_chain(const FMat& B, Budget& budget);
// Orbit route for arbitrary finite rings: BFS over the two-sided orbit of B
// under elementary transvections and unit scalings (which generate GL over
// finite commutative rings). Witness reconstructed from the BFS tree.
DiagReduction diag_reduce_orbit(const FMat& B, Budget& budget);

DiagReduction admits_diagonal_reduction(const FMat& B, Budget& budget);

// Do all matrices of the shape admit diagonal reduction? Witness-free orbit
// partition, used by the whole-ring EDR flag on non-chain rings.
Tri all_shape_diag_reducible(const Ring& R, std::uint32_t rows, std::uint32_t cols,
                             Budget& budget);

// ---------------------------------------------------------------------------
// Public per-matrix report.

struct Prop4 {
  Tri simply_extendable = Tri::Unknown;
  Tri extendable = Tri::Unknown;
  Tri det_liftable = Tri::Unknown;
  Tri weakly_det_liftable = Tri::Unknown;
  Tri non_full_mod_det = Tri::Unknown;
  std::optional<FMat> se_witness, e_witness, dl_witness, wdl_witness;
  std::optional<std::array<std::uint32_t, 4>> nf_witness;
  Ring nf_quotient;
};

// is_extendable / is_simply_extendable / is_det_liftable /
// is_weakly_det_liftable, each cross-checked against its upper-triangular
// criterion when the input is upper triangular.
Tri is_simply_extendable(const FMat& A, Budget& budget, FMat* wit = nullptr);
Tri is_extendable(const FMat& A, Budget& budget, FMat* wit = nullptr);
Tri is_det_liftable(const FMat& A, Budget& budget, FMat* wit = nullptr);
Tri is_weakly_det_liftable(const FMat& A, Budget& budget, FMat* wit = nullptr);
NonFullResult is_non_full(const FMat& B, Budget& budget);

Prop4 check_matrix(const FMat& A, Budget& budget, bool with_nf = true);

}  // namespace lift
}  // namespace edrlab

#include "edrlab/detail/lift_impl.hpp"
