#pragma once

// The 2x2 lifting properties over the bounded-Z profile. Unimodularity is
// exact (gcd); the existential searches scan third-row candidates (g,h) or
// congruence offsets over increasing max-norm shells up to the profile
// height and solve the remaining slots exactly. Exhaustion reports Unknown,
// never false: over Z every unimodular matrix is in fact simply extendable,
// so Unknown only ever means the height was too small.

#include "edrlab/euclidean.hpp"

namespace edrlab {
namespace zlift {

using Mat2 = std::array<Zint, 4>;   // row-major [[a,b],[c,d]]
using Mat3 = std::array<Zint, 9>;

inline Zint det2z(const Mat2& A) { return A[0] * A[3] - A[1] * A[2]; }

inline Zint det3z(const Mat3& A) {
  return A[0] * (A[4] * A[8] - A[5] * A[7]) - A[1] * (A[3] * A[8] - A[5] * A[6]) +
         A[2] * (A[3] * A[7] - A[4] * A[6]);
}

inline bool is_unimodular(const Mat2& A) {
  using boost::multiprecision::gcd;
  return gcd(gcd(A[0], A[1]), gcd(A[2], A[3])) == 1;
}

struct ZSearch {
  Tri val = Tri::Unknown;
  std::optional<Mat3> completion;
  std::optional<Mat2> lift;                   // congruent zero-determinant matrix
  std::optional<std::array<Zint, 4>> lmoq;    // non-full factorization
};

inline void require_unimodular(const Mat2& A) {
  if (!is_unimodular(A))
    fail(Error::Kind::Precondition, "matrix is not unimodular over Z");
}

// det of the bordered matrix is i*det(A) + f*(b g - a h) + e*(c h - d g);
// with corner zero we need f P + e Q = 1, solvable iff gcd(P, Q) = 1.
inline ZSearch simply_extendable(const Mat2& A, long long H) {
  require_unimodular(A);
  ZSearch out;
  bool hit = scan_shells2(H, [&](long long g, long long h, long long) {
    Zint P = A[1] * g - A[0] * h;
    Zint Q = A[2] * h - A[3] * g;
    auto eg = ext_gcd_z(P, Q);
    if (eg.g != 1) return false;
    // f P + e Q = 1 with f = s, e = t
    out.completion = {A[0], A[1], eg.t, A[2], A[3], eg.s, Zint(g), Zint(h), Zint(0)};
    return true;
  });
  if (hit) {
    out.val = Tri::True;
    if (det3z(*out.completion) != 1)
      fail(Error::Kind::Logic, "simple extension failed the determinant check");
  }
  return out;
}

inline ZSearch extendable(const Mat2& A, long long H) {
  require_unimodular(A);
  ZSearch out;
  const Zint delta = det2z(A);
  bool hit = scan_shells2(H, [&](long long g, long long h, long long) {
    Zint P = A[1] * g - A[0] * h;
    Zint Q = A[2] * h - A[3] * g;
    auto inner = ext_gcd_z(P, Q);
    auto outer = ext_gcd_z(delta, inner.g);
    if (outer.g != 1) return false;
    // i delta + (f P + e Q) * k = 1 with k = outer.t
    Zint i = outer.s, f = inner.s * outer.t, e = inner.t * outer.t;
    out.completion = {A[0], A[1], e, A[2], A[3], f, Zint(g), Zint(h), i};
    return true;
  });
  if (hit) {
    out.val = Tri::True;
    if (det3z(*out.completion) != 1)
      fail(Error::Kind::Logic, "extension failed the determinant check");
  }
  return out;
}

// B = A + delta * C with det(B) = 0 (and B unimodular for the strict form);
// the last offset is solved by exact division.
inline ZSearch det_liftable(const Mat2& A, long long H, bool weak) {
  require_unimodular(A);
  ZSearch out;
  const Zint delta = det2z(A);
  if (delta == 0) {
    out.val = Tri::True;  // A itself has zero determinant
    out.lift = A;
    return out;
  }
  bool hit = false;
  for (long long r = 0; r <= H && !hit; ++r) {
    for (long long c1 = -r; c1 <= r && !hit; ++c1)
      for (long long c2 = -r; c2 <= r && !hit; ++c2)
        for (long long c3 = -r; c3 <= r; ++c3) {
          if (std::max({std::llabs(c1), std::llabs(c2), std::llabs(c3)}) != r) continue;
          Zint b11 = A[0] + delta * c1, b12 = A[1] + delta * c2,
               b21 = A[2] + delta * c3;
          // (b11)(d + delta c4) = b12 b21
          Zint rhs = b12 * b21 - b11 * A[3];
          Zint den = b11 * delta;
          Mat2 B;
          if (den == 0) {
            if (rhs != 0) continue;  // c4 free only if the product vanishes
            B = {b11, b12, b21, A[3]};
          } else {
            if (rhs % den != 0) continue;
            B = {b11, b12, b21, A[3] + delta * (rhs / den)};
          }
          if (det2z(B) != 0) continue;
          if (!weak && !is_unimodular(B)) continue;
          out.lift = B;
          hit = true;
          break;
        }
  }
  if (hit) out.val = Tri::True;
  return out;
}

// Over Z (a pre-Schreier domain) a 2x2 matrix is non-full exactly when its
// determinant vanishes, and the factorization is constructed from row gcds.
inline ZSearch non_full(const Mat2& B) {
  using boost::multiprecision::gcd;
  ZSearch out;
  if (det2z(B) != 0) {
    out.val = Tri::False;
    return out;
  }
  Zint l, m, o, q;
  if (B[0] == 0 && B[1] == 0) {
    if (B[2] == 0 && B[3] == 0) {
      l = m = o = q = 0;
    } else {
      Zint g2 = gcd(B[2], B[3]);
      l = 0;
      m = g2;
      o = B[2] / g2;
      q = B[3] / g2;
    }
  } else {
    Zint g1 = gcd(B[0], B[1]);
    l = g1;
    o = B[0] / g1;
    q = B[1] / g1;
    // second row is m * (o, q); det = 0 makes the division exact
    m = (o != 0) ? Zint(B[2] / o) : Zint(B[3] / q);
  }
  if (l * o != B[0] || l * q != B[1] || m * o != B[2] || m * q != B[3])
    fail(Error::Kind::Logic, "non-full factorization failed over Z");
  out.val = Tri::True;
  out.lmoq = {l, m, o, q};
  return out;
}

}  // namespace zlift
}  // namespace edrlab
