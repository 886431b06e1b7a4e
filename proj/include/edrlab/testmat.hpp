#pragma once

// Universal and companion test matrices. The four universal matrices live
// symbolically over Z[x,y,z]:
//   D = [[x(1-yz), y], [0, (1-x)(1-yz)]]
//   E = [[x, y], [0, (1-x)(1-yz)^2]]      (a conjugate of D)
//   F = [[x, y], [0, (1-x)(1-yz)]]
//   G = [[x, y], [0, 1-x-yz]]             (the one valid over all rings)
// Specialization is the ring homomorphism Z[x,y,z] -> R sending the
// variables to chosen elements.

#include <map>

#include "edrlab/lift.hpp"

namespace edrlab {

// Sparse integer polynomial in three variables; tiny on purpose.
class Poly3 {
 public:
  using Key = std::array<std::uint8_t, 3>;

  static Poly3 constant(long long c) {
    Poly3 p;
    if (c) p.t_[{0, 0, 0}] = c;
    return p;
  }
  static Poly3 var(int i) {
    Poly3 p;
    Key k{0, 0, 0};
    k[static_cast<std::size_t>(i)] = 1;
    p.t_[k] = 1;
    return p;
  }

  Poly3 operator+(const Poly3& o) const {
    Poly3 r = *this;
    for (auto& [k, v] : o.t_) {
      r.t_[k] += v;
      if (r.t_[k] == 0) r.t_.erase(k);
    }
    return r;
  }
  Poly3 operator-() const {
    Poly3 r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
  }
  Poly3 operator-(const Poly3& o) const { return *this + (-o); }
  Poly3 operator*(const Poly3& o) const {
    Poly3 r;
    for (auto& [ka, va] : t_)
      for (auto& [kb, vb] : o.t_) {
        Key k{static_cast<std::uint8_t>(ka[0] + kb[0]),
              static_cast<std::uint8_t>(ka[1] + kb[1]),
              static_cast<std::uint8_t>(ka[2] + kb[2])};
        r.t_[k] += va * vb;
        if (r.t_[k] == 0) r.t_.erase(k);
      }
    return r;
  }
  bool operator==(const Poly3& o) const { return t_ == o.t_; }

  // image under x,y,z -> xi,yi,zi in R
  std::uint32_t eval(const Ring& R, std::uint32_t xi, std::uint32_t yi,
                     std::uint32_t zi) const {
    std::uint32_t acc = R->zero();
    for (auto& [k, v] : t_) {
      std::uint32_t term = R->from_int(v);
      for (int i = 0; i < k[0]; ++i) term = R->mul(term, xi);
      for (int i = 0; i < k[1]; ++i) term = R->mul(term, yi);
      for (int i = 0; i < k[2]; ++i) term = R->mul(term, zi);
      acc = R->add(acc, term);
    }
    return acc;
  }

  std::string str() const;

 private:
  std::map<Key, long long> t_;
};

struct SymbolicTestMatrix {
  char tag;                       // 'D', 'E', 'F', 'G'
  std::array<Poly3, 4> entries;   // row-major 2x2
};

inline SymbolicTestMatrix universal_test_matrix(char tag) {
  Poly3 x = Poly3::var(0), y = Poly3::var(1), z = Poly3::var(2);
  Poly3 one = Poly3::constant(1), zero = Poly3::constant(0);
  Poly3 s = one - y * z;  // 1 - yz
  switch (tag) {
    case 'D':
      return {'D', {x * s, y, zero, (one - x) * s}};
    case 'E':
      return {'E', {x, y, zero, (one - x) * s * s}};
    case 'F':
      return {'F', {x, y, zero, (one - x) * s}};
    case 'G':
      return {'G', {x, y, zero, one - x - y * z}};
    default:
      fail(Error::Kind::Precondition, "unknown test matrix tag");
  }
}

struct Specialization {
  FMat image;
  // for tag 'D': the elementary conjugators with M * D_img * N = E_img
  std::optional<FMat> conj_left, conj_right, e_image;
};

inline Specialization specialize_test_matrix(char tag, const Ring& R, std::uint32_t xi,
                                             std::uint32_t yi, std::uint32_t zi) {
  SymbolicTestMatrix S = universal_test_matrix(tag);
  Specialization out;
  out.image = FMat(R, 2, 2);
  for (int i = 0; i < 4; ++i) out.image.a[static_cast<std::size_t>(i)] = S.entries[static_cast<std::size_t>(i)].eval(R, xi, yi, zi);
  if (tag == 'D') {
    Poly3 x = Poly3::var(0), y = Poly3::var(1), z = Poly3::var(2);
    Poly3 one = Poly3::constant(1);
    Poly3 s = one - y * z;
    // left factor [[1,0],[z(x-1)(1-yz),1]], right factor [[1,0],[xz,1]]
    FMat M(R, 2, 2), N(R, 2, 2);
    M.at(0, 0) = R->one();
    M.at(0, 1) = R->zero();
    M.at(1, 0) = (z * (x - one) * s).eval(R, xi, yi, zi);
    M.at(1, 1) = R->one();
    N.at(0, 0) = R->one();
    N.at(0, 1) = R->zero();
    N.at(1, 0) = (x * z).eval(R, xi, yi, zi);
    N.at(1, 1) = R->one();
    Specialization e = specialize_test_matrix('E', R, xi, yi, zi);
    FMat lhs = mat_mul(mat_mul(M, out.image), N);
    if (!(lhs == e.image))
      fail(Error::Kind::Logic, "conjugation identity M D N = E failed");
    out.conj_left = M;
    out.conj_right = N;
    out.e_image = e.image;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Companion test matrices of A: for each upper-triangular T = [[a,b],[0,c]]
// equivalent to A and each (a', c'), the matrix [[a a', b], [0, c c']] when
// it is unimodular.

struct Companion {
  FMat upper;   // the upper-triangular equivalent T
  std::uint32_t a_prime, c_prime;
  FMat mat;     // the companion itself, unimodular
};

inline std::vector<Companion> companion_test_matrices(const FMat& A, Budget& budget) {
  lift::require_2x2_unimodular(A);
  const Ring& R = A.R;
  auto gl = enumerate_GL(R, 2);
  std::vector<FMat> uppers;
  std::vector<char> seen(static_cast<std::size_t>(R->size()) * R->size() * R->size() *
                             R->size(),
                         0);
  auto code = [&](const FMat& T) {
    std::size_t k = 0;
    for (auto v : T.a) k = k * R->size() + v;
    return k;
  };
  for (std::uint32_t mi = 0; mi < gl->count(); ++mi) {
    FMat MA = mat_mul(gl->materialize(mi), A);
    for (std::uint32_t ni = 0; ni < gl->count(); ++ni) {
      if (!budget.spend())
        fail(Error::Kind::Budget, "companion enumeration budget exceeded");
      FMat T = mat_mul(MA, gl->materialize(ni));
      if (T.at(1, 0) != R->zero()) continue;
      std::size_t k = code(T);
      if (seen[k]) continue;
      seen[k] = 1;
      uppers.push_back(T);
    }
  }
  std::sort(uppers.begin(), uppers.end(),
            [](const FMat& u, const FMat& v) { return u.a < v.a; });
  std::vector<Companion> out;
  for (const FMat& T : uppers) {
    const std::uint32_t a = T.at(0, 0), b = T.at(0, 1), c = T.at(1, 1);
    for (std::uint32_t ap = 0; ap < R->size(); ++ap)
      for (std::uint32_t cp = 0; cp < R->size(); ++cp) {
        FMat B(R, 2, 2);
        B.at(0, 0) = R->mul(a, ap);
        B.at(0, 1) = b;
        B.at(1, 1) = R->mul(c, cp);
        if (!is_unimodular_matrix(B)) continue;
        out.push_back({T, ap, cp, B});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The G-image scan: all |R|^3 specializations of G are P iff every
// upper-triangular unimodular 2x2 is P (cross-checked by brute force; the
// weak-liftability case is only asserted on reduced rings).

struct Prop2Scan {
  Tri via_G = Tri::Unknown;
  Tri via_brute = Tri::Unknown;
  std::optional<FMat> counterexample;
};

inline Tri eval_prop(const FMat& A, PropKind p, Budget& budget) {
  switch (p) {
    case PropKind::SimplyExtendable: return lift::search_simply_extendable(A, budget);
    case PropKind::Extendable: return lift::search_extendable(A, budget);
    case PropKind::DetLiftable: return lift::search_det_liftable(A, budget, false);
    default: return lift::search_det_liftable(A, budget, true);
  }
}

inline Prop2Scan prop2_scan(const Ring& R, PropKind p, Budget& budget) {
  Prop2Scan out;
  const std::uint32_t n = R->size();
  std::vector<char> visited(static_cast<std::size_t>(n) * n * n * n, 0);
  auto code = [&](const FMat& T) {
    std::size_t k = 0;
    for (auto v : T.a) k = k * n + v;
    return k;
  };
  Tri g_all = Tri::True;
  for (std::uint32_t x = 0; x < n && !is_false(g_all); ++x)
    for (std::uint32_t y = 0; y < n && !is_false(g_all); ++y)
      for (std::uint32_t z = 0; z < n; ++z) {
        FMat img(R, 2, 2);
        img.at(0, 0) = x;
        img.at(0, 1) = y;
        img.at(1, 1) = R->sub(R->sub(R->one(), x), R->mul(y, z));
        std::size_t k = code(img);
        if (visited[k]) continue;
        visited[k] = 1;
        Tri t = eval_prop(img, p, budget);
        if (t == Tri::Unknown) {
          out.via_G = Tri::Unknown;
          return out;
        }
        if (is_false(t)) {
          g_all = Tri::False;
          out.counterexample = img;
          break;
        }
      }
  out.via_G = g_all;
  // brute force over all upper-triangular unimodular matrices
  std::fill(visited.begin(), visited.end(), 0);
  Tri brute = Tri::True;
  for (std::uint32_t a = 0; a < n && !is_false(brute); ++a)
    for (std::uint32_t b = 0; b < n && !is_false(brute); ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        if (!is_unimodular_triple(R, a, b, c)) continue;
        FMat T(R, 2, 2);
        T.at(0, 0) = a;
        T.at(0, 1) = b;
        T.at(1, 1) = c;
        Tri t = eval_prop(T, p, budget);
        if (t == Tri::Unknown) {
          out.via_brute = Tri::Unknown;
          return out;
        }
        if (is_false(t)) {
          brute = Tri::False;
          if (!out.counterexample) out.counterexample = T;
          break;
        }
      }
  out.via_brute = brute;
  bool gate = (p != PropKind::WeaklyDetLiftable) || is_reduced(R);
  if (gate && out.via_G != out.via_brute)
    fail(Error::Kind::Logic, "universal-matrix scan disagrees with brute force");
  return out;
}

inline std::string Poly3::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [k, v] : t_) {
    if (!s.empty() && v > 0) s += "+";
    if (v == -1 && (k[0] || k[1] || k[2]))
      s += "-";
    else if (v != 1 || (!k[0] && !k[1] && !k[2]))
      s += std::to_string(v);
    const char* names = "xyz";
    for (int i = 0; i < 3; ++i) {
      for (int e = 0; e < k[static_cast<std::size_t>(i)]; ++e) s += names[i];
    }
  }
  return s;
}

}  // namespace edrlab
