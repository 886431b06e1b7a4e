#pragma once

// The product homomorphism on unit groups
//   upsilon_{a,b,c} : U(R/Rac) x U(R/Rbc) -> U(R/Rc),
// its image, surjectivity (the U_2 property via upsilon_{a,1-a,c}), the
// Boolean-cokernel test, the non-full correspondence for the bordered
// zero-determinant matrix, and the factorization form of surjectivity.

#include "edrlab/lift.hpp"

namespace edrlab {

struct UnitMapImage {
  Ring R;
  std::uint32_t a, b, c;
  QuotientResult q_ac, q_bc, q_c;
  std::vector<std::uint32_t> image;  // sorted indices in the target quotient
  bool surjective = false;
};

inline UnitMapImage upsilon_image(const Ring& R, std::uint32_t a, std::uint32_t b,
                                  std::uint32_t c) {
  UnitMapImage out;
  out.R = R;
  out.a = a;
  out.b = b;
  out.c = c;
  out.q_ac = quotient(R, R->mul(a, c));
  out.q_bc = quotient(R, R->mul(b, c));
  out.q_c = quotient(R, c);
  const auto* qac = dynamic_cast<const QuotientRing*>(out.q_ac.ring.get());
  const auto* qbc = dynamic_cast<const QuotientRing*>(out.q_bc.ring.get());
  // reductions of the two unit groups into the target, then their product set
  auto reduce_units = [&](const Ring& q, const QuotientRing* qr) {
    std::vector<std::uint32_t> h;
    std::vector<char> seen(out.q_c.ring->size(), 0);
    for (std::uint32_t u : q->units().elems) {
      std::uint32_t t = out.q_c.project(qr->lift(u));
      if (!seen[t]) {
        seen[t] = 1;
        h.push_back(t);
      }
    }
    return h;
  };
  auto h1 = reduce_units(out.q_ac.ring, qac);
  auto h2 = reduce_units(out.q_bc.ring, qbc);
  std::vector<char> seen(out.q_c.ring->size(), 0);
  const Ring& T = out.q_c.ring;
  for (std::uint32_t x : h1)
    for (std::uint32_t y : h2) {
      std::uint32_t t = T->mul(x, y);
      if (!seen[t]) {
        seen[t] = 1;
        out.image.push_back(t);
      }
    }
  std::sort(out.image.begin(), out.image.end());
  const auto& TU = T->units();
  for (std::uint32_t t : out.image)
    if (!TU.is_unit[t]) fail(Error::Kind::Logic, "upsilon image escaped the unit group");
  out.surjective = out.image.size() == TU.elems.size();
  return out;
}

// ---------------------------------------------------------------------------
// U_2: upsilon_{a,1-a,c} surjective for all (a,c).

struct U2Result {
  Tri value = Tri::Unknown;
  struct Counterexample {
    std::uint32_t a, c, missed_unit;  // missed_unit is a target-quotient index
  };
  std::optional<Counterexample> cex;
};

inline U2Result is_U2_ring(const Ring& R, Budget& budget) {
  U2Result out;
  for (std::uint32_t a = 0; a < R->size(); ++a) {
    std::uint32_t b = R->sub(R->one(), a);
    for (std::uint32_t c = 0; c < R->size(); ++c) {
      if (!budget.spend(R->size())) {
        out.value = Tri::Unknown;
        return out;
      }
      UnitMapImage im = upsilon_image(R, a, b, c);
      if (!im.surjective) {
        for (std::uint32_t u : im.q_c.ring->units().elems)
          if (!std::binary_search(im.image.begin(), im.image.end(), u)) {
            out.cex = {a, c, u};
            break;
          }
        out.value = Tri::False;
        return out;
      }
    }
  }
  out.value = Tri::True;
  return out;
}

// Coker(upsilon_{a,b,c}) is a Boolean group iff every square of a target
// unit lies in the image.
inline bool coker_is_boolean(const Ring& R, std::uint32_t a, std::uint32_t b,
                             std::uint32_t c) {
  if (!is_unimodular_pair(R, a, b))
    fail(Error::Kind::Precondition, "coker test requires (a,b) unimodular");
  UnitMapImage im = upsilon_image(R, a, b, c);
  const Ring& T = im.q_c.ring;
  for (std::uint32_t u : T->units().elems)
    if (!std::binary_search(im.image.begin(), im.image.end(), T->mul(u, u)))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// The correspondence for A = [[a c, u], [0, (1-a) c]] under
// Rac \cap R(1-a)c = 0 and (c,u) unimodular: A is non-full iff the class of
// u lands in Im(upsilon_{a,1-a,c}).

struct Ex10Result {
  bool non_full = false;
  bool in_image = false;
};

inline bool ex10_admissible(const Ring& R, std::uint32_t a, std::uint32_t c,
                            std::uint32_t u) {
  std::uint32_t b = R->sub(R->one(), a);
  const IdealSet& i1 = principal_ideal_cached(R, R->mul(a, c));
  const IdealSet& i2 = principal_ideal_cached(R, R->mul(b, c));
  for (std::uint32_t x : i1.elems)
    if (x != R->zero() && i2.contains(x)) return false;
  return is_unimodular_pair(R, c, u);
}

inline Ex10Result ex10_correspondence(const Ring& R, std::uint32_t a, std::uint32_t c,
                                      std::uint32_t u, Budget& budget) {
  if (!ex10_admissible(R, a, c, u))
    fail(Error::Kind::Precondition,
         "requires Rac intersect R(1-a)c = 0 and (c,u) unimodular");
  std::uint32_t b = R->sub(R->one(), a);
  FMat A(R, 2, 2);
  A.at(0, 0) = R->mul(a, c);
  A.at(0, 1) = u;
  A.at(1, 1) = R->mul(b, c);
  Ex10Result out;
  auto nf = lift::search_non_full(A, budget);
  if (nf.val == Tri::Unknown) fail(Error::Kind::Budget, "non-full search exhausted");
  out.non_full = is_true(nf.val);
  UnitMapImage im = upsilon_image(R, a, b, c);
  std::uint32_t target = im.q_c.project(u);
  out.in_image = std::binary_search(im.image.begin(), im.image.end(), target);
  return out;
}

// ---------------------------------------------------------------------------
// Factorization forms of surjectivity. Statement (4): for all pairs
// ((a,b),(c,d)) of unimodular pairs there are t and a factorization
// d + c t = d1 d2 with (a,d1) and (b,d2) unimodular. Statement (5): the
// b = 1-a variant with c restricted to 1 + Rd.

struct Th3Result {
  Tri stmt4 = Tri::Unknown, stmt5 = Tri::Unknown;
  std::optional<std::array<std::uint32_t, 4>> cex4;  // (a,b,c,d)
  std::optional<std::array<std::uint32_t, 3>> cex5;  // (a,d,c)
};

namespace detail_upsilon {

inline bool factor_exists(const Ring& R, std::uint32_t a, std::uint32_t b,
                          std::uint32_t c, std::uint32_t d, Budget& budget,
                          bool* oom) {
  const auto& dv = R->div();
  const auto& masks = maximal_ideal_masks(R);
  for (std::uint32_t t = 0; t < R->size(); ++t) {
    if (!budget.spend(R->size())) {
      *oom = true;
      return false;
    }
    std::uint32_t v = R->add(d, R->mul(c, t));
    for (std::uint32_t d1 = 0; d1 < R->size(); ++d1) {
      std::uint32_t p1[2] = {a, d1};
      if (!is_unimodular_span(masks, p1, 2)) continue;
      for (const std::uint32_t* d2 = dv.begin(d1, v); d2 != dv.end(d1, v); ++d2) {
        std::uint32_t p2[2] = {b, *d2};
        if (is_unimodular_span(masks, p2, 2)) return true;
      }
    }
  }
  return false;
}

}  // namespace detail_upsilon

inline Th3Result th3_factor_check(const Ring& R, Budget& budget) {
  Th3Result out;
  const auto& masks = maximal_ideal_masks(R);
  bool oom = false;
  out.stmt4 = Tri::True;
  for (std::uint32_t a = 0; a < R->size() && is_true(out.stmt4); ++a)
    for (std::uint32_t b = 0; b < R->size() && is_true(out.stmt4); ++b) {
      std::uint32_t pab[2] = {a, b};
      if (!is_unimodular_span(masks, pab, 2)) continue;
      for (std::uint32_t c = 0; c < R->size() && is_true(out.stmt4); ++c)
        for (std::uint32_t d = 0; d < R->size(); ++d) {
          std::uint32_t pcd[2] = {c, d};
          if (!is_unimodular_span(masks, pcd, 2)) continue;
          if (!detail_upsilon::factor_exists(R, a, b, c, d, budget, &oom)) {
            out.stmt4 = oom ? Tri::Unknown : Tri::False;
            if (!oom) out.cex4 = {a, b, c, d};
            break;
          }
        }
    }
  oom = false;
  out.stmt5 = Tri::True;
  for (std::uint32_t a = 0; a < R->size() && is_true(out.stmt5); ++a) {
    std::uint32_t b = R->sub(R->one(), a);
    for (std::uint32_t d = 0; d < R->size() && is_true(out.stmt5); ++d) {
      const IdealSet& Rd = principal_ideal_cached(R, d);
      for (std::uint32_t i : Rd.elems) {
        std::uint32_t c = R->add(R->one(), i);
        if (!detail_upsilon::factor_exists(R, a, b, c, d, budget, &oom)) {
          out.stmt5 = oom ? Tri::Unknown : Tri::False;
          if (!oom) out.cex5 = {a, d, c};
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace edrlab
