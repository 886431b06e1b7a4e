#pragma once

// Derived structure of a finite ring: materialized ideals, annihilators,
// radicals, quotients with verified projections, unimodularity of vectors
// with coefficient witnesses, and the chain/local analysis plus factor
// splitting used by the classifier.

#include <algorithm>
#include <unordered_map>

#include "edrlab/ring.hpp"

namespace edrlab {

// Materialized ideal: sorted element list plus membership mask.
struct IdealSet {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> elems;  // sorted
  std::vector<char> mask;            // size n
  bool contains(std::uint32_t x) const { return mask[x] != 0; }
  std::size_t card() const { return elems.size(); }
};

// Ideal generated by gens: the additive span of the multiple sets R*g.
// Each R*g is already an additive subgroup, so the span is an iterated
// sum-set. Refuses |R| > 2^16.
inline IdealSet ideal_of(const Ring& R, const std::vector<std::uint32_t>& gens) {
  if (R->size() > FiniteRing::kIdealCap)
    fail(Error::Kind::Size, "ideal materialization refused for |R| > 2^16");
  IdealSet I;
  I.gens = gens;
  I.mask.assign(R->size(), 0);
  I.mask[R->zero()] = 1;
  I.elems = {R->zero()};
  for (std::uint32_t g : gens) {
    // multiples of g
    std::vector<std::uint32_t> mult;
    std::vector<char> seen(R->size(), 0);
    for (std::uint32_t r = 0; r < R->size(); ++r) {
      std::uint32_t m = R->mul(r, g);
      if (!seen[m]) {
        seen[m] = 1;
        mult.push_back(m);
      }
    }
    // sum-set with the current span
    std::vector<std::uint32_t> next;
    std::vector<char> nm(R->size(), 0);
    for (std::uint32_t s : I.elems)
      for (std::uint32_t m : mult) {
        std::uint32_t t = R->add(s, m);
        if (!nm[t]) {
          nm[t] = 1;
          next.push_back(t);
        }
      }
    I.elems = std::move(next);
    I.mask = std::move(nm);
  }
  std::sort(I.elems.begin(), I.elems.end());
  return I;
}

inline IdealSet principal_ideal(const Ring& R, std::uint32_t a) {
  return ideal_of(R, {a});
}

// |Ra| for every a, memoized; divisibility in a chain ring is exactly
// comparison of these sizes.
inline const std::vector<std::uint32_t>& ideal_sizes_cached(const Ring& R) {
  // cache entries hold the handle so a dead ring's address is never reused
  struct Entry {
    Ring keepalive;
    std::vector<std::uint32_t> sizes;
  };
  struct Memo {
    std::mutex mu;
    std::unordered_map<const FiniteRing*, Entry> m;
  };
  static Memo memo;
  std::lock_guard<std::mutex> lk(memo.mu);
  auto it = memo.m.find(R.get());
  if (it == memo.m.end()) {
    std::vector<std::uint32_t> s(R->size());
    for (std::uint32_t a = 0; a < R->size(); ++a) {
      std::vector<char> seen(R->size(), 0);
      std::uint32_t cnt = 0;
      for (std::uint32_t r = 0; r < R->size(); ++r) {
        std::uint32_t m = R->mul(r, a);
        if (!seen[m]) {
          seen[m] = 1;
          ++cnt;
        }
      }
      s[a] = cnt;
    }
    it = memo.m.emplace(R.get(), Entry{R, std::move(s)}).first;
  }
  return it->second.sizes;
}

// Memoized principal ideals; hot in the congruence-class searches.
inline const IdealSet& principal_ideal_cached(const Ring& R, std::uint32_t a) {
  struct Entry {
    Ring keepalive;
    std::map<std::uint32_t, IdealSet> ideals;
  };
  struct Memo {
    std::mutex mu;
    std::unordered_map<const FiniteRing*, Entry> m;
  };
  static Memo memo;
  std::lock_guard<std::mutex> lk(memo.mu);
  auto& entry = memo.m[R.get()];
  if (!entry.keepalive) entry.keepalive = R;
  auto it = entry.ideals.find(a);
  if (it == entry.ideals.end()) it = entry.ideals.emplace(a, principal_ideal(R, a)).first;
  return it->second;
}

inline IdealSet ideal_intersection(const Ring& R, const IdealSet& a, const IdealSet& b) {
  IdealSet I;
  I.mask.assign(R->size(), 0);
  for (std::uint32_t x : a.elems)
    if (b.contains(x)) {
      I.mask[x] = 1;
      I.elems.push_back(x);
    }
  return I;
}

// Ann_R(a) = {x : a x = 0}.
inline IdealSet annihilator(const Ring& R, std::uint32_t a) {
  IdealSet I;
  I.gens = {};
  I.mask.assign(R->size(), 0);
  for (std::uint32_t x = 0; x < R->size(); ++x)
    if (R->mul(a, x) == R->zero()) {
      I.mask[x] = 1;
      I.elems.push_back(x);
    }
  return I;
}

// N(R) = {x : x^k = 0 for some k <= |R|}.
inline IdealSet nilradical(const Ring& R) {
  IdealSet I;
  I.mask.assign(R->size(), 0);
  for (std::uint32_t x = 0; x < R->size(); ++x) {
    std::uint32_t p = x;
    bool nil = (x == R->zero());
    std::vector<char> seen(R->size(), 0);
    while (!nil && !seen[p]) {
      seen[p] = 1;
      p = R->mul(p, x);
      if (p == R->zero()) nil = true;
    }
    if (nil) {
      I.mask[x] = 1;
      I.elems.push_back(x);
    }
  }
  return I;
}

inline bool is_reduced(const Ring& R) { return nilradical(R).card() == 1; }

// J(R) = {x : 1 - x y is a unit for every y}.
inline IdealSet jacobson(const Ring& R) {
  const auto& U = R->units();
  IdealSet I;
  I.mask.assign(R->size(), 0);
  for (std::uint32_t x = 0; x < R->size(); ++x) {
    bool in = true;
    for (std::uint32_t y = 0; y < R->size() && in; ++y)
      if (!U.is_unit[R->sub(R->one(), R->mul(x, y))]) in = false;
    if (in) {
      I.mask[x] = 1;
      I.elems.push_back(x);
    }
  }
  return I;
}

// Z(R) = {x : x y = 0 for some y != 0}; contains 0 whenever |R| > 1.
inline std::vector<std::uint32_t> zero_divisors(const Ring& R) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < R->size(); ++x) {
    for (std::uint32_t y = 0; y < R->size(); ++y)
      if (y != R->zero() && R->mul(x, y) == R->zero()) {
        out.push_back(x);
        break;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients.

struct QuotientResult {
  Ring ring;                        // the coset ring
  std::vector<std::uint32_t> proj;  // parent index -> quotient index
  std::uint32_t project(std::uint32_t parent_idx) const { return proj[parent_idx]; }
};

inline QuotientResult quotient_by_ideal(const Ring& R, const IdealSet& I,
                                        const std::string& label) {
  auto q = std::make_shared<QuotientRing>(R, I.elems, R->spec() + "/(" + label + ")");
  QuotientResult res;
  res.proj.resize(R->size());
  for (std::uint32_t x = 0; x < R->size(); ++x) res.proj[x] = q->project(x);
  res.ring = std::move(q);
  return res;
}

// R/Ra with its projection. Quotients are memoized per ring, keyed by the
// materialized ideal, so u-map scans reuse them.
inline QuotientResult quotient(const Ring& R, std::uint32_t a) {
  struct Memo {
    std::mutex mu;
    std::unordered_map<const FiniteRing*,
                       std::map<std::vector<std::uint32_t>, QuotientResult>>
        by_ring;
  };
  static Memo memo;
  IdealSet I = principal_ideal(R, a);
  {
    std::lock_guard<std::mutex> lk(memo.mu);
    auto& m = memo.by_ring[R.get()];
    auto it = m.find(I.elems);
    if (it != m.end()) return it->second;
  }
  QuotientResult res = quotient_by_ideal(R, I, R->elem_str(a));
  std::lock_guard<std::mutex> lk(memo.mu);
  memo.by_ring[R.get()].emplace(I.elems, res);
  return res;
}

// ---------------------------------------------------------------------------
// Unimodular vectors: sum R v_i = R, with Bezout-style coefficient witness.

struct UnimodularWitness {
  bool unimodular = false;
  std::vector<std::uint32_t> coeffs;  // c_i with sum c_i v_i = 1, when unimodular
};

inline UnimodularWitness unimodular_vector(const Ring& R,
                                           const std::vector<std::uint32_t>& v) {
  if (v.empty()) fail(Error::Kind::Precondition, "unimodularity of empty vector");
  UnimodularWitness w;
  const std::uint32_t n = R->size();
  // reachable partial sums with one coefficient vector per sum
  std::vector<std::int32_t> from(n, -1);       // previous sum
  std::vector<std::uint32_t> via_coeff(n, 0);  // coefficient used
  std::vector<std::uint32_t> via_gen(n, 0);    // generator position
  std::vector<char> reach(n, 0);
  reach[R->zero()] = 1;
  std::vector<std::uint32_t> frontier = {R->zero()};
  for (std::size_t gi = 0; gi < v.size(); ++gi) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t s = 0; s < n; ++s)
      if (reach[s]) all.push_back(s);
    for (std::uint32_t s : all)
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t t = R->add(s, R->mul(c, v[gi]));
        if (!reach[t]) {
          reach[t] = 1;
          from[t] = static_cast<std::int32_t>(s);
          via_coeff[t] = c;
          via_gen[t] = static_cast<std::uint32_t>(gi);
        }
      }
  }
  if (!reach[R->one()]) return w;
  w.unimodular = true;
  w.coeffs.assign(v.size(), R->zero());
  std::uint32_t cur = R->one();
  while (cur != R->zero() && from[cur] >= 0) {
    w.coeffs[via_gen[cur]] = R->add(w.coeffs[via_gen[cur]], via_coeff[cur]);
    cur = static_cast<std::uint32_t>(from[cur]);
  }
  return w;
}

// All maximal ideals of R as membership masks. A finite commutative ring is
// a product of local rings, one per primitive idempotent e; the maximal
// ideal attached to e is {x : e x has no inverse relative to the identity e}.
// A tuple generates R iff it escapes every maximal ideal, which makes this
// the workhorse of all unimodularity tests.
inline const std::vector<std::vector<char>>& maximal_ideal_masks(const Ring& R) {
  struct Entry {
    Ring keepalive;
    std::vector<std::vector<char>> masks;
  };
  struct Memo {
    std::mutex mu;
    std::unordered_map<const FiniteRing*, Entry> m;
  };
  static Memo memo;
  {
    std::lock_guard<std::mutex> lk(memo.mu);
    auto it = memo.m.find(R.get());
    if (it != memo.m.end()) return it->second.masks;
  }
  const std::uint32_t n = R->size();
  if (n > 4096) fail(Error::Kind::Size, "maximal ideal scan refused for |R| > 4096");
  std::vector<std::uint32_t> idem;
  for (std::uint32_t x = 0; x < n; ++x)
    if (R->mul(x, x) == x && x != R->zero()) idem.push_back(x);
  std::vector<std::uint32_t> prim;
  for (std::uint32_t e : idem) {
    bool primitive = true;
    for (std::uint32_t f : idem)
      if (f != e && R->mul(e, f) == f) {
        primitive = false;
        break;
      }
    if (primitive) prim.push_back(e);
  }
  std::vector<std::vector<char>> masks;
  for (std::uint32_t e : prim) {
    std::vector<char> m(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      std::uint32_t ex = R->mul(e, x);
      bool invertible = false;
      for (std::uint32_t y = 0; y < n && !invertible; ++y)
        if (R->mul(ex, R->mul(e, y)) == e) invertible = true;
      if (!invertible) m[x] = 1;
    }
    masks.push_back(std::move(m));
  }
  std::lock_guard<std::mutex> lk(memo.mu);
  auto [it, _] = memo.m.emplace(R.get(), Entry{R, std::move(masks)});
  return it->second.masks;
}

// Fast unimodularity for small tuples via the maximal-ideal masks.
inline bool is_unimodular_span(const std::vector<std::vector<char>>& masks,
                               const std::uint32_t* v, std::size_t k) {
  for (const auto& m : masks) {
    bool escapes = false;
    for (std::size_t i = 0; i < k; ++i)
      if (!m[v[i]]) {
        escapes = true;
        break;
      }
    if (!escapes) return false;
  }
  return true;
}

inline bool is_unimodular_pair(const Ring& R, std::uint32_t a, std::uint32_t b) {
  std::uint32_t v[2] = {a, b};
  return is_unimodular_span(maximal_ideal_masks(R), v, 2);
}

inline bool is_unimodular_triple(const Ring& R, std::uint32_t a, std::uint32_t b,
                                 std::uint32_t c) {
  std::uint32_t v[3] = {a, b, c};
  return is_unimodular_span(maximal_ideal_masks(R), v, 3);
}

// ---------------------------------------------------------------------------
// Local / chain analysis and factor splitting.

struct LocalInfo {
  bool local = false;       // non-units form an ideal
  bool chain = false;       // local with principal maximal ideal
  std::uint32_t uniformizer = 0;
};

inline const LocalInfo& local_info(const Ring& R) {
  struct Entry {
    Ring keepalive;
    LocalInfo info;
  };
  struct Memo {
    std::mutex mu;
    std::unordered_map<const FiniteRing*, Entry> m;
  };
  static Memo memo;
  {
    std::lock_guard<std::mutex> lk(memo.mu);
    auto it = memo.m.find(R.get());
    if (it != memo.m.end()) return it->second.info;
  }
  LocalInfo info;
  const auto& U = R->units();
  std::vector<std::uint32_t> nonunits;
  for (std::uint32_t x = 0; x < R->size(); ++x)
    if (!U.is_unit[x]) nonunits.push_back(x);
  info.local = true;
  for (std::uint32_t a : nonunits) {
    for (std::uint32_t b : nonunits)
      if (U.is_unit[R->add(a, b)]) {
        info.local = false;
        break;
      }
    if (!info.local) break;
  }
  if (info.local) {
    for (std::uint32_t g : nonunits) {
      IdealSet I = principal_ideal(R, g);
      if (I.card() == nonunits.size()) {
        info.chain = true;
        info.uniformizer = g;
        break;
      }
    }
    if (nonunits.size() == 1) {  // field: maximal ideal (0)
      info.chain = true;
      info.uniformizer = R->zero();
    }
  }
  std::lock_guard<std::mutex> lk(memo.mu);
  auto [it, _] = memo.m.emplace(R.get(), Entry{R, info});
  return it->second.info;
}

// Splits a ring into factors on which product-splitting predicates can be
// evaluated independently: Z/n -> prime-power parts, products -> concatenated
// factor splits, everything else atomic. Exact, not heuristic: the returned
// rings multiply back to an isomorphic copy of R.
inline std::vector<Ring> split_factors(const Ring& R) {
  if (R->kind() == RingKind::Zmod) {
    std::uint64_t n = R->size();
    std::vector<std::uint64_t> parts;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      std::uint64_t q = 1;
      while (n % p == 0) {
        q *= p;
        n /= p;
      }
      parts.push_back(q);
    }
    if (n > 1) parts.push_back(n);
    if (parts.size() <= 1) return {R};
    std::vector<Ring> out;
    for (std::uint64_t q : parts)
      out.push_back(make_finite_ring("Zmod:" + std::to_string(q)));
    return out;
  }
  if (const auto* pr = dynamic_cast<const ProdRing*>(R.get())) {
    std::vector<Ring> out;
    for (const auto& f : pr->factors())
      for (const auto& g : split_factors(f)) out.push_back(g);
    return out;
  }
  return {R};
}

}  // namespace edrlab
