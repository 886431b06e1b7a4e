#pragma once

// The default verification corpus: residue rings, small fields, nilpotent
// and non-reduced quotients, products up to 64 elements, the non-Bezout
// table ring, and one bounded-Z profile entry for the criteria over Z.
// Tags are recomputed from the handles, never trusted.

#include "edrlab/classify.hpp"

namespace edrlab {

struct CorpusEntry {
  std::string spec;
  Ring ring;  // null for the bounded-Z profile entry
  std::optional<IntProfile> zprof;
  bool char2 = false, reduced = false, bezout = false, local = false, product = false;
};

// F_2[x,y]/(x^2, x y, y^2): 8 elements a + b x + c y, all products of
// non-constant parts vanish. The maximal ideal (x, y) is not principal, so
// the ring is not Bezout.
inline TableData f2xy_table() {
  TableData d;
  d.name = "f2xy";
  auto nm = [](int a, int b, int c) {
    std::string s;
    if (a) s += "1";
    if (b) s += (s.empty() ? "x" : "+x");
    if (c) s += (s.empty() ? "y" : "+y");
    return s.empty() ? std::string("0") : s;
  };
  auto idx = [](int a, int b, int c) { return a + 2 * b + 4 * c; };
  std::vector<std::string> names(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) names[static_cast<std::size_t>(idx(a, b, c))] = nm(a, b, c);
  d.elems = names;
  d.add.assign(8, std::vector<std::uint32_t>(8));
  d.mul.assign(8, std::vector<std::uint32_t>(8));
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2) {
              int i = idx(a1, b1, c1), j = idx(a2, b2, c2);
              d.add[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                  static_cast<std::uint32_t>(
                      idx((a1 + a2) % 2, (b1 + b2) % 2, (c1 + c2) % 2));
              // (a1 + b1 x + c1 y)(a2 + b2 x + c2 y) with x^2 = xy = y^2 = 0
              d.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                  static_cast<std::uint32_t>(idx(a1 * a2 % 2,
                                                 (a1 * b2 + b1 * a2) % 2,
                                                 (a1 * c2 + c1 * a2) % 2));
            }
  d.one = 1;
  return d;
}

inline void ensure_builtin_tables() {
  static std::once_flag once;
  std::call_once(once, [] { register_builtin_table("f2xy", f2xy_table()); });
}

inline std::vector<std::string> default_corpus_specs() {
  std::vector<std::string> base;
  for (int n = 2; n <= 16; ++n) base.push_back("Zmod:" + std::to_string(n));
  for (int n : {24, 27, 32}) base.push_back("Zmod:" + std::to_string(n));
  for (int q : {2, 3, 4, 5, 7, 8, 9}) base.push_back("GF:" + std::to_string(q));
  for (int p : {2, 3}) {
    std::string P = std::to_string(p);
    base.push_back("Quot:GF:" + P + "[x]/(x^2)");
    base.push_back("Quot:GF:" + P + "[x]/(x^3)");
    base.push_back("Quot:GF:" + P + "[x]/(x^2+1)");
  }
  std::vector<std::string> out = base;
  // unordered product pairs up to 64 elements
  std::vector<std::uint64_t> sizes;
  for (const auto& s : base) sizes.push_back(make_finite_ring(s)->size());
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if (sizes[i] * sizes[j] <= 64) out.push_back("Prod:" + base[i] + "*" + base[j]);
  out.push_back("Table:@f2xy");
  out.push_back("Int:H=30");
  return out;
}

inline std::vector<CorpusEntry> build_corpus(const std::vector<std::string>& specs) {
  ensure_builtin_tables();
  std::vector<CorpusEntry> out;
  for (const auto& s : specs) {
    CorpusEntry e;
    RingHandle h = make_ring(s);
    e.spec = h.spec;
    if (h.is_finite()) {
      e.ring = h.finite;
      e.char2 = e.ring->characteristic() == 2;
      e.reduced = is_reduced(e.ring);
      e.local = local_info(e.ring).local;
      e.product = e.ring->kind() == RingKind::Product;
      Budget b(1ull << 26);
      e.bezout = is_true(eval_flag(e.ring, Flag::Bezout, b).val);
    } else if (h.zprof) {
      e.zprof = h.zprof;
    } else {
      fail(Error::Kind::Precondition, "corpus entries must be finite rings or Int profiles");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<CorpusEntry> default_corpus() {
  return build_corpus(default_corpus_specs());
}

}  // namespace edrlab
