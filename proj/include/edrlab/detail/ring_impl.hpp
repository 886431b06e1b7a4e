#pragma once

// Out-of-line parts of ring.hpp: literal parsing, unit/division caches,
// table validation, quotient construction, the ring-spec mini-language and
// the handle registry.

#include <cstdlib>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

namespace edrlab {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

// Splits on `sep` at nesting depth 0 w.r.t. (), [].
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// --- dense polynomials over Z/p, used only to find GF moduli ---------------

using PVec = std::vector<std::uint32_t>;  // little-endian, may have zero lead

inline void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PVec pmod(PVec a, const PVec& b, std::uint32_t p) {
  // b monic after normalization by its leading inverse
  PVec d = b;
  ptrim(d);
  std::uint32_t lead = d.back();
  std::uint32_t inv = 1;
  for (std::uint32_t i = 1; i < p; ++i)
    if (i * lead % p == 1) {
      inv = i;
      break;
    }
  ptrim(a);
  while (a.size() >= d.size() && !a.empty()) {
    std::uint32_t q = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a.back()) * inv % p);
    std::size_t sh = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::uint64_t t = static_cast<std::uint64_t>(q) * d[i] % p;
      a[sh + i] = static_cast<std::uint32_t>((a[sh + i] + p - t) % p);
    }
    ptrim(a);
  }
  return a;
}

inline bool is_irreducible(const PVec& f, std::uint32_t p) {
  std::size_t k = f.size() - 1;
  for (std::size_t dd = 1; 2 * dd <= k; ++dd) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      PVec g(dd + 1, 0);
      std::uint64_t t = v;
      for (std::size_t i = 0; i < dd; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[dd] = 1;
      PVec r = pmod(f, g, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

// Lexicographically least monic irreducible of degree k over F_p (lower
// coefficients enumerated as base-p digits of an increasing counter).
inline PVec least_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t v = 0; v < count; ++v) {
    PVec f(k + 1, 0);
    std::uint64_t t = v;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  fail(Error::Kind::Logic, "no irreducible polynomial found");
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Generic polynomial-in-x literal over a coefficient ring: terms joined by
// +/- at depth 0; a term is [coeff]['*']['x'['^'e]] with coeff an integer,
// "#k", or a parenthesized base literal.
inline std::optional<std::vector<std::uint32_t>> parse_poly_literal(
    const FiniteRing& base, const std::string& in, std::size_t max_deg) {
  std::string s = trim(in);
  if (s.empty()) return std::nullopt;
  std::vector<std::uint32_t> coeffs(max_deg + 1, base.zero());
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    bool negt = false;
    if (s[i] == '+' || s[i] == '-') {
      negt = (s[i] == '-');
      ++i;
    } else if (any) {
      return std::nullopt;
    }
    // grab one term up to the next top-level +/-
    int depth = 0;
    std::string term;
    while (i < s.size()) {
      char c = s[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if ((c == '+' || c == '-') && depth == 0) break;
      term += c;
      ++i;
    }
    term = trim(term);
    if (term.empty()) return std::nullopt;
    // split into coefficient part and x part
    std::string cpart;
    std::size_t deg = 0;
    std::size_t xp = std::string::npos;
    {
      int d2 = 0;
      for (std::size_t j = 0; j < term.size(); ++j) {
        if (term[j] == '(') ++d2;
        if (term[j] == ')') --d2;
        if (term[j] == 'x' && d2 == 0) {
          xp = j;
          break;
        }
      }
    }
    if (xp == std::string::npos) {
      cpart = term;
      deg = 0;
    } else {
      cpart = trim(term.substr(0, xp));
      if (!cpart.empty() && cpart.back() == '*') cpart = trim(cpart.substr(0, cpart.size() - 1));
      std::string rest = trim(term.substr(xp + 1));
      if (rest.empty()) {
        deg = 1;
      } else {
        if (rest[0] != '^') return std::nullopt;
        long long e;
        if (!parse_ll(trim(rest.substr(1)), e) || e < 0) return std::nullopt;
        deg = static_cast<std::size_t>(e);
      }
    }
    if (deg > max_deg) return std::nullopt;
    std::uint32_t cv;
    if (cpart.empty()) {
      cv = base.one();
    } else if (cpart.front() == '(' && cpart.back() == ')') {
      cv = base.parse_elem(trim(cpart.substr(1, cpart.size() - 2)));
    } else {
      cv = base.parse_elem(cpart);
    }
    if (negt) cv = base.neg(cv);
    coeffs[deg] = base.add(coeffs[deg], cv);
    any = true;
  }
  if (!any) return std::nullopt;
  return coeffs;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::uint32_t FiniteRing::parse_elem(const std::string& raw) const {
  std::string s = detail::trim(raw);
  if (s.empty()) fail(Error::Kind::Parse, "empty element literal");
  if (s[0] == '#') {
    long long k;
    if (detail::parse_ll(s.substr(1), k) && k >= 0 && k < static_cast<long long>(n_))
      return static_cast<std::uint32_t>(k);
    fail(Error::Kind::Parse, "bad element index literal '" + s + "' in " + spec_);
  }
  long long v;
  if (detail::parse_ll(s, v)) return from_int(v);
  if (auto r = parse_elem_impl(s)) return *r;
  fail(Error::Kind::Parse, "cannot parse element '" + s + "' of " + spec_);
}

inline const UnitGroup& FiniteRing::units() const {
  std::call_once(units_once_, [this] {
    UnitGroup u;
    u.inv_of.assign(n_, UnitGroup::npos);
    u.is_unit.assign(n_, 0);
    if (dynamic_cast<const ZmodRing*>(this)) {
      // gcd route, works for large moduli
      for (std::uint32_t a = 0; a < n_; ++a) {
        if (std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(n_)) != 1 &&
            n_ > 1)
          continue;
        // extended euclid for the inverse
        long long r0 = n_, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
          long long q = r0 / r1;
          long long r2 = r0 - q * r1, s2 = s0 - q * s1;
          r0 = r1;
          r1 = r2;
          s0 = s1;
          s1 = s2;
        }
        long long inv = ((s0 % static_cast<long long>(n_)) + n_) % n_;
        if (n_ == 1) inv = 0;
        u.is_unit[a] = 1;
        u.inv_of[a] = static_cast<std::uint32_t>(inv);
        u.elems.push_back(a);
        if (n_ == 1) break;
      }
    } else if (auto* pr = dynamic_cast<const ProdRing*>(this)) {
      const auto& fs = pr->factors();
      std::vector<const UnitGroup*> fu;
      fu.reserve(fs.size());
      for (const auto& f : fs) fu.push_back(&f->units());
      std::vector<std::size_t> pos(fs.size(), 0);
      bool done = false;
      while (!done) {
        std::vector<std::uint32_t> tup(fs.size()), inv(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) {
          tup[i] = fu[i]->elems[pos[i]];
          inv[i] = fu[i]->inv_of[tup[i]];
        }
        std::uint32_t e = pr->encode(tup);
        u.is_unit[e] = 1;
        u.inv_of[e] = pr->encode(inv);
        u.elems.push_back(e);
        done = true;
        for (std::size_t i = fs.size(); i-- > 0;) {
          if (++pos[i] < fu[i]->elems.size()) {
            done = false;
            break;
          }
          pos[i] = 0;
        }
      }
      std::sort(u.elems.begin(), u.elems.end());
    } else {
      if (n_ > 4096)
        fail(Error::Kind::Size, "unit enumeration refused for |R| > 4096 of kind " +
                                    std::string(kind_str(kind_)));
      for (std::uint32_t a = 0; a < n_; ++a) {
        for (std::uint32_t b = 0; b < n_; ++b) {
          if (mul(a, b) == one()) {
            u.is_unit[a] = 1;
            u.inv_of[a] = b;
            u.elems.push_back(a);
            break;
          }
        }
      }
    }
    units_ = std::move(u);
  });
  return units_;
}

inline const DivCache& FiniteRing::div() const {
  std::call_once(div_once_, [this] {
    if (n_ > kDivCap)
      fail(Error::Kind::Size, "division cache refused for |R| > 512: " + spec_);
    DivCache d;
    d.n = n_;
    std::size_t nn = static_cast<std::size_t>(n_) * n_;
    std::vector<std::uint32_t> counts(nn, 0);
    for (std::uint32_t u = 0; u < n_; ++u)
      for (std::uint32_t x = 0; x < n_; ++x)
        ++counts[static_cast<std::size_t>(u) * n_ + mul(u, x)];
    d.offsets.assign(nn + 1, 0);
    for (std::size_t i = 0; i < nn; ++i) d.offsets[i + 1] = d.offsets[i] + counts[i];
    d.entries.assign(nn, 0);
    std::vector<std::uint32_t> cursor(d.offsets.begin(), d.offsets.end() - 1);
    for (std::uint32_t u = 0; u < n_; ++u)
      for (std::uint32_t x = 0; x < n_; ++x) {
        std::size_t row = static_cast<std::size_t>(u) * n_ + mul(u, x);
        d.entries[cursor[row]++] = x;
      }
    div_ = std::move(d);
  });
  return div_;
}

// ---------------------------------------------------------------------------

inline std::optional<std::uint32_t> PolyQuotRing::parse_elem_impl(
    const std::string& s) const {
  auto c = detail::parse_poly_literal(*base_, s, deg_ - 1);
  if (!c) return std::nullopt;
  c->resize(deg_, base_->zero());
  return encode(*c);
}

inline std::optional<std::uint32_t> ProdRing::parse_elem_impl(const std::string& s) const {
  std::string t = detail::trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') return std::nullopt;
  auto parts = detail::split_top(t.substr(1, t.size() - 2), ',');
  if (parts.size() != fs_.size()) return std::nullopt;
  std::vector<std::uint32_t> c(fs_.size());
  for (std::size_t i = 0; i < fs_.size(); ++i) c[i] = fs_[i]->parse_elem(parts[i]);
  return encode(c);
}

inline void TableRing::validate() {
  const std::uint32_t n = size();
  if (n < 2) fail(Error::Kind::Validate, "table ring must have at least 2 elements");
  if (n > kMaxN) fail(Error::Kind::Size, "table ring capped at 64 elements");
  if (d_.add.size() != n || d_.mul.size() != n)
    fail(Error::Kind::Validate, "table size mismatch");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (d_.elems[i].empty()) fail(Error::Kind::Validate, "empty element name");
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (d_.elems[i] == d_.elems[j])
        fail(Error::Kind::Validate, "duplicate element name " + d_.elems[i]);
    if (d_.add[i].size() != n || d_.mul[i].size() != n)
      fail(Error::Kind::Validate, "table row size mismatch");
    for (std::uint32_t j = 0; j < n; ++j)
      if (d_.add[i][j] >= n || d_.mul[i][j] >= n)
        fail(Error::Kind::Validate, "table entry out of range");
  }
  if (d_.one >= n || d_.one == 0) fail(Error::Kind::Validate, "1 = 0: zero ring rejected");
  for (std::uint32_t j = 0; j < n; ++j) {
    if (d_.add[0][j] != j) fail(Error::Kind::Validate, "element 0 is not the zero element");
    if (d_.mul[d_.one][j] != j) fail(Error::Kind::Validate, "designated one is not an identity");
  }
  neg_.assign(n, UnitGroup::npos);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j)
      if (d_.add[i][j] == 0) neg_[i] = j;
    if (neg_[i] == UnitGroup::npos)
      fail(Error::Kind::Validate, "missing additive inverse for " + d_.elems[i]);
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (d_.add[a][b] != d_.add[b][a]) fail(Error::Kind::Validate, "addition not commutative");
      if (d_.mul[a][b] != d_.mul[b][a])
        fail(Error::Kind::Validate, "multiplication not commutative");
      for (std::uint32_t c = 0; c < n; ++c) {
        if (d_.add[d_.add[a][b]][c] != d_.add[a][d_.add[b][c]])
          fail(Error::Kind::Validate, "addition not associative");
        if (d_.mul[d_.mul[a][b]][c] != d_.mul[a][d_.mul[b][c]])
          fail(Error::Kind::Validate, "multiplication not associative");
        if (d_.mul[a][d_.add[b][c]] != d_.add[d_.mul[a][b]][d_.mul[a][c]])
          fail(Error::Kind::Validate, "multiplication not distributive");
      }
    }
}

// ---------------------------------------------------------------------------

inline QuotientRing::QuotientRing(Ring parent, std::vector<std::uint32_t> ideal_sorted,
                                  std::string spec)
    : FiniteRing(RingKind::Quotient,
                 [&]() -> std::uint32_t {
                   if (!parent) fail(Error::Kind::Validate, "null parent");
                   if (parent->size() > 4096)
                     fail(Error::Kind::Size, "generic quotient refused for |R| > 4096");
                   if (ideal_sorted.empty() || ideal_sorted[0] != 0)
                     fail(Error::Kind::Validate, "ideal must contain 0");
                   return parent->size() / static_cast<std::uint32_t>(ideal_sorted.size());
                 }(),
                 std::move(spec)),
      parent_(std::move(parent)),
      ideal_(std::move(ideal_sorted)) {
  const std::uint32_t pn = parent_->size();
  // Lagrange: |R| = |I| * #cosets must be exact.
  if (pn % ideal_.size() != 0)
    fail(Error::Kind::Logic, "ideal size does not divide ring size");
  coset_rep_.assign(pn, UnitGroup::npos);
  rep_pos_.assign(pn, UnitGroup::npos);
  for (std::uint32_t x = 0; x < pn; ++x) {
    if (coset_rep_[x] != UnitGroup::npos) continue;
    for (std::uint32_t i : ideal_) {
      std::uint32_t y = parent_->add(x, i);
      if (coset_rep_[y] != UnitGroup::npos)
        fail(Error::Kind::Logic, "cosets not disjoint: ideal not additively closed");
      coset_rep_[y] = x;
    }
    rep_pos_[x] = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(x);
  }
  if (reps_.size() * ideal_.size() != pn)
    fail(Error::Kind::Logic, "coset counting failed");
  set_one(project(parent_->one()));
  finish_construction();
  // projection must be a ring homomorphism (exhaustive on all pairs for
  // small parents, sampled above)
  const std::uint64_t limit = 256;
  auto check_pair = [&](std::uint32_t a, std::uint32_t b) {
    if (project(parent_->add(a, b)) != add(project(a), project(b)) ||
        project(parent_->mul(a, b)) != mul(project(a), project(b)))
      fail(Error::Kind::Logic, "quotient projection is not a homomorphism");
  };
  if (pn <= limit) {
    for (std::uint32_t a = 0; a < pn; ++a)
      for (std::uint32_t b = 0; b < pn; ++b) check_pair(a, b);
  } else {
    Rng rng(detail::fnv1a(this->spec()));
    for (int t = 0; t < 10000; ++t)
      check_pair(static_cast<std::uint32_t>(rng.below(pn)),
                 static_cast<std::uint32_t>(rng.below(pn)));
  }
}

// ---------------------------------------------------------------------------
// Spec mini-language and registry.

namespace detail {

struct Registry {
  std::mutex mu;
  std::unordered_map<std::string, RingHandle> handles;
  std::unordered_map<std::string, TableData> builtin_tables;
};

inline Registry& registry() {
  static Registry r;
  return r;
}

inline TableData table_from_json(const nlohmann::json& j) {
  TableData d;
  if (!j.contains("elements") || !j.contains("add") || !j.contains("mul"))
    fail(Error::Kind::Parse, "table JSON needs elements/add/mul");
  for (const auto& e : j.at("elements")) d.elems.push_back(e.get<std::string>());
  auto idx_of = [&](const nlohmann::json& v) -> std::uint32_t {
    if (v.is_number_unsigned() || v.is_number_integer())
      return v.get<std::uint32_t>();
    std::string s = v.get<std::string>();
    for (std::uint32_t i = 0; i < d.elems.size(); ++i)
      if (d.elems[i] == s) return i;
    fail(Error::Kind::Parse, "unknown element name in table: " + s);
  };
  for (const auto& row : j.at("add")) {
    d.add.emplace_back();
    for (const auto& v : row) d.add.back().push_back(idx_of(v));
  }
  for (const auto& row : j.at("mul")) {
    d.mul.emplace_back();
    for (const auto& v : row) d.mul.back().push_back(idx_of(v));
  }
  d.one = j.contains("one") ? idx_of(j.at("one")) : 1;
  if (j.contains("name")) d.name = j.at("name").get<std::string>();
  return d;
}

inline Ring build_finite(const std::string& spec);

inline RingHandle build(const std::string& raw) {
  std::string spec = trim(raw);
  RingHandle h;
  h.spec = spec;
  if (spec.rfind("Int:", 0) == 0) {
    std::string rest = spec.substr(4);
    if (rest.rfind("H=", 0) != 0) fail(Error::Kind::Parse, "expected Int:H=<bound>");
    long long H;
    if (!parse_ll(rest.substr(2), H) || H < 1 || H > 1000000)
      fail(Error::Kind::Parse, "bad height bound in " + spec);
    h.zprof = IntProfile{H, spec};
    return h;
  }
  if (spec.rfind("PolyF:", 0) == 0) {
    auto parts = split_top(spec.substr(6), ',');
    if (parts.size() != 2 || parts[0].rfind("p=", 0) != 0 || parts[1].rfind("D=", 0) != 0)
      fail(Error::Kind::Parse, "expected PolyF:p=<p>,D=<degbound>");
    long long p, D;
    if (!parse_ll(parts[0].substr(2), p) || !parse_ll(parts[1].substr(2), D) || p < 2 ||
        D < 1 || D > 64 || !is_prime_u64(static_cast<std::uint64_t>(p)))
      fail(Error::Kind::Parse, "bad PolyF profile " + spec);
    h.pprof = PolyProfile{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(D), spec};
    return h;
  }
  h.finite = build_finite(spec);
  return h;
}

inline Ring build_finite(const std::string& spec) {
  if (spec.rfind("Zmod:", 0) == 0) {
    long long n;
    if (!parse_ll(spec.substr(5), n) || n < 0)
      fail(Error::Kind::Parse, "bad modulus in " + spec);
    if (n == 0) fail(Error::Kind::Parse, "Zmod:0 is not a finite ring");
    if (n == 1) fail(Error::Kind::Validate, "zero ring rejected: " + spec);
    return std::make_shared<ZmodRing>(static_cast<std::uint64_t>(n), RingKind::Zmod, spec);
  }
  if (spec.rfind("GF:", 0) == 0) {
    std::string body = spec.substr(3);
    long long p = 0, k = 1;
    auto caret = body.find('^');
    if (caret != std::string::npos) {
      if (!parse_ll(body.substr(0, caret), p) || !parse_ll(body.substr(caret + 1), k))
        fail(Error::Kind::Parse, "bad GF spec " + spec);
    } else {
      long long q;
      if (!parse_ll(body, q)) fail(Error::Kind::Parse, "bad GF spec " + spec);
      if (q < 2) fail(Error::Kind::Validate, "GF size must be a prime power >= 2");
      // factor q as p^k
      long long base = 0;
      for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
          base = d;
          break;
        }
      if (base == 0) {
        p = q;
        k = 1;
      } else {
        p = base;
        long long t = q;
        k = 0;
        while (t % p == 0) {
          t /= p;
          ++k;
        }
        if (t != 1)
          fail(Error::Kind::Validate, "GF size is not a prime power: " + spec);
      }
    }
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)) || k < 1 || k > 16)
      fail(Error::Kind::Validate, "bad prime power in " + spec);
    if (k == 1)
      return std::make_shared<ZmodRing>(static_cast<std::uint64_t>(p),
                                        RingKind::GaloisField, spec);
    Ring base = build_finite("Zmod:" + std::to_string(p));
    PVec irr = least_irreducible(static_cast<std::uint32_t>(p),
                                 static_cast<std::uint32_t>(k));
    std::vector<std::uint32_t> mod(irr.begin(), irr.end());
    return std::make_shared<PolyQuotRing>(base, mod, RingKind::GaloisField, spec);
  }
  if (spec.rfind("Quot:", 0) == 0) {
    std::string body = spec.substr(5);
    if (body.empty() || body.back() != ')')
      fail(Error::Kind::Parse, "expected Quot:<ring>[x]/(<monic poly>)");
    // match the final (...) group
    int depth = 0;
    std::size_t open = std::string::npos;
    for (std::size_t i = body.size(); i-- > 0;) {
      if (body[i] == ')') ++depth;
      if (body[i] == '(') {
        --depth;
        if (depth == 0) {
          open = i;
          break;
        }
      }
    }
    const std::string marker = "[x]/";
    if (open == std::string::npos || open < marker.size() ||
        body.compare(open - marker.size(), marker.size(), marker) != 0)
      fail(Error::Kind::Parse, "expected Quot:<ring>[x]/(<monic poly>)");
    std::string base_spec = body.substr(0, open - marker.size());
    std::string poly = body.substr(open + 1, body.size() - open - 2);
    Ring base = make_finite_ring(base_spec);
    auto coeffs = parse_poly_literal(*base, poly, 32);
    if (!coeffs) fail(Error::Kind::Parse, "bad modulus polynomial in " + spec);
    while (!coeffs->empty() && coeffs->back() == base->zero()) coeffs->pop_back();
    if (coeffs->size() < 2)
      fail(Error::Kind::Validate, "modulus must have degree >= 1: " + spec);
    if (coeffs->back() != base->one())
      fail(Error::Kind::Validate, "modulus not monic: " + spec);
    return std::make_shared<PolyQuotRing>(base, *coeffs, RingKind::PolyQuot, spec);
  }
  if (spec.rfind("Prod:", 0) == 0) {
    auto parts = split_top(spec.substr(5), '*');
    if (parts.size() < 2) fail(Error::Kind::Parse, "Prod needs at least two factors");
    std::vector<Ring> fs;
    for (const auto& p : parts) fs.push_back(make_finite_ring(p));
    return std::make_shared<ProdRing>(std::move(fs), spec);
  }
  if (spec.rfind("Table:", 0) == 0) {
    std::string loc = trim(spec.substr(6));
    TableData d;
    if (!loc.empty() && loc[0] == '@') {
      auto& reg = registry();
      std::lock_guard<std::mutex> lk(reg.mu);
      auto it = reg.builtin_tables.find(loc.substr(1));
      if (it == reg.builtin_tables.end())
        fail(Error::Kind::Parse, "unknown builtin table " + loc);
      d = it->second;
    } else {
      std::ifstream f(loc);
      if (!f) fail(Error::Kind::IO, "cannot open table file " + loc);
      nlohmann::json j;
      try {
        f >> j;
      } catch (const std::exception& e) {
        fail(Error::Kind::Parse, std::string("bad table JSON: ") + e.what());
      }
      d = table_from_json(j);
    }
    return std::make_shared<TableRing>(std::move(d), spec);
  }
  fail(Error::Kind::Parse, "unrecognized ring spec: " + spec);
}

}  // namespace detail

inline void validate_ring_laws(const Ring& r) {
  const std::uint32_t n = r->size();
  if (n <= 1) fail(Error::Kind::Validate, "zero ring rejected: " + r->spec());
  auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (r->add(a, b) != r->add(b, a)) fail(Error::Kind::Validate, "addition not commutative");
    if (r->mul(a, b) != r->mul(b, a))
      fail(Error::Kind::Validate, "multiplication not commutative");
    if (r->add(r->add(a, b), c) != r->add(a, r->add(b, c)))
      fail(Error::Kind::Validate, "addition not associative");
    if (r->mul(r->mul(a, b), c) != r->mul(a, r->mul(b, c)))
      fail(Error::Kind::Validate, "multiplication not associative");
    if (r->mul(a, r->add(b, c)) != r->add(r->mul(a, b), r->mul(a, c)))
      fail(Error::Kind::Validate, "multiplication not distributive");
    if (r->add(a, r->neg(a)) != r->zero())
      fail(Error::Kind::Validate, "missing additive inverse");
    if (r->mul(r->one(), a) != a) fail(Error::Kind::Validate, "1 is not an identity");
  };
  if (n <= 256) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    Rng rng(detail::fnv1a(r->spec()));
    for (int t = 0; t < 10000; ++t)
      check(static_cast<std::uint32_t>(rng.below(n)),
            static_cast<std::uint32_t>(rng.below(n)),
            static_cast<std::uint32_t>(rng.below(n)));
  }
}

inline RingHandle make_ring(const std::string& raw) {
  std::string spec = detail::trim(raw);
  auto& reg = detail::registry();
  {
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.handles.find(spec);
    if (it != reg.handles.end()) return it->second;
  }
  RingHandle h = detail::build(spec);
  if (h.is_finite()) validate_ring_laws(h.finite);
  std::lock_guard<std::mutex> lk(reg.mu);
  auto [it, _] = reg.handles.emplace(spec, std::move(h));
  return it->second;
}

inline Ring make_finite_ring(const std::string& spec) {
  RingHandle h = make_ring(spec);
  if (!h.is_finite())
    fail(Error::Kind::Precondition, "finite ring required, got " + h.spec);
  return h.finite;
}

inline void register_builtin_table(const std::string& name, TableData data) {
  auto& reg = detail::registry();
  std::lock_guard<std::mutex> lk(reg.mu);
  reg.builtin_tables.emplace(name, std::move(data));
}

}  // namespace edrlab
