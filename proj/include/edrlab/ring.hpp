#pragma once

// Finite commutative rings with identity, behind one interface.
//
// Elements are canonical indices into a fixed enumeration (index 0 is always
// the zero element), so equality is index equality. Concrete kinds: Z/n,
// GF(p^k), polynomial quotients over a finite base, finite products, table
// rings loaded from JSON, and quotient rings by a materialized ideal.
// Handles are immutable after construction; lazy caches are built under
// std::call_once and shared read-only.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "edrlab/common.hpp"

namespace edrlab {

enum class RingKind {
  Zmod,
  GaloisField,
  PolyQuot,
  Product,
  Table,
  Quotient,
};

inline const char* kind_str(RingKind k) {
  switch (k) {
    case RingKind::Zmod: return "Zmod";
    case RingKind::GaloisField: return "GF";
    case RingKind::PolyQuot: return "Quot";
    case RingKind::Product: return "Prod";
    case RingKind::Table: return "Table";
    default: return "Quotient";
  }
}

class FiniteRing;
using Ring = std::shared_ptr<const FiniteRing>;

// Group of units: element list, inverse pairing, membership bitmap.
struct UnitGroup {
  std::vector<std::uint32_t> elems;    // sorted indices
  std::vector<std::uint32_t> inv_of;   // size n, npos for non-units
  std::vector<char> is_unit;           // size n
  static constexpr std::uint32_t npos = 0xffffffffu;
};

// CSR layout of the relation u*x = v: for a fixed u, solutions x grouped by
// product v. Built once per ring, O(n^2); capped by kDivCap.
struct DivCache {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> offsets;  // (n*n + 1), row index u*n + v
  std::vector<std::uint32_t> entries;  // n*n solution values, grouped
  // Solutions x of u*x = v, in increasing order.
  const std::uint32_t* begin(std::uint32_t u, std::uint32_t v) const {
    return entries.data() + offsets[static_cast<std::size_t>(u) * n + v];
  }
  const std::uint32_t* end(std::uint32_t u, std::uint32_t v) const {
    return entries.data() + offsets[static_cast<std::size_t>(u) * n + v + 1];
  }
  bool divides(std::uint32_t u, std::uint32_t v) const {  // u | v
    return begin(u, v) != end(u, v);
  }
  // Least x with u*x = v, or npos.
  std::uint32_t first(std::uint32_t u, std::uint32_t v) const {
    auto b = begin(u, v);
    return b == end(u, v) ? UnitGroup::npos : *b;
  }
};

class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
 public:
  static constexpr std::uint32_t kTableCap = 512;   // op tables built iff n <= cap
  static constexpr std::uint32_t kDivCap = 512;     // division CSR cap
  static constexpr std::uint32_t kUnitScanCap = 1u << 16;
  static constexpr std::uint64_t kIdealCap = 1u << 16;

  virtual ~FiniteRing() = default;

  std::uint32_t size() const { return n_; }
  bool is_zero_ring() const { return n_ == 1; }
  RingKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return one_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return add_tab_.empty() ? add_impl(a, b)
                            : add_tab_[static_cast<std::size_t>(a) * n_ + b];
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return mul_tab_.empty() ? mul_impl(a, b)
                            : mul_tab_[static_cast<std::size_t>(a) * n_ + b];
  }
  std::uint32_t neg(std::uint32_t a) const {
    return neg_tab_.empty() ? neg_impl(a) : neg_tab_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  // Canonical image of an integer, by double-and-add on 1.
  std::uint32_t from_int(long long v) const {
    std::uint64_t ch = characteristic();
    long long r = v % static_cast<long long>(ch);
    if (r < 0) r += static_cast<long long>(ch);
    std::uint32_t acc = zero(), base = one();
    std::uint64_t e = static_cast<std::uint64_t>(r);
    while (e) {
      if (e & 1) acc = add(acc, base);
      base = add(base, base);
      e >>= 1;
    }
    return acc;
  }

  // Additive order of 1.
  std::uint64_t characteristic() const {
    std::call_once(char_once_, [this] {
      std::uint64_t c = 1;
      std::uint32_t x = one();
      while (x != zero()) {
        x = add(x, one());
        ++c;
      }
      char_ = c;
    });
    return char_;
  }

  virtual std::string elem_str(std::uint32_t a) const = 0;

  // Parses an element literal. Every kind accepts plain integers and the
  // "#<index>" escape hatch; kinds add their own forms on top.
  std::uint32_t parse_elem(const std::string& s) const;

  const UnitGroup& units() const;
  const DivCache& div() const;

  // Per-ring memo for classifier flags; only definite values are cached.
  std::optional<Tri> cached_flag(const std::string& key) const {
    std::lock_guard<std::mutex> lk(flag_mu_);
    auto it = flag_memo_.find(key);
    if (it == flag_memo_.end()) return std::nullopt;
    return it->second;
  }
  void cache_flag(const std::string& key, Tri v) const {
    if (v == Tri::Unknown) return;
    std::lock_guard<std::mutex> lk(flag_mu_);
    flag_memo_[key] = v;
  }

 protected:
  FiniteRing(RingKind k, std::uint32_t n, std::string spec)
      : kind_(k), n_(n), spec_(std::move(spec)) {
    if (n_ == 0) fail(Error::Kind::Validate, "ring must be nonempty: " + spec_);
  }

  virtual std::uint32_t add_impl(std::uint32_t, std::uint32_t) const = 0;
  virtual std::uint32_t mul_impl(std::uint32_t, std::uint32_t) const = 0;
  virtual std::uint32_t neg_impl(std::uint32_t) const = 0;
  virtual std::optional<std::uint32_t> parse_elem_impl(const std::string&) const {
    return std::nullopt;
  }

  void set_one(std::uint32_t o) { one_ = o; }

  // Call at the end of every concrete constructor.
  void finish_construction() {
    if (n_ <= kTableCap) {
      add_tab_.resize(static_cast<std::size_t>(n_) * n_);
      mul_tab_.resize(static_cast<std::size_t>(n_) * n_);
      neg_tab_.resize(n_);
      for (std::uint32_t a = 0; a < n_; ++a) {
        neg_tab_[a] = neg_impl(a);
        for (std::uint32_t b = 0; b < n_; ++b) {
          std::uint32_t s = add_impl(a, b), p = mul_impl(a, b);
          if (s >= n_ || p >= n_)
            fail(Error::Kind::Validate, "operation escapes enumeration in " + spec_);
          add_tab_[static_cast<std::size_t>(a) * n_ + b] = s;
          mul_tab_[static_cast<std::size_t>(a) * n_ + b] = p;
        }
      }
    }
  }

 private:
  RingKind kind_;
  std::uint32_t n_;
  std::string spec_;
  std::uint32_t one_ = 1;

  std::vector<std::uint32_t> add_tab_, mul_tab_, neg_tab_;

  mutable std::once_flag char_once_;
  mutable std::uint64_t char_ = 0;

  mutable std::once_flag units_once_;
  mutable UnitGroup units_;

  mutable std::once_flag div_once_;
  mutable DivCache div_;

  mutable std::mutex flag_mu_;
  mutable std::map<std::string, Tri> flag_memo_;
};

// ---------------------------------------------------------------------------
// Z/n

class ZmodRing final : public FiniteRing {
 public:
  ZmodRing(std::uint64_t n, RingKind k, std::string spec)
      : FiniteRing(k, static_cast<std::uint32_t>(n), std::move(spec)) {
    if (n < 1 || n > (1ull << 31))
      fail(Error::Kind::Validate, "modulus out of range");
    set_one(n == 1 ? 0 : 1);
    finish_construction();
  }

  std::string elem_str(std::uint32_t a) const override { return std::to_string(a); }

 protected:
  std::uint32_t add_impl(std::uint32_t a, std::uint32_t b) const override {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= size() ? s - size() : s);
  }
  std::uint32_t mul_impl(std::uint32_t a, std::uint32_t b) const override {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % size());
  }
  std::uint32_t neg_impl(std::uint32_t a) const override {
    return a == 0 ? 0 : size() - a;
  }
};

// ---------------------------------------------------------------------------
// Polynomial quotient base[x]/(m), m monic of degree >= 1. Elements are
// little-endian coefficient vectors of length deg, encoded as base-|base|
// digit strings of the index: canonical by construction.

class PolyQuotRing final : public FiniteRing {
 public:
  PolyQuotRing(Ring base, std::vector<std::uint32_t> mod, RingKind k, std::string spec)
      : FiniteRing(k, pow_check(base, mod), std::move(spec)),
        base_(std::move(base)),
        mod_(std::move(mod)),
        deg_(static_cast<std::uint32_t>(mod_.size()) - 1) {
    if (mod_.back() != base_->one())
      fail(Error::Kind::Validate, "quotient modulus must be monic: " + this->spec());
    set_one(encode_const(base_->one()));
    finish_construction();
  }

  const Ring& base() const { return base_; }
  std::uint32_t degree() const { return deg_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  std::vector<std::uint32_t> decode(std::uint32_t a) const {
    std::vector<std::uint32_t> c(deg_);
    std::uint64_t v = a, B = base_->size();
    for (std::uint32_t i = 0; i < deg_; ++i) {
      c[i] = static_cast<std::uint32_t>(v % B);
      v /= B;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint64_t v = 0, B = base_->size();
    for (std::uint32_t i = deg_; i-- > 0;) v = v * B + (i < c.size() ? c[i] : 0);
    return static_cast<std::uint32_t>(v);
  }

  std::string elem_str(std::uint32_t a) const override {
    auto c = decode(a);
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = deg_; i-- > 0;) {
      if (c[i] == base_->zero()) continue;
      if (!first) os << "+";
      first = false;
      std::string cs = base_->elem_str(c[i]);
      bool coeff_is_one = (c[i] == base_->one());
      bool plain = base_->kind() == RingKind::Zmod ||
                   (base_->kind() == RingKind::GaloisField && cs.find('x') == std::string::npos);
      if (i == 0) {
        os << (plain ? cs : "(" + cs + ")");
      } else {
        if (!coeff_is_one) os << (plain ? cs : "(" + cs + ")");
        os << "x";
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << base_->elem_str(base_->zero());
    return os.str();
  }

 protected:
  std::uint32_t add_impl(std::uint32_t a, std::uint32_t b) const override {
    auto ca = decode(a), cb = decode(b);
    for (std::uint32_t i = 0; i < deg_; ++i) ca[i] = base_->add(ca[i], cb[i]);
    return encode(ca);
  }
  std::uint32_t neg_impl(std::uint32_t a) const override {
    auto c = decode(a);
    for (auto& x : c) x = base_->neg(x);
    return encode(c);
  }
  std::uint32_t mul_impl(std::uint32_t a, std::uint32_t b) const override {
    auto ca = decode(a), cb = decode(b);
    std::vector<std::uint32_t> prod(2 * deg_ - 1, base_->zero());
    for (std::uint32_t i = 0; i < deg_; ++i) {
      if (ca[i] == base_->zero()) continue;
      for (std::uint32_t j = 0; j < deg_; ++j)
        prod[i + j] = base_->add(prod[i + j], base_->mul(ca[i], cb[j]));
    }
    // reduce by the monic modulus
    for (std::uint32_t d = 2 * deg_ - 2; d + 1 > deg_; --d) {
      std::uint32_t lead = prod[d];
      if (lead == base_->zero()) continue;
      prod[d] = base_->zero();
      for (std::uint32_t i = 0; i < deg_; ++i) {
        std::uint32_t t = base_->mul(lead, mod_[i]);
        prod[d - deg_ + i] = base_->sub(prod[d - deg_ + i], t);
      }
    }
    prod.resize(deg_);
    return encode(prod);
  }
  std::optional<std::uint32_t> parse_elem_impl(const std::string& s) const override;

 private:
  std::uint32_t encode_const(std::uint32_t c0) const {
    std::vector<std::uint32_t> c(deg_, base_->zero());
    c[0] = c0;
    return encode(c);
  }
  static std::uint32_t pow_check(const Ring& base, const std::vector<std::uint32_t>& mod) {
    if (!base) fail(Error::Kind::Validate, "null base ring");
    if (mod.size() < 2) fail(Error::Kind::Validate, "quotient modulus must have degree >= 1");
    std::uint64_t n = 1;
    for (std::size_t i = 1; i < mod.size(); ++i) {
      n *= base->size();
      if (n > (1ull << 31)) fail(Error::Kind::Size, "polynomial quotient too large");
    }
    return static_cast<std::uint32_t>(n);
  }

  Ring base_;
  std::vector<std::uint32_t> mod_;
  std::uint32_t deg_;
};

// ---------------------------------------------------------------------------
// Finite product, lexicographic encoding (leftmost factor most significant).

class ProdRing final : public FiniteRing {
 public:
  ProdRing(std::vector<Ring> factors, std::string spec)
      : FiniteRing(RingKind::Product, size_check(factors), std::move(spec)),
        fs_(std::move(factors)) {
    std::uint32_t o = 0;
    for (const auto& f : fs_) o = o * f->size() + f->one();
    set_one(o);
    finish_construction();
  }

  const std::vector<Ring>& factors() const { return fs_; }

  std::vector<std::uint32_t> decode(std::uint32_t a) const {
    std::vector<std::uint32_t> c(fs_.size());
    for (std::size_t i = fs_.size(); i-- > 0;) {
      c[i] = a % fs_[i]->size();
      a /= fs_[i]->size();
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < fs_.size(); ++i) v = v * fs_[i]->size() + c[i];
    return static_cast<std::uint32_t>(v);
  }
  std::uint32_t component(std::uint32_t a, std::size_t i) const { return decode(a)[i]; }

  std::string elem_str(std::uint32_t a) const override {
    auto c = decode(a);
    std::string s = "(";
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      if (i) s += ",";
      s += fs_[i]->elem_str(c[i]);
    }
    return s + ")";
  }

 protected:
  std::uint32_t add_impl(std::uint32_t a, std::uint32_t b) const override {
    auto ca = decode(a), cb = decode(b);
    for (std::size_t i = 0; i < fs_.size(); ++i) ca[i] = fs_[i]->add(ca[i], cb[i]);
    return encode(ca);
  }
  std::uint32_t mul_impl(std::uint32_t a, std::uint32_t b) const override {
    auto ca = decode(a), cb = decode(b);
    for (std::size_t i = 0; i < fs_.size(); ++i) ca[i] = fs_[i]->mul(ca[i], cb[i]);
    return encode(ca);
  }
  std::uint32_t neg_impl(std::uint32_t a) const override {
    auto c = decode(a);
    for (std::size_t i = 0; i < fs_.size(); ++i) c[i] = fs_[i]->neg(c[i]);
    return encode(c);
  }
  std::optional<std::uint32_t> parse_elem_impl(const std::string& s) const override;

 private:
  static std::uint32_t size_check(const std::vector<Ring>& fs) {
    if (fs.empty()) fail(Error::Kind::Validate, "product needs at least one factor");
    std::uint64_t n = 1;
    for (const auto& f : fs) {
      n *= f->size();
      if (n > (1ull << 31)) fail(Error::Kind::Size, "product ring too large");
    }
    return static_cast<std::uint32_t>(n);
  }

  std::vector<Ring> fs_;
};

// ---------------------------------------------------------------------------
// Table rings: untrusted user-supplied multiplication/addition tables,
// validated in full at load (O(n^3) associativity/distributivity), n <= 64.

struct TableData {
  std::string name;
  std::vector<std::string> elems;  // elems[0] must be the zero element
  std::vector<std::vector<std::uint32_t>> add, mul;
  std::uint32_t one = 0;
};

class TableRing final : public FiniteRing {
 public:
  static constexpr std::uint32_t kMaxN = 64;

  TableRing(TableData d, std::string spec)
      : FiniteRing(RingKind::Table, static_cast<std::uint32_t>(d.elems.size()),
                   std::move(spec)),
        d_(std::move(d)) {
    validate();
    set_one(d_.one);
    finish_construction();
  }

  std::string elem_str(std::uint32_t a) const override { return d_.elems[a]; }
  const TableData& data() const { return d_; }

 protected:
  std::uint32_t add_impl(std::uint32_t a, std::uint32_t b) const override {
    return d_.add[a][b];
  }
  std::uint32_t mul_impl(std::uint32_t a, std::uint32_t b) const override {
    return d_.mul[a][b];
  }
  std::uint32_t neg_impl(std::uint32_t a) const override { return neg_[a]; }
  std::optional<std::uint32_t> parse_elem_impl(const std::string& s) const override {
    for (std::uint32_t i = 0; i < size(); ++i)
      if (d_.elems[i] == s) return i;
    return std::nullopt;
  }

 private:
  void validate();
  TableData d_;
  std::vector<std::uint32_t> neg_;
};

// ---------------------------------------------------------------------------
// Quotient ring R/I for a materialized ideal I. Canonical representative of
// a coset is its least parent index.

class QuotientRing final : public FiniteRing {
 public:
  QuotientRing(Ring parent, std::vector<std::uint32_t> ideal_sorted, std::string spec);

  const Ring& parent() const { return parent_; }
  const std::vector<std::uint32_t>& ideal() const { return ideal_; }
  // parent index -> quotient index
  std::uint32_t project(std::uint32_t parent_idx) const {
    return rep_pos_[coset_rep_[parent_idx]];
  }
  // quotient index -> canonical parent representative
  std::uint32_t lift(std::uint32_t q) const { return reps_[q]; }

  std::string elem_str(std::uint32_t a) const override {
    return parent_->elem_str(reps_[a]);
  }

 protected:
  std::uint32_t add_impl(std::uint32_t a, std::uint32_t b) const override {
    return project(parent_->add(reps_[a], reps_[b]));
  }
  std::uint32_t mul_impl(std::uint32_t a, std::uint32_t b) const override {
    return project(parent_->mul(reps_[a], reps_[b]));
  }
  std::uint32_t neg_impl(std::uint32_t a) const override {
    return project(parent_->neg(reps_[a]));
  }
  std::optional<std::uint32_t> parse_elem_impl(const std::string& s) const override {
    return project(parent_->parse_elem(s));
  }

 private:
  Ring parent_;
  std::vector<std::uint32_t> ideal_;
  std::vector<std::uint32_t> coset_rep_;  // parent idx -> least parent idx in coset
  std::vector<std::uint32_t> reps_;       // quotient idx -> parent idx
  std::vector<std::uint32_t> rep_pos_;    // parent idx (rep only) -> quotient idx
};

// ---------------------------------------------------------------------------
// Unbounded profiles. Z is exposed through bounded-height searches only;
// F_p[x] through degree bounds. Predicates over these report Unknown when a
// bounded search exhausts, never False.

struct IntProfile {
  long long height = 30;
  std::string spec;
};

struct PolyProfile {
  std::uint32_t p = 2;
  std::uint32_t deg_bound = 8;
  std::string spec;
};

struct RingHandle {
  // exactly one of these is set
  Ring finite;
  std::optional<IntProfile> zprof;
  std::optional<PolyProfile> pprof;
  std::string spec;
  bool is_finite() const { return static_cast<bool>(finite); }
};

// Parses the ring-spec mini-language and validates the result. Handles are
// memoized by spec string.
RingHandle make_ring(const std::string& spec);
Ring make_finite_ring(const std::string& spec);

// Registers an in-memory table under "Table:@name".
void register_builtin_table(const std::string& name, TableData data);

// Construction-time law checks: 1 != 0, commutativity/associativity/
// distributivity (exhaustive for n <= 256, >= 10^4 random triples above),
// closure already enforced by table building.
void validate_ring_laws(const Ring& r);

}  // namespace edrlab

#include "edrlab/detail/ring_impl.hpp"
