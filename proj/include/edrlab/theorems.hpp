#pragma once

// Brute-force verification of the criteria and equivalences over the
// corpus. Every equivalence is evaluated side by side through disjoint code
// paths and compared; hypotheses are machine-checked and failures yield
// INAPPLICABLE rather than silent assumptions. Evidence is plain JSON.

#include <json.hpp>

#include "edrlab/corpus.hpp"
#include "edrlab/euclidean.hpp"

namespace edrlab {

using Json = nlohmann::ordered_json;

enum class Verdict { Verified, Counterexample, Unknown, Inapplicable };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "VERIFIED";
    case Verdict::Counterexample: return "COUNTEREXAMPLE";
    case Verdict::Unknown: return "UNKNOWN";
    default: return "INAPPLICABLE";
  }
}

struct TheoremCase {
  std::string theorem;
  std::string ring_spec;
  Verdict verdict = Verdict::Unknown;
  Json evidence = Json::object();
};

inline std::vector<std::string> all_theorem_ids() {
  return {"TH1", "TH2-cond1", "TH2-cond2", "TH2-cond3", "TH3", "TH4",
          "TH5", "CR1",       "CR2",       "CR3-shortcuts", "P1", "P2",
          "L1",  "L2",        "EX3",       "EX4",       "EX5", "EX10",
          "C6-sym-equation"};
}

// th3_factor_check with per-ring caching and product splitting (defined in
// the impl header).
Th3Result th3_factor_check_cached(const Ring& R, Budget& budget);

namespace thm {

inline Json tri_json(Tri t) { return Json(tri_str(t)); }

// ---- helpers with product splitting ---------------------------------------

// for all a in R, property of the quotient R/Ra (or R/Ann(a))
inline FlagResult all_quotients_pi2(const Ring& R, bool by_annihilator, Budget& budget) {
  const std::string key = by_annihilator ? "allq_ann_pi2" : "allq_pi2";
  if (auto c = R->cached_flag(key)) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = all_quotients_pi2(Fi, by_annihilator, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    for (std::uint32_t a = 0; a < R->size(); ++a) {
      QuotientResult q = by_annihilator
                             ? quotient_by_ideal(R, annihilator(R, a),
                                                 "Ann(" + R->elem_str(a) + ")")
                             : quotient(R, a);
      FlagResult r = eval_flag(q.ring, Flag::Pi2, budget);
      if (!is_true(r.val)) {
        out.val = r.val;
        out.note = "quotient by " + std::string(by_annihilator ? "Ann(" : "(") +
                   R->elem_str(a) + ") is not Pi2";
        break;
      }
    }
  }
  R->cache_flag(key, out.val);
  return out;
}

// for all (a,b,c) in Um(R^3): 1 - a x - b y - c w + a c (x w - y z) = 0 solvable
inline FlagResult um3_wdl_equation(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("um3_wdl_eq")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = um3_wdl_equation(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    const auto& masks = maximal_ideal_masks(R);
    for (std::uint32_t a = 0; a < R->size() && is_true(out.val); ++a)
      for (std::uint32_t b = 0; b < R->size() && is_true(out.val); ++b)
        for (std::uint32_t c = 0; c < R->size(); ++c) {
          std::uint32_t t[3] = {a, b, c};
          if (!is_unimodular_span(masks, t, 3)) continue;
          Tri r = lift::criterion_wdl_ut(R, a, b, c, budget);
          if (r == Tri::Unknown) return {Tri::Unknown, "budget"};
          if (is_false(r)) {
            out.val = Tri::False;
            out.note = "equation unsolvable for (" + R->elem_str(a) + "," +
                       R->elem_str(b) + "," + R->elem_str(c) + ")";
            break;
          }
        }
  }
  R->cache_flag("um3_wdl_eq", out.val);
  return out;
}

// pre-Schreier after killing the nilradical
inline FlagResult reduced_pre_schreier(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("red_pre_schreier")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = reduced_pre_schreier(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    QuotientResult q = quotient_by_ideal(R, nilradical(R), "N");
    out = eval_flag(q.ring, Flag::PreSchreier, budget);
  }
  R->cache_flag("red_pre_schreier", out.val);
  return out;
}

// for all unimodular (a,b) and all c: Coker(upsilon_{a,b,c}) Boolean
inline FlagResult coker_universal(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("coker_universal")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = coker_universal(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    const auto& masks = maximal_ideal_masks(R);
    for (std::uint32_t a = 0; a < R->size() && is_true(out.val); ++a)
      for (std::uint32_t b = 0; b < R->size() && is_true(out.val); ++b) {
        std::uint32_t p[2] = {a, b};
        if (!is_unimodular_span(masks, p, 2)) continue;
        for (std::uint32_t c = 0; c < R->size(); ++c) {
          if (!budget.spend(R->size())) return {Tri::Unknown, "budget"};
          if (!coker_is_boolean(R, a, b, c)) {
            out.val = Tri::False;
            out.note = "coker not Boolean at (" + R->elem_str(a) + "," + R->elem_str(b) +
                       "," + R->elem_str(c) + ")";
            break;
          }
        }
      }
  }
  R->cache_flag("coker_universal", out.val);
  return out;
}

// for all (a,b,c) in Um(R^3): exists (e,f) with (a e^2 - c f^2, a c - b^2)
// unimodular (the Pell-type condition)
inline FlagResult cr2_condition(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("cr2_condition")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = cr2_condition(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    const auto& masks = maximal_ideal_masks(R);
    for (std::uint32_t a = 0; a < R->size() && is_true(out.val); ++a)
      for (std::uint32_t b = 0; b < R->size() && is_true(out.val); ++b)
        for (std::uint32_t c = 0; c < R->size(); ++c) {
          std::uint32_t t3[3] = {a, b, c};
          if (!is_unimodular_span(masks, t3, 3)) continue;
          const std::uint32_t disc = R->sub(R->mul(a, c), R->mul(b, b));
          bool found = false;
          for (std::uint32_t e = 0; e < R->size() && !found; ++e) {
            if (!budget.spend(R->size())) return {Tri::Unknown, "budget"};
            const std::uint32_t ae2 = R->mul(a, R->mul(e, e));
            for (std::uint32_t f = 0; f < R->size(); ++f) {
              std::uint32_t pell[2] = {R->sub(ae2, R->mul(c, R->mul(f, f))), disc};
              if (is_unimodular_span(masks, pell, 2)) {
                found = true;
                break;
              }
            }
          }
          if (!found) {
            out.val = Tri::False;
            out.note = "no Pell witness for (" + R->elem_str(a) + "," + R->elem_str(b) +
                       "," + R->elem_str(c) + ")";
            break;
          }
        }
  }
  R->cache_flag("cr2_condition", out.val);
  return out;
}

// every zero-determinant matrix admitting diagonal reduction is non-full
inline FlagResult diagred_implies_nonfull(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("diagred_nonfull")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = diagred_implies_nonfull(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    const std::uint32_t n = R->size();
    FMat B(R, 2, 2);
    for (std::uint32_t a = 0; a < n && is_true(out.val); ++a)
      for (std::uint32_t b = 0; b < n && is_true(out.val); ++b)
        for (std::uint32_t c = 0; c < n && is_true(out.val); ++c)
          for (std::uint32_t d = 0; d < n; ++d) {
            B.a = {a, b, c, d};
            if (det2(B) != R->zero()) continue;
            auto dr = lift::admits_diagonal_reduction(B, budget);
            if (dr.val == Tri::Unknown) return {Tri::Unknown, "budget"};
            if (is_false(dr.val)) continue;
            auto nf = lift::search_non_full(B, budget);
            if (nf.val == Tri::Unknown) return {Tri::Unknown, "budget"};
            if (is_false(nf.val)) {
              out.val = Tri::False;
              out.note = B.str() + " reduces diagonally but is full";
              break;
            }
          }
  }
  R->cache_flag("diagred_nonfull", out.val);
  return out;
}

// the non-full correspondence, whole-ring form
inline FlagResult ex10_all(const Ring& R, Budget& budget) {
  if (auto c = R->cached_flag("ex10_all")) return {*c, ""};
  FlagResult out;
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.val = Tri::True;
    for (const auto& Fi : factors) {
      FlagResult r = ex10_all(Fi, budget);
      out.val = tri_and(out.val, r.val);
      if (is_false(out.val)) {
        out.note = r.note;
        break;
      }
    }
  } else {
    out.val = Tri::True;
    std::uint32_t checked = 0;
    for (std::uint32_t a = 0; a < R->size() && is_true(out.val); ++a)
      for (std::uint32_t c = 0; c < R->size() && is_true(out.val); ++c)
        for (std::uint32_t u = 0; u < R->size(); ++u) {
          if (!budget.spend()) return {Tri::Unknown, "budget"};
          if (!ex10_admissible(R, a, c, u)) continue;
          Ex10Result r = ex10_correspondence(R, a, c, u, budget);
          ++checked;
          if (r.non_full != r.in_image) {
            out.val = Tri::False;
            out.note = "correspondence fails at (a,c,u)=(" + R->elem_str(a) + "," +
                       R->elem_str(c) + "," + R->elem_str(u) + ")";
            break;
          }
        }
    out.note = "checked " + std::to_string(checked) + " admissible triples";
  }
  R->cache_flag("ex10_all", out.val);
  return out;
}

// symmetric zero-determinant unimodular matrices [[a,b],[b,c]]
inline std::vector<std::array<std::uint32_t, 3>> symmetric_zero_det_um(const Ring& R) {
  std::vector<std::array<std::uint32_t, 3>> out;
  const auto& dv = R->div();
  const auto& masks = maximal_ideal_masks(R);
  for (std::uint32_t a = 0; a < R->size(); ++a)
    for (std::uint32_t b = 0; b < R->size(); ++b) {
      const std::uint32_t b2 = R->mul(b, b);
      for (const std::uint32_t* cp = dv.begin(a, b2); cp != dv.end(a, b2); ++cp) {
        std::uint32_t e[3] = {a, b, *cp};
        if (is_unimodular_span(masks, e, 3)) out.push_back({a, b, *cp});
      }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// exists (e,f): a e^2 - c f^2 a unit
inline bool cr1_pell_solvable(const Ring& R, std::uint32_t a, std::uint32_t c,
                              Budget& budget, bool* oom) {
  const auto& U = R->units();
  for (std::uint32_t e = 0; e < R->size(); ++e) {
    if (!budget.spend(R->size())) {
      *oom = true;
      return false;
    }
    const std::uint32_t ae2 = R->mul(a, R->mul(e, e));
    for (std::uint32_t f = 0; f < R->size(); ++f)
      if (U.is_unit[R->sub(ae2, R->mul(c, R->mul(f, f)))]) return true;
  }
  return false;
}

}  // namespace thm

// ---------------------------------------------------------------------------
// Per-theorem drivers.

TheoremCase verify_theorem(const std::string& id, const CorpusEntry& entry,
                           std::uint64_t budget_ticks, std::uint64_t seed = 0);

struct SweepReport {
  std::vector<std::string> corpus;
  std::vector<std::string> theorems;
  std::vector<TheoremCase> cases;
  std::size_t verified = 0, counterexamples = 0, unknown = 0, inapplicable = 0;
  Json to_json() const;
};

SweepReport sweep(const std::vector<CorpusEntry>& corpus,
                  const std::vector<std::string>& ids, int threads,
                  std::uint64_t budget_ticks, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Flag-expression hunts.

struct HuntResult {
  bool found = false;
  std::string ring_spec;
  Json evidence = Json::object();
  std::vector<std::string> skipped_unknown;
};

HuntResult hunt(const std::string& expr, const std::vector<CorpusEntry>& corpus,
                std::uint64_t budget_ticks);

}  // namespace edrlab

#include "edrlab/detail/theorems_impl.hpp"
