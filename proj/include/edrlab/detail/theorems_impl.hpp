#pragma once

// Drivers for the individual theorem cases, the sweep, and the hunt
// expression language.

namespace edrlab {

namespace thm {

inline TheoremCase make_case(const std::string& id, const std::string& spec) {
  TheoremCase c;
  c.theorem = id;
  c.ring_spec = spec;
  return c;
}

inline Verdict combine_equivalence(const std::vector<Tri>& vals) {
  bool any_unknown = false;
  for (Tri t : vals) any_unknown = any_unknown || t == Tri::Unknown;
  if (any_unknown) return Verdict::Unknown;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] != vals[0]) return Verdict::Counterexample;
  return Verdict::Verified;
}

inline Verdict implication(Tri hyp, Tri concl, TheoremCase& c, const char* hyp_name) {
  if (hyp == Tri::Unknown || (is_true(hyp) && concl == Tri::Unknown))
    return Verdict::Unknown;
  if (is_false(hyp)) {
    c.evidence["failed_hypothesis"] = hyp_name;
    return Verdict::Inapplicable;
  }
  return is_true(concl) ? Verdict::Verified : Verdict::Counterexample;
}

// ---- TH1: the Hermite-ring equivalences (1)-(6) ---------------------------

inline TheoremCase run_th1(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("TH1", spec);
  Budget b(ticks);
  Tri hermite = eval_flag(R, Flag::Hermite, b).val;
  if (!is_true(hermite)) {
    c.verdict = hermite == Tri::Unknown ? Verdict::Unknown : Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "Hermite";
    return c;
  }
  Budget b1(ticks), b2(ticks), b3(ticks), b4(ticks), b5(ticks), b6(ticks);
  Tri s1 = eval_flag(R, Flag::Edr, b1).val;
  Tri s2 = eval_flag(R, Flag::Se2, b2).val;
  Tri s3 = eval_flag(R, Flag::E2, b3).val;
  Tri s4 = thm::all_quotients_pi2(R, false, b4).val;
  Tri s5 = tri_and(all_um2_prop(R, PropKind::DetLiftable, b5).val,
                   eval_flag(R, Flag::Pi2, b5).val);
  Tri hyp6 = zero_det_all_nonfull(R, b6).val;
  Tri s6 = all_um2_prop(R, PropKind::WeaklyDetLiftable, b6).val;
  c.evidence["s1_edr"] = tri_json(s1);
  c.evidence["s2_se2"] = tri_json(s2);
  c.evidence["s3_e2"] = tri_json(s3);
  c.evidence["s4_quotients_pi2"] = tri_json(s4);
  c.evidence["s5_dl_and_pi2"] = tri_json(s5);
  c.evidence["s6_wdl"] = tri_json(s6);
  c.evidence["zero_det_all_nonfull"] = tri_json(hyp6);
  std::vector<Tri> vals = {s1, s2, s3, s4, s5};
  if (is_true(hyp6)) vals.push_back(s6);
  if (hyp6 == Tri::Unknown) vals.push_back(Tri::Unknown);
  c.verdict = combine_equivalence(vals);
  return c;
}

// ---- TH2 conditions: each implies U_2 --------------------------------------

inline TheoremCase run_th2(int cond, const Ring& R, std::uint64_t ticks,
                           const std::string& spec) {
  TheoremCase c = make_case("TH2-cond" + std::to_string(cond), spec);
  Budget bh(ticks), bc(ticks);
  Tri hyp = Tri::Unknown;
  const char* hyp_name = "";
  if (cond == 1) {
    hyp_name = "pre-Schreier and solvable weak-liftability equation on Um(R^3)";
    Tri ps = eval_flag(R, Flag::PreSchreier, bh).val;
    hyp = is_false(ps) ? Tri::False : tri_and(ps, thm::um3_wdl_equation(R, bh).val);
  } else if (cond == 2) {
    hyp_name = "Pi2 and upper-triangular unimodular all simply extendable";
    Tri pi2 = eval_flag(R, Flag::Pi2, bh).val;
    hyp = is_false(pi2)
              ? Tri::False
              : tri_and(pi2, upper_tri_um2_prop(R, PropKind::SimplyExtendable, bh).val);
  } else {
    hyp_name = "upper-triangular unimodular all extendable and integral domain";
    bool domain = zero_divisors(R).size() <= 1;  // finite domain
    hyp = !domain ? Tri::False
                  : upper_tri_um2_prop(R, PropKind::Extendable, bh).val;
  }
  Tri u2 = is_true(hyp) ? eval_flag(R, Flag::U2, bc).val : Tri::Unknown;
  c.evidence["hypothesis"] = tri_json(hyp);
  if (is_true(hyp)) c.evidence["u2"] = tri_json(u2);
  c.verdict = implication(hyp, u2, c, hyp_name);
  return c;
}

// ---- TH3: EDR <=> reduced pre-Schreier + WDL <=> U2 <=> factorization ------

inline TheoremCase run_th3(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("TH3", spec);
  Budget b(ticks);
  Tri hermite = eval_flag(R, Flag::Hermite, b).val;
  if (!is_true(hermite)) {
    c.verdict = hermite == Tri::Unknown ? Verdict::Unknown : Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "Hermite";
    return c;
  }
  Budget b1(ticks), b2(ticks), b3(ticks), b4(ticks);
  Tri s1 = eval_flag(R, Flag::Edr, b1).val;
  Tri s2 = tri_and(thm::reduced_pre_schreier(R, b2).val,
                   all_um2_prop(R, PropKind::WeaklyDetLiftable, b2).val);
  Tri s3 = eval_flag(R, Flag::U2, b3).val;
  Th3Result fr = th3_factor_check_cached(R, b4);
  c.evidence["s1_edr"] = tri_json(s1);
  c.evidence["s2_reduced_preschreier_and_wdl"] = tri_json(s2);
  c.evidence["s3_u2"] = tri_json(s3);
  c.evidence["s4_factorization"] = tri_json(fr.stmt4);
  c.evidence["s5_factorization_variant"] = tri_json(fr.stmt5);
  c.verdict = combine_equivalence({s1, s2, s3, fr.stmt4, fr.stmt5});
  return c;
}

// ---- TH4: reduced Hermite: EDR <=> (all R/Ann(a) Pi2 and WDL) ---------------

inline TheoremCase run_th4(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("TH4", spec);
  Budget b(ticks);
  Tri hermite = eval_flag(R, Flag::Hermite, b).val;
  bool reduced = is_reduced(R);
  if (!is_true(hermite) || !reduced) {
    c.verdict = hermite == Tri::Unknown ? Verdict::Unknown : Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = !reduced ? "N(R) = 0" : "Hermite";
    return c;
  }
  Budget b1(ticks), b2(ticks);
  Tri lhs = eval_flag(R, Flag::Edr, b1).val;
  Tri rhs = tri_and(thm::all_quotients_pi2(R, true, b2).val,
                    all_um2_prop(R, PropKind::WeaklyDetLiftable, b2).val);
  c.evidence["edr"] = tri_json(lhs);
  c.evidence["ann_quotients_pi2_and_wdl"] = tri_json(rhs);
  c.verdict = combine_equivalence({lhs, rhs});
  return c;
}

// ---- TH5: (WSU)_2 rings -----------------------------------------------------

inline TheoremCase run_th5(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("TH5", spec);
  Budget bh(ticks);
  Tri wsu2 = eval_flag(R, Flag::Wsu2, bh).val;
  if (!is_true(wsu2)) {
    c.verdict = wsu2 == Tri::Unknown ? Verdict::Unknown : Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "(WSU)_2";
    return c;
  }
  Budget b1(ticks), b2(ticks), b3(ticks);
  Tri part1 = thm::coker_universal(R, b1).val;
  c.evidence["part1_coker_boolean"] = tri_json(part1);
  std::vector<Tri> checks = {part1};
  bool squares = square_surjective(R);
  c.evidence["squares_hypothesis"] = squares;
  if (squares) {
    Tri u2 = eval_flag(R, Flag::U2, b2).val;
    c.evidence["part3_u2"] = tri_json(u2);
    checks.push_back(u2);
    Tri hermite = eval_flag(R, Flag::Hermite, b3).val;
    if (is_true(hermite)) {
      Tri edr = eval_flag(R, Flag::Edr, b3).val;
      c.evidence["part3_edr"] = tri_json(edr);
      checks.push_back(edr);
    }
  }
  bool unknown = false, violated = false;
  for (Tri t : checks) {
    unknown = unknown || t == Tri::Unknown;
    violated = violated || is_false(t);
  }
  c.verdict = violated ? Verdict::Counterexample
                       : (unknown ? Verdict::Unknown : Verdict::Verified);
  return c;
}

// ---- CR1: Pell criterion for symmetric zero-determinant matrices -----------

inline TheoremCase run_cr1(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("CR1", spec);
  Budget b(ticks);
  auto cands = thm::symmetric_zero_det_um(R);
  const bool exhaustive = R->size() <= 9;
  const std::size_t limit = exhaustive ? cands.size() : std::min<std::size_t>(cands.size(), 200);
  const bool char2 = R->characteristic() == 2;
  std::size_t forward_checked = 0, converse_checked = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    auto [a, bb, cc] = cands[i];
    bool oom = false;
    bool pell = thm::cr1_pell_solvable(R, a, cc, b, &oom);
    if (oom) {
      c.verdict = Verdict::Unknown;
      c.evidence["note"] = "budget";
      return c;
    }
    FMat A(R, 2, 2);
    A.a = {a, bb, bb, cc};
    Tri se = lift::search_simply_extendable(A, b);
    if (se == Tri::Unknown) {
      c.verdict = Verdict::Unknown;
      c.evidence["note"] = "budget";
      return c;
    }
    if (pell && !is_true(se)) {
      c.verdict = Verdict::Counterexample;
      c.evidence["forward_fails_at"] = A.str();
      return c;
    }
    ++forward_checked;
    if (char2) {
      if (is_true(se) && !pell) {
        c.verdict = Verdict::Counterexample;
        c.evidence["converse_fails_at"] = A.str();
        return c;
      }
      ++converse_checked;
    }
  }
  c.evidence["matrices"] = cands.size();
  c.evidence["forward_checked"] = forward_checked;
  c.evidence["converse_checked"] = converse_checked;
  c.evidence["exhaustive"] = exhaustive;
  c.verdict = Verdict::Verified;
  return c;
}

// ---- CR2: (SU)_2 rings: Pell condition => EDR (iff in char 2) ---------------

inline TheoremCase run_cr2(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("CR2", spec);
  Budget bh(ticks);
  Tri hermite = eval_flag(R, Flag::Hermite, bh).val;
  Tri wsu2 = is_true(hermite) ? eval_flag(R, Flag::Wsu2, bh).val : Tri::False;
  Tri su2 = tri_and(hermite, wsu2);
  if (!is_true(su2)) {
    c.verdict = su2 == Tri::Unknown ? Verdict::Unknown : Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "(SU)_2 = Hermite + (WSU)_2";
    return c;
  }
  Budget b1(ticks), b2(ticks);
  Tri cond = thm::cr2_condition(R, b1).val;
  Tri edr = eval_flag(R, Flag::Edr, b2).val;
  c.evidence["pell_condition"] = tri_json(cond);
  c.evidence["edr"] = tri_json(edr);
  if (cond == Tri::Unknown || edr == Tri::Unknown) {
    c.verdict = Verdict::Unknown;
    return c;
  }
  bool forward_ok = !(is_true(cond) && is_false(edr));
  bool converse_ok = R->characteristic() != 2 || !(is_true(edr) && is_false(cond));
  c.verdict = (forward_ok && converse_ok) ? Verdict::Verified : Verdict::Counterexample;
  return c;
}

// ---- CR3 shortcuts over bounded Z -------------------------------------------

inline TheoremCase run_cr3_shortcuts(const IntProfile& prof, std::uint64_t,
                                     const std::string& spec, std::uint64_t seed) {
  TheoremCase c = make_case("CR3-shortcuts", spec);
  const long long H = prof.height;
  Rng rng(0xc3 ^ seed);
  std::size_t found = 0, unknown = 0, via_shortcut = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    long long a = rng.range(-25, 25), b = rng.range(-25, 25), s = rng.range(-25, 25);
    // cr3_witness itself rechecks the full predicate behind every shortcut
    // and throws on violation
    Cr3Witness w = cr3_witness(a, b, s, H);
    if (w.found == Tri::True) {
      ++found;
      if (w.route.rfind("shortcut", 0) == 0) ++via_shortcut;
      if (!cr3_predicate(Zint(a), Zint(b), Zint(s), w.e, w.f)) {
        c.verdict = Verdict::Counterexample;
        c.evidence["triple"] = {a, b, s};
        return c;
      }
    } else {
      ++unknown;
    }
  }
  c.evidence["trials"] = trials;
  c.evidence["found"] = found;
  c.evidence["via_shortcut"] = via_shortcut;
  c.evidence["unknown"] = unknown;
  c.verdict = unknown == 0 ? Verdict::Verified : Verdict::Unknown;
  return c;
}

// ---- P1: companion transfer --------------------------------------------------

inline TheoremCase run_p1(const Ring& R, std::uint64_t ticks, const std::string& spec,
                          std::uint64_t seed) {
  TheoremCase c = make_case("P1", spec);
  if (R->size() > 8) {
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "companion enumeration restricted to |R| <= 8";
    return c;
  }
  const bool reduced = is_reduced(R);
  Budget b(ticks);
  // deterministic sample of unimodular matrices
  std::vector<FMat> sample;
  {
    const auto& masks = maximal_ideal_masks(R);
    Rng rng(detail::fnv1a(spec) ^ seed);
    while (sample.size() < 12) {
      FMat A(R, 2, 2);
      for (auto& x : A.a) x = static_cast<std::uint32_t>(rng.below(R->size()));
      if (is_unimodular_span(masks, A.a.data(), 4)) sample.push_back(A);
    }
  }
  std::size_t transfers = 0;
  for (const FMat& A : sample) {
    std::vector<Companion> comps;
    try {
      comps = companion_test_matrices(A, b);
    } catch (const Error& e) {
      if (e.kind == Error::Kind::Budget) {
        c.verdict = Verdict::Unknown;
        c.evidence["note"] = "companion budget";
        return c;
      }
      throw;
    }
    std::size_t take = std::min<std::size_t>(comps.size(), 40);
    for (std::size_t i = 0; i < take; ++i) {
      const FMat& B = comps[i].mat;
      for (PropKind p : {PropKind::SimplyExtendable, PropKind::Extendable,
                         PropKind::DetLiftable, PropKind::WeaklyDetLiftable}) {
        if (p == PropKind::WeaklyDetLiftable && !reduced) continue;
        Tri pb = eval_prop(B, p, b);
        if (!is_true(pb)) continue;
        Tri pa = eval_prop(A, p, b);
        if (pa == Tri::Unknown) {
          c.verdict = Verdict::Unknown;
          return c;
        }
        ++transfers;
        if (is_false(pa)) {
          c.verdict = Verdict::Counterexample;
          c.evidence["matrix"] = A.str();
          c.evidence["companion"] = B.str();
          c.evidence["property"] = prop_name(p);
          return c;
        }
      }
    }
  }
  c.evidence["transfers_checked"] = transfers;
  c.verdict = Verdict::Verified;
  return c;
}

// ---- P2: universal-matrix scan equals brute force ----------------------------

inline TheoremCase run_p2(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("P2", spec);
  const bool reduced = is_reduced(R);
  auto factors = split_factors(R);
  std::vector<Ring> targets =
      (factors.size() > 1 && R->size() > kDirectCap) ? factors : std::vector<Ring>{R};
  for (PropKind p : {PropKind::SimplyExtendable, PropKind::Extendable,
                     PropKind::DetLiftable, PropKind::WeaklyDetLiftable}) {
    if (p == PropKind::WeaklyDetLiftable && !reduced) continue;
    for (const Ring& T : targets) {
      Budget b(ticks);
      Prop2Scan s = prop2_scan(T, p, b);  // throws Logic on disagreement
      if (s.via_G == Tri::Unknown || s.via_brute == Tri::Unknown) {
        c.verdict = Verdict::Unknown;
        c.evidence["note"] = "budget";
        return c;
      }
      c.evidence[std::string(prop_name(p))] = tri_json(s.via_G);
    }
  }
  c.verdict = Verdict::Verified;
  return c;
}

// ---- L1: the SL_2 matrix between diag(d,0) and diag(e,0) ---------------------

inline TheoremCase run_l1(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("L1", spec);
  Budget b(ticks);
  std::size_t pairs = 0;
  for (std::uint32_t d = 0; d < R->size(); ++d)
    for (std::uint32_t e = 0; e < R->size(); ++e) {
      if (!b.spend()) {
        c.verdict = Verdict::Unknown;
        return c;
      }
      if (principal_ideal_cached(R, d).elems != principal_ideal_cached(R, e).elems)
        continue;
      lemma1_matrix(R, d, e);  // throws Logic if SL_2 or the identity fails
      ++pairs;
    }
  c.evidence["pairs_checked"] = pairs;
  c.verdict = Verdict::Verified;
  return c;
}

// ---- L2: e Um(M_2) diagonal reduction <=> R/Ann(e) Pi2 -----------------------

inline TheoremCase run_l2(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("L2", spec);
  if (!is_reduced(R)) {
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "N(R) = 0";
    return c;
  }
  if (R->size() > 12) {
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "lift-surjectivity scan restricted to |R| <= 12";
    return c;
  }
  Budget b(ticks);
  const auto& masks = maximal_ideal_masks(R);
  std::size_t checked = 0;
  for (std::uint32_t e = 0; e < R->size(); ++e) {
    IdealSet ann = annihilator(R, e);
    QuotientResult q = quotient_by_ideal(R, ann, "Ann(" + R->elem_str(e) + ")");
    // hypothesis: Um(R^m) -> Um(Q^m) surjective for m in {2,4}
    bool surj = true;
    for (std::uint32_t m : {2u, 4u}) {
      std::vector<std::uint32_t> tup(m, 0);
      std::function<bool(std::uint32_t)> rec = [&](std::uint32_t pos) -> bool {
        if (pos == m) {
          if (!is_unimodular_span(maximal_ideal_masks(q.ring), tup.data(), m)) return true;
          // search a unimodular lift coordinatewise
          const auto* qr = dynamic_cast<const QuotientRing*>(q.ring.get());
          std::vector<std::uint32_t> lift(m);
          std::function<bool(std::uint32_t)> pick = [&](std::uint32_t i) -> bool {
            if (i == m) return is_unimodular_span(masks, lift.data(), m);
            for (std::uint32_t add : ann.elems) {
              lift[i] = R->add(qr->lift(tup[i]), add);
              if (pick(i + 1)) return true;
            }
            return false;
          };
          return pick(0);
        }
        for (std::uint32_t v = 0; v < q.ring->size(); ++v) {
          tup[pos] = v;
          if (!rec(pos + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) {
        surj = false;
        break;
      }
    }
    if (!surj) continue;
    // left side: all zero-determinant matrices in e*Um(M_2) reduce
    Tri left = Tri::True;
    {
      const std::uint32_t n = R->size();
      std::vector<char> seen(static_cast<std::size_t>(n) * n * n * n, 0);
      FMat A(R, 2, 2);
      for (std::uint32_t a0 = 0; a0 < n && is_true(left); ++a0)
        for (std::uint32_t a1 = 0; a1 < n && is_true(left); ++a1)
          for (std::uint32_t a2 = 0; a2 < n && is_true(left); ++a2)
            for (std::uint32_t a3 = 0; a3 < n; ++a3) {
              A.a = {a0, a1, a2, a3};
              if (!is_unimodular_span(masks, A.a.data(), 4)) continue;
              FMat B(R, 2, 2);
              for (int i = 0; i < 4; ++i) B.a[i] = R->mul(e, A.a[i]);
              if (det2(B) != R->zero()) continue;
              std::size_t code = ((static_cast<std::size_t>(B.a[0]) * n + B.a[1]) * n +
                                  B.a[2]) * n + B.a[3];
              if (seen[code]) continue;
              seen[code] = 1;
              auto dr = lift::admits_diagonal_reduction(B, b);
              if (dr.val == Tri::Unknown) {
                c.verdict = Verdict::Unknown;
                return c;
              }
              if (is_false(dr.val)) {
                left = Tri::False;
                break;
              }
            }
    }
    Tri right = eval_flag(q.ring, Flag::Pi2, b).val;
    if (right == Tri::Unknown) {
      c.verdict = Verdict::Unknown;
      return c;
    }
    if (left != right) {
      c.verdict = Verdict::Counterexample;
      c.evidence["element"] = R->elem_str(e);
      c.evidence["diag_side"] = tri_json(left);
      c.evidence["pi2_side"] = tri_json(right);
      return c;
    }
    ++checked;
  }
  c.evidence["elements_checked"] = checked;
  c.verdict = Verdict::Verified;
  return c;
}

// ---- EX3 / EX4 / EX5 / EX10 ---------------------------------------------------

inline TheoremCase run_ex3(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("EX3", spec);
  Budget bh(ticks), bc(ticks);
  Tri asr1 = eval_flag(R, Flag::Asr1, bh).val;
  Tri u2 = is_true(asr1) ? eval_flag(R, Flag::U2, bc).val : Tri::Unknown;
  c.evidence["asr1"] = tri_json(asr1);
  if (is_true(asr1)) c.evidence["u2"] = tri_json(u2);
  c.verdict = implication(asr1, u2, c, "asr(R) = 1");
  return c;
}

inline TheoremCase run_ex4(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("EX4", spec);
  Budget bh(ticks), bc(ticks);
  Tri hyp = zero_det_all_nonfull(R, bh).val;
  Tri ps = is_true(hyp) ? eval_flag(R, Flag::PreSchreier, bc).val : Tri::Unknown;
  c.evidence["zero_det_all_nonfull"] = tri_json(hyp);
  if (is_true(hyp)) c.evidence["pre_schreier"] = tri_json(ps);
  c.verdict = implication(hyp, ps, c, "all zero-determinant 2x2 non-full");
  return c;
}

inline TheoremCase run_ex5(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("EX5", spec);
  if (!is_reduced(R)) {
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "N(R) = 0";
    return c;
  }
  Budget b(ticks);
  FlagResult r = thm::diagred_implies_nonfull(R, b);
  c.evidence["implication"] = tri_json(r.val);
  if (!r.note.empty()) c.evidence["note"] = r.note;
  c.verdict = r.val == Tri::True
                  ? Verdict::Verified
                  : (r.val == Tri::False ? Verdict::Counterexample : Verdict::Unknown);
  return c;
}

inline TheoremCase run_ex10(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("EX10", spec);
  Budget b(ticks);
  FlagResult r = thm::ex10_all(R, b);
  if (!r.note.empty()) c.evidence["note"] = r.note;
  c.verdict = r.val == Tri::True
                  ? Verdict::Verified
                  : (r.val == Tri::False ? Verdict::Counterexample : Verdict::Unknown);
  return c;
}

// ---- C6: the symmetrization equation over Bezout domains ---------------------

inline TheoremCase run_c6(const Ring& R, std::uint64_t ticks, const std::string& spec) {
  TheoremCase c = make_case("C6-sym-equation", spec);
  // finite Bezout domain = finite field
  if (!is_field(R) || R->size() > 9) {
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] =
        !is_field(R) ? "Bezout domain (finite: field)" : "field scan capped at |R| <= 9";
    return c;
  }
  Budget b(ticks);
  const auto& masks = maximal_ideal_masks(R);
  const auto& U = R->units();
  const auto& dv = R->div();
  for (int strict = 0; strict <= 1; ++strict) {
    // left side: the (WSU)_2 / (WSU')_2 flag
    Budget bl(ticks);
    Tri lhs = eval_flag(R, strict ? Flag::Wsu2Prime : Flag::Wsu2, bl).val;
    // right side: the equation quantifier
    Tri rhs = Tri::True;
    for (std::uint32_t a = 0; a < R->size() && is_true(rhs); ++a)
      for (std::uint32_t bb = 0; bb < R->size() && is_true(rhs); ++bb) {
        std::uint32_t pab[2] = {a, bb};
        if (!is_unimodular_span(masks, pab, 2)) continue;
        // first (a', b') with a a' + b b' = 1
        std::uint32_t ap = 0, bp = 0;
        bool have = false;
        for (std::uint32_t x = 0; x < R->size() && !have; ++x) {
          std::uint32_t rest = R->sub(R->one(), R->mul(a, x));
          std::uint32_t y = dv.first(bb, rest);
          if (y != UnitGroup::npos) {
            ap = x;
            bp = y;
            have = true;
          }
        }
        for (std::uint32_t cc = 0; cc < R->size() && is_true(rhs); ++cc)
          for (std::uint32_t u = 0; u < R->size(); ++u) {
            std::uint32_t pcu[2] = {cc, u};
            if (!is_unimodular_span(masks, pcu, 2)) continue;
            if (R->mul(R->mul(a, bb), cc) == R->zero()) continue;  // abc != 0 only
            bool found = false;
            for (std::uint32_t s = 0; s < R->size() && !found; ++s) {
              if (!b.spend(R->size() * R->size())) {
                c.verdict = Verdict::Unknown;
                return c;
              }
              const std::uint32_t us = R->mul(u, s);
              for (std::uint32_t l = 0; l < R->size() && !found; ++l) {
                const std::uint32_t t1 = R->sub(R->mul(ap, us), R->mul(bb, l));
                const std::uint32_t t2 = R->add(R->mul(bp, us), R->mul(a, l));
                const std::uint32_t prod = R->mul(t1, t2);
                for (std::uint32_t w = 0; w < R->size(); ++w) {
                  std::uint32_t val = R->add(R->mul(R->mul(cc, s), w), prod);
                  if (strict ? (val == R->one()) : (U.is_unit[val] != 0)) {
                    found = true;
                    break;
                  }
                }
              }
            }
            if (!found) rhs = Tri::False;
            if (!found) break;
          }
      }
    c.evidence[strict ? "strict_lhs" : "lhs"] = tri_json(lhs);
    c.evidence[strict ? "strict_rhs" : "rhs"] = tri_json(rhs);
    if (lhs == Tri::Unknown) {
      c.verdict = Verdict::Unknown;
      return c;
    }
    if (lhs != rhs) {
      c.verdict = Verdict::Counterexample;
      return c;
    }
  }
  c.verdict = Verdict::Verified;
  return c;
}

}  // namespace thm

// th3_factor_check with per-ring caching and product splitting.
inline Th3Result th3_factor_check_cached(const Ring& R, Budget& budget) {
  Th3Result out;
  auto c4 = R->cached_flag("th3_s4");
  auto c5 = R->cached_flag("th3_s5");
  if (c4 && c5) {
    out.stmt4 = *c4;
    out.stmt5 = *c5;
    return out;
  }
  auto factors = split_factors(R);
  if (factors.size() > 1 && R->size() > kDirectCap) {
    out.stmt4 = Tri::True;
    out.stmt5 = Tri::True;
    for (const auto& Fi : factors) {
      Th3Result r = th3_factor_check_cached(Fi, budget);
      out.stmt4 = tri_and(out.stmt4, r.stmt4);
      out.stmt5 = tri_and(out.stmt5, r.stmt5);
    }
  } else {
    out = th3_factor_check(R, budget);
  }
  R->cache_flag("th3_s4", out.stmt4);
  R->cache_flag("th3_s5", out.stmt5);
  return out;
}

inline TheoremCase verify_theorem(const std::string& id, const CorpusEntry& entry,
                                  std::uint64_t budget_ticks, std::uint64_t seed) {
  using namespace thm;
  if (!entry.ring) {
    // bounded-Z profile entry
    if (id == "CR3-shortcuts")
      return run_cr3_shortcuts(*entry.zprof, budget_ticks, entry.spec, seed);
    TheoremCase c = make_case(id, entry.spec);
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "finite ring required";
    return c;
  }
  const Ring& R = entry.ring;
  if (id == "TH1") return run_th1(R, budget_ticks, entry.spec);
  if (id == "TH2-cond1") return run_th2(1, R, budget_ticks, entry.spec);
  if (id == "TH2-cond2") return run_th2(2, R, budget_ticks, entry.spec);
  if (id == "TH2-cond3") return run_th2(3, R, budget_ticks, entry.spec);
  if (id == "TH3") return run_th3(R, budget_ticks, entry.spec);
  if (id == "TH4") return run_th4(R, budget_ticks, entry.spec);
  if (id == "TH5") return run_th5(R, budget_ticks, entry.spec);
  if (id == "CR1") return run_cr1(R, budget_ticks, entry.spec);
  if (id == "CR2") return run_cr2(R, budget_ticks, entry.spec);
  if (id == "CR3-shortcuts") {
    TheoremCase c = make_case(id, entry.spec);
    c.verdict = Verdict::Inapplicable;
    c.evidence["failed_hypothesis"] = "bounded-Z profile required";
    return c;
  }
  if (id == "P1") return run_p1(R, budget_ticks, entry.spec, seed);
  if (id == "P2") return run_p2(R, budget_ticks, entry.spec);
  if (id == "L1") return run_l1(R, budget_ticks, entry.spec);
  if (id == "L2") return run_l2(R, budget_ticks, entry.spec);
  if (id == "EX3") return run_ex3(R, budget_ticks, entry.spec);
  if (id == "EX4") return run_ex4(R, budget_ticks, entry.spec);
  if (id == "EX5") return run_ex5(R, budget_ticks, entry.spec);
  if (id == "EX10") return run_ex10(R, budget_ticks, entry.spec);
  if (id == "C6-sym-equation") return run_c6(R, budget_ticks, entry.spec);
  fail(Error::Kind::Parse, "unknown theorem id: " + id);
}

inline Json SweepReport::to_json() const {
  Json j;
  j["schema"] = "edrlab.verdicts.v1";
  j["corpus"] = corpus;
  j["theorems"] = theorems;
  Json arr = Json::array();
  for (const auto& c : cases) {
    Json jc;
    jc["theorem"] = c.theorem;
    jc["ring"] = c.ring_spec;
    jc["verdict"] = verdict_str(c.verdict);
    jc["evidence"] = c.evidence;
    arr.push_back(std::move(jc));
  }
  j["cases"] = std::move(arr);
  j["summary"] = {{"verified", verified},
                  {"counterexamples", counterexamples},
                  {"unknown", unknown},
                  {"inapplicable", inapplicable}};
  return j;
}

inline SweepReport sweep(const std::vector<CorpusEntry>& corpus,
                         const std::vector<std::string>& ids, int threads,
                         std::uint64_t budget_ticks, std::uint64_t seed) {
  SweepReport rep;
  for (const auto& e : corpus) rep.corpus.push_back(e.spec);
  rep.theorems = ids;
  const std::size_t total = corpus.size() * ids.size();
  rep.cases = parallel_map_ordered<TheoremCase>(total, threads, [&](std::size_t k) {
    const CorpusEntry& e = corpus[k / ids.size()];
    const std::string& id = ids[k % ids.size()];
    return verify_theorem(id, e, budget_ticks, seed);
  });
  for (const auto& c : rep.cases) {
    switch (c.verdict) {
      case Verdict::Verified: ++rep.verified; break;
      case Verdict::Counterexample: ++rep.counterexamples; break;
      case Verdict::Unknown: ++rep.unknown; break;
      case Verdict::Inapplicable: ++rep.inapplicable; break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hunt expression language: identifiers, !, &&, ||, parentheses.

namespace thm {

struct ExprParser {
  std::string s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t b = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (b == i) fail(Error::Kind::Parse, "expected flag name in predicate");
    return s.substr(b, i - b);
  }

  // grammar: or := and ('||' and)* ; and := not ('&&' not)* ;
  //          not := '!' not | '(' or ')' | ident
  template <class Lookup>
  Tri parse_or(const Lookup& look) {
    Tri v = parse_and(look);
    for (;;) {
      if (eat("||") || eat("or ")) {
        Tri w = parse_and(look);
        if (is_true(v) || is_true(w))
          v = Tri::True;
        else if (v == Tri::Unknown || w == Tri::Unknown)
          v = Tri::Unknown;
        else
          v = Tri::False;
      } else {
        return v;
      }
    }
  }
  template <class Lookup>
  Tri parse_and(const Lookup& look) {
    Tri v = parse_not(look);
    for (;;) {
      if (eat("&&") || eat("and ")) {
        Tri w = parse_not(look);
        v = tri_and(v, w);
      } else {
        return v;
      }
    }
  }
  template <class Lookup>
  Tri parse_not(const Lookup& look) {
    skip();
    if (eat("!") || eat("not ")) {
      Tri v = parse_not(look);
      if (v == Tri::Unknown) return v;
      return is_true(v) ? Tri::False : Tri::True;
    }
    if (eat("(")) {
      Tri v = parse_or(look);
      if (!eat(")")) fail(Error::Kind::Parse, "missing ')' in predicate");
      return v;
    }
    return look(ident());
  }
};

}  // namespace thm

inline HuntResult hunt(const std::string& expr, const std::vector<CorpusEntry>& corpus,
                       std::uint64_t budget_ticks) {
  HuntResult out;
  for (const auto& e : corpus) {
    if (!e.ring) continue;
    const Ring& R = e.ring;
    bool unknown_seen = false;
    Json values = Json::object();
    auto look = [&](const std::string& name) -> Tri {
      for (auto& [f, s] : flag_names())
        if (s == name) {
          Budget b(budget_ticks);
          Tri v = eval_flag(R, f, b).val;
          values[name] = tri_str(v);
          if (v == Tri::Unknown) unknown_seen = true;
          return v;
        }
      Budget b(budget_ticks);
      Tri v = Tri::Unknown;
      if (name == "reduced") v = tri_of(is_reduced(R));
      else if (name == "local") v = tri_of(local_info(R).local);
      else if (name == "field") v = tri_of(is_field(R));
      else if (name == "char2") v = tri_of(R->characteristic() == 2);
      else if (name == "product") v = tri_of(R->kind() == RingKind::Product);
      else if (name == "square_surjective") v = tri_of(square_surjective(R));
      else if (name == "all_zero_det_nonfull") v = zero_det_all_nonfull(R, b).val;
      else if (name == "all_zero_det_um_nonfull") {
        // every zero-determinant unimodular 2x2 non-full
        const std::uint32_t n = R->size();
        const auto& masks = maximal_ideal_masks(R);
        v = Tri::True;
        FMat A(R, 2, 2);
        for (std::uint32_t a = 0; a < n && is_true(v); ++a)
          for (std::uint32_t bb = 0; bb < n && is_true(v); ++bb)
            for (std::uint32_t cc = 0; cc < n && is_true(v); ++cc)
              for (std::uint32_t d = 0; d < n; ++d) {
                A.a = {a, bb, cc, d};
                if (!is_unimodular_span(masks, A.a.data(), 4)) continue;
                if (det2(A) != R->zero()) continue;
                auto nf = lift::search_non_full(A, b);
                if (nf.val == Tri::Unknown) {
                  v = Tri::Unknown;
                  break;
                }
                if (is_false(nf.val)) {
                  v = Tri::False;
                  break;
                }
              }
      } else {
        fail(Error::Kind::Parse, "unknown flag '" + name + "' in predicate");
      }
      values[name] = tri_str(v);
      if (v == Tri::Unknown) unknown_seen = true;
      return v;
    };
    thm::ExprParser p;
    p.s = expr;
    Tri v = p.parse_or(look);
    p.skip();
    if (p.i != p.s.size()) fail(Error::Kind::Parse, "trailing input in predicate");
    if (is_true(v)) {
      out.found = true;
      out.ring_spec = e.spec;
      out.evidence = values;
      return out;
    }
    if (unknown_seen || v == Tri::Unknown) out.skipped_unknown.push_back(e.spec);
  }
  return out;
}

}  // namespace edrlab
