// Acceptance suite: runs every criterion at its stated size and tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.
//
// Usage: acceptance [path-to-edrlab-cli]
// The CLI path (argv[1]) is only needed by the byte-determinism criterion,
// which reruns the full default sweep in fresh processes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "edrlab/report.hpp"
#include "edrlab/theorems.hpp"
#include "oracles.hpp"

using namespace edrlab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<CorpusEntry> finite_corpus() {
  static std::vector<CorpusEntry> corpus = [] {
    auto all = default_corpus();
    std::vector<CorpusEntry> fin;
    for (auto& e : all)
      if (e.ring) fin.push_back(e);
    return fin;
  }();
  return corpus;
}

// ---- criterion 1: the diagram implications --------------------------------

void criterion1() {
  auto t0 = Clock::now();
  std::uint64_t checked = 0, violations = 0, unknowns = 0;
  for (const auto& e : finite_corpus()) {
    const Ring& R = e.ring;
    const auto& masks = maximal_ideal_masks(R);
    auto check_one = [&](const FMat& A) {
      Budget b(1ull << 30);
      Tri se = lift::search_simply_extendable(A, b);
      Tri ex = lift::search_extendable(A, b);
      Tri dl = lift::search_det_liftable(A, b, false);
      Tri wdl = lift::search_det_liftable(A, b, true);
      if (!is_known(se) || !is_known(ex) || !is_known(dl) || !is_known(wdl)) {
        ++unknowns;
        return;
      }
      ++checked;
      bool ok = (!is_true(se) || (is_true(ex) && is_true(dl))) &&
                (!is_true(ex) || is_true(wdl)) && (!is_true(dl) || is_true(wdl));
      if (!ok) ++violations;
    };
    if (R->size() <= 8) {
      FMat A(R, 2, 2);
      for (std::uint32_t a = 0; a < R->size(); ++a)
        for (std::uint32_t b = 0; b < R->size(); ++b)
          for (std::uint32_t c = 0; c < R->size(); ++c)
            for (std::uint32_t d = 0; d < R->size(); ++d) {
              A.a = {a, b, c, d};
              if (!is_unimodular_span(masks, A.a.data(), 4)) continue;
              check_one(A);
            }
    } else {
      Rng rng(detail::fnv1a(e.spec));
      FMat A(R, 2, 2);
      int samples = 0;
      while (samples < 1000) {
        for (auto& x : A.a) x = static_cast<std::uint32_t>(rng.below(R->size()));
        if (!is_unimodular_span(masks, A.a.data(), 4)) continue;
        ++samples;
        check_one(A);
      }
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << checked << " matrices over " << finite_corpus().size() << " rings, " << violations
    << " violations, " << unknowns << " unknown, " << secs << "s";
  report(1, "diagram implications (exhaustive |R|<=8, 1000 samples above)",
         violations == 0 && unknowns == 0 && secs <= 300.0, d.str());
}

// ---- criterion 2: determinant-lift criteria cross-oracles ------------------

void criterion2() {
  auto t0 = Clock::now();
  std::uint64_t dl_checked = 0, dl_mismatch = 0;
  for (int n = 2; n <= 8; ++n) {
    auto R = make_finite_ring("Zmod:" + std::to_string(n));
    Budget b(1ull << 32);
    for (std::uint32_t a = 0; a < R->size(); ++a)
      for (std::uint32_t bb = 0; bb < R->size(); ++bb)
        for (std::uint32_t c = 0; c < R->size(); ++c) {
          if (!is_unimodular_triple(R, a, bb, c)) continue;
          FMat A(R, 2, 2);
          A.a = {a, bb, 0, c};
          ++dl_checked;
          if (lift::search_det_liftable(A, b, false) !=
              lift::criterion_dl_ut(R, a, bb, c, b))
            ++dl_mismatch;
        }
  }
  std::uint64_t wdl_checked = 0, wdl_mismatch = 0;
  for (const auto& e : finite_corpus()) {
    if (!e.reduced) continue;
    const Ring& R = e.ring;
    Budget b(1ull << 32);
    auto check = [&](std::uint32_t a, std::uint32_t bb, std::uint32_t c) {
      FMat A(R, 2, 2);
      A.a = {a, bb, 0, c};
      ++wdl_checked;
      if (lift::search_det_liftable(A, b, true) !=
          lift::criterion_wdl_ut(R, a, bb, c, b))
        ++wdl_mismatch;
    };
    if (R->size() <= 12) {
      for (std::uint32_t a = 0; a < R->size(); ++a)
        for (std::uint32_t bb = 0; bb < R->size(); ++bb)
          for (std::uint32_t c = 0; c < R->size(); ++c)
            if (is_unimodular_triple(R, a, bb, c)) check(a, bb, c);
    } else {
      Rng rng(detail::fnv1a(e.spec) ^ 2);
      int samples = 0;
      while (samples < 300) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(R->size()));
        std::uint32_t bb = static_cast<std::uint32_t>(rng.below(R->size()));
        std::uint32_t c = static_cast<std::uint32_t>(rng.below(R->size()));
        if (!is_unimodular_triple(R, a, bb, c)) continue;
        ++samples;
        check(a, bb, c);
      }
    }
  }
  std::ostringstream d;
  d << dl_checked << " dl + " << wdl_checked << " wdl comparisons, " << dl_mismatch + wdl_mismatch
    << " mismatches, " << seconds_since(t0) << "s";
  report(2, "lift criteria match definitional searches", dl_mismatch == 0 && wdl_mismatch == 0,
         d.str());
}

// ---- criterion 3: the six-statement equivalence ----------------------------

void criterion3() {
  auto t0 = Clock::now();
  std::size_t hermite_rings = 0, bad = 0;
  for (const auto& e : finite_corpus()) {
    auto c = verify_theorem("TH1", e, 1ull << 31);
    if (c.verdict == Verdict::Inapplicable) continue;
    ++hermite_rings;
    bool all_true = c.verdict == Verdict::Verified;
    for (const char* key : {"s1_edr", "s2_se2", "s3_e2", "s4_quotients_pi2", "s5_dl_and_pi2"})
      all_true = all_true && c.evidence.at(key) == "true";
    if (!all_true) ++bad;
  }
  std::ostringstream d;
  d << hermite_rings << " Hermite rings, " << bad << " disagreements, "
    << seconds_since(t0) << "s";
  report(3, "six-statement equivalence, independent code paths", bad == 0 && hermite_rings > 0,
         d.str());
}

// ---- criterion 4: the unit-map machinery ------------------------------------

void criterion4() {
  auto t0 = Clock::now();
  std::size_t bad = 0, rings = 0;
  for (const auto& e : finite_corpus()) {
    ++rings;
    Budget b1(1ull << 32), b2(1ull << 32);
    Tri u2 = eval_flag(e.ring, Flag::U2, b1).val;
    Th3Result fr = th3_factor_check_cached(e.ring, b2);
    if (!is_true(u2) || fr.stmt4 != u2 || fr.stmt5 != u2) ++bad;
    auto ex3 = verify_theorem("EX3", e, 1ull << 31);
    if (ex3.verdict == Verdict::Counterexample || ex3.verdict == Verdict::Unknown) ++bad;
    for (const char* id : {"TH2-cond1", "TH2-cond2"}) {
      auto c = verify_theorem(id, e, 1ull << 31);
      if (c.verdict == Verdict::Counterexample || c.verdict == Verdict::Unknown) ++bad;
    }
  }
  std::ostringstream d;
  d << rings << " rings, " << bad << " violations, " << seconds_since(t0) << "s";
  report(4, "U2 everywhere, factorization equivalence, U2 sufficient conditions", bad == 0,
         d.str());
}

// ---- criterion 5: Boolean cokernels on symmetrizable rings -------------------

void criterion5() {
  auto t0 = Clock::now();
  std::size_t wsu2_rings = 0, bad = 0, exhaustive = 0;
  for (const auto& e : finite_corpus()) {
    Budget b(1ull << 32);
    if (!is_true(eval_flag(e.ring, Flag::Wsu2, b).val)) continue;
    ++wsu2_rings;
    if (e.ring->size() <= 12) ++exhaustive;
    Budget b2(1ull << 32);
    if (!is_true(thm::coker_universal(e.ring, b2).val)) ++bad;
  }
  std::ostringstream d;
  d << wsu2_rings << " certified rings (" << exhaustive << " exhaustive at |R|<=12), "
    << bad << " violations, " << seconds_since(t0) << "s";
  report(5, "Boolean cokernel for every unimodular (a,b) and c", bad == 0 && wsu2_rings > 0,
         d.str());
}

// ---- criterion 6: the non-full correspondence --------------------------------

void criterion6() {
  auto t0 = Clock::now();
  std::size_t bad = 0, triples = 0;
  for (int n = 2; n <= 12; ++n) {
    auto R = make_finite_ring("Zmod:" + std::to_string(n));
    Budget b(1ull << 32);
    for (std::uint32_t a = 0; a < R->size(); ++a)
      for (std::uint32_t c = 0; c < R->size(); ++c)
        for (std::uint32_t u = 0; u < R->size(); ++u) {
          if (!ex10_admissible(R, a, c, u)) continue;
          ++triples;
          auto r = ex10_correspondence(R, a, c, u, b);
          if (r.non_full != r.in_image) ++bad;
        }
  }
  std::ostringstream d;
  d << triples << " admissible triples over Z/2..Z/12, " << bad << " mismatches, "
    << seconds_since(t0) << "s";
  report(6, "non-full iff unit-class in the image, exact", bad == 0, d.str());
}

// ---- criterion 7: the Pell-type criterion -------------------------------------

void criterion7() {
  auto t0 = Clock::now();
  std::size_t bad = 0, rings = 0, char2_rings = 0;
  for (const auto& e : finite_corpus()) {
    ++rings;
    if (e.char2) ++char2_rings;
    auto c = verify_theorem("CR1", e, 1ull << 31);
    if (c.verdict == Verdict::Counterexample || c.verdict == Verdict::Unknown) ++bad;
  }
  std::ostringstream d;
  d << rings << " rings (" << char2_rings << " char-2 with the full iff), " << bad
    << " violations, " << seconds_since(t0) << "s";
  report(7, "Pell criterion: forward everywhere, iff in characteristic 2", bad == 0, d.str());
}

// ---- criterion 8: SNF certificates --------------------------------------------

void criterion8() {
  auto t0 = Clock::now();
  ZDomain dom;
  Rng rng(0xace);
  std::size_t bad = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    std::size_t m = 1 + rng.below(5), n = 1 + rng.below(5);
    DMat<ZDomain> B(m, n, Zint(0));
    std::vector<std::vector<Zint>> raw(m, std::vector<Zint>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Zint v = rng.range(-100, 100);
        B.at(i, j) = v;
        raw[i][j] = v;
      }
    auto cert = snf(dom, B);
    bool ok = verify_snf(dom, cert);
    auto expect = oracles::invariant_factors_by_minors(raw);
    ok = ok && cert.diag.size() == expect.size();
    for (std::size_t i = 0; ok && i < expect.size(); ++i) ok = cert.diag[i] == expect[i];
    if (!ok) ++bad;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << trials << " random matrices (m,n <= 5, entries <= 100), " << bad << " failures, "
    << secs << "s";
  report(8, "SNF certificates and minor-gcd invariant factors", bad == 0 && secs <= 120.0,
         d.str());
}

// ---- criterion 9: the lemma matrix ---------------------------------------------

void criterion9() {
  auto t0 = Clock::now();
  std::size_t pairs = 0, bad = 0, rings = 0;
  for (const auto& e : finite_corpus()) {
    if (e.ring->size() > 16) continue;
    ++rings;
    const Ring& R = e.ring;
    for (std::uint32_t dd = 0; dd < R->size(); ++dd)
      for (std::uint32_t ee = 0; ee < R->size(); ++ee) {
        if (principal_ideal_cached(R, dd).elems != principal_ideal_cached(R, ee).elems)
          continue;
        ++pairs;
        try {
          FMat N = lemma1_matrix(R, dd, ee);  // verifies SL2 and the identity
          (void)N;
        } catch (const Error&) {
          ++bad;
        }
      }
  }
  std::ostringstream d;
  d << pairs << " (d,e) pairs with Rd = Re over " << rings << " rings, " << bad
    << " failures, " << seconds_since(t0) << "s";
  report(9, "lemma matrix lies in SL2 and maps diag(d,0) to diag(e,0)", bad == 0, d.str());
}

// ---- criterion 10: bounded witnesses over Z ------------------------------------

void criterion10() {
  auto t0 = Clock::now();
  Rng rng(0xedd);
  const int trials = 1000;
  int cr3_found = 0, eq4_found = 0;
  std::vector<std::string> missing;
  for (int t = 0; t < trials; ++t) {
    long long a = rng.range(-25, 25), b = rng.range(-25, 25), s = rng.range(-25, 25);
    auto w = cr3_witness(a, b, s, 30);
    if (w.found == Tri::True && cr3_predicate(Zint(a), Zint(b), Zint(s), w.e, w.f)) {
      ++cr3_found;
    } else {
      missing.push_back("cr3(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(s) + ")");
    }
  }
  int eq4_trials = 0;
  while (eq4_trials < trials) {
    long long a = rng.range(-25, 25), u = rng.range(-25, 25), t = rng.range(-25, 25);
    if (u == 0) continue;
    ++eq4_trials;
    auto w = eq4_witness(a, u, t, 30);
    if (w.found == Tri::True) {
      ++eq4_found;
    } else {
      missing.push_back("eq4(" + std::to_string(a) + "," + std::to_string(u) + "," +
                        std::to_string(t) + ")");
    }
  }
  bool pass = cr3_found >= 990 && eq4_found >= 990;  // >= 99%
  std::ostringstream d;
  d << "cr3 " << cr3_found << "/" << trials << ", eq4 " << eq4_found << "/" << trials;
  for (std::size_t i = 0; i < missing.size() && i < 5; ++i) d << " missing:" << missing[i];
  d << ", " << seconds_since(t0) << "s";
  report(10, "bounded EDD witnesses with H = 30 (soft threshold 99%)", pass, d.str());
}

// ---- criterion 11: byte-identical sweeps across thread counts -------------------

void criterion11(const char* cli_path) {
  auto t0 = Clock::now();
  if (!cli_path) {
    // in-process fallback (fresh caches are not possible here, but the
    // orchestration and serialization paths are identical to the CLI's)
    auto corpus = default_corpus();
    auto r1 = sweep(corpus, all_theorem_ids(), 1, 1ull << 31);
    auto r2 = sweep(corpus, all_theorem_ids(), 4, 1ull << 31);
    bool same = r1.to_json().dump(2) == r2.to_json().dump(2);
    std::ostringstream d;
    d << "in-process sweeps, " << seconds_since(t0) << "s";
    report(11, "default sweep bytes identical for 1 vs 4 threads", same, d.str());
    return;
  }
  std::string out1 = "acceptance_sweep_t1.json", out2 = "acceptance_sweep_t4.json";
  std::string cmd1 = std::string(cli_path) +
                     " verify --corpus default --theorems all --threads 1 --out " + out1;
  std::string cmd2 = std::string(cli_path) +
                     " verify --corpus default --theorems all --threads 4 --out " + out2;
  int rc1 = std::system(cmd1.c_str());
  int rc2 = std::system(cmd2.c_str());
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  std::string s1 = slurp(out1), s2 = slurp(out2);
  bool same = rc1 == 0 && rc2 == 0 && !s1.empty() && s1 == s2;
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  std::ostringstream d;
  d << "two fresh CLI sweeps, " << s1.size() << " bytes each, " << seconds_since(t0) << "s";
  report(11, "default sweep bytes identical for 1 vs 4 threads", same, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  ensure_builtin_tables();
  const char* cli = argc > 1 ? argv[1] : nullptr;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11(cli);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
