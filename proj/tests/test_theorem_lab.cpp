#include <catch2/catch_amalgamated.hpp>

#include "edrlab/report.hpp"
#include "edrlab/theorems.hpp"

using namespace edrlab;

namespace {
CorpusEntry entry(const std::string& spec) {
  ensure_builtin_tables();
  CorpusEntry e;
  RingHandle h = make_ring(spec);
  e.spec = spec;
  e.ring = h.finite;
  e.zprof = h.zprof;
  return e;
}

std::vector<CorpusEntry> tiny_corpus() {
  return build_corpus({"Zmod:4", "Zmod:6", "GF:4", "Quot:GF:2[x]/(x^2)",
                       "Prod:Zmod:2*Zmod:3", "Table:@f2xy", "Int:H=30"});
}
}  // namespace

TEST_CASE("TH1 verification on Z/12: all six statements true independently") {
  auto c = verify_theorem("TH1", entry("Zmod:12"), 1ull << 30);
  CHECK(c.verdict == Verdict::Verified);
  for (const char* key : {"s1_edr", "s2_se2", "s3_e2", "s4_quotients_pi2", "s5_dl_and_pi2",
                          "s6_wdl"})
    CHECK(c.evidence.at(key) == "true");
}

TEST_CASE("non-Bezout table ring is inapplicable for the Hermite equivalences") {
  auto c = verify_theorem("TH1", entry("Table:@f2xy"), 1ull << 28);
  CHECK(c.verdict == Verdict::Inapplicable);
  CHECK(c.evidence.at("failed_hypothesis") == "Hermite");
}

TEST_CASE("the CR1 instance on GF(2)") {
  // A = [[1,1],[1,1]] is symmetric, zero determinant, unimodular;
  // (e,f) = (1,0) gives a e^2 - c f^2 = 1, and A is simply extendable
  auto gf2 = make_finite_ring("GF:2");
  FMat A = FMat::of(gf2, 2, 2, {1, 1, 1, 1});
  REQUIRE(det2(A) == gf2->zero());
  Budget b(1ull << 28);
  std::uint32_t e = 1, f = 0;
  std::uint32_t val = gf2->sub(gf2->mul(A.at(0, 0), gf2->mul(e, e)),
                               gf2->mul(A.at(1, 1), gf2->mul(f, f)));
  CHECK(gf2->units().is_unit[val]);
  CHECK(is_true(lift::search_simply_extendable(A, b)));
  auto c = verify_theorem("CR1", entry("GF:2"), 1ull << 30);
  CHECK(c.verdict == Verdict::Verified);
}

TEST_CASE("TH5 on char-2 fields: squares hypothesis holds and parts check out") {
  auto c = verify_theorem("TH5", entry("GF:4"), 1ull << 30);
  CHECK(c.verdict == Verdict::Verified);
  CHECK(c.evidence.at("squares_hypothesis") == true);
  CHECK(c.evidence.at("part3_u2") == "true");
  CHECK(c.evidence.at("part3_edr") == "true");
}

TEST_CASE("remaining cases on a small corpus have no counterexamples") {
  auto corpus = tiny_corpus();
  auto rep = sweep(corpus, all_theorem_ids(), 2, 1ull << 30);
  CHECK(rep.counterexamples == 0);
  CHECK(rep.unknown == 0);
  // the Int profile runs exactly one active case
  for (const auto& c : rep.cases)
    if (c.ring_spec == "Int:H=30")
      CHECK((c.theorem == "CR3-shortcuts") == (c.verdict == Verdict::Verified));
}

TEST_CASE("sweep output is byte-identical across thread counts") {
  auto corpus = tiny_corpus();
  auto r1 = sweep(corpus, all_theorem_ids(), 1, 1ull << 30);
  auto r2 = sweep(corpus, all_theorem_ids(), 3, 1ull << 30);
  CHECK(r1.to_json().dump(2) == r2.to_json().dump(2));
}

TEST_CASE("hunts over the tiny corpus") {
  auto corpus = tiny_corpus();
  // finite Bezout rings here are all Hermite
  auto r1 = hunt("bezout && !hermite", corpus, 1ull << 30);
  CHECK_FALSE(r1.found);
  // the non-Bezout witness is the table ring
  auto r2 = hunt("!bezout", corpus, 1ull << 30);
  REQUIRE(r2.found);
  CHECK(r2.ring_spec == "Table:@f2xy");
  // zero-determinant unimodular matrices are non-full on the pre-Schreier part
  auto r3 = hunt("pre_schreier && !all_zero_det_um_nonfull", corpus, 1ull << 30);
  CHECK_FALSE(r3.found);
  // parse errors surface as errors
  CHECK_THROWS_AS(hunt("no_such_flag", corpus, 1ull << 20), Error);
}

TEST_CASE("verdict JSON carries the documented schema") {
  auto corpus = build_corpus({"Zmod:6"});
  auto rep = sweep(corpus, {"TH1", "EX4"}, 1, 1ull << 30);
  Json j = rep.to_json();
  CHECK(j.at("schema") == "edrlab.verdicts.v1");
  REQUIRE(j.at("cases").size() == 2);
  for (const auto& c : j.at("cases")) {
    CHECK(c.contains("theorem"));
    CHECK(c.contains("ring"));
    CHECK(c.contains("verdict"));
    CHECK(c.contains("evidence"));
  }
  CHECK(j.at("summary").contains("verified"));
}

TEST_CASE("theorem aliases and bad ids") {
  CHECK_THROWS_AS(verify_theorem("TH99", entry("Zmod:6"), 1ull << 20), Error);
}

TEST_CASE("L1 and L2 verdicts on reduced small rings") {
  auto l1 = verify_theorem("L1", entry("Zmod:9"), 1ull << 30);
  CHECK(l1.verdict == Verdict::Verified);
  auto l2 = verify_theorem("L2", entry("Zmod:6"), 1ull << 32);
  CHECK(l2.verdict == Verdict::Verified);
  auto l2bad = verify_theorem("L2", entry("Zmod:4"), 1ull << 30);
  CHECK(l2bad.verdict == Verdict::Inapplicable);  // N(R) != 0
}

TEST_CASE("EX3/EX4/EX5 on the tiny corpus") {
  for (const char* spec : {"Zmod:4", "Zmod:6", "GF:4", "Table:@f2xy"}) {
    auto e3 = verify_theorem("EX3", entry(spec), 1ull << 30);
    CHECK(e3.verdict != Verdict::Counterexample);
    auto e4 = verify_theorem("EX4", entry(spec), 1ull << 30);
    CHECK(e4.verdict != Verdict::Counterexample);
    auto e5 = verify_theorem("EX5", entry(spec), 1ull << 30);
    CHECK(e5.verdict != Verdict::Counterexample);
  }
  // x is nilpotent in the table ring, so the reduced-ring case cannot apply
  auto e5t = verify_theorem("EX5", entry("Table:@f2xy"), 1ull << 28);
  CHECK(e5t.verdict == Verdict::Inapplicable);
}

TEST_CASE("default corpus construction and tags") {
  auto specs = default_corpus_specs();
  // the documented families are all present
  auto has = [&](const std::string& s) {
    return std::find(specs.begin(), specs.end(), s) != specs.end();
  };
  CHECK(has("Zmod:2"));
  CHECK(has("Zmod:16"));
  CHECK(has("Zmod:27"));
  CHECK(has("Zmod:32"));
  CHECK(has("GF:9"));
  CHECK(has("Quot:GF:3[x]/(x^2+1)"));
  CHECK(has("Table:@f2xy"));
  CHECK(has("Int:H=30"));
  // all product pairs stay within 64 elements
  for (const auto& s : specs) {
    if (s.rfind("Prod:", 0) != 0) continue;
    CHECK(make_finite_ring(s)->size() <= 64);
  }
  // recomputed tags on a couple of entries
  auto corpus = build_corpus({"GF:4", "Zmod:8", "Prod:Zmod:2*Zmod:2"});
  CHECK(corpus[0].char2);
  CHECK(corpus[0].reduced);
  CHECK(corpus[0].local);
  CHECK_FALSE(corpus[1].reduced);
  CHECK(corpus[2].product);
  CHECK(corpus[2].bezout);
}
