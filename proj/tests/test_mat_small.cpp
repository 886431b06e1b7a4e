#include <catch2/catch_amalgamated.hpp>

#include "edrlab/corpus.hpp"
#include "edrlab/matrix.hpp"
#include "oracles.hpp"

using namespace edrlab;

TEST_CASE("determinants match the Leibniz oracle") {
  auto z7 = make_finite_ring("Zmod:7");
  CHECK(det2(FMat::of(z7, 2, 2, {1, 0, 0, 1})) == z7->one());
  auto z6 = make_finite_ring("Zmod:6");
  CHECK(det2(FMat::of(z6, 2, 2, {2, 1, 0, 3})) == z6->zero());  // 2*3 = 0 mod 6

  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    FMat A(z7, 3, 3);
    for (auto& x : A.a) x = static_cast<std::uint32_t>(rng.below(7));
    CHECK(det3(A) == oracles::leibniz_det3(A));
  }
}

TEST_CASE("det is multiplicative on random pairs") {
  for (const char* spec : {"Zmod:6", "GF:8", "Quot:GF:3[x]/(x^2)", "Table:@f2xy"}) {
    ensure_builtin_tables();
    auto R = make_finite_ring(spec);
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
      FMat A(R, 2, 2), B(R, 2, 2);
      for (auto& x : A.a) x = static_cast<std::uint32_t>(rng.below(R->size()));
      for (auto& x : B.a) x = static_cast<std::uint32_t>(rng.below(R->size()));
      CHECK(det2(mat_mul(A, B)) == R->mul(det2(A), det2(B)));
    }
  }
}

TEST_CASE("unimodular vectors and matrices") {
  auto z6 = make_finite_ring("Zmod:6");
  auto w = unimodular_vector(z6, {z6->from_int(2), z6->from_int(3)});
  CHECK(w.unimodular);  // 3 - 2 = 1
  CHECK_FALSE(unimodular_vector(z6, {z6->from_int(2), z6->from_int(4)}).unimodular);
  CHECK(unimodular_vector(z6, {0, 0, 0, z6->one()}).unimodular);

  CHECK(is_unimodular_matrix(FMat::of(z6, 2, 2, {2, 1, 0, 3})));
  CHECK_FALSE(is_unimodular_matrix(FMat::of(z6, 2, 2, {2, 0, 0, 2})));
  CHECK_FALSE(is_unimodular_matrix(FMat::of(z6, 2, 2, {0, 0, 0, 0})));
}

TEST_CASE("GL enumeration matches order formulas") {
  // |GL_2(F_q)| = (q^2 - 1)(q^2 - q)
  auto gf2 = make_finite_ring("GF:2");
  CHECK(enumerate_GL(gf2, 2)->count() == 6);
  auto gf3 = make_finite_ring("GF:3");
  CHECK(enumerate_GL(gf3, 2)->count() == 48);
  // |SL_2(Z/4)| by exhaustive filter of 4^4 matrices
  auto z4 = make_finite_ring("Zmod:4");
  CHECK(enumerate_GL(z4, 2)->sl_count() == 48);
  // every cached inverse really is the inverse
  auto gl = enumerate_GL(z4, 2);
  for (std::uint32_t i = 0; i < gl->count(); ++i) {
    FMat M = gl->materialize(i);
    FMat Mi = gl->materialize(gl->inv_index[i]);
    CHECK(mat_mul(M, Mi) == identity_mat(z4, 2));
  }
}

TEST_CASE("equivalence is reflexive and matches the lemma pair") {
  auto z9 = make_finite_ring("Zmod:9");
  Budget b(1ull << 26);
  FMat A = FMat::of(z9, 2, 2, {3, 0, 0, 0});
  CHECK(is_true(are_equivalent(A, A, b).equivalent));

  FMat B = FMat::of(z9, 2, 2, {6, 0, 0, 0});
  Budget b2(1ull << 28);
  auto r = are_equivalent(A, B, b2);
  REQUIRE(is_true(r.equivalent));
  auto [M, N] = *r.witness;
  CHECK(mat_mul(mat_mul(M, A), N) == B);

  auto z4 = make_finite_ring("Zmod:4");
  Budget b3(1ull << 26);
  CHECK(is_false(are_equivalent(FMat::of(z4, 2, 2, {1, 0, 0, 0}),
                                FMat::of(z4, 2, 2, {0, 0, 0, 0}), b3)
                     .equivalent));
}

TEST_CASE("equivalence witnesses compose as an equivalence relation") {
  auto z4 = make_finite_ring("Zmod:4");
  Rng rng(3);
  Budget b(1ull << 30);
  for (int t = 0; t < 6; ++t) {
    FMat A(z4, 2, 2), M1(z4, 2, 2), N1(z4, 2, 2);
    for (auto& x : A.a) x = static_cast<std::uint32_t>(rng.below(4));
    auto gl = enumerate_GL(z4, 2);
    FMat P = gl->materialize(static_cast<std::uint32_t>(rng.below(gl->count())));
    FMat Q = gl->materialize(static_cast<std::uint32_t>(rng.below(gl->count())));
    FMat B = mat_mul(mat_mul(P, A), Q);
    // symmetric: B ~ A with inverse witnesses
    auto r1 = are_equivalent(A, B, b);
    REQUIRE(is_true(r1.equivalent));
    auto r2 = are_equivalent(B, A, b);
    REQUIRE(is_true(r2.equivalent));
    // transitive: compose A~B and B~C
    FMat C = mat_mul(mat_mul(P, B), Q);
    auto r3 = are_equivalent(B, C, b);
    REQUIRE(is_true(r3.equivalent));
    FMat M = mat_mul(r3.witness->first, r1.witness->first);
    FMat N = mat_mul(r1.witness->second, r3.witness->second);
    CHECK(mat_mul(mat_mul(M, A), N) == C);
  }
}

TEST_CASE("unimodularity is invariant under equivalence (all unimodular 2x2, |R| <= 8)") {
  for (const char* spec : {"Zmod:6", "Zmod:8", "GF:8", "Table:@f2xy"}) {
    ensure_builtin_tables();
    auto R = make_finite_ring(spec);
    auto gl = enumerate_GL(R, 2);
    Rng rng(17);
    const auto& masks = maximal_ideal_masks(R);
    const std::uint32_t n = R->size();
    FMat A(R, 2, 2);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          for (std::uint32_t d = 0; d < n; ++d) {
            A.a = {a, b, c, d};
            if (!is_unimodular_span(masks, A.a.data(), 4)) continue;
            // a few random GL transforms per matrix
            for (int t = 0; t < 3; ++t) {
              FMat M = gl->materialize(static_cast<std::uint32_t>(rng.below(gl->count())));
              FMat N = gl->materialize(static_cast<std::uint32_t>(rng.below(gl->count())));
              REQUIRE(is_unimodular_matrix(mat_mul(mat_mul(M, A), N)));
            }
          }
  }
}

TEST_CASE("lemma1 matrix: pinned example and exhaustive identity") {
  auto z9 = make_finite_ring("Zmod:9");
  FMat N = lemma1_matrix(z9, z9->from_int(3), z9->from_int(6));
  // N = [[2,-1],[-3,2]] = [[2,8],[6,2]] over Z9
  CHECK(N.a == std::vector<std::uint32_t>{2, 8, 6, 2});

  auto z6 = make_finite_ring("Zmod:6");
  FMat Nd = lemma1_matrix(z6, z6->from_int(2), z6->from_int(2));
  CHECK(Nd.a == std::vector<std::uint32_t>{1, 5, 0, 1});  // [[1,-1],[0,1]]
  FMat N0 = lemma1_matrix(z6, 0, 0);
  CHECK(N0.a == std::vector<std::uint32_t>{1, 5, 0, 1});

  CHECK_THROWS_AS(lemma1_matrix(z6, z6->from_int(2), z6->from_int(3)), Error);
}

TEST_CASE("matrix literal parsing") {
  auto z6 = make_finite_ring("Zmod:6");
  FMat A = parse_matrix(z6, "[[2,1],[0,3]]");
  CHECK(A.a == std::vector<std::uint32_t>{2, 1, 0, 3});
  auto pr = make_finite_ring("Prod:Zmod:2*Zmod:3");
  FMat B = parse_matrix(pr, "[[(1,2),(0,1)],[(1,0),(0,0)]]");
  CHECK(B.rows == 2);
  auto prr = std::dynamic_pointer_cast<const ProdRing>(pr);
  CHECK(prr->decode(B.at(0, 0)) == std::vector<std::uint32_t>{1, 2});
}
