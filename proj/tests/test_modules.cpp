#include <map>

#include "corpus.hpp"
#include "decompose.hpp"
#include "doctest.h"

using namespace presilt;

namespace {

AlgebraPtr ex9() {
  static AlgebraPtr A = build_algebra(corpus::example9(), Fp(1000003));
  return A;
}

// Independent dense check of hom dimension: builds the full intertwiner
// system in one Kronecker-style matrix instead of row-by-row.
int hom_dim_dense(const Module& M, const Module& N) {
  const Fp& F = M.A->field;
  int vars = N.total * M.total;
  if (vars == 0) return 0;
  Matrix sys(0, vars);
  for (int b = 0; b < M.A->dim; ++b) {
    Matrix block(N.total * M.total, vars);
    for (int i = 0; i < N.total; ++i)
      for (int j = 0; j < M.total; ++j) {
        int row = i * M.total + j;
        for (int k = 0; k < M.total; ++k)
          block.at(row, i * M.total + k) = F.add(block.at(row, i * M.total + k), M.act[b].at(k, j));
        for (int k = 0; k < N.total; ++k)
          block.at(row, k * M.total + j) = F.sub(block.at(row, k * M.total + j), N.act[b].at(i, k));
      }
    sys = sys.rows == 0 ? block : mat_vstack(sys, block);
  }
  return vars - mat_rank(F, sys);
}

}  // namespace

TEST_CASE("projectives and simples of the radical-square-zero cycle") {
  AlgebraPtr A = ex9();
  Module P1 = projective_module(A, 0), P2 = projective_module(A, 1);
  Module S1 = simple_module(A, 0), S2 = simple_module(A, 1);
  P1.validate();
  P2.validate();
  S1.validate();
  CHECK(P1.dims == std::vector<int>{1, 1});
  CHECK(P2.dims == std::vector<int>{1, 1});
  CHECK(top_of(P1).dims == std::vector<int>{1, 0});
  CHECK(top_of(P2).dims == std::vector<int>{0, 1});
  CHECK(radical_of(P1).dims == S2.dims);

  CHECK(hom_dim(S1, S2) == 0);
  CHECK(hom_dim(P1, S1) == 1);
  CHECK(hom_dim(S1, S1) == 1);
  CHECK(hom_dim(P1, P1) == 1);
  CHECK(hom_dim(P1, P2) == 1);
}

TEST_CASE("hom dimension agrees with an independent dense solver") {
  AlgebraPtr A = ex9();
  std::vector<Module> mods = {projective_module(A, 0), projective_module(A, 1),
                              simple_module(A, 0), simple_module(A, 1)};
  for (const Module& M : mods)
    for (const Module& N : mods) CHECK(hom_dim(M, N) == hom_dim_dense(M, N));
}

TEST_CASE("minimal presentations") {
  AlgebraPtr A = ex9();
  Module S1 = simple_module(A, 0);
  MinPresentation mp = minimal_presentation(S1);
  CHECK(mp.p0_verts == std::vector<int>{0});
  CHECK(mp.p1_verts == std::vector<int>{1});

  Module P1 = projective_module(A, 0);
  MinPresentation mpp = minimal_presentation(P1);
  CHECK(mpp.p1_verts.empty());
  CHECK(mpp.p0_verts == std::vector<int>{0});

  AlgebraPtr H = build_algebra(corpus::a2(), Fp(1000003));
  MinPresentation mph = minimal_presentation(simple_module(H, 0));
  CHECK(mph.p0_verts == std::vector<int>{0});
  CHECK(mph.p1_verts == std::vector<int>{1});
}

TEST_CASE("AR translate") {
  AlgebraPtr A = ex9();
  Module S1 = simple_module(A, 0), S2 = simple_module(A, 1);
  CHECK(tau(S1).dims == S2.dims);
  CHECK(tau(S2).dims == S1.dims);
  CHECK(is_isomorphic_indec(tau(S1), S2));
  CHECK(is_isomorphic_indec(tau(tau(S1)), S1));
  CHECK(tau(projective_module(A, 0)).is_zero());
  CHECK(tau(projective_module(A, 1)).is_zero());

  AlgebraPtr H = build_algebra(corpus::a2(), Fp(1000003));
  CHECK(is_isomorphic_indec(tau(simple_module(H, 0)), simple_module(H, 1)));
}

TEST_CASE("trace and torsion-free functor") {
  AlgebraPtr A = ex9();
  Module S1 = simple_module(A, 0), P1 = projective_module(A, 0);
  TraceResult t = trace_and_torsionfree(S1, P1);
  CHECK(t.trace_cols.cols == 0);
  CHECK(t.torsion_free.dims == P1.dims);
  // f_M(X) = 0 when X in Gen M
  TraceResult t2 = trace_and_torsionfree(P1, S1);
  CHECK(t2.torsion_free.is_zero());
  CHECK(in_gen(P1, S1));
  CHECK(!in_gen(S1, P1));
  // torsion-free functor is idempotent and kills all maps from M
  std::vector<Module> mods = {projective_module(A, 0), projective_module(A, 1),
                              simple_module(A, 0), simple_module(A, 1)};
  for (const Module& M : mods) {
    for (const Module& X : mods) {
      TraceResult r = trace_and_torsionfree(M, X);
      CHECK(hom_dim(M, r.torsion_free) == 0);
      TraceResult rr = trace_and_torsionfree(M, r.torsion_free);
      CHECK(rr.torsion_free.dims == r.torsion_free.dims);
    }
  }
  // f_0(X) = X
  TraceResult z = trace_and_torsionfree(zero_module(A), P1);
  CHECK(z.torsion_free.dims == P1.dims);
}

TEST_CASE("decomposition and isomorphism") {
  AlgebraPtr A = ex9();
  Rng rng(42);
  // the regular module splits into the two projectives
  std::vector<Module> parts = {projective_module(A, 0), projective_module(A, 1)};
  Module reg = direct_sum(parts);
  std::vector<Module> dec = decompose(reg, rng);
  CHECK(dec.size() == 2);
  bool found1 = false, found2 = false;
  for (const Module& m : dec) {
    if (is_isomorphic_indec(m, parts[0])) found1 = true;
    if (is_isomorphic_indec(m, parts[1])) found2 = true;
  }
  CHECK(found1);
  CHECK(found2);

  CHECK(decompose(zero_module(A), rng).empty());
  CHECK(!is_isomorphic_indec(parts[0], parts[1]));  // equal dim vectors, not isomorphic

  // seed independence at the level of iso-class multisets
  Rng r1(1), r2(999);
  Module big = direct_sum(std::vector<Module>{parts[0], parts[0], simple_module(A, 1)});
  std::vector<Module> d1 = decompose(big, r1), d2 = decompose(big, r2);
  REQUIRE(d1.size() == d2.size());
  std::vector<bool> used(d2.size(), false);
  for (const Module& m : d1) {
    bool ok = false;
    for (size_t j = 0; j < d2.size(); ++j) {
      if (!used[j] && is_isomorphic_indec(m, d2[j])) {
        used[j] = ok = true;
        break;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("module catalog keys tell the projectives apart") {
  AlgebraPtr A = ex9();
  ModuleCatalog cat(A);
  int p1 = cat.register_indecomposable(projective_module(A, 0));
  int p2 = cat.register_indecomposable(projective_module(A, 1));
  int s1 = cat.register_indecomposable(simple_module(A, 0));
  CHECK(p1 != p2);
  CHECK(cat.register_indecomposable(projective_module(A, 0)) == p1);
  CHECK(s1 == cat.register_indecomposable(simple_module(A, 0)));
  Rng rng(5);
  Module sum = direct_sum(std::vector<Module>{projective_module(A, 0), simple_module(A, 0)});
  std::vector<int> ids = cat.register_module(sum, rng);
  CHECK(ids == std::vector<int>{p1, s1});
}

TEST_CASE("endomorphism algebras") {
  AlgebraPtr A = ex9();
  // End of the regular module is the opposite algebra: dimension 4, 2 idempotents
  auto P1 = std::make_shared<Module>(projective_module(A, 0));
  auto P2 = std::make_shared<Module>(projective_module(A, 1));
  EndoAlgebra E = build_endo_algebra(A, {P1, P2}, {});
  CHECK(E.gamma->dim == 4);
  CHECK(E.gamma->n_idem == 2);

  // Γ for U = S1: End(B[S1] ⊕ S1)^op / [S1] with B[S1] = P(1): dimension 1
  auto S1 = std::make_shared<Module>(simple_module(A, 0));
  EndoAlgebra G = build_endo_algebra(A, {P1}, {S1});
  CHECK(G.gamma->dim == 1);

  // transported modules: Hom(Λ, X) recovers X's total dimension
  Module X = simple_module(A, 1);
  Module HX = endo_hom_module(E, X);
  CHECK(HX.total == X.total);
  Module back = endo_tensor_module(E, HX);
  CHECK(back.dims == X.dims);

  // End of a simple over the semisimple algebra is the ground field
  AlgebraPtr S = build_algebra(corpus::semisimple2(), Fp(1000003));
  auto SS = std::make_shared<Module>(simple_module(S, 0));
  EndoAlgebra ES = build_endo_algebra(S, {SS}, {});
  CHECK(ES.gamma->dim == 1);
}

TEST_CASE("field too small is detected") {
  // at algebra construction: radical needs p > dim A
  try {
    build_algebra(corpus::example9(), Fp(3));
    FAIL("dimension-4 algebra over GF(3) must refuse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::FieldTooSmall);
  }
  // at decomposition: p must exceed dim End(M)
  AlgebraPtr K = build_algebra(corpus::one_vertex(), Fp(2));
  Module m = simple_module(K, 0);
  Module mm = direct_sum(std::vector<Module>{m, m});
  Rng rng(1);
  try {
    decompose(mm, rng);
    FAIL("decompose with dim End = 4 over GF(2) must refuse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::FieldTooSmall);
  }
}
