#pragma once

#include <random>

#include "module.hpp"

namespace presilt {

using Rng = std::mt19937_64;

// Krull-Schmidt decomposition by Fitting splittings along random endomorphisms.
// Deterministic for a fixed seed; the iso-class multiset is seed-independent.
std::vector<Module> decompose(const Module& M, Rng& rng);

bool is_isomorphic_indec(const Module& M, const Module& N);
bool is_isomorphic(const Module& M, const Module& N, Rng& rng);

// Registry of indecomposable modules up to isomorphism.
struct ModuleCatalog {
  struct Entry {
    ModulePtr rep;
    std::vector<int> dimvec, topvec, socvec;
  };
  AlgebraPtr A;
  std::vector<Entry> entries;

  explicit ModuleCatalog(AlgebraPtr alg) : A(std::move(alg)) {}
  int register_indecomposable(const Module& M);
  // decomposes and returns sorted catalog ids (with multiplicity)
  std::vector<int> register_module(const Module& M, Rng& rng);
  const Entry& entry(int id) const { return entries[id]; }
};

// Γ = End(⊕ gens)^op modulo maps factoring through add(⊕ killed), together
// with the data needed to move modules across the equivalence: gens[v] is the
// generator matching the Γ-idempotent v, and lifts[k] is the concrete hom
// gens[tgt[k]] -> gens[src[k]] representing the k-th Γ-basis element.
struct EndoAlgebra {
  AlgebraPtr base;
  AlgebraPtr gamma;
  std::vector<ModulePtr> gens;
  std::vector<ModHom> lifts;
  std::vector<ModulePtr> killed;
};

EndoAlgebra build_endo_algebra(AlgebraPtr base, std::vector<ModulePtr> gens,
                               std::vector<ModulePtr> killed);

// Hom_base(⊕ gens, X) as a left Γ-module (requires Hom(killed, X) = 0).
Module endo_hom_module(const EndoAlgebra& E, const Module& X);
// (⊕ gens) ⊗_Γ Y for a left Γ-module Y, via a projective presentation of Y.
Module endo_tensor_module(const EndoAlgebra& E, const Module& Y);
// Rebase an endomorphism algebra through an inner equivalence: the result has
// base = inner.gamma, the same gamma as outer, gens transported by
// endo_hom_module and lifts transported functorially.
EndoAlgebra transport_endo(const EndoAlgebra& inner, const EndoAlgebra& outer);

// Index v with Y ≅ Γ e_v, or -1.
int identify_projective(AlgebraPtr gamma, const Module& Y, Rng& rng);

}  // namespace presilt
