#pragma once

#include "algebra.hpp"

namespace presilt {

// A finite-dimensional left module in block-adapted coordinates: the
// underlying space is graded by the idempotents, block v occupying the
// coordinate range [offset[v], offset[v] + dims[v]). Elements are column
// vectors; act(b) maps the src(b)-block into the tgt(b)-block.
struct Module {
  AlgebraPtr A;
  std::vector<int> dims;
  std::vector<int> offset;
  int total = 0;
  std::vector<Matrix> act;  // one per algebra basis element

  bool is_zero() const { return total == 0; }
  std::vector<int> dim_vector() const { return dims; }
  Matrix action_of(const std::vector<u32>& x) const;  // action of an algebra element
  void validate() const;                              // structure-constant compatibility
};

using ModulePtr = std::shared_ptr<const Module>;

struct ModHom {
  ModulePtr src, tgt;
  Matrix m;  // tgt.total x src.total, column convention: f(x) = m * x
};

Module zero_module(AlgebraPtr A);
Module simple_module(AlgebraPtr A, int v);
Module projective_module(AlgebraPtr A, int v);  // A e_v
Module nu_projective(AlgebraPtr A, int v);      // D(e_v A), the Nakayama image of A e_v
Module direct_sum(const std::vector<const Module*>& parts);
Module direct_sum(const std::vector<Module>& parts);

// Map of projective left modules given by algebra-element entries:
// f: ⊕_s A e_{src_verts[s]} -> ⊕_t A e_{tgt_verts[t]},
// entry(s,t) in e_{src_verts[s]} A e_{tgt_verts[t]}, acting by x ↦ x * entry.
struct ProjMat {
  AlgebraPtr A;
  std::vector<int> src_verts, tgt_verts;
  std::vector<std::vector<u32>> ent;  // [s * tgt + t] -> algebra coefficient vector

  std::vector<u32>& at(int s, int t) { return ent[static_cast<size_t>(s) * tgt_verts.size() + t]; }
  const std::vector<u32>& at(int s, int t) const {
    return ent[static_cast<size_t>(s) * tgt_verts.size() + t];
  }
  static ProjMat zero(AlgebraPtr A, std::vector<int> src, std::vector<int> tgt);
};

ProjMat proj_compose(const ProjMat& f, const ProjMat& g);  // "f then g"
ProjMat proj_add(const ProjMat& f, const ProjMat& g);
Module proj_sum_module(AlgebraPtr A, const std::vector<int>& verts);
// Position of the generator e_v of copy s inside proj_sum_module coordinates.
int proj_generator_coord(AlgebraPtr A, const std::vector<int>& verts, int s);
ModHom proj_to_modhom(const ProjMat& f, ModulePtr src_mod, ModulePtr tgt_mod);
// Extract algebra-element entries from a hom between projective sums.
ProjMat proj_from_modhom(const std::vector<int>& src_verts, const std::vector<int>& tgt_verts,
                         const ModHom& f);

// Subspace utilities. B has module coordinates as rows dimension total x k; it
// must be invariant under every action (idempotents included).
struct SubQuot {
  Module sub;
  ModHom incl;  // sub -> M
  Module quot;
  ModHom proj;  // M -> quot
};
SubQuot sub_and_quotient(const Module& M, const Matrix& basis_cols);
Module kernel_module(const ModHom& f, ModHom* incl_out = nullptr);
Module cokernel_module(const ModHom& f, ModHom* proj_out = nullptr);

std::vector<ModHom> hom_space(const Module& M, const Module& N);
std::vector<ModHom> hom_space(ModulePtr M, ModulePtr N);
int hom_dim(const Module& M, const Module& N);

Module radical_of(const Module& M);        // rad(A) * M as an abstract module
Matrix radical_subspace(const Module& M);  // columns spanning rad(A) * M
Module top_of(const Module& M);
Matrix socle_subspace(const Module& M);

struct ProjCover {
  std::vector<int> verts;  // P = ⊕ A e_v
  Module P;
  ModHom cover;  // P -> M, surjective with superfluous kernel
};
ProjCover projective_cover(const Module& M);

struct MinPresentation {
  std::vector<int> p1_verts, p0_verts;
  ProjMat d;     // P1 -> P0 with image in rad P0
  Module P1, P0;
  ModHom d_hom;  // same map, on module coordinates
  ModHom cover;  // P0 -> M
};
MinPresentation minimal_presentation(const Module& M);

Module tau(const Module& M);  // Auslander-Reiten translate; zero for projectives

struct TraceResult {
  Matrix trace_cols;  // columns spanning t_M(X) inside X
  Module torsion_free;
  ModHom quotient_map;  // X -> f_M(X)
};
TraceResult trace_and_torsionfree(const Module& M, const Module& X);
bool in_gen(const Module& M, const Module& X);  // X ∈ Gen M

}  // namespace presilt
