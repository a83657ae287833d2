#pragma once

#include "decompose.hpp"

namespace presilt {

// A complex of projectives with contiguous support [lo, lo + terms.size()).
// Maps compose in diagrammatic order: (f then g) = proj_compose(f, g).
struct PComplex {
  AlgebraPtr A;
  int lo = 0;
  std::vector<std::vector<int>> terms;  // vertex list per degree
  std::vector<ProjMat> diff;            // diff[k]: degree lo+k -> lo+k+1

  void check() const;  // d∘d = 0 and entry blocks
};

// Minimal complex supported in degrees -1 and 0.
struct TwoTerm {
  AlgebraPtr A;
  std::vector<int> deg_m1, deg_0;
  ProjMat d;  // deg_m1 -> deg_0

  bool is_projective() const { return deg_m1.empty(); }  // stalk in degree 0
  bool is_injective() const { return deg_0.empty(); }    // shifted projective
};

TwoTerm tt_zero(AlgebraPtr A);
TwoTerm tt_stalk(AlgebraPtr A, int v);        // 0 -> P_v
TwoTerm tt_shifted(AlgebraPtr A, int v);      // P_v -> 0
TwoTerm tt_presentation(const Module& M);     // minimal presentation complex
TwoTerm tt_direct_sum(const std::vector<const TwoTerm*>& parts);
TwoTerm tt_direct_sum(const std::vector<TwoTerm>& parts);

PComplex tt_to_pc(const TwoTerm& x);
TwoTerm pc_to_tt(const PComplex& x);  // fails NotTwoTermReducible if unsupported degrees survive
PComplex pc_shift(const PComplex& x, int s);  // X[s]^n = X^{n+s}

// Strip contractible identity summands until every differential entry lies in
// the radical. The homotopy type is preserved.
PComplex pc_minimize(const PComplex& x);
TwoTerm tt_minimize(const PComplex& x);

Module h0_module(const TwoTerm& x);   // coker d
Module hm1_module(const TwoTerm& x);  // ker d

// chain map between two-term complexes
struct TTMap {
  ProjMat fm1, f0;
};
TTMap tt_identity(const TwoTerm& x);
TTMap tt_zero_map(const TwoTerm& x, const TwoTerm& y);
TTMap tt_compose(const TTMap& f, const TTMap& g);
bool tt_is_chain_map(const TwoTerm& x, const TwoTerm& y, const TTMap& f);

PComplex tt_cone(const TwoTerm& x, const TwoTerm& y, const TTMap& f);
TwoTerm tt_cone_minimal(const TwoTerm& x, const TwoTerm& y, const TTMap& f);
TwoTerm tt_cocone_minimal(const TwoTerm& x, const TwoTerm& y, const TTMap& f);

// coordinates of ProjMat spaces: one coordinate per (src summand, tgt summand,
// block basis element)
struct PMCoords {
  AlgebraPtr A;
  std::vector<int> src, tgt;
  struct Slot {
    int s, t, basis_elt;
  };
  std::vector<Slot> slots;

  PMCoords(AlgebraPtr alg, std::vector<int> src_verts, std::vector<int> tgt_verts);
  int dim() const { return static_cast<int>(slots.size()); }
  std::vector<u32> to_vec(const ProjMat& m) const;
  ProjMat from_vec(const std::vector<u32>& v) const;
};

// Hom space in the homotopy category: basis of chain maps modulo homotopy and
// a coordinate map for arbitrary chain maps.
struct HomTT {
  std::shared_ptr<PMCoords> cm1, c0;  // coordinates of the two components
  std::vector<TTMap> basis;           // representatives of a basis of 𝒞(X, Y)
  Matrix BH;                          // columns: basis reps then homotopy basis
  int b = 0;                          // = basis.size()

  int dim() const { return b; }
  std::vector<u32> full_vec(const TTMap& f) const;
  // coordinates modulo homotopy of an arbitrary chain map
  std::vector<u32> coords(const TTMap& f) const;
};
HomTT hom_tt(const TwoTerm& x, const TwoTerm& y);

// E(X, Y) = Hom(X^{-1}, Y^0) / (d_X-image + d_Y-image)
struct ExtTT {
  std::shared_ptr<PMCoords> coords;
  Matrix BH;
  int b = 0;
  int dim() const { return b; }
};
ExtTT ext_tt(const TwoTerm& x, const TwoTerm& y);
int ext_dim(const TwoTerm& x, const TwoTerm& y);

// Krull-Schmidt for minimal two-term complexes via chain-level idempotent
// splitting; pieces are again minimal.
std::vector<TwoTerm> tt_decompose(const TwoTerm& x, Rng& rng);
bool tt_is_isomorphic_indec(const TwoTerm& x, const TwoTerm& y);

}  // namespace presilt
