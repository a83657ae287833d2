#pragma once

#include <map>
#include <optional>

#include "complexes.hpp"

namespace presilt {

struct RunConfig {
  u32 prime = 1000003;
  u64 seed = 1;
  int l_max = 30;
  int silting_cap = 10000;
  int sequence_cap = 100000;
};

// A basic object of the two-term category: sorted distinct catalog ids.
using CObject = std::vector<int>;

CObject cobj_union(const CObject& a, const CObject& b);  // fails on overlap
bool cobj_disjoint(const CObject& a, const CObject& b);
bool cobj_contains(const CObject& a, int id);

// Per-algebra workspace: catalogs and memo tables. Values handed out are
// immutable; registration funnels through this single writer.
struct Context {
  AlgebraPtr A;
  RunConfig cfg;
  mutable Rng rng;
  ModuleCatalog modcat;

  struct CxEntry {
    TwoTerm rep;
    bool is_proj = false, is_inj = false;
    std::vector<int> mult_m1, mult_0;  // multiplicity per vertex
    std::vector<int> h0_dims;
    std::vector<int> h0_ids;  // module catalog ids of the summands of H0
    int omega_vertex = -1;    // for injectives ΣP_v: the vertex v
  };
  std::vector<CxEntry> cx;

  Context(const QuiverPresentation& q, RunConfig cfg);
  Context(AlgebraPtr alg, RunConfig cfg);

  int n() const { return A->n_idem; }

  int register_tt(const TwoTerm& t);             // t must be indecomposable minimal
  CObject register_object(const TwoTerm& t);     // decomposes first
  const CxEntry& entry(int id) const { return cx[id]; }
  TwoTerm tt_of(const CObject& obj) const;       // direct sum of entries
  TwoTerm tt_single(int id) const { return cx[id].rep; }

  int stalk_id(int v);    // catalog id of P_v
  int shifted_id(int v);  // catalog id of ΣP_v
  CObject projective_generator();  // all stalks
  CObject injective_generator();   // all shifts

  // memoized pairwise data between catalog entries
  const HomTT& hom(int x, int y) const;
  int ext(int x, int y) const;
  int ext_obj(const CObject& x, const CObject& y) const;  // sum over pairs

  // Λ-side registration
  int register_module_indec(const Module& m);
  std::vector<int> register_module_ids(const Module& m);
  ModulePtr module_of(int id) const { return modcat.entry(id).rep; }

  // canonical ordering of catalog ids for serialized output
  std::vector<int> sorted_catalog_ids() const;
  std::string cx_label(int id) const;
  std::string module_label(int id) const;

private:
  mutable std::map<std::pair<int, int>, HomTT> hom_memo_;
  mutable std::map<std::pair<int, int>, int> ext_memo_;
  std::map<int, int> stalk_ids_, shifted_ids_;
};

// support τ-rigid object over the base algebra: module-part ids and shifted
// projective-part vertex list, both sorted
struct TauPair {
  std::vector<int> mods;    // module catalog ids
  std::vector<int> shifts;  // vertices of shifted projectives

  bool operator==(const TauPair& o) const { return mods == o.mods && shifts == o.shifts; }
  bool operator<(const TauPair& o) const {
    return mods != o.mods ? mods < o.mods : shifts < o.shifts;
  }
  int size() const { return static_cast<int>(mods.size() + shifts.size()); }
  bool empty() const { return mods.empty() && shifts.empty(); }
};

}  // namespace presilt
