#include "context.hpp"

#include <algorithm>

namespace presilt {

CObject cobj_union(const CObject& a, const CObject& b) {
  CObject r = a;
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.begin(), r.end());
  for (size_t i = 1; i < r.size(); ++i)
    if (r[i] == r[i - 1])
      fail(ErrCode::BadArgument, "duplicate summand: objects here are basic");
  return r;
}

bool cobj_disjoint(const CObject& a, const CObject& b) {
  for (int x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return false;
  return true;
}

bool cobj_contains(const CObject& a, int id) { return std::binary_search(a.begin(), a.end(), id); }

Context::Context(const QuiverPresentation& q, RunConfig c)
    : A(build_algebra(q, Fp(c.prime), BuildOptions{c.l_max, 200000})),
      cfg(c),
      rng(c.seed),
      modcat(A) {}

Context::Context(AlgebraPtr alg, RunConfig c) : A(std::move(alg)), cfg(c), rng(c.seed), modcat(A) {}

int Context::register_tt(const TwoTerm& t) {
  std::vector<int> m1(A->n_idem, 0), m0(A->n_idem, 0);
  for (int v : t.deg_m1) ++m1[v];
  for (int v : t.deg_0) ++m0[v];
  Module h0 = h0_module(t);
  for (size_t i = 0; i < cx.size(); ++i) {
    const CxEntry& e = cx[i];
    if (e.mult_m1 == m1 && e.mult_0 == m0 && e.h0_dims == h0.dims &&
        tt_is_isomorphic_indec(e.rep, t))
      return static_cast<int>(i);
  }
  CxEntry e;
  e.rep = t;
  e.is_proj = t.deg_m1.empty();
  e.is_inj = t.deg_0.empty();
  e.mult_m1 = m1;
  e.mult_0 = m0;
  e.h0_dims = h0.dims;
  if (h0.total > 0) e.h0_ids = register_module_ids(h0);
  if (e.is_inj && t.deg_m1.size() == 1) e.omega_vertex = t.deg_m1[0];
  cx.push_back(std::move(e));
  return static_cast<int>(cx.size()) - 1;
}

CObject Context::register_object(const TwoTerm& t) {
  CObject ids;
  for (const TwoTerm& part : tt_decompose(t, rng)) ids.push_back(register_tt(part));
  std::sort(ids.begin(), ids.end());
  for (size_t i = 1; i < ids.size(); ++i)
    require_internal(ids[i] != ids[i - 1], "register_object expects a basic object");
  return ids;
}

TwoTerm Context::tt_of(const CObject& obj) const {
  if (obj.empty()) return tt_zero(A);
  std::vector<const TwoTerm*> parts;
  for (int id : obj) parts.push_back(&cx[id].rep);
  return tt_direct_sum(parts);
}

int Context::stalk_id(int v) {
  auto it = stalk_ids_.find(v);
  if (it != stalk_ids_.end()) return it->second;
  int id = register_tt(tt_stalk(A, v));
  stalk_ids_[v] = id;
  return id;
}

int Context::shifted_id(int v) {
  auto it = shifted_ids_.find(v);
  if (it != shifted_ids_.end()) return it->second;
  int id = register_tt(tt_shifted(A, v));
  shifted_ids_[v] = id;
  return id;
}

CObject Context::projective_generator() {
  CObject r;
  for (int v = 0; v < A->n_idem; ++v) r.push_back(stalk_id(v));
  std::sort(r.begin(), r.end());
  return r;
}

CObject Context::injective_generator() {
  CObject r;
  for (int v = 0; v < A->n_idem; ++v) r.push_back(shifted_id(v));
  std::sort(r.begin(), r.end());
  return r;
}

const HomTT& Context::hom(int x, int y) const {
  auto key = std::make_pair(x, y);
  auto it = hom_memo_.find(key);
  if (it != hom_memo_.end()) return it->second;
  return hom_memo_.emplace(key, hom_tt(cx[x].rep, cx[y].rep)).first->second;
}

int Context::ext(int x, int y) const {
  auto key = std::make_pair(x, y);
  auto it = ext_memo_.find(key);
  if (it != ext_memo_.end()) return it->second;
  int d = ext_dim(cx[x].rep, cx[y].rep);
  ext_memo_[key] = d;
  return d;
}

int Context::ext_obj(const CObject& x, const CObject& y) const {
  int total = 0;
  for (int a : x)
    for (int b : y) total += ext(a, b);
  return total;
}

int Context::register_module_indec(const Module& m) { return modcat.register_indecomposable(m); }

std::vector<int> Context::register_module_ids(const Module& m) {
  return modcat.register_module(m, rng);
}

std::vector<int> Context::sorted_catalog_ids() const {
  std::vector<int> ids(cx.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const CxEntry &ea = cx[a], &eb = cx[b];
    if (ea.mult_m1 != eb.mult_m1) return ea.mult_m1 < eb.mult_m1;
    if (ea.mult_0 != eb.mult_0) return ea.mult_0 < eb.mult_0;
    if (ea.h0_dims != eb.h0_dims) return ea.h0_dims < eb.h0_dims;
    return a < b;  // deterministic registration-order tiebreak
  });
  return ids;
}

std::string Context::cx_label(int id) const {
  const CxEntry& e = cx[id];
  auto vecstr = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  if (e.is_proj && e.rep.deg_0.size() == 1) return "P" + A->idem_names[e.rep.deg_0[0]];
  if (e.is_inj && e.rep.deg_m1.size() == 1) return "SP" + A->idem_names[e.rep.deg_m1[0]];
  return "X(" + vecstr(e.mult_m1) + "|" + vecstr(e.mult_0) + "|h" + vecstr(e.h0_dims) + ")";
}

std::string Context::module_label(int id) const {
  const ModuleCatalog::Entry& e = modcat.entry(id);
  std::string s = "M[";
  for (size_t i = 0; i < e.dimvec.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.dimvec[i]);
  }
  s += "]t[";
  for (size_t i = 0; i < e.topvec.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.topvec[i]);
  }
  s += "]";
  return s;
}

}  // namespace presilt
