#include "complexes.hpp"

#include <algorithm>
#include <functional>

namespace presilt {

namespace {

ProjMat pm_identity(AlgebraPtr A, const std::vector<int>& verts) {
  ProjMat m = ProjMat::zero(A, verts, verts);
  for (size_t i = 0; i < verts.size(); ++i)
    m.at(static_cast<int>(i), static_cast<int>(i)) = A->idem(verts[i]);
  return m;
}

ProjMat pm_neg(const ProjMat& m) {
  ProjMat r = m;
  for (auto& e : r.ent)
    for (u32& c : e) c = m.A->field.neg(c);
  return r;
}

bool pm_entries_in_radical(const ProjMat& m) {
  for (const auto& e : m.ent)
    if (!m.A->in_radical(e)) return false;
  return true;
}

ModulePtr pm_module(AlgebraPtr A, const std::vector<int>& verts) {
  return std::make_shared<Module>(proj_sum_module(A, verts));
}

Matrix pm_k_matrix(const ProjMat& m) {
  return proj_to_modhom(m, pm_module(m.A, m.src_verts), pm_module(m.A, m.tgt_verts)).m;
}

ProjMat pm_inverse(const ProjMat& m) {
  require_internal(m.src_verts.size() == m.tgt_verts.size(), "inverse of non-square projective map");
  Matrix k = pm_k_matrix(m);
  Matrix kinv = mat_inverse(m.A->field, k);
  ModHom h;
  h.src = pm_module(m.A, m.tgt_verts);
  h.tgt = pm_module(m.A, m.src_verts);
  h.m = kinv;
  return proj_from_modhom(m.tgt_verts, m.src_verts, h);
}

// scalar (semisimple) part per summand pair; off-vertex entries are radical
Matrix pm_scalar_part(const ProjMat& m) {
  Matrix s(static_cast<int>(m.src_verts.size()), static_cast<int>(m.tgt_verts.size()));
  for (size_t i = 0; i < m.src_verts.size(); ++i)
    for (size_t j = 0; j < m.tgt_verts.size(); ++j) {
      if (m.src_verts[i] != m.tgt_verts[j]) continue;
      s.at(static_cast<int>(i), static_cast<int>(j)) =
          m.A->corner_scalar(m.at(static_cast<int>(i), static_cast<int>(j)), m.src_verts[i]);
    }
  return s;
}

bool pm_is_iso(const ProjMat& m) {
  if (m.src_verts.size() != m.tgt_verts.size()) return false;
  Matrix s = pm_scalar_part(m);
  return mat_rank(m.A->field, s) == s.rows;
}

}  // namespace

void PComplex::check() const {
  for (size_t k = 0; k < diff.size(); ++k) {
    require_internal(diff[k].src_verts == terms[k] && diff[k].tgt_verts == terms[k + 1],
                     "differential shape");
    if (k + 1 < diff.size()) {
      ProjMat sq = proj_compose(diff[k], diff[k + 1]);
      for (const auto& e : sq.ent)
        for (u32 c : e) require_internal(c == 0, "d∘d nonzero");
    }
  }
}

TwoTerm tt_zero(AlgebraPtr A) {
  TwoTerm t;
  t.A = A;
  t.d = ProjMat::zero(A, {}, {});
  return t;
}

TwoTerm tt_stalk(AlgebraPtr A, int v) {
  TwoTerm t;
  t.A = A;
  t.deg_0 = {v};
  t.d = ProjMat::zero(A, {}, {v});
  return t;
}

TwoTerm tt_shifted(AlgebraPtr A, int v) {
  TwoTerm t;
  t.A = A;
  t.deg_m1 = {v};
  t.d = ProjMat::zero(A, {v}, {});
  return t;
}

TwoTerm tt_presentation(const Module& M) {
  MinPresentation mp = minimal_presentation(M);
  TwoTerm t;
  t.A = M.A;
  t.deg_m1 = mp.p1_verts;
  t.deg_0 = mp.p0_verts;
  t.d = mp.d;
  if (mp.p1_verts.empty()) t.d = ProjMat::zero(M.A, {}, mp.p0_verts);
  return t;
}

TwoTerm tt_direct_sum(const std::vector<const TwoTerm*>& parts) {
  require_internal(!parts.empty(), "empty direct sum needs an algebra");
  AlgebraPtr A = parts[0]->A;
  TwoTerm t;
  t.A = A;
  for (const TwoTerm* p : parts) {
    t.deg_m1.insert(t.deg_m1.end(), p->deg_m1.begin(), p->deg_m1.end());
    t.deg_0.insert(t.deg_0.end(), p->deg_0.begin(), p->deg_0.end());
  }
  t.d = ProjMat::zero(A, t.deg_m1, t.deg_0);
  int ro = 0, co = 0;
  for (const TwoTerm* p : parts) {
    for (size_t i = 0; i < p->deg_m1.size(); ++i)
      for (size_t j = 0; j < p->deg_0.size(); ++j)
        t.d.at(ro + static_cast<int>(i), co + static_cast<int>(j)) =
            p->d.at(static_cast<int>(i), static_cast<int>(j));
    ro += static_cast<int>(p->deg_m1.size());
    co += static_cast<int>(p->deg_0.size());
  }
  return t;
}

TwoTerm tt_direct_sum(const std::vector<TwoTerm>& parts) {
  std::vector<const TwoTerm*> ptrs;
  for (const TwoTerm& p : parts) ptrs.push_back(&p);
  return tt_direct_sum(ptrs);
}

PComplex tt_to_pc(const TwoTerm& x) {
  PComplex c;
  c.A = x.A;
  c.lo = -1;
  c.terms = {x.deg_m1, x.deg_0};
  c.diff = {x.d};
  return c;
}

TwoTerm pc_to_tt(const PComplex& x) {
  TwoTerm t;
  t.A = x.A;
  for (size_t k = 0; k < x.terms.size(); ++k) {
    int deg = x.lo + static_cast<int>(k);
    if (deg == -1 || deg == 0) continue;
    if (!x.terms[k].empty())
      fail(ErrCode::Internal,
           "NotTwoTermReducible: nonzero part survives in degree " + std::to_string(deg));
  }
  int dm1 = -1 - x.lo;
  int d0 = -x.lo;
  t.deg_m1 =
      (dm1 >= 0 && dm1 < static_cast<int>(x.terms.size())) ? x.terms[dm1] : std::vector<int>{};
  t.deg_0 = (d0 >= 0 && d0 < static_cast<int>(x.terms.size())) ? x.terms[d0] : std::vector<int>{};
  if (dm1 >= 0 && dm1 < static_cast<int>(x.diff.size()))
    t.d = x.diff[dm1];
  else
    t.d = ProjMat::zero(x.A, t.deg_m1, t.deg_0);
  return t;
}

PComplex pc_shift(const PComplex& x, int s) {
  PComplex c = x;
  c.lo = x.lo - s;
  if (s % 2 != 0)
    for (ProjMat& d : c.diff) d = pm_neg(d);
  return c;
}

PComplex pc_minimize(const PComplex& x) {
  PComplex c = x;
  const FDAlgebra& A = *c.A;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < c.diff.size() && !changed; ++k) {
      ProjMat& D = c.diff[k];
      int R = static_cast<int>(D.src_verts.size()), C = static_cast<int>(D.tgt_verts.size());
      for (int r = 0; r < R && !changed; ++r) {
        for (int cc = 0; cc < C && !changed; ++cc) {
          if (D.src_verts[r] != D.tgt_verts[cc]) continue;
          int v = D.src_verts[r];
          if (!A.corner_unit(D.at(r, cc), v)) continue;
          std::vector<u32> uinv = A.corner_inverse(D.at(r, cc), v);
          // clear column cc by row operations; mirror on the incoming diff
          for (int i = 0; i < R; ++i) {
            if (i == r) continue;
            std::vector<u32> lam = A.product(D.at(i, cc), uinv);
            bool lz = true;
            for (u32 t : lam)
              if (t) lz = false;
            if (lz) continue;
            for (int j = 0; j < C; ++j) {
              std::vector<u32> corr = A.product(lam, D.at(r, j));
              for (int t = 0; t < A.dim; ++t) D.at(i, j)[t] = A.field.sub(D.at(i, j)[t], corr[t]);
            }
            if (k > 0) {
              ProjMat& P = c.diff[k - 1];
              for (size_t xr = 0; xr < P.src_verts.size(); ++xr) {
                std::vector<u32> corr = A.product(P.at(static_cast<int>(xr), i), lam);
                P.at(static_cast<int>(xr), r) = A.add(P.at(static_cast<int>(xr), r), corr);
              }
            }
          }
          // clear row r by column operations; mirror on the outgoing diff
          for (int j = 0; j < C; ++j) {
            if (j == cc) continue;
            std::vector<u32> mu = A.product(uinv, D.at(r, j));
            bool mz = true;
            for (u32 t : mu)
              if (t) mz = false;
            if (mz) continue;
            for (int i = 0; i < R; ++i) {
              std::vector<u32> corr = A.product(D.at(i, cc), mu);
              for (int t = 0; t < A.dim; ++t) D.at(i, j)[t] = A.field.sub(D.at(i, j)[t], corr[t]);
            }
            if (k + 1 < c.diff.size()) {
              ProjMat& N = c.diff[k + 1];
              for (size_t ny = 0; ny < N.tgt_verts.size(); ++ny) {
                std::vector<u32> corr = A.product(mu, N.at(j, static_cast<int>(ny)));
                N.at(cc, static_cast<int>(ny)) = A.add(N.at(cc, static_cast<int>(ny)), corr);
              }
            }
          }
          if (k > 0) {
            ProjMat& P = c.diff[k - 1];
            for (size_t xr = 0; xr < P.src_verts.size(); ++xr)
              require_internal(P.at(static_cast<int>(xr), r) == A.zero(), "cancellation leak (in)");
          }
          if (k + 1 < c.diff.size()) {
            ProjMat& N = c.diff[k + 1];
            for (size_t ny = 0; ny < N.tgt_verts.size(); ++ny)
              require_internal(N.at(cc, static_cast<int>(ny)) == A.zero(),
                               "cancellation leak (out)");
          }
          auto drop_row = [&](ProjMat& M, int idx) {
            ProjMat n = M;
            n.src_verts.erase(n.src_verts.begin() + idx);
            n.ent.clear();
            for (int i = 0; i < static_cast<int>(M.src_verts.size()); ++i) {
              if (i == idx) continue;
              for (int j = 0; j < static_cast<int>(M.tgt_verts.size()); ++j)
                n.ent.push_back(M.at(i, j));
            }
            M = std::move(n);
          };
          auto drop_col = [&](ProjMat& M, int idx) {
            ProjMat n = M;
            n.tgt_verts.erase(n.tgt_verts.begin() + idx);
            n.ent.clear();
            for (int i = 0; i < static_cast<int>(M.src_verts.size()); ++i)
              for (int j = 0; j < static_cast<int>(M.tgt_verts.size()); ++j)
                if (j != idx) n.ent.push_back(M.at(i, j));
            M = std::move(n);
          };
          if (k > 0) drop_col(c.diff[k - 1], r);
          if (k + 1 < c.diff.size()) drop_row(c.diff[k + 1], cc);
          drop_row(D, r);
          drop_col(D, cc);
          c.terms[k].erase(c.terms[k].begin() + r);
          c.terms[k + 1].erase(c.terms[k + 1].begin() + cc);
          changed = true;
        }
      }
    }
  }
  c.check();
  for (const ProjMat& d : c.diff) require_internal(pm_entries_in_radical(d), "minimize left a unit");
  return c;
}

TwoTerm tt_minimize(const PComplex& x) { return pc_to_tt(pc_minimize(x)); }

Module h0_module(const TwoTerm& x) {
  ModHom d = proj_to_modhom(x.d, pm_module(x.A, x.deg_m1), pm_module(x.A, x.deg_0));
  return cokernel_module(d, nullptr);
}

Module hm1_module(const TwoTerm& x) {
  ModHom d = proj_to_modhom(x.d, pm_module(x.A, x.deg_m1), pm_module(x.A, x.deg_0));
  return kernel_module(d, nullptr);
}

TTMap tt_identity(const TwoTerm& x) {
  TTMap f;
  f.fm1 = pm_identity(x.A, x.deg_m1);
  f.f0 = pm_identity(x.A, x.deg_0);
  return f;
}

TTMap tt_zero_map(const TwoTerm& x, const TwoTerm& y) {
  TTMap f;
  f.fm1 = ProjMat::zero(x.A, x.deg_m1, y.deg_m1);
  f.f0 = ProjMat::zero(x.A, x.deg_0, y.deg_0);
  return f;
}

TTMap tt_compose(const TTMap& f, const TTMap& g) {
  TTMap h;
  h.fm1 = proj_compose(f.fm1, g.fm1);
  h.f0 = proj_compose(f.f0, g.f0);
  return h;
}

bool tt_is_chain_map(const TwoTerm& x, const TwoTerm& y, const TTMap& f) {
  ProjMat lhs = proj_compose(x.d, f.f0);
  ProjMat rhs = proj_compose(f.fm1, y.d);
  return lhs.ent == rhs.ent;
}

PComplex tt_cone(const TwoTerm& x, const TwoTerm& y, const TTMap& f) {
  require_internal(tt_is_chain_map(x, y, f), "cone of a non-chain map");
  PComplex c;
  c.A = x.A;
  c.lo = -2;
  std::vector<int> mid = x.deg_0;
  mid.insert(mid.end(), y.deg_m1.begin(), y.deg_m1.end());
  c.terms = {x.deg_m1, mid, y.deg_0};
  ProjMat d2 = ProjMat::zero(x.A, x.deg_m1, mid);
  for (size_t i = 0; i < x.deg_m1.size(); ++i) {
    for (size_t j = 0; j < x.deg_0.size(); ++j)
      d2.at(static_cast<int>(i), static_cast<int>(j)) =
          x.A->scale(x.A->field.neg(1), x.d.at(static_cast<int>(i), static_cast<int>(j)));
    for (size_t j = 0; j < y.deg_m1.size(); ++j)
      d2.at(static_cast<int>(i), static_cast<int>(x.deg_0.size() + j)) =
          f.fm1.at(static_cast<int>(i), static_cast<int>(j));
  }
  ProjMat d1 = ProjMat::zero(x.A, mid, y.deg_0);
  for (size_t j = 0; j < y.deg_0.size(); ++j) {
    for (size_t i = 0; i < x.deg_0.size(); ++i)
      d1.at(static_cast<int>(i), static_cast<int>(j)) =
          f.f0.at(static_cast<int>(i), static_cast<int>(j));
    for (size_t i = 0; i < y.deg_m1.size(); ++i)
      d1.at(static_cast<int>(x.deg_0.size() + i), static_cast<int>(j)) =
          y.d.at(static_cast<int>(i), static_cast<int>(j));
  }
  c.diff = {d2, d1};
  c.check();
  return c;
}

TwoTerm tt_cone_minimal(const TwoTerm& x, const TwoTerm& y, const TTMap& f) {
  return tt_minimize(tt_cone(x, y, f));
}

TwoTerm tt_cocone_minimal(const TwoTerm& x, const TwoTerm& y, const TTMap& f) {
  return tt_minimize(pc_shift(tt_cone(x, y, f), -1));
}

PMCoords::PMCoords(AlgebraPtr alg, std::vector<int> src_verts, std::vector<int> tgt_verts)
    : A(std::move(alg)), src(std::move(src_verts)), tgt(std::move(tgt_verts)) {
  for (size_t s = 0; s < src.size(); ++s)
    for (size_t t = 0; t < tgt.size(); ++t)
      for (int b : A->block_basis[src[s]][tgt[t]])
        slots.push_back({static_cast<int>(s), static_cast<int>(t), b});
}

std::vector<u32> PMCoords::to_vec(const ProjMat& m) const {
  std::vector<u32> v(slots.size(), 0);
  for (size_t i = 0; i < slots.size(); ++i) v[i] = m.at(slots[i].s, slots[i].t)[slots[i].basis_elt];
  return v;
}

ProjMat PMCoords::from_vec(const std::vector<u32>& v) const {
  ProjMat m = ProjMat::zero(A, src, tgt);
  for (size_t i = 0; i < slots.size(); ++i) m.at(slots[i].s, slots[i].t)[slots[i].basis_elt] = v[i];
  return m;
}

std::vector<u32> HomTT::full_vec(const TTMap& f) const {
  std::vector<u32> v = cm1->to_vec(f.fm1);
  std::vector<u32> w = c0->to_vec(f.f0);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

std::vector<u32> HomTT::coords(const TTMap& f) const {
  const Fp& F = cm1->A->field;
  std::vector<u32> v = full_vec(f);
  std::vector<u32> sol(BH.cols, 0);
  if (BH.cols > 0) {
    bool ok = solve(F, BH, v, sol);
    require_internal(ok, "chain map outside hom span");
  } else {
    for (u32 c : v) require_internal(c == 0, "chain map outside hom span");
  }
  return std::vector<u32>(sol.begin(), sol.begin() + b);
}

HomTT hom_tt(const TwoTerm& x, const TwoTerm& y) {
  const Fp& F = x.A->field;
  HomTT H;
  H.cm1 = std::make_shared<PMCoords>(x.A, x.deg_m1, y.deg_m1);
  H.c0 = std::make_shared<PMCoords>(x.A, x.deg_0, y.deg_0);
  int n1 = H.cm1->dim(), n0 = H.c0->dim();
  int vars = n1 + n0;
  PMCoords target(x.A, x.deg_m1, y.deg_0);
  Matrix sys(target.dim(), vars);
  for (int c = 0; c < vars; ++c) {
    std::vector<u32> unit(vars, 0);
    unit[c] = 1;
    TTMap f;
    f.fm1 = H.cm1->from_vec(std::vector<u32>(unit.begin(), unit.begin() + n1));
    f.f0 = H.c0->from_vec(std::vector<u32>(unit.begin() + n1, unit.end()));
    ProjMat lhs = proj_compose(x.d, f.f0);
    ProjMat rhs = proj_compose(f.fm1, y.d);
    std::vector<u32> lv = target.to_vec(lhs), rv = target.to_vec(rhs);
    for (int r = 0; r < target.dim(); ++r) sys.at(r, c) = F.sub(lv[r], rv[r]);
  }
  Matrix chain = null_space(F, sys);
  PMCoords scoords(x.A, x.deg_0, y.deg_m1);
  RowSpan hspan(vars);
  std::vector<std::vector<u32>> hbasis;
  for (int c = 0; c < scoords.dim(); ++c) {
    std::vector<u32> unit(scoords.dim(), 0);
    unit[c] = 1;
    ProjMat s = scoords.from_vec(unit);
    TTMap h;
    h.fm1 = proj_compose(x.d, s);
    h.f0 = proj_compose(s, y.d);
    std::vector<u32> v = H.full_vec(h);
    if (hspan.add(F, v)) hbasis.push_back(v);
  }
  RowSpan total = hspan;
  std::vector<std::vector<u32>> bbasis;
  for (int c = 0; c < chain.cols; ++c) {
    std::vector<u32> v(vars);
    for (int r = 0; r < vars; ++r) v[r] = chain.at(r, c);
    if (total.add(F, v)) bbasis.push_back(v);
  }
  H.b = static_cast<int>(bbasis.size());
  H.BH = Matrix(vars, H.b + static_cast<int>(hbasis.size()));
  for (int c = 0; c < H.b; ++c)
    for (int r = 0; r < vars; ++r) H.BH.at(r, c) = bbasis[c][r];
  for (size_t c = 0; c < hbasis.size(); ++c)
    for (int r = 0; r < vars; ++r) H.BH.at(r, H.b + static_cast<int>(c)) = hbasis[c][r];
  for (const std::vector<u32>& v : bbasis) {
    TTMap f;
    f.fm1 = H.cm1->from_vec(std::vector<u32>(v.begin(), v.begin() + n1));
    f.f0 = H.c0->from_vec(std::vector<u32>(v.begin() + n1, v.end()));
    H.basis.push_back(std::move(f));
  }
  return H;
}

ExtTT ext_tt(const TwoTerm& x, const TwoTerm& y) {
  const Fp& F = x.A->field;
  ExtTT E;
  E.coords = std::make_shared<PMCoords>(x.A, x.deg_m1, y.deg_0);
  int vars = E.coords->dim();
  RowSpan rel(vars);
  std::vector<std::vector<u32>> rbasis;
  PMCoords s0(x.A, x.deg_0, y.deg_0);
  for (int c = 0; c < s0.dim(); ++c) {
    std::vector<u32> unit(s0.dim(), 0);
    unit[c] = 1;
    std::vector<u32> v = E.coords->to_vec(proj_compose(x.d, s0.from_vec(unit)));
    if (rel.add(F, v)) rbasis.push_back(v);
  }
  PMCoords s1(x.A, x.deg_m1, y.deg_m1);
  for (int c = 0; c < s1.dim(); ++c) {
    std::vector<u32> unit(s1.dim(), 0);
    unit[c] = 1;
    std::vector<u32> v = E.coords->to_vec(proj_compose(s1.from_vec(unit), y.d));
    if (rel.add(F, v)) rbasis.push_back(v);
  }
  RowSpan total = rel;
  std::vector<std::vector<u32>> bbasis;
  for (int c = 0; c < vars; ++c) {
    std::vector<u32> unit(vars, 0);
    unit[c] = 1;
    if (total.add(F, unit)) bbasis.push_back(unit);
  }
  E.b = static_cast<int>(bbasis.size());
  E.BH = Matrix(vars, E.b + static_cast<int>(rbasis.size()));
  for (int c = 0; c < E.b; ++c)
    for (int r = 0; r < vars; ++r) E.BH.at(r, c) = bbasis[c][r];
  for (size_t c = 0; c < rbasis.size(); ++c)
    for (int r = 0; r < vars; ++r) E.BH.at(r, E.b + static_cast<int>(c)) = rbasis[c][r];
  return E;
}

int ext_dim(const TwoTerm& x, const TwoTerm& y) { return ext_tt(x, y).dim(); }

namespace {

Matrix ttmap_k_matrix(const TTMap& f) {
  Matrix a = pm_k_matrix(f.fm1);
  Matrix b = pm_k_matrix(f.f0);
  Matrix m(a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
  return m;
}

// chain endomorphism algebra (no homotopy quotient)
std::vector<TTMap> chain_endos(const TwoTerm& x) {
  const Fp& F = x.A->field;
  PMCoords cm1(x.A, x.deg_m1, x.deg_m1), c0(x.A, x.deg_0, x.deg_0);
  int n1 = cm1.dim();
  int vars = n1 + c0.dim();
  PMCoords target(x.A, x.deg_m1, x.deg_0);
  Matrix sys(target.dim(), vars);
  for (int c = 0; c < vars; ++c) {
    std::vector<u32> unit(vars, 0);
    unit[c] = 1;
    TTMap f;
    f.fm1 = cm1.from_vec(std::vector<u32>(unit.begin(), unit.begin() + n1));
    f.f0 = c0.from_vec(std::vector<u32>(unit.begin() + n1, unit.end()));
    ProjMat lhs = proj_compose(x.d, f.f0);
    ProjMat rhs = proj_compose(f.fm1, x.d);
    std::vector<u32> lv = target.to_vec(lhs), rv = target.to_vec(rhs);
    for (int r = 0; r < target.dim(); ++r) sys.at(r, c) = F.sub(lv[r], rv[r]);
  }
  Matrix chain = null_space(F, sys);
  std::vector<TTMap> out;
  for (int c = 0; c < chain.cols; ++c) {
    std::vector<u32> v(vars);
    for (int r = 0; r < vars; ++r) v[r] = chain.at(r, c);
    TTMap f;
    f.fm1 = cm1.from_vec(std::vector<u32>(v.begin(), v.begin() + n1));
    f.f0 = c0.from_vec(std::vector<u32>(v.begin() + n1, v.end()));
    out.push_back(std::move(f));
  }
  return out;
}

TTMap ttmap_add_scalar(const TwoTerm& x, TTMap f, u32 c) {
  for (size_t i = 0; i < x.deg_m1.size(); ++i)
    f.fm1.at(static_cast<int>(i), static_cast<int>(i)) = x.A->add(
        f.fm1.at(static_cast<int>(i), static_cast<int>(i)), x.A->scale(c, x.A->idem(x.deg_m1[i])));
  for (size_t i = 0; i < x.deg_0.size(); ++i)
    f.f0.at(static_cast<int>(i), static_cast<int>(i)) = x.A->add(
        f.f0.at(static_cast<int>(i), static_cast<int>(i)), x.A->scale(c, x.A->idem(x.deg_0[i])));
  return f;
}

// split X along an exact chain idempotent e
std::pair<TwoTerm, TwoTerm> tt_split_by_idempotent(const TwoTerm& x, const TTMap& e) {
  AlgebraPtr A = x.A;
  const Fp& F = A->field;
  auto conjugator = [&](const std::vector<int>& verts,
                        const ProjMat& ecomp) -> std::pair<ProjMat, std::vector<bool>> {
    int n = static_cast<int>(verts.size());
    Matrix s = pm_scalar_part(ecomp);
    Matrix im = column_space(F, s);
    Matrix ker = null_space(F, s);
    require_internal(im.cols + ker.cols == n, "idempotent scalar split");
    Matrix S(n, n);
    for (int c = 0; c < im.cols; ++c)
      for (int r = 0; r < n; ++r) S.at(r, c) = im.at(r, c);
    for (int c = 0; c < ker.cols; ++c)
      for (int r = 0; r < n; ++r) S.at(r, im.cols + c) = ker.at(r, c);
    std::vector<int> colvert(n, -1);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) {
        if (S.at(r, c)) {
          require_internal(colvert[c] == -1 || colvert[c] == verts[r],
                           "split column mixes vertices");
          colvert[c] = verts[r];
        }
      }
    }
    std::vector<bool> in_image(n, false);
    for (int c = 0; c < im.cols; ++c) in_image[c] = true;
    std::vector<int> new_verts(n);
    for (int c = 0; c < n; ++c) new_verts[c] = colvert[c] < 0 ? verts[c] : colvert[c];
    // W: T_new -> T_old with W̄ = S^{-1}, realized as scalar algebra entries
    Matrix Sinv = mat_inverse(F, S);
    ProjMat W = ProjMat::zero(A, new_verts, verts);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r)
        if (Sinv.at(c, r)) W.at(c, r) = A->scale(Sinv.at(c, r), A->idem(verts[r]));
    ProjMat Winv = pm_inverse(W);
    ProjMat enew = proj_compose(proj_compose(W, ecomp), Winv);
    // exact diagonal idempotent f matching the scalar part of enew
    ProjMat fdiag = ProjMat::zero(A, new_verts, new_verts);
    for (int c = 0; c < n; ++c)
      if (in_image[c]) fdiag.at(c, c) = A->idem(new_verts[c]);
    ProjMat one = pm_identity(A, new_verts);
    ProjMat om_e = one, om_f = one;
    for (size_t i = 0; i < om_e.ent.size(); ++i) {
      om_e.ent[i] = A->add(om_e.ent[i], A->scale(F.neg(1), enew.ent[i]));
      om_f.ent[i] = A->add(om_f.ent[i], A->scale(F.neg(1), fdiag.ent[i]));
    }
    ProjMat u = proj_compose(enew, fdiag);
    ProjMat u2 = proj_compose(om_e, om_f);
    for (size_t i = 0; i < u.ent.size(); ++i) u.ent[i] = A->add(u.ent[i], u2.ent[i]);
    // u^{-1} ⊛ e_new ⊛ u = f; total change: Φ = u^{-1} ⊛ W (T_final -> T_old)
    ProjMat phi = proj_compose(pm_inverse(u), W);
    return {phi, in_image};
  };
  auto [phi1, im1] = conjugator(x.deg_m1, e.fm1);
  auto [phi0, im0] = conjugator(x.deg_0, e.f0);
  ProjMat dnew = proj_compose(proj_compose(phi1, x.d), pm_inverse(phi0));
  TwoTerm a, b;
  a.A = b.A = A;
  std::vector<int> a1pos, b1pos, a0pos, b0pos;
  for (size_t i = 0; i < phi1.src_verts.size(); ++i) {
    if (im1[i]) {
      a.deg_m1.push_back(phi1.src_verts[i]);
      a1pos.push_back(static_cast<int>(i));
    } else {
      b.deg_m1.push_back(phi1.src_verts[i]);
      b1pos.push_back(static_cast<int>(i));
    }
  }
  for (size_t j = 0; j < phi0.src_verts.size(); ++j) {
    if (im0[j]) {
      a.deg_0.push_back(phi0.src_verts[j]);
      a0pos.push_back(static_cast<int>(j));
    } else {
      b.deg_0.push_back(phi0.src_verts[j]);
      b0pos.push_back(static_cast<int>(j));
    }
  }
  a.d = ProjMat::zero(A, a.deg_m1, a.deg_0);
  b.d = ProjMat::zero(A, b.deg_m1, b.deg_0);
  auto index_of = [](const std::vector<int>& v, int x2) {
    return static_cast<int>(std::find(v.begin(), v.end(), x2) - v.begin());
  };
  for (size_t i = 0; i < phi1.src_verts.size(); ++i) {
    for (size_t j = 0; j < phi0.src_verts.size(); ++j) {
      const std::vector<u32>& entv = dnew.at(static_cast<int>(i), static_cast<int>(j));
      if (im1[i] != im0[j]) {
        require_internal(entv == A->zero(), "idempotent does not split the differential");
        continue;
      }
      if (im1[i])
        a.d.at(index_of(a1pos, static_cast<int>(i)), index_of(a0pos, static_cast<int>(j))) = entv;
      else
        b.d.at(index_of(b1pos, static_cast<int>(i)), index_of(b0pos, static_cast<int>(j))) = entv;
    }
  }
  return {a, b};
}

// minimal polynomial of a square matrix (duplicated small helper)
std::vector<u32> matrix_min_poly(const Fp& F, const Matrix& S) {
  int n = S.rows;
  if (n == 0) return {1};
  std::vector<Matrix> pows = {Matrix::identity(n)};
  RowSpan span(n * n);
  auto vec_of = [&](const Matrix& m) { return std::vector<u32>(m.a.begin(), m.a.end()); };
  std::vector<std::vector<u32>> vecs = {vec_of(pows[0])};
  span.add(F, vecs[0]);
  for (int d = 1;; ++d) {
    Matrix nxt = mat_mul(F, pows.back(), S);
    std::vector<u32> v = vec_of(nxt);
    if (span.contains(F, v)) {
      Matrix sys(n * n, d);
      for (int i = 0; i < d; ++i)
        for (int r = 0; r < n * n; ++r) sys.at(r, i) = vecs[i][r];
      std::vector<u32> sol;
      bool ok = solve(F, sys, v, sol);
      require_internal(ok, "minpoly solve");
      std::vector<u32> f(d + 1, 0);
      for (int i = 0; i < d; ++i) f[i] = F.neg(sol[i]);
      f[d] = 1;
      return f;
    }
    pows.push_back(nxt);
    vecs.push_back(v);
    span.add(F, v);
  }
}

void poly_trim(std::vector<u32>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<u32> poly_mod2(const Fp& F, std::vector<u32> a, const std::vector<u32>& m) {
  poly_trim(a);
  while (a.size() >= m.size()) {
    u32 c = F.mul(a.back(), F.inv(m.back()));
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, m[i]));
    poly_trim(a);
  }
  return a;
}

std::vector<u32> poly_mulmod2(const Fp& F, const std::vector<u32>& a, const std::vector<u32>& b,
                              const std::vector<u32>& m) {
  std::vector<u32> c(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return poly_mod2(F, std::move(c), m);
}

std::vector<u32> poly_gcd2(const Fp& F, std::vector<u32> a, std::vector<u32> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    std::vector<u32> r = poly_mod2(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u32 inv = F.inv(a.back());
    for (u32& c : a) c = F.mul(inv, c);
  }
  return a;
}

std::vector<u32> poly_roots2(const Fp& F, const std::vector<u32>& f0, Rng& rng) {
  std::vector<u32> f = f0;
  poly_trim(f);
  std::vector<u32> roots;
  if (f.size() <= 1) return roots;
  std::vector<u32> xp = {1};
  {
    std::vector<u32> base = {0, 1};
    u64 e = F.p;
    while (e) {
      if (e & 1) xp = poly_mulmod2(F, xp, base, f);
      base = poly_mulmod2(F, base, base, f);
      e >>= 1;
    }
  }
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = F.sub(xp[1], 1);
  std::vector<u32> g = poly_gcd2(F, f, xp);
  std::function<void(std::vector<u32>)> split = [&](std::vector<u32> h) {
    poly_trim(h);
    if (h.size() <= 1) return;
    if (h.size() == 2) {
      roots.push_back(F.mul(F.neg(h[0]), F.inv(h[1])));
      return;
    }
    for (int tries = 0; tries < 64; ++tries) {
      u32 a = static_cast<u32>(rng() % F.p);
      std::vector<u32> w = {1};
      std::vector<u32> base = {a, 1};
      u64 e = (F.p - 1) / 2;
      while (e) {
        if (e & 1) w = poly_mulmod2(F, w, base, h);
        base = poly_mulmod2(F, base, base, h);
        e >>= 1;
      }
      if (!w.empty()) w[0] = F.sub(w[0], 1);
      std::vector<u32> d = poly_gcd2(F, h, w);
      if (d.size() > 1 && d.size() < h.size()) {
        std::vector<u32> quo(h.size() - d.size() + 1, 0), rem = h;
        while (rem.size() >= d.size()) {
          u32 c = F.mul(rem.back(), F.inv(d.back()));
          size_t off = rem.size() - d.size();
          quo[off] = c;
          for (size_t i = 0; i < d.size(); ++i) rem[off + i] = F.sub(rem[off + i], F.mul(c, d[i]));
          poly_trim(rem);
        }
        split(d);
        split(quo);
        return;
      }
    }
    require_internal(false, "equal-degree splitting did not converge");
  };
  split(g);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<TwoTerm> tt_decompose(const TwoTerm& x, Rng& rng) {
  if (x.deg_m1.empty() && x.deg_0.empty()) return {};
  const Fp& F = x.A->field;
  std::vector<TTMap> E = chain_endos(x);
  if (F.p <= E.size()) fail(ErrCode::FieldTooSmall, "prime does not exceed dim of chain endos");
  if (E.size() == 1) return {x};
  std::vector<Matrix> mats;
  for (const TTMap& f : E) mats.push_back(ttmap_k_matrix(f));
  int total = mats[0].rows;
  Matrix G(static_cast<int>(mats.size()), static_cast<int>(mats.size()));
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i; j < mats.size(); ++j) {
      Matrix P = mat_mul(F, mats[i], mats[j]);
      u32 tr = 0;
      for (int t = 0; t < total; ++t) tr = F.add(tr, P.at(t, t));
      G.at(static_cast<int>(i), static_cast<int>(j)) = tr;
      G.at(static_cast<int>(j), static_cast<int>(i)) = tr;
    }
  int raddim = static_cast<int>(mats.size()) - mat_rank(F, G);
  if (static_cast<int>(mats.size()) - raddim == 1) return {x};  // local

  for (int trial = 0; trial < 64; ++trial) {
    TTMap s = tt_zero_map(x, x);
    for (const TTMap& f : E) {
      u32 c = static_cast<u32>(rng() % F.p);
      if (!c) continue;
      for (size_t i = 0; i < s.fm1.ent.size(); ++i)
        s.fm1.ent[i] = x.A->add(s.fm1.ent[i], x.A->scale(c, f.fm1.ent[i]));
      for (size_t i = 0; i < s.f0.ent.size(); ++i)
        s.f0.ent[i] = x.A->add(s.f0.ent[i], x.A->scale(c, f.f0.ent[i]));
    }
    Matrix S = ttmap_k_matrix(s);
    std::vector<u32> mp = matrix_min_poly(F, S);
    for (u32 lam : poly_roots2(F, mp, rng)) {
      // m_T(x) = mp(x + λ) = x^a · g with g(0) ≠ 0
      std::vector<u32> mt(mp.size(), 0);
      {
        std::vector<std::vector<u32>> binom(mp.size(), std::vector<u32>(mp.size(), 0));
        for (size_t n2 = 0; n2 < mp.size(); ++n2) {
          binom[n2][0] = 1;
          for (size_t k2 = 1; k2 <= n2; ++k2)
            binom[n2][k2] =
                F.add(n2 >= 1 ? binom[n2 - 1][k2 - 1] : 0, (n2 >= 1 && k2 <= n2 - 1) ? binom[n2 - 1][k2] : 0);
        }
        for (size_t n2 = 0; n2 < mp.size(); ++n2) {
          if (!mp[n2]) continue;
          u32 lp = 1;
          for (size_t k2 = 0; k2 <= n2; ++k2) {
            mt[n2 - k2] = F.add(mt[n2 - k2], F.mul(mp[n2], F.mul(binom[n2][k2], lp)));
            lp = F.mul(lp, lam);
          }
        }
      }
      size_t a = 0;
      while (a < mt.size() && mt[a] == 0) ++a;
      if (a == 0) continue;  // not a root after all
      std::vector<u32> gpoly(mt.begin() + a, mt.end());
      poly_trim(gpoly);
      if (gpoly.size() <= 1) continue;  // T nilpotent, no split here
      // h ≡ 1 mod x^a and h ≡ 0 mod g: h = w·g with w = g^{-1} mod x^a
      std::vector<u32> w(a, 0);
      u32 g0inv = F.inv(gpoly[0]);
      w[0] = g0inv;
      for (size_t k2 = 1; k2 < a; ++k2) {
        u32 acc2 = 0;
        for (size_t i = 1; i <= k2; ++i)
          if (i < gpoly.size()) acc2 = F.add(acc2, F.mul(gpoly[i], w[k2 - i]));
        w[k2] = F.mul(F.neg(acc2), g0inv);
      }
      std::vector<u32> h(w.size() + gpoly.size(), 0);
      for (size_t i = 0; i < w.size(); ++i) {
        if (!w[i]) continue;
        for (size_t j = 0; j < gpoly.size(); ++j) h[i + j] = F.add(h[i + j], F.mul(w[i], gpoly[j]));
      }
      // e = h(T) with T = s - λ, evaluated by Horner at the chain level
      TTMap T = ttmap_add_scalar(x, s, F.neg(lam));
      TTMap e = tt_zero_map(x, x);
      for (size_t i = h.size(); i-- > 0;) {
        e = tt_compose(e, T);
        e = ttmap_add_scalar(x, e, h[i]);
      }
      TTMap ee = tt_compose(e, e);
      require_internal(ee.fm1.ent == e.fm1.ent && ee.f0.ent == e.f0.ent,
                       "Fitting idempotent is not idempotent");
      Matrix ek = ttmap_k_matrix(e);
      int rk = mat_rank(F, ek);
      if (rk == 0 || rk == ek.rows) continue;
      auto [part1, part2] = tt_split_by_idempotent(x, e);
      std::vector<TwoTerm> out = tt_decompose(part1, rng);
      for (TwoTerm& t2 : tt_decompose(part2, rng)) out.push_back(std::move(t2));
      return out;
    }
  }
  require_internal(false, "failed to split a decomposable two-term complex");
  return {};
}

bool tt_is_isomorphic_indec(const TwoTerm& x, const TwoTerm& y) {
  std::vector<int> a = x.deg_m1, b = y.deg_m1, c = x.deg_0, d = y.deg_0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::sort(c.begin(), c.end());
  std::sort(d.begin(), d.end());
  if (a != b || c != d) return false;
  if (x.deg_m1.empty() && x.deg_0.empty()) return true;
  HomTT xy = hom_tt(x, y);
  if (xy.dim() == 0) return false;
  HomTT yx = hom_tt(y, x);
  if (yx.dim() == 0) return false;
  for (const TTMap& f : xy.basis) {
    for (const TTMap& g : yx.basis) {
      TTMap h = tt_compose(f, g);
      if (pm_is_iso(h.fm1) && pm_is_iso(h.f0)) return true;
    }
  }
  return false;
}

}  // namespace presilt
