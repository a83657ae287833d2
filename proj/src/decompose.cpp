#include "decompose.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace presilt {

namespace {

// --- polynomial helpers over GF(p), coefficients low to high ---

using Poly = std::vector<u32>;

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(const Fp& F, Poly a, const Poly& m) {
  poly_trim(a);
  while (a.size() >= m.size()) {
    u32 c = F.mul(a.back(), F.inv(m.back()));
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, m[i]));
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Fp& F, const Poly& a, const Poly& b, const Poly& m) {
  Poly c(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return poly_mod(F, std::move(c), m);
}

Poly poly_powmod(const Fp& F, Poly base, u64 e, const Poly& m) {
  Poly r = {1};
  base = poly_mod(F, std::move(base), m);
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, base, m);
    base = poly_mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(const Fp& F, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u32 inv = F.inv(a.back());
    for (u32& c : a) c = F.mul(inv, c);
  }
  return a;
}

// all roots of f lying in GF(p)
std::vector<u32> poly_roots(const Fp& F, const Poly& f0, Rng& rng) {
  Poly f = f0;
  poly_trim(f);
  std::vector<u32> roots;
  if (f.size() <= 1) return roots;
  // split off x = 0
  if (f[0] == 0) {
    roots.push_back(0);
    Poly g(f.begin() + 1, f.end());
    for (u32 r : poly_roots(F, g, rng)) roots.push_back(r);
    return roots;
  }
  // keep only the part splitting into distinct linear factors
  Poly xp = poly_powmod(F, {0, 1}, F.p, f);  // x^p mod f
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = F.sub(xp[1], 1);  // x^p - x
  Poly g = poly_gcd(F, f, xp);
  std::function<void(Poly)> split = [&](Poly h) {
    poly_trim(h);
    if (h.size() <= 1) return;
    if (h.size() == 2) {
      roots.push_back(F.mul(F.neg(h[0]), F.inv(h[1])));
      return;
    }
    for (int tries = 0; tries < 64; ++tries) {
      u32 a = static_cast<u32>(rng() % F.p);
      Poly w = poly_powmod(F, {a, 1}, (F.p - 1) / 2, h);
      if (!w.empty()) w[0] = F.sub(w[0], 1);
      Poly d = poly_gcd(F, h, w);
      if (d.size() > 1 && d.size() < h.size()) {
        // h = d * (h/d)
        Poly q = h;
        // long division h / d
        Poly quo(h.size() - d.size() + 1, 0);
        Poly rem = h;
        while (rem.size() >= d.size() && rem.size() > 1) {
          u32 c = F.mul(rem.back(), F.inv(d.back()));
          size_t off = rem.size() - d.size();
          quo[off] = c;
          for (size_t i = 0; i < d.size(); ++i) rem[off + i] = F.sub(rem[off + i], F.mul(c, d[i]));
          poly_trim(rem);
        }
        (void)q;
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

Poly min_poly_of_matrix(const Fp& F, const Matrix& S) {
  int n = S.rows;
  if (n == 0) return {1};
  // find the first linear dependency among I, S, S^2, ...
  std::vector<Matrix> pows;
  pows.push_back(Matrix::identity(n));
  RowSpan span(n * n);
  auto vec_of = [&](const Matrix& m) {
    std::vector<u32> v(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = m.at(i, j);
    return v;
  };
  std::vector<std::vector<u32>> vecs;
  vecs.push_back(vec_of(pows[0]));
  span.add(F, vecs[0]);
  for (int d = 1;; ++d) {
    Matrix next = mat_mul(F, pows.back(), S);
    std::vector<u32> v = vec_of(next);
    if (span.contains(F, v)) {
      // solve for combination: next = sum c_i pows[i]
      Matrix sys(n * n, d);
      for (int i = 0; i < d; ++i)
        for (int r = 0; r < n * n; ++r) sys.at(r, i) = vecs[i][r];
      std::vector<u32> sol;
      bool ok = solve(F, sys, v, sol);
      require_internal(ok, "minimal polynomial solve");
      Poly f(d + 1, 0);
      for (int i = 0; i < d; ++i) f[i] = F.neg(sol[i]);
      f[d] = 1;
      return f;
    }
    pows.push_back(next);
    vecs.push_back(v);
    span.add(F, v);
  }
}

Matrix mat_pow(const Fp& F, Matrix S, u64 e) {
  Matrix r = Matrix::identity(S.rows);
  while (e) {
    if (e & 1) r = mat_mul(F, r, S);
    S = mat_mul(F, S, S);
    e >>= 1;
  }
  return r;
}

// radical of End(M) as a RowSpan of vectorized matrices (Dickson trace form)
RowSpan end_radical_span(const Fp& F, const std::vector<ModHom>& endos, int total) {
  int n = static_cast<int>(endos.size());
  Matrix G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Matrix P = mat_mul(F, endos[i].m, endos[j].m);
      u32 tr = 0;
      for (int t = 0; t < total; ++t) tr = F.add(tr, P.at(t, t));
      G.at(i, j) = tr;
      G.at(j, i) = tr;
    }
  }
  Matrix N = null_space(F, G);
  RowSpan span(total * total);
  for (int c = 0; c < N.cols; ++c) {
    std::vector<u32> v(static_cast<size_t>(total) * total, 0);
    for (int i = 0; i < n; ++i) {
      if (!N.at(i, c)) continue;
      for (int r = 0; r < total; ++r)
        for (int s = 0; s < total; ++s)
          v[static_cast<size_t>(r) * total + s] =
              F.add(v[static_cast<size_t>(r) * total + s], F.mul(N.at(i, c), endos[i].m.at(r, s)));
    }
    span.add(F, v);
  }
  return span;
}

int end_radical_dim(const Fp& F, const std::vector<ModHom>& endos, int total) {
  RowSpan s = end_radical_span(F, endos, total);
  return s.dim();
}

}  // namespace

std::vector<Module> decompose(const Module& M, Rng& rng) {
  if (M.total == 0) return {};
  const Fp& F = M.A->field;
  std::vector<ModHom> E = hom_space(M, M);
  if (F.p <= static_cast<u32>(E.size()) || F.p <= static_cast<u32>(M.total))
    fail(ErrCode::FieldTooSmall, "prime does not exceed dim End(M); decomposition unsound");
  if (E.size() == 1) return {M};
  int raddim = end_radical_dim(F, E, M.total);
  if (static_cast<int>(E.size()) - raddim == 1) return {M};  // local endomorphism ring

  for (int trial = 0; trial < 64; ++trial) {
    Matrix S(M.total, M.total);
    for (const ModHom& h : E) {
      u32 c = static_cast<u32>(rng() % F.p);
      if (c) S = mat_add(F, S, mat_scale(F, c, h.m));
    }
    Poly f = min_poly_of_matrix(F, S);
    for (u32 lam : poly_roots(F, f, rng)) {
      Matrix T = S;
      for (int i = 0; i < M.total; ++i) T.at(i, i) = F.sub(T.at(i, i), lam);
      Matrix N = mat_pow(F, T, static_cast<u64>(M.total));
      Matrix K = null_space(F, N);
      if (K.cols == 0 || K.cols == M.total) continue;
      Matrix I = column_space(F, N);
      Module sub1 = sub_and_quotient(M, K).sub;
      Module sub2 = sub_and_quotient(M, I).sub;
      require_internal(sub1.total + sub2.total == M.total, "Fitting split sizes");
      std::vector<Module> out = decompose(sub1, rng);
      for (Module& m : decompose(sub2, rng)) out.push_back(std::move(m));
      return out;
    }
  }
  require_internal(false, "failed to split a module with non-local endomorphism ring");
  return {};
}

bool is_isomorphic_indec(const Module& M, const Module& N) {
  if (M.dims != N.dims) return false;
  if (M.total == 0) return true;
  const Fp& F = M.A->field;
  std::vector<ModHom> MN = hom_space(M, N);
  if (MN.empty()) return false;
  std::vector<ModHom> NM = hom_space(N, M);
  if (NM.empty()) return false;
  std::vector<ModHom> E = hom_space(M, M);
  RowSpan rad = end_radical_span(F, E, M.total);
  for (const ModHom& f : MN) {
    for (const ModHom& g : NM) {
      Matrix h = mat_mul(F, g.m, f.m);  // g ∘ f : M -> M
      std::vector<u32> v(static_cast<size_t>(M.total) * M.total);
      for (int i = 0; i < M.total; ++i)
        for (int j = 0; j < M.total; ++j) v[static_cast<size_t>(i) * M.total + j] = h.at(i, j);
      if (!rad.contains(F, v)) return true;
    }
  }
  return false;
}

bool is_isomorphic(const Module& M, const Module& N, Rng& rng) {
  if (M.dims != N.dims) return false;
  std::vector<Module> dm = decompose(M, rng);
  std::vector<Module> dn = decompose(N, rng);
  if (dm.size() != dn.size()) return false;
  std::vector<bool> used(dn.size(), false);
  for (const Module& a : dm) {
    bool found = false;
    for (size_t j = 0; j < dn.size(); ++j) {
      if (used[j]) continue;
      if (is_isomorphic_indec(a, dn[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

int ModuleCatalog::register_indecomposable(const Module& M) {
  std::vector<int> dimvec = M.dims;
  std::vector<int> topvec = top_of(M).dims;
  Module socsub = sub_and_quotient(M, socle_subspace(M)).sub;
  std::vector<int> socvec = socsub.dims;
  for (size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.dimvec == dimvec && e.topvec == topvec && e.socvec == socvec &&
        is_isomorphic_indec(*e.rep, M))
      return static_cast<int>(i);
  }
  entries.push_back({std::make_shared<Module>(M), dimvec, topvec, socvec});
  return static_cast<int>(entries.size()) - 1;
}

std::vector<int> ModuleCatalog::register_module(const Module& M, Rng& rng) {
  std::vector<int> ids;
  for (const Module& part : decompose(M, rng)) ids.push_back(register_indecomposable(part));
  std::sort(ids.begin(), ids.end());
  return ids;
}

EndoAlgebra build_endo_algebra(AlgebraPtr base, std::vector<ModulePtr> gens,
                               std::vector<ModulePtr> killed) {
  const Fp& F = base->field;
  int n = static_cast<int>(gens.size());
  require_internal(n > 0, "endomorphism algebra of an empty generator list");
  EndoAlgebra E;
  E.base = base;
  E.gens = gens;
  E.killed = killed;

  auto vec_of = [&](const Matrix& m) {
    std::vector<u32> v(m.a.begin(), m.a.end());
    return v;
  };

  // per block (i, j): hom space and the ideal of maps factoring through killed
  std::vector<std::vector<std::vector<ModHom>>> homs(n, std::vector<std::vector<ModHom>>(n));
  std::vector<std::vector<RowSpan>> ideal;
  for (int i = 0; i < n; ++i) {
    std::vector<RowSpan> row;
    for (int j = 0; j < n; ++j) {
      homs[i][j] = hom_space(gens[i], gens[j]);
      RowSpan span(gens[j]->total * gens[i]->total);
      for (const ModulePtr& D : killed) {
        std::vector<ModHom> in = hom_space(*gens[i], *D);
        std::vector<ModHom> out = hom_space(*D, *gens[j]);
        for (const ModHom& f : in)
          for (const ModHom& g : out) span.add(F, vec_of(mat_mul(F, g.m, f.m)));
      }
      row.push_back(std::move(span));
    }
    ideal.push_back(std::move(row));
  }

  // choose coset representatives per block; identity first on the diagonal
  std::vector<std::string> labels;
  std::vector<int> src, tgt, idem_index(n, -1);
  std::vector<int> from_gen, to_gen;  // lift: gens[from] -> gens[to]
  std::vector<std::vector<std::vector<int>>> block_elems(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RowSpan span = ideal[i][j];  // copy; grows as we absorb chosen reps
      auto consider = [&](const ModHom& h, bool is_identity) {
        std::vector<u32> v = vec_of(h.m);
        if (!span.add(F, v)) return false;
        int k = static_cast<int>(E.lifts.size());
        E.lifts.push_back(h);
        from_gen.push_back(i);
        to_gen.push_back(j);
        // Γ-block: maps Hom(gens[j], X) to Hom(gens[i], X): src = j, tgt = i
        src.push_back(j);
        tgt.push_back(i);
        block_elems[i][j].push_back(k);
        if (is_identity) idem_index[i] = k;
        labels.push_back((is_identity ? "id" : "f") + std::to_string(k));
        return true;
      };
      if (i == j) {
        ModHom idh;
        idh.src = gens[i];
        idh.tgt = gens[i];
        idh.m = Matrix::identity(gens[i]->total);
        bool fresh = consider(idh, true);
        require_internal(fresh, "generator lies in the killed additive closure");
      }
      for (const ModHom& h : homs[i][j]) consider(h, false);
    }
  }

  int dim = static_cast<int>(E.lifts.size());
  // products: lift(x * y) = lift(y) ∘ lift(x) whenever composable
  std::vector<std::vector<std::vector<u32>>> mult(
      dim, std::vector<std::vector<u32>>(dim, std::vector<u32>(dim, 0)));
  // per block solver: columns = chosen reps then ideal basis
  std::vector<std::vector<Matrix>> solver(n, std::vector<Matrix>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int w = gens[j]->total * gens[i]->total;
      int reps = static_cast<int>(block_elems[i][j].size());
      int idim = ideal[i][j].dim();
      Matrix S(w, reps + idim);
      for (int c = 0; c < reps; ++c) {
        const Matrix& m = E.lifts[block_elems[i][j][c]].m;
        for (int r = 0; r < w; ++r) S.at(r, c) = m.a[r];
      }
      const auto& rows = ideal[i][j].rows();
      for (int c = 0; c < idim; ++c)
        for (int r = 0; r < w; ++r) S.at(r, reps + c) = rows[c][r];
      solver[i][j] = std::move(S);
    }
  }
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      // product x * y acts as "apply x's lift, then y's lift"
      if (to_gen[x] != from_gen[y]) continue;
      int i = from_gen[x], j = to_gen[y];
      Matrix comp = mat_mul(F, E.lifts[y].m, E.lifts[x].m);
      std::vector<u32> v(comp.a.begin(), comp.a.end());
      std::vector<u32> sol;
      bool ok = solve(F, solver[i][j], v, sol);
      require_internal(ok, "endomorphism product outside block span");
      for (size_t c = 0; c < block_elems[i][j].size(); ++c) mult[x][y][block_elems[i][j][c]] = sol[c];
    }
  }
  std::vector<std::string> idem_names;
  for (int i = 0; i < n; ++i) idem_names.push_back("g" + std::to_string(i));
  E.gamma = make_algebra(F, std::move(idem_names), std::move(labels), std::move(idem_index),
                         std::move(src), std::move(tgt), std::move(mult));
  return E;
}

Module endo_hom_module(const EndoAlgebra& E, const Module& X) {
  const Fp& F = E.base->field;
  const FDAlgebra& G = *E.gamma;
  for (const ModulePtr& D : E.killed)
    require_internal(hom_dim(*D, X) == 0, "transported module sees the killed ideal");
  int n = static_cast<int>(E.gens.size());
  std::vector<std::vector<ModHom>> homs(n);
  std::vector<int> dims(n, 0);
  for (int i = 0; i < n; ++i) {
    homs[i] = hom_space(*E.gens[i], X);
    dims[i] = static_cast<int>(homs[i].size());
  }
  Module M;
  M.A = E.gamma;
  M.dims = dims;
  M.offset.assign(n, 0);
  M.total = 0;
  for (int v = 0; v < n; ++v) {
    M.offset[v] = M.total;
    M.total += dims[v];
  }
  M.act.assign(G.dim, Matrix(M.total, M.total));
  // coordinate solver per block
  std::vector<Matrix> solver(n);
  for (int i = 0; i < n; ++i) {
    int w = X.total * E.gens[i]->total;
    Matrix S(w, dims[i]);
    for (int c = 0; c < dims[i]; ++c)
      for (int r = 0; r < w; ++r) S.at(r, c) = homs[i][c].m.a[r];
    solver[i] = std::move(S);
  }
  for (int k = 0; k < G.dim; ++k) {
    int b = G.src[k], a = G.tgt[k];  // lift: gens[a] -> gens[b]; action: block b -> block a
    const ModHom& lift = E.lifts[k];
    for (int t = 0; t < dims[b]; ++t) {
      Matrix comp = mat_mul(F, homs[b][t].m, lift.m);  // f ∘ lift : gens[a] -> X
      std::vector<u32> v(comp.a.begin(), comp.a.end());
      std::vector<u32> sol;
      bool ok = solve(F, solver[a], v, sol);
      require_internal(ok, "hom transport outside hom span");
      for (int s = 0; s < dims[a]; ++s) M.act[k].at(M.offset[a] + s, M.offset[b] + t) = sol[s];
    }
  }
  return M;
}

Module endo_tensor_module(const EndoAlgebra& E, const Module& Y) {
  require_internal(Y.A == E.gamma, "tensor expects a module over gamma");
  const Fp& F = E.base->field;
  if (Y.total == 0) return zero_module(E.base);
  MinPresentation mp = minimal_presentation(Y);
  // assemble ⊕ gens[a_s] -> ⊕ gens[b_t] from the presentation entries
  std::vector<const Module*> srcs, tgts;
  for (int v : mp.p1_verts) srcs.push_back(E.gens[v].get());
  for (int v : mp.p0_verts) tgts.push_back(E.gens[v].get());
  Module S = srcs.empty() ? zero_module(E.base) : direct_sum(srcs);
  Module T = tgts.empty() ? zero_module(E.base) : direct_sum(tgts);
  // placement of each summand inside the direct sums
  auto placements = [&](const std::vector<int>& verts, const Module& total) {
    std::vector<std::vector<int>> place;  // per summand: local coord -> total coord
    std::vector<int> cursor = total.offset;
    for (int v : verts) {
      const Module& P = *E.gens[v];
      std::vector<int> map(P.total, 0);
      for (int w = 0; w < static_cast<int>(P.dims.size()); ++w)
        for (int d = 0; d < P.dims[w]; ++d) map[P.offset[w] + d] = cursor[w]++;
      place.push_back(map);
    }
    return place;
  };
  auto sp = placements(mp.p1_verts, S);
  auto tp = placements(mp.p0_verts, T);
  ModHom f;
  f.src = std::make_shared<Module>(S);
  f.tgt = std::make_shared<Module>(T);
  f.m = Matrix(T.total, S.total);
  const FDAlgebra& G = *E.gamma;
  for (size_t s = 0; s < mp.p1_verts.size(); ++s) {
    for (size_t t = 0; t < mp.p0_verts.size(); ++t) {
      const std::vector<u32>& y = mp.d.at(static_cast<int>(s), static_cast<int>(t));
      // lift of the Γ-element y: gens[p1_verts[s]] -> gens[p0_verts[t]]
      Matrix lift(E.gens[mp.p0_verts[t]]->total, E.gens[mp.p1_verts[s]]->total);
      for (int k = 0; k < G.dim; ++k) {
        if (!y[k]) continue;
        require_internal(G.tgt[k] == mp.p1_verts[s] && G.src[k] == mp.p0_verts[t],
                         "presentation entry outside its block");
        lift = mat_add(F, lift, mat_scale(F, y[k], E.lifts[k].m));
      }
      for (int c = 0; c < lift.cols; ++c)
        for (int r = 0; r < lift.rows; ++r)
          if (lift.at(r, c)) f.m.at(tp[t][r], sp[s][c]) = lift.at(r, c);
    }
  }
  return cokernel_module(f, nullptr);
}

EndoAlgebra transport_endo(const EndoAlgebra& inner, const EndoAlgebra& outer) {
  require_internal(inner.base == outer.base, "transport across mismatched bases");
  const Fp& F = inner.base->field;
  EndoAlgebra E;
  E.base = inner.gamma;
  E.gamma = outer.gamma;
  int n = static_cast<int>(outer.gens.size());
  std::vector<ModulePtr> tg;
  for (int i = 0; i < n; ++i)
    tg.push_back(std::make_shared<Module>(endo_hom_module(inner, *outer.gens[i])));
  E.gens = tg;
  // transport each lift functorially: lift k maps outer.gens[i] -> outer.gens[j],
  // recorded by the builder as src[k] = j, tgt[k] = i.
  for (int k = 0; k < outer.gamma->dim; ++k) {
    int i = outer.gamma->tgt[k], j = outer.gamma->src[k];
    const ModHom& lift = outer.lifts[k];
    const Module& Ti = *tg[i];
    const Module& Tj = *tg[j];
    // matrix of Hom(G, lift): Hom(G, gens[i]) -> Hom(G, gens[j]), f ↦ lift ∘ f
    ModHom tl;
    tl.src = tg[i];
    tl.tgt = tg[j];
    tl.m = Matrix(Tj.total, Ti.total);
    // bases of the transported modules are the hom bases used by endo_hom_module
    std::vector<std::vector<ModHom>> hi(inner.gens.size()), hj(inner.gens.size());
    for (size_t v = 0; v < inner.gens.size(); ++v) {
      hi[v] = hom_space(*inner.gens[v], *outer.gens[i]);
      hj[v] = hom_space(*inner.gens[v], *outer.gens[j]);
    }
    for (size_t v = 0; v < inner.gens.size(); ++v) {
      int w = outer.gens[j]->total * inner.gens[v]->total;
      Matrix S(w, static_cast<int>(hj[v].size()));
      for (size_t c = 0; c < hj[v].size(); ++c)
        for (int r = 0; r < w; ++r) S.at(r, static_cast<int>(c)) = hj[v][c].m.a[r];
      for (size_t t = 0; t < hi[v].size(); ++t) {
        Matrix comp = mat_mul(F, lift.m, hi[v][t].m);
        std::vector<u32> vv(comp.a.begin(), comp.a.end());
        std::vector<u32> sol;
        bool ok = solve(F, S, vv, sol);
        require_internal(ok, "lift transport outside hom span");
        for (size_t s = 0; s < hj[v].size(); ++s)
          tl.m.at(Tj.offset[v] + static_cast<int>(s), Ti.offset[v] + static_cast<int>(t)) = sol[s];
      }
    }
    E.lifts.push_back(std::move(tl));
  }
  return E;
}

int identify_projective(AlgebraPtr gamma, const Module& Y, Rng& rng) {
  (void)rng;
  for (int v = 0; v < gamma->n_idem; ++v) {
    Module P = projective_module(gamma, v);
    if (Y.dims == P.dims && is_isomorphic_indec(Y, P)) return v;
  }
  return -1;
}

}  // namespace presilt
