#include "module.hpp"

#include <algorithm>

namespace presilt {

Matrix Module::action_of(const std::vector<u32>& x) const {
  const Fp& F = A->field;
  Matrix m(total, total);
  for (int b = 0; b < A->dim; ++b) {
    if (!x[b]) continue;
    m = mat_add(F, m, mat_scale(F, x[b], act[b]));
  }
  return m;
}

void Module::validate() const {
  const Fp& F = A->field;
  for (int i = 0; i < A->dim; ++i) {
    for (int j = 0; j < A->dim; ++j) {
      Matrix lhs = mat_mul(F, act[i], act[j]);
      Matrix rhs(total, total);
      for (int k = 0; k < A->dim; ++k) {
        if (!A->mult[i][j][k]) continue;
        rhs = mat_add(F, rhs, mat_scale(F, A->mult[i][j][k], act[k]));
      }
      require_internal(lhs == rhs, "module action incompatible with structure constants");
    }
  }
}

namespace {

Module with_layout(AlgebraPtr A, std::vector<int> dims) {
  Module M;
  M.A = std::move(A);
  M.dims = std::move(dims);
  M.offset.assign(M.dims.size(), 0);
  M.total = 0;
  for (size_t v = 0; v < M.dims.size(); ++v) {
    M.offset[v] = M.total;
    M.total += M.dims[v];
  }
  M.act.assign(M.A->dim, Matrix(M.total, M.total));
  return M;
}

}  // namespace

Module zero_module(AlgebraPtr A) {
  return with_layout(std::move(A), std::vector<int>(A ? A->n_idem : 0, 0));
}

Module simple_module(AlgebraPtr A, int v) {
  std::vector<int> dims(A->n_idem, 0);
  dims[v] = 1;
  Module M = with_layout(A, std::move(dims));
  const FDAlgebra& alg = *M.A;
  for (int b = 0; b < alg.dim; ++b) {
    if (alg.src[b] != v || alg.tgt[b] != v) continue;
    // scalar action through the split semisimple quotient: b ≡ c·e_v mod rad
    std::vector<u32> vec = alg.basis_vec(b);
    // solve vec = c * e_v + r with r in rad
    const Fp& F = alg.field;
    Matrix sys(alg.dim, 1 + static_cast<int>(alg.rad_basis.size()));
    for (int r = 0; r < alg.dim; ++r) sys.at(r, 0) = alg.idem(v)[r];
    for (size_t k = 0; k < alg.rad_basis.size(); ++k)
      for (int r = 0; r < alg.dim; ++r) sys.at(r, 1 + static_cast<int>(k)) = alg.rad_basis[k][r];
    std::vector<u32> sol;
    bool ok = solve(F, sys, vec, sol);
    require_internal(ok, "corner element outside e_v + rad span");
    M.act[b].at(0, 0) = sol[0];
  }
  return M;
}

Module projective_module(AlgebraPtr A, int v) {
  const FDAlgebra& alg = *A;
  // basis of A e_v = elements with src = v, grouped by tgt block
  std::vector<int> dims(alg.n_idem, 0);
  std::vector<int> members;  // algebra basis indices, block order
  for (int w = 0; w < alg.n_idem; ++w)
    for (int b : alg.block_basis[w][v]) {
      ++dims[w];
      members.push_back(b);
    }
  Module M = with_layout(A, std::move(dims));
  for (int c = 0; c < alg.dim; ++c) {
    for (size_t j = 0; j < members.size(); ++j) {
      const std::vector<u32>& prod = alg.mult[c][members[j]];
      for (size_t i = 0; i < members.size(); ++i) {
        M.act[c].at(static_cast<int>(i), static_cast<int>(j)) = prod[members[i]];
      }
    }
  }
  return M;
}

Module nu_projective(AlgebraPtr A, int v) {
  const FDAlgebra& alg = *A;
  // D(e_v A): dual of {b : tgt(b) = v}, graded by src
  std::vector<int> dims(alg.n_idem, 0);
  std::vector<int> members;
  for (int w = 0; w < alg.n_idem; ++w)
    for (int b : alg.block_basis[v][w]) {
      ++dims[w];
      members.push_back(b);
    }
  Module M = with_layout(A, std::move(dims));
  for (int c = 0; c < alg.dim; ++c) {
    // c · m_j^* = Σ_k [coeff of m_j in m_k * c] m_k^*
    for (size_t j = 0; j < members.size(); ++j) {
      for (size_t k = 0; k < members.size(); ++k) {
        M.act[c].at(static_cast<int>(k), static_cast<int>(j)) =
            alg.mult[members[k]][c][members[j]];
      }
    }
  }
  return M;
}

Module direct_sum(const std::vector<const Module*>& parts) {
  require_internal(!parts.empty(), "direct sum of nothing needs an algebra");
  AlgebraPtr A = parts[0]->A;
  std::vector<int> dims(A->n_idem, 0);
  for (const Module* p : parts)
    for (int v = 0; v < A->n_idem; ++v) dims[v] += p->dims[v];
  Module M = with_layout(A, std::move(dims));
  // per-block placement of each summand
  std::vector<int> cursor = M.offset;
  std::vector<std::vector<int>> place(parts.size());  // summand coord -> total coord
  for (size_t s = 0; s < parts.size(); ++s) {
    const Module& P = *parts[s];
    place[s].assign(P.total, 0);
    for (int v = 0; v < A->n_idem; ++v)
      for (int d = 0; d < P.dims[v]; ++d) place[s][P.offset[v] + d] = cursor[v]++;
  }
  for (int b = 0; b < A->dim; ++b) {
    for (size_t s = 0; s < parts.size(); ++s) {
      const Matrix& a = parts[s]->act[b];
      for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
          if (a.at(i, j)) M.act[b].at(place[s][i], place[s][j]) = a.at(i, j);
    }
  }
  return M;
}

Module direct_sum(const std::vector<Module>& parts) {
  std::vector<const Module*> ptrs;
  for (const Module& p : parts) ptrs.push_back(&p);
  return direct_sum(ptrs);
}

ProjMat ProjMat::zero(AlgebraPtr A, std::vector<int> src, std::vector<int> tgt) {
  ProjMat f;
  f.A = std::move(A);
  f.src_verts = std::move(src);
  f.tgt_verts = std::move(tgt);
  f.ent.assign(f.src_verts.size() * f.tgt_verts.size(), f.A->zero());
  return f;
}

ProjMat proj_compose(const ProjMat& f, const ProjMat& g) {
  require_internal(f.tgt_verts == g.src_verts, "projective map composition shape");
  const FDAlgebra& A = *f.A;
  ProjMat h = ProjMat::zero(f.A, f.src_verts, g.tgt_verts);
  for (size_t s = 0; s < f.src_verts.size(); ++s) {
    for (size_t u = 0; u < g.tgt_verts.size(); ++u) {
      std::vector<u32> acc = A.zero();
      for (size_t t = 0; t < f.tgt_verts.size(); ++t)
        acc = A.add(acc, A.product(f.at(static_cast<int>(s), static_cast<int>(t)),
                                   g.at(static_cast<int>(t), static_cast<int>(u))));
      h.at(static_cast<int>(s), static_cast<int>(u)) = acc;
    }
  }
  return h;
}

ProjMat proj_add(const ProjMat& f, const ProjMat& g) {
  require_internal(f.src_verts == g.src_verts && f.tgt_verts == g.tgt_verts, "projective map sum shape");
  ProjMat h = f;
  for (size_t i = 0; i < h.ent.size(); ++i) h.ent[i] = f.A->add(h.ent[i], g.ent[i]);
  return h;
}

Module proj_sum_module(AlgebraPtr A, const std::vector<int>& verts) {
  if (verts.empty()) return zero_module(A);
  std::vector<Module> parts;
  for (int v : verts) parts.push_back(projective_module(A, v));
  return direct_sum(parts);
}

int proj_generator_coord(AlgebraPtr A, const std::vector<int>& verts, int s) {
  // mirror of direct_sum placement: generator e_v is the block-v basis element
  // of A e_v whose algebra basis index equals idem_index[v]
  const FDAlgebra& alg = *A;
  std::vector<int> dims(alg.n_idem, 0);
  std::vector<std::vector<int>> members;  // per summand: algebra basis indices in copy order
  for (int v : verts) {
    std::vector<int> mem;
    for (int w = 0; w < alg.n_idem; ++w)
      for (int b : alg.block_basis[w][v]) mem.push_back(b);
    members.push_back(mem);
  }
  // recompute placements
  std::vector<int> per_block(alg.n_idem, 0);
  for (size_t t = 0; t < members.size(); ++t)
    for (int b : members[t]) ++per_block[alg.tgt[b]];
  std::vector<int> offset(alg.n_idem, 0);
  int totals = 0;
  for (int v = 0; v < alg.n_idem; ++v) {
    offset[v] = totals;
    totals += per_block[v];
  }
  std::vector<int> cursor = offset;
  int result = -1;
  for (size_t t = 0; t < members.size(); ++t) {
    for (int b : members[t]) {
      int pos = cursor[alg.tgt[b]]++;
      if (static_cast<int>(t) == s && b == alg.idem_index[verts[s]]) result = pos;
    }
  }
  require_internal(result >= 0, "projective generator coordinate");
  return result;
}

ModHom proj_to_modhom(const ProjMat& f, ModulePtr src_mod, ModulePtr tgt_mod) {
  const FDAlgebra& A = *f.A;
  const Fp& F = A.field;
  ModHom h;
  h.src = src_mod;
  h.tgt = tgt_mod;
  h.m = Matrix(tgt_mod->total, src_mod->total);
  // coordinates of both sides follow direct_sum placement of projective copies
  auto placements = [&](const std::vector<int>& verts) {
    std::vector<std::vector<std::pair<int, int>>> out;  // per copy: (algebra basis elt, coord)
    std::vector<int> per_block(A.n_idem, 0);
    std::vector<std::vector<int>> members;
    for (int v : verts) {
      std::vector<int> mem;
      for (int w = 0; w < A.n_idem; ++w)
        for (int b : A.block_basis[w][v]) mem.push_back(b);
      members.push_back(mem);
      for (int b : mem) ++per_block[A.tgt[b]];
    }
    std::vector<int> offset(A.n_idem, 0);
    int totals = 0;
    for (int v = 0; v < A.n_idem; ++v) {
      offset[v] = totals;
      totals += per_block[v];
    }
    std::vector<int> cursor = offset;
    for (auto& mem : members) {
      std::vector<std::pair<int, int>> copy;
      for (int b : mem) copy.push_back({b, cursor[A.tgt[b]]++});
      out.push_back(copy);
    }
    return out;
  };
  auto srcp = placements(f.src_verts);
  auto tgtp = placements(f.tgt_verts);
  for (size_t s = 0; s < f.src_verts.size(); ++s) {
    for (size_t t = 0; t < f.tgt_verts.size(); ++t) {
      const std::vector<u32>& y = f.at(static_cast<int>(s), static_cast<int>(t));
      // basis element x of A e_{src_s} maps to x * y in A e_{tgt_t}
      for (auto [xb, xcoord] : srcp[s]) {
        std::vector<u32> img = A.product(A.basis_vec(xb), y);
        for (auto [zb, zcoord] : tgtp[t]) {
          if (img[zb]) h.m.at(zcoord, xcoord) = F.add(h.m.at(zcoord, xcoord), img[zb]);
        }
      }
    }
  }
  return h;
}

ProjMat proj_from_modhom(const std::vector<int>& src_verts, const std::vector<int>& tgt_verts,
                         const ModHom& f) {
  AlgebraPtr A = f.src->A;
  const FDAlgebra& alg = *A;
  ProjMat pm = ProjMat::zero(A, src_verts, tgt_verts);
  // image of the generator e_{src_s}, read off per target copy
  auto tgt_members = [&](int v) {
    std::vector<int> mem;
    for (int w = 0; w < alg.n_idem; ++w)
      for (int b : alg.block_basis[w][v]) mem.push_back(b);
    return mem;
  };
  // coordinates of each target copy inside the direct sum
  std::vector<std::vector<std::pair<int, int>>> tpl;
  {
    std::vector<int> per_block(alg.n_idem, 0);
    std::vector<std::vector<int>> members;
    for (int v : tgt_verts) {
      auto mem = tgt_members(v);
      members.push_back(mem);
      for (int b : mem) ++per_block[alg.tgt[b]];
    }
    std::vector<int> offset(alg.n_idem, 0);
    int totals = 0;
    for (int v = 0; v < alg.n_idem; ++v) {
      offset[v] = totals;
      totals += per_block[v];
    }
    std::vector<int> cursor = offset;
    for (auto& mem : members) {
      std::vector<std::pair<int, int>> copy;
      for (int b : mem) copy.push_back({b, cursor[alg.tgt[b]]++});
      tpl.push_back(copy);
    }
  }
  for (size_t s = 0; s < src_verts.size(); ++s) {
    int gcoord = proj_generator_coord(A, src_verts, static_cast<int>(s));
    for (size_t t = 0; t < tgt_verts.size(); ++t) {
      std::vector<u32> y = alg.zero();
      for (auto [zb, zcoord] : tpl[t]) {
        u32 c = f.m.at(zcoord, gcoord);
        if (c) y[zb] = c;
      }
      pm.at(static_cast<int>(s), static_cast<int>(t)) = y;
    }
  }
  return pm;
}

SubQuot sub_and_quotient(const Module& M, const Matrix& basis_cols) {
  const Fp& F = M.A->field;
  const FDAlgebra& alg = *M.A;
  // block-adapt the subspace
  Matrix adapted(M.total, 0);
  std::vector<int> sub_dims(alg.n_idem, 0);
  for (int v = 0; v < alg.n_idem; ++v) {
    Matrix proj = mat_mul(F, M.act[alg.idem_index[v]], basis_cols);
    Matrix blockbasis = column_space(F, proj);
    sub_dims[v] = blockbasis.cols;
    adapted = adapted.cols == 0 ? blockbasis : mat_hstack(adapted, blockbasis);
  }
  require_internal(adapted.cols == mat_rank(F, basis_cols), "subspace not idempotent-stable");

  SubQuot R;
  R.sub.A = M.A;
  R.sub.dims = sub_dims;
  R.sub.offset.assign(alg.n_idem, 0);
  R.sub.total = adapted.cols;
  for (int v = 0, acc = 0; v < alg.n_idem; ++v) {
    R.sub.offset[v] = acc;
    acc += sub_dims[v];
  }
  // extend to a full basis, block by block, to split off the quotient
  Matrix T(M.total, 0);
  std::vector<int> quot_dims(alg.n_idem, 0);
  std::vector<int> sub_pos, quot_pos;
  {
    int col = 0;
    for (int v = 0; v < alg.n_idem; ++v) {
      RowSpan span(M.total);
      std::vector<Matrix> cols;
      for (int j = 0; j < adapted.cols; ++j) {
        // use columns belonging to this block
        bool in_block = true;
        for (int r = 0; r < M.total; ++r) {
          if (adapted.at(r, j) && (r < M.offset[v] || r >= M.offset[v] + M.dims[v])) {
            in_block = false;
            break;
          }
        }
        if (!in_block) continue;
        std::vector<u32> vec(M.total);
        for (int r = 0; r < M.total; ++r) vec[r] = adapted.at(r, j);
        if (span.add(F, vec)) {
          Matrix c(M.total, 1);
          for (int r = 0; r < M.total; ++r) c.at(r, 0) = adapted.at(r, j);
          cols.push_back(c);
        }
      }
      int subcount = static_cast<int>(cols.size());
      // complete the block with unit vectors
      for (int d = 0; d < M.dims[v]; ++d) {
        std::vector<u32> vec(M.total, 0);
        vec[M.offset[v] + d] = 1;
        if (span.add(F, vec)) {
          Matrix c(M.total, 1);
          c.at(M.offset[v] + d, 0) = 1;
          cols.push_back(c);
        }
      }
      quot_dims[v] = static_cast<int>(cols.size()) - subcount;
      for (size_t j = 0; j < cols.size(); ++j) {
        T = T.cols == 0 ? cols[j] : mat_hstack(T, cols[j]);
        if (static_cast<int>(j) < subcount)
          sub_pos.push_back(col);
        else
          quot_pos.push_back(col);
        ++col;
      }
    }
  }
  require_internal(T.rows == T.cols, "basis completion");
  Matrix Tinv = mat_inverse(F, T);

  R.quot.A = M.A;
  R.quot.dims = quot_dims;
  R.quot.offset.assign(alg.n_idem, 0);
  R.quot.total = static_cast<int>(quot_pos.size());
  for (int v = 0, acc = 0; v < alg.n_idem; ++v) {
    R.quot.offset[v] = acc;
    acc += quot_dims[v];
  }

  R.sub.act.assign(alg.dim, Matrix(R.sub.total, R.sub.total));
  R.quot.act.assign(alg.dim, Matrix(R.quot.total, R.quot.total));
  for (int b = 0; b < alg.dim; ++b) {
    Matrix conj = mat_mul(F, Tinv, mat_mul(F, M.act[b], T));
    for (size_t i = 0; i < sub_pos.size(); ++i) {
      for (size_t j = 0; j < sub_pos.size(); ++j)
        R.sub.act[b].at(static_cast<int>(i), static_cast<int>(j)) = conj.at(sub_pos[i], sub_pos[j]);
      // invariance: quot rows over sub cols must vanish
    }
    for (size_t i = 0; i < quot_pos.size(); ++i) {
      for (size_t j = 0; j < sub_pos.size(); ++j)
        require_internal(conj.at(quot_pos[i], sub_pos[j]) == 0, "subspace not action-stable");
      for (size_t j = 0; j < quot_pos.size(); ++j)
        R.quot.act[b].at(static_cast<int>(i), static_cast<int>(j)) =
            conj.at(quot_pos[i], quot_pos[j]);
    }
  }

  auto Mptr = std::make_shared<Module>(M);
  auto subptr = std::make_shared<Module>(R.sub);
  auto quotptr = std::make_shared<Module>(R.quot);
  R.incl.src = subptr;
  R.incl.tgt = Mptr;
  R.incl.m = Matrix(M.total, R.sub.total);
  for (size_t j = 0; j < sub_pos.size(); ++j)
    for (int r = 0; r < M.total; ++r) R.incl.m.at(r, static_cast<int>(j)) = T.at(r, sub_pos[j]);
  R.proj.src = Mptr;
  R.proj.tgt = quotptr;
  R.proj.m = Matrix(R.quot.total, M.total);
  for (size_t i = 0; i < quot_pos.size(); ++i)
    for (int c = 0; c < M.total; ++c) R.proj.m.at(static_cast<int>(i), c) = Tinv.at(quot_pos[i], c);
  return R;
}

Module kernel_module(const ModHom& f, ModHom* incl_out) {
  const Fp& F = f.src->A->field;
  Matrix K = null_space(F, f.m);
  SubQuot sq = sub_and_quotient(*f.src, K);
  if (incl_out) *incl_out = sq.incl;
  return sq.sub;
}

Module cokernel_module(const ModHom& f, ModHom* proj_out) {
  const Fp& F = f.src->A->field;
  Matrix I = column_space(F, f.m);
  SubQuot sq = sub_and_quotient(*f.tgt, I);
  if (proj_out) *proj_out = sq.proj;
  return sq.quot;
}

std::vector<ModHom> hom_space(const Module& M, const Module& N) {
  require_internal(M.A == N.A, "hom between modules over different algebras");
  const Fp& F = M.A->field;
  int vars = N.total * M.total;
  if (vars == 0) return {};
  // F_mat * act_M(b) = act_N(b) * F_mat for every basis element b
  std::vector<std::vector<u32>> rows;
  for (int b = 0; b < M.A->dim; ++b) {
    const Matrix& am = M.act[b];
    const Matrix& an = N.act[b];
    for (int i = 0; i < N.total; ++i) {
      for (int j = 0; j < M.total; ++j) {
        std::vector<u32> row(vars, 0);
        // (F*am)(i,j) = sum_k F(i,k) am(k,j); (an*F)(i,j) = sum_k an(i,k) F(k,j)
        for (int k = 0; k < M.total; ++k) {
          if (am.at(k, j))
            row[static_cast<size_t>(i) * M.total + k] =
                F.add(row[static_cast<size_t>(i) * M.total + k], am.at(k, j));
        }
        for (int k = 0; k < N.total; ++k) {
          if (an.at(i, k))
            row[static_cast<size_t>(k) * M.total + j] =
                F.sub(row[static_cast<size_t>(k) * M.total + j], an.at(i, k));
        }
        bool nz = false;
        for (u32 v : row)
          if (v) {
            nz = true;
            break;
          }
        if (nz) rows.push_back(std::move(row));
      }
    }
  }
  Matrix sys(static_cast<int>(rows.size()), vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < vars; ++c) sys.at(static_cast<int>(r), c) = rows[r][c];
  Matrix null = null_space(F, sys);
  auto Mp = std::make_shared<Module>(M);
  auto Np = std::make_shared<Module>(N);
  std::vector<ModHom> out;
  for (int c = 0; c < null.cols; ++c) {
    ModHom h;
    h.src = Mp;
    h.tgt = Np;
    h.m = Matrix(N.total, M.total);
    for (int i = 0; i < N.total; ++i)
      for (int j = 0; j < M.total; ++j) h.m.at(i, j) = null.at(i * M.total + j, c);
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<ModHom> hom_space(ModulePtr M, ModulePtr N) {
  std::vector<ModHom> hs = hom_space(*M, *N);
  for (ModHom& h : hs) {
    h.src = M;
    h.tgt = N;
  }
  return hs;
}

int hom_dim(const Module& M, const Module& N) { return static_cast<int>(hom_space(M, N).size()); }

Matrix radical_subspace(const Module& M) {
  const Fp& F = M.A->field;
  Matrix cols(M.total, 0);
  for (const std::vector<u32>& r : M.A->rad_basis) {
    Matrix a = M.action_of(r);
    cols = cols.cols == 0 ? a : mat_hstack(cols, a);
  }
  return column_space(F, cols);
}

Module radical_of(const Module& M) { return sub_and_quotient(M, radical_subspace(M)).sub; }

Module top_of(const Module& M) { return sub_and_quotient(M, radical_subspace(M)).quot; }

Matrix socle_subspace(const Module& M) {
  const Fp& F = M.A->field;
  // intersection of kernels of all radical actions
  Matrix stacked(0, M.total);
  for (const std::vector<u32>& r : M.A->rad_basis) {
    Matrix a = M.action_of(r);
    stacked = stacked.rows == 0 ? a : mat_vstack(stacked, a);
  }
  if (stacked.rows == 0) return Matrix::identity(M.total);
  return null_space(F, stacked);
}

ProjCover projective_cover(const Module& M) {
  const Fp& F = M.A->field;
  const FDAlgebra& alg = *M.A;
  SubQuot rad = sub_and_quotient(M, radical_subspace(M));
  const Module& T = rad.quot;  // top
  ProjCover out;
  // per block v, T_v ≅ S_v^{dims[v]}; lift a basis of T_v to M
  std::vector<Matrix> gens;  // columns in M
  for (int v = 0; v < alg.n_idem; ++v) {
    for (int d = 0; d < T.dims[v]; ++d) {
      // solve proj(x) = unit vector of T at (v, d), x in block v of M
      std::vector<u32> want(T.total, 0);
      want[T.offset[v] + d] = 1;
      std::vector<u32> x;
      bool ok = solve(F, rad.proj.m, want, x);
      require_internal(ok, "top lift");
      Matrix c(M.total, 1);
      for (int r = 0; r < M.total; ++r) c.at(r, 0) = x[r];
      // force into block v
      Matrix cb = mat_mul(F, M.act[alg.idem_index[v]], c);
      gens.push_back(cb);
      out.verts.push_back(v);
    }
  }
  out.P = proj_sum_module(M.A, out.verts);
  auto Pp = std::make_shared<Module>(out.P);
  auto Mp = std::make_shared<Module>(M);
  ModHom f;
  f.src = Pp;
  f.tgt = Mp;
  f.m = Matrix(M.total, out.P.total);
  // copy s covers via x ↦ x · gen_s: column for projective basis element b is act(b) * gen
  for (size_t s = 0; s < out.verts.size(); ++s) {
    int v = out.verts[s];
    // enumerate basis of A e_v and their coordinates in the sum (same scheme as direct_sum)
    std::vector<std::pair<int, int>> copy;
    {
      std::vector<int> per_block(alg.n_idem, 0);
      std::vector<std::vector<int>> members;
      for (int vv : out.verts) {
        std::vector<int> mem;
        for (int w = 0; w < alg.n_idem; ++w)
          for (int b : alg.block_basis[w][vv]) mem.push_back(b);
        members.push_back(mem);
        for (int b : mem) ++per_block[alg.tgt[b]];
      }
      std::vector<int> offset(alg.n_idem, 0);
      int totals = 0;
      for (int w = 0; w < alg.n_idem; ++w) {
        offset[w] = totals;
        totals += per_block[w];
      }
      std::vector<int> cursor = offset;
      for (size_t t = 0; t < members.size(); ++t) {
        for (int b : members[t]) {
          int pos = cursor[alg.tgt[b]]++;
          if (t == s) copy.push_back({b, pos});
        }
      }
    }
    (void)v;
    for (auto [b, pos] : copy) {
      Matrix img = mat_mul(F, M.act[b], gens[s]);
      for (int r = 0; r < M.total; ++r) f.m.at(r, pos) = img.at(r, 0);
    }
  }
  require_internal(mat_rank(F, f.m) == M.total, "projective cover not surjective");
  out.cover = std::move(f);
  return out;
}

MinPresentation minimal_presentation(const Module& M) {
  MinPresentation out;
  ProjCover c0 = projective_cover(M);
  out.p0_verts = c0.verts;
  out.P0 = c0.P;
  ModHom incl;
  Module K = kernel_module(c0.cover, &incl);
  if (K.total == 0) {
    out.p1_verts = {};
    out.P1 = zero_module(M.A);
    out.d = ProjMat::zero(M.A, {}, out.p0_verts);
    out.d_hom.src = std::make_shared<Module>(out.P1);
    out.d_hom.tgt = std::make_shared<Module>(out.P0);
    out.d_hom.m = Matrix(out.P0.total, 0);
  } else {
    ProjCover c1 = projective_cover(K);
    out.p1_verts = c1.verts;
    out.P1 = c1.P;
    ModHom d;
    d.src = c1.cover.src;
    d.tgt = incl.tgt;
    d.m = mat_mul(M.A->field, incl.m, c1.cover.m);
    d.tgt = std::make_shared<Module>(out.P0);
    out.d = proj_from_modhom(out.p1_verts, out.p0_verts, d);
    out.d_hom = proj_to_modhom(out.d, std::make_shared<Module>(out.P1), d.tgt);
    require_internal(out.d_hom.m == d.m, "presentation entry extraction");
    for (const std::vector<u32>& y : out.d.ent)
      require_internal(M.A->in_radical(y), "presentation not minimal");
  }
  out.cover = c0.cover;
  return out;
}

Module tau(const Module& M) {
  AlgebraPtr A = M.A;
  if (M.total == 0) return zero_module(A);
  MinPresentation mp = minimal_presentation(M);
  if (mp.p1_verts.empty()) return zero_module(A);  // projective
  // ν of the presentation: per entry y in e_a A e_b, ν(f_y): D(e_a A) -> D(e_b A)
  // is the dual of left multiplication by y: e_b A -> e_a A.
  const FDAlgebra& alg = *A;
  const Fp& F = alg.field;
  std::vector<Module> nu1_parts, nu0_parts;
  for (int v : mp.p1_verts) nu1_parts.push_back(nu_projective(A, v));
  for (int v : mp.p0_verts) nu0_parts.push_back(nu_projective(A, v));
  Module nu1 = mp.p1_verts.empty() ? zero_module(A) : direct_sum(nu1_parts);
  Module nu0 = mp.p0_verts.empty() ? zero_module(A) : direct_sum(nu0_parts);
  // coordinates of D(e_v A): duals of {b : tgt(b) = v} grouped by src
  auto members_of = [&](int v) {
    std::vector<int> mem;
    for (int w = 0; w < alg.n_idem; ++w)
      for (int b : alg.block_basis[v][w]) mem.push_back(b);
    return mem;
  };
  auto placements = [&](const std::vector<int>& verts) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> per_block(alg.n_idem, 0);
    std::vector<std::vector<int>> members;
    for (int v : verts) {
      auto mem = members_of(v);
      members.push_back(mem);
      for (int b : mem) ++per_block[alg.src[b]];
    }
    std::vector<int> offset(alg.n_idem, 0);
    int totals = 0;
    for (int w = 0; w < alg.n_idem; ++w) {
      offset[w] = totals;
      totals += per_block[w];
    }
    std::vector<int> cursor = offset;
    for (auto& mem : members) {
      std::vector<std::pair<int, int>> copy;
      for (int b : mem) copy.push_back({b, cursor[alg.src[b]]++});
      out.push_back(copy);
    }
    return out;
  };
  auto p1 = placements(mp.p1_verts);
  auto p0 = placements(mp.p0_verts);
  ModHom nud;
  nud.src = std::make_shared<Module>(nu1);
  nud.tgt = std::make_shared<Module>(nu0);
  nud.m = Matrix(nu0.total, nu1.total);
  for (size_t s = 0; s < mp.p1_verts.size(); ++s) {
    for (size_t t = 0; t < mp.p0_verts.size(); ++t) {
      const std::vector<u32>& y = mp.d.at(static_cast<int>(s), static_cast<int>(t));
      // ν(f_y)(m_i^*) = Σ_j [coeff of m_i in y * n_j] n_j^*
      for (auto [mi, micoord] : p1[s]) {
        for (auto [nj, njcoord] : p0[t]) {
          std::vector<u32> prod = alg.product(y, alg.basis_vec(nj));
          if (prod[mi]) nud.m.at(njcoord, micoord) = F.add(nud.m.at(njcoord, micoord), prod[mi]);
        }
      }
    }
  }
  return kernel_module(nud, nullptr);
}

TraceResult trace_and_torsionfree(const Module& M, const Module& X) {
  const Fp& F = M.A->field;
  TraceResult out;
  Matrix cols(X.total, 0);
  for (const ModHom& h : hom_space(M, X)) {
    cols = cols.cols == 0 ? h.m : mat_hstack(cols, h.m);
  }
  out.trace_cols = column_space(F, cols);
  SubQuot sq = sub_and_quotient(X, out.trace_cols);
  out.torsion_free = sq.quot;
  out.quotient_map = sq.proj;
  return out;
}

bool in_gen(const Module& M, const Module& X) {
  if (X.total == 0) return true;
  TraceResult t = trace_and_torsionfree(M, X);
  return t.trace_cols.cols == X.total;
}

}  // namespace presilt
