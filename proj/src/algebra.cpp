#include "algebra.hpp"

#include <algorithm>
#include <map>

namespace presilt {

std::vector<u32> FDAlgebra::unit() const {
  std::vector<u32> v = zero();
  for (int i : idem_index) v[i] = 1;
  return v;
}

std::vector<u32> FDAlgebra::idem(int v) const {
  std::vector<u32> x = zero();
  x[idem_index[v]] = 1;
  return x;
}

std::vector<u32> FDAlgebra::basis_vec(int i) const {
  std::vector<u32> x = zero();
  x[i] = 1;
  return x;
}

std::vector<u32> FDAlgebra::product(const std::vector<u32>& x, const std::vector<u32>& y) const {
  std::vector<u32> z = zero();
  for (int i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim; ++j) {
      if (!y[j]) continue;
      u32 c = field.mul(x[i], y[j]);
      const std::vector<u32>& m = mult[i][j];
      for (int k = 0; k < dim; ++k)
        if (m[k]) z[k] = field.add(z[k], field.mul(c, m[k]));
    }
  }
  return z;
}

std::vector<u32> FDAlgebra::add(const std::vector<u32>& x, const std::vector<u32>& y) const {
  std::vector<u32> z = x;
  for (int k = 0; k < dim; ++k) z[k] = field.add(z[k], y[k]);
  return z;
}

std::vector<u32> FDAlgebra::scale(u32 c, const std::vector<u32>& x) const {
  std::vector<u32> z = x;
  for (u32& v : z) v = field.mul(c, v);
  return z;
}

Matrix FDAlgebra::left_mult(const std::vector<u32>& x) const {
  Matrix L(dim, dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<u32> col = product(x, basis_vec(j));
    for (int i = 0; i < dim; ++i) L.at(i, j) = col[i];
  }
  return L;
}

Matrix FDAlgebra::right_mult(const std::vector<u32>& x) const {
  Matrix R(dim, dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<u32> col = product(basis_vec(j), x);
    for (int i = 0; i < dim; ++i) R.at(i, j) = col[i];
  }
  return R;
}

u32 FDAlgebra::corner_scalar(const std::vector<u32>& x, int v) const {
  const Fp& F = field;
  Matrix sys(dim, 1 + static_cast<int>(rad_basis.size()));
  for (int r = 0; r < dim; ++r) sys.at(r, 0) = idem(v)[r];
  for (size_t k = 0; k < rad_basis.size(); ++k)
    for (int r = 0; r < dim; ++r) sys.at(r, 1 + static_cast<int>(k)) = rad_basis[k][r];
  std::vector<u32> sol;
  bool ok = solve(F, sys, x, sol);
  require_internal(ok, "corner element outside e_v + rad span");
  return sol[0];
}

bool FDAlgebra::corner_unit(const std::vector<u32>& x, int v) const {
  (void)v;
  return !in_radical(x);
}

std::vector<u32> FDAlgebra::corner_inverse(const std::vector<u32>& x, int v) const {
  const std::vector<int>& blk = block_basis[v][v];
  Matrix M(dim, static_cast<int>(blk.size()));
  for (size_t j = 0; j < blk.size(); ++j) {
    std::vector<u32> col = product(x, basis_vec(blk[j]));
    for (int i = 0; i < dim; ++i) M.at(i, static_cast<int>(j)) = col[i];
  }
  std::vector<u32> sol;
  bool ok = solve(field, M, idem(v), sol);
  require_internal(ok, "corner inverse of a non-unit");
  std::vector<u32> y = zero();
  for (size_t j = 0; j < blk.size(); ++j) y[blk[j]] = sol[j];
  return y;
}

void FDAlgebra::finalize() {
  const Fp& F = field;
  require_internal(dim > 0 && n_idem > 0, "empty algebra");

  block_basis.assign(n_idem, std::vector<std::vector<int>>(n_idem));
  for (int b = 0; b < dim; ++b) block_basis[tgt[b]][src[b]].push_back(b);

  // idempotent laws
  for (int v = 0; v < n_idem; ++v) {
    for (int w = 0; w < n_idem; ++w) {
      std::vector<u32> pr = product(idem(v), idem(w));
      std::vector<u32> want = (v == w) ? idem(v) : zero();
      require_internal(pr == want, "idempotents not orthogonal/idempotent");
    }
  }
  // block consistency: e_tgt * b = b = b * e_src
  for (int b = 0; b < dim; ++b) {
    require_internal(product(idem(tgt[b]), basis_vec(b)) == basis_vec(b), "tgt block");
    require_internal(product(basis_vec(b), idem(src[b])) == basis_vec(b), "src block");
  }
  // unit
  std::vector<u32> one = unit();
  for (int b = 0; b < dim; ++b) {
    require_internal(product(one, basis_vec(b)) == basis_vec(b), "left unit");
    require_internal(product(basis_vec(b), one) == basis_vec(b), "right unit");
  }
  // associativity on all basis triples
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      std::vector<u32> ij = mult[i][j];
      for (int k = 0; k < dim; ++k) {
        std::vector<u32> lhs = product(ij, basis_vec(k));
        std::vector<u32> rhs = product(basis_vec(i), mult[j][k]);
        require_internal(lhs == rhs, "associativity");
      }
    }
  }

  // Radical via the trace form of the regular representation; valid since the
  // field is larger than dim.
  if (F.p <= static_cast<u32>(dim))
    fail(ErrCode::FieldTooSmall,
         "prime " + std::to_string(F.p) + " does not exceed algebra dimension " + std::to_string(dim));
  std::vector<Matrix> L(dim);
  for (int i = 0; i < dim; ++i) L[i] = left_mult(basis_vec(i));
  Matrix G(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      Matrix P = mat_mul(F, L[i], L[j]);
      u32 tr = 0;
      for (int t = 0; t < dim; ++t) tr = F.add(tr, P.at(t, t));
      G.at(i, j) = tr;
      G.at(j, i) = tr;
    }
  }
  Matrix N = null_space(F, G);
  radical_span = RowSpan(dim);
  rad_basis.clear();
  for (int c = 0; c < N.cols; ++c) {
    std::vector<u32> v(dim);
    for (int r = 0; r < dim; ++r) v[r] = N.at(r, c);
    rad_basis.push_back(v);
    radical_span.add(F, v);
  }
  require_internal(dim - radical_span.dim() == n_idem,
                   "semisimple quotient is not split basic over GF(p)");
}

AlgebraPtr make_algebra(Fp field, std::vector<std::string> idem_names,
                        std::vector<std::string> basis_labels, std::vector<int> idem_index,
                        std::vector<int> src, std::vector<int> tgt,
                        std::vector<std::vector<std::vector<u32>>> mult) {
  auto A = std::make_shared<FDAlgebra>(field);
  A->dim = static_cast<int>(basis_labels.size());
  A->n_idem = static_cast<int>(idem_names.size());
  A->idem_names = std::move(idem_names);
  A->basis_labels = std::move(basis_labels);
  A->idem_index = std::move(idem_index);
  A->src = std::move(src);
  A->tgt = std::move(tgt);
  A->mult = std::move(mult);
  A->finalize();
  return A;
}

namespace {

struct PathTable {
  // paths of length <= L, grouped by length; a path is a list of arrow indices
  std::vector<std::vector<std::vector<int>>> by_len;
  std::map<std::vector<int>, int> id_of;  // keyed by (arrow list); trivial path at v = {-1-v}
  std::vector<std::vector<int>> paths;    // id -> key
  std::vector<int> path_src, path_tgt, path_len;

  int add(const QuiverPresentation& q, const std::vector<int>& key) {
    auto it = id_of.find(key);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(paths.size());
    id_of[key] = id;
    paths.push_back(key);
    if (key.size() == 1 && key[0] < 0) {
      int v = -1 - key[0];
      path_src.push_back(v);
      path_tgt.push_back(v);
      path_len.push_back(0);
    } else {
      path_src.push_back(q.arrows[key.front()].source);
      path_tgt.push_back(q.arrows[key.back()].target);
      path_len.push_back(static_cast<int>(key.size()));
    }
    return id;
  }
};

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() == 1 && a[0] < 0) return b;
  if (b.size() == 1 && b[0] < 0) return a;
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string path_label(const QuiverPresentation& q, const std::vector<int>& key) {
  if (key.size() == 1 && key[0] < 0) return "e" + q.vertices[-1 - key[0]];
  std::string s;
  for (size_t i = 0; i < key.size(); ++i) {
    if (i) s += "*";
    s += q.arrows[key[i]].name;
  }
  return s;
}

// One truncation level: basis of kQ_{<=L} modulo the truncated relation ideal.
struct Stratified {
  int L = 0;
  std::vector<int> order;        // coordinate order: path ids sorted long-first
  std::vector<int> coord_of;     // path id -> coordinate
  RowSpan ideal{0};              // ideal span in coordinate order
  std::vector<int> basis_paths;  // path ids surviving as basis, in display order
  std::vector<int> basis_coord;  // coordinate -> basis position or -1
};

}  // namespace

AlgebraPtr build_algebra(const QuiverPresentation& q, Fp field, const BuildOptions& opt) {
  const Fp& F = field;
  int nv = static_cast<int>(q.vertices.size());
  if (nv == 0) fail(ErrCode::Parse, "quiver has no vertices");
  for (const Arrow& a : q.arrows) {
    if (a.source < 0 || a.source >= nv || a.target < 0 || a.target >= nv)
      fail(ErrCode::Parse, "arrow endpoint out of range");
  }
  // split relations into parallel components and validate admissibility lower bound
  struct Rel {
    int sv, tv, min_len;
    std::vector<std::pair<u32, std::vector<int>>> terms;
  };
  std::vector<Rel> rels;
  for (const auto& rel : q.relations) {
    std::map<std::pair<int, int>, Rel> comps;
    for (const RelationTerm& t : rel) {
      if (t.path.size() < 2)
        fail(ErrCode::NotAdmissible, "relation contains a path of length < 2");
      for (size_t i = 0; i < t.path.size(); ++i) {
        int a = t.path[i];
        if (a < 0 || a >= static_cast<int>(q.arrows.size()))
          fail(ErrCode::Parse, "relation refers to unknown arrow");
        if (i > 0 && q.arrows[t.path[i - 1]].target != q.arrows[a].source)
          fail(ErrCode::NotAdmissible, "relation path is not composable");
      }
      u32 c = F.reduce(t.coeff);
      if (!c) continue;
      int sv = q.arrows[t.path.front()].source;
      int tv = q.arrows[t.path.back()].target;
      Rel& r = comps[{sv, tv}];
      r.sv = sv;
      r.tv = tv;
      r.terms.push_back({c, t.path});
    }
    for (auto& [k, r] : comps) {
      r.min_len = static_cast<int>(r.terms[0].second.size());
      for (auto& [c, p] : r.terms) r.min_len = std::min(r.min_len, static_cast<int>(p.size()));
      rels.push_back(std::move(r));
    }
  }

  PathTable pt;
  pt.by_len.resize(1);
  for (int v = 0; v < nv; ++v) {
    int id = pt.add(q, {-1 - v});
    pt.by_len[0].push_back(pt.paths[id]);
  }

  auto grow_to = [&](int L) {
    while (static_cast<int>(pt.by_len.size()) <= L) {
      int len = static_cast<int>(pt.by_len.size());
      std::vector<std::vector<int>> next;
      for (const std::vector<int>& p : pt.by_len[len - 1]) {
        int tv = (p.size() == 1 && p[0] < 0) ? (-1 - p[0]) : q.arrows[p.back()].target;
        for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
          if (q.arrows[a].source != tv) continue;
          std::vector<int> np = concat(p, {a});
          pt.add(q, np);
          next.push_back(np);
          if (static_cast<int>(pt.paths.size()) > opt.path_budget)
            fail(ErrCode::BudgetExceeded, "path budget exceeded during basis construction");
        }
      }
      pt.by_len.push_back(std::move(next));
    }
  };

  auto build_level = [&](int L) -> Stratified {
    grow_to(L);
    Stratified st;
    st.L = L;
    std::vector<int> ids;
    for (int id = 0; id < static_cast<int>(pt.paths.size()); ++id)
      if (pt.path_len[id] <= L) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (pt.path_len[a] != pt.path_len[b]) return pt.path_len[a] > pt.path_len[b];
      return pt.paths[a] < pt.paths[b];
    });
    st.order = ids;
    st.coord_of.assign(pt.paths.size(), -1);
    for (size_t i = 0; i < ids.size(); ++i) st.coord_of[ids[i]] = static_cast<int>(i);
    int width = static_cast<int>(ids.size());
    st.ideal = RowSpan(width);
    for (const Rel& r : rels) {
      // all u (ending at r.sv) and w (starting at r.tv) with the budget in L
      for (int lu = 0; lu + r.min_len <= L; ++lu) {
        for (const std::vector<int>& u : pt.by_len[lu]) {
          int utv = (u.size() == 1 && u[0] < 0) ? (-1 - u[0]) : q.arrows[u.back()].target;
          if (utv != r.sv) continue;
          for (int lw = 0; lu + r.min_len + lw <= L; ++lw) {
            for (const std::vector<int>& w : pt.by_len[lw]) {
              int wsv = (w.size() == 1 && w[0] < 0) ? (-1 - w[0]) : q.arrows[w.front()].source;
              if (wsv != r.tv) continue;
              std::vector<u32> vec(width, 0);
              bool nonzero = false;
              for (const auto& [c, term] : r.terms) {
                if (lu + static_cast<int>(term.size()) + lw > L) continue;  // truncated
                std::vector<int> full = concat(concat(u, term), w);
                int id = pt.add(q, full);
                // pt may have grown, but coord_of covers ids <= L only; the
                // concatenation has length <= L so it is registered
                int co = st.coord_of[id];
                require_internal(co >= 0, "path coordinate missing");
                vec[co] = F.add(vec[co], c);
                nonzero = true;
              }
              if (nonzero) st.ideal.add(F, std::move(vec));
            }
          }
        }
      }
    }
    // basis = non-pivot coordinates
    std::vector<bool> pivot(width, false);
    {
      // recompute pivots by reducing each unit vector: a coordinate is a pivot
      // iff the unit vector reduces to something supported past it. Simpler:
      // rely on RowSpan rows: each row's leading coordinate is a pivot.
      for (const auto& row : st.ideal.rows()) {
        for (int j = 0; j < width; ++j) {
          if (row[j]) {
            pivot[j] = true;
            break;
          }
        }
      }
    }
    for (int j = 0; j < width; ++j)
      if (!pivot[j]) st.basis_paths.push_back(st.order[j]);
    // display order: length asc then lex
    std::sort(st.basis_paths.begin(), st.basis_paths.end(), [&](int a, int b) {
      if (pt.path_len[a] != pt.path_len[b]) return pt.path_len[a] < pt.path_len[b];
      return pt.paths[a] < pt.paths[b];
    });
    return st;
  };

  int prev_dim = -1;
  for (int L = 2; L <= opt.l_max + 1; ++L) {
    Stratified st = build_level(L);
    int d = static_cast<int>(st.basis_paths.size());
    int max_len = 0;
    for (int id : st.basis_paths) max_len = std::max(max_len, pt.path_len[id]);
    if (d == prev_dim && max_len <= L - 2) {
      // stable: assemble the algebra
      std::vector<std::string> labels;
      std::vector<int> src, tgt, idem_index(nv, -1);
      std::vector<int> pos_of(pt.paths.size(), -1);
      for (int i = 0; i < d; ++i) {
        int id = st.basis_paths[i];
        pos_of[id] = i;
        labels.push_back(path_label(q, pt.paths[id]));
        src.push_back(pt.path_src[id]);
        tgt.push_back(pt.path_tgt[id]);
        if (pt.path_len[id] == 0) idem_index[pt.path_src[id]] = i;
      }
      for (int v = 0; v < nv; ++v)
        require_internal(idem_index[v] >= 0, "trivial path eliminated by relations");

      // normal form of an arbitrary <=L path as a basis-coefficient vector
      auto normal_form = [&](int path_id) {
        std::vector<u32> vec(st.order.size(), 0);
        vec[st.coord_of[path_id]] = 1;
        st.ideal.reduce(F, vec);
        std::vector<u32> out(d, 0);
        for (size_t j = 0; j < st.order.size(); ++j) {
          if (!vec[j]) continue;
          int pos = pos_of[st.order[j]];
          require_internal(pos >= 0, "normal form hits a pivot path");
          out[pos] = vec[j];
        }
        return out;
      };
      // extension table: basis path extended by one arrow, reduced
      // product b_i * b_j = "b_j then b_i" = concat(path_j, path_i)
      std::vector<std::vector<std::vector<u32>>> mult(
          d, std::vector<std::vector<u32>>(d, std::vector<u32>(d, 0)));
      for (int j = 0; j < d; ++j) {
        // start from path_j, extend by arrows of path_i
        for (int i = 0; i < d; ++i) {
          const std::vector<int>& pi = pt.paths[st.basis_paths[i]];
          // composability: tgt(path_j) == src(path_i)
          if (pt.path_tgt[st.basis_paths[j]] != pt.path_src[st.basis_paths[i]]) continue;
          std::vector<u32> acc(d, 0);
          acc[j] = 1;
          if (!(pi.size() == 1 && pi[0] < 0)) {
            for (int arrow : pi) {
              std::vector<u32> nxt(d, 0);
              for (int b = 0; b < d; ++b) {
                if (!acc[b]) continue;
                int bid = st.basis_paths[b];
                if (pt.path_tgt[bid] != q.arrows[arrow].source) continue;  // annihilated
                std::vector<int> ext = concat(pt.paths[bid], {arrow});
                int eid = pt.add(q, ext);
                require_internal(pt.path_len[eid] <= L, "extension exceeds stratum");
                std::vector<u32> nf = normal_form(eid);
                for (int k = 0; k < d; ++k)
                  if (nf[k]) nxt[k] = F.add(nxt[k], F.mul(acc[b], nf[k]));
              }
              acc = std::move(nxt);
            }
          }
          mult[i][j] = std::move(acc);
        }
      }
      std::vector<std::string> vnames = q.vertices;
      return make_algebra(field, std::move(vnames), std::move(labels), std::move(idem_index),
                          std::move(src), std::move(tgt), std::move(mult));
    }
    prev_dim = d;
  }
  fail(ErrCode::NotAdmissible,
       "relations do not yield a finite-dimensional admissible quotient within l_max = " +
           std::to_string(opt.l_max));
}

}  // namespace presilt
