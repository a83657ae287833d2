#pragma once

#include <memory>

#include "matrix.hpp"

namespace presilt {

struct Arrow {
  std::string name;
  int source = 0, target = 0;  // vertex indices
};

struct RelationTerm {
  i64 coeff = 1;
  std::vector<int> path;  // arrow indices, listed left to right ("a then b")
};

// A quiver with admissible relations. Paths compose left to right: the path
// [a, b] means "a then b" and requires target(a) == source(b).
struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<RelationTerm>> relations;
};

// A finite-dimensional algebra given by a basis and structure constants, with
// a complete set of primitive orthogonal idempotents among its basis elements.
// Basis element b carries a block (tgt(b), src(b)): b = e_tgt * b * e_src, and
// for a left module the action of b maps the src-block into the tgt-block.
struct FDAlgebra {
  Fp field;
  int dim = 0;
  int n_idem = 0;  // number of primitive idempotents ("vertices")
  std::vector<std::string> idem_names;
  std::vector<std::string> basis_labels;
  std::vector<int> idem_index;  // idempotent v -> basis index of e_v
  std::vector<int> src, tgt;    // per basis element
  // mult[i][j] = coefficient vector of b_i * b_j over the basis; the product
  // b_i * b_j is the composite "b_j then b_i".
  std::vector<std::vector<std::vector<u32>>> mult;

  // derived tables
  std::vector<std::vector<std::vector<int>>> block_basis;  // [t][s] -> basis indices with tgt=t, src=s
  RowSpan radical_span;                                    // row span of rad(A) inside k^dim
  std::vector<std::vector<u32>> rad_basis;                 // basis vectors of rad(A)

  explicit FDAlgebra(Fp f) : field(f), radical_span(0) {}

  std::vector<u32> zero() const { return std::vector<u32>(dim, 0); }
  std::vector<u32> unit() const;
  std::vector<u32> idem(int v) const;
  std::vector<u32> basis_vec(int i) const;
  std::vector<u32> product(const std::vector<u32>& x, const std::vector<u32>& y) const;
  std::vector<u32> add(const std::vector<u32>& x, const std::vector<u32>& y) const;
  std::vector<u32> scale(u32 c, const std::vector<u32>& x) const;
  bool in_radical(std::vector<u32> x) const { return radical_span.contains(field, std::move(x)); }
  // coefficient c with x ≡ c·e_v modulo the radical, for x in the corner e_v A e_v
  u32 corner_scalar(const std::vector<u32>& x, int v) const;
  // Invertibility of x inside the corner ring e_v A e_v.
  bool corner_unit(const std::vector<u32>& x, int v) const;
  std::vector<u32> corner_inverse(const std::vector<u32>& x, int v) const;

  // Left-multiplication matrix of the element x on A (columns act on
  // coefficient vectors): L(x) * vec(y) = vec(x * y).
  Matrix left_mult(const std::vector<u32>& x) const;
  Matrix right_mult(const std::vector<u32>& x) const;

  void finalize();  // derived tables, radical, consistency checks
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

struct BuildOptions {
  int l_max = 30;
  int path_budget = 200000;  // total path count guard during basis construction
};

// Basis of kQ/I by stratified path rewriting. Raises NotAdmissible when a
// relation has a path of length < 2 or when strata fail to stabilize by l_max.
AlgebraPtr build_algebra(const QuiverPresentation& q, Fp field, const BuildOptions& opt = {});

// Structure-constant constructor (used for endomorphism algebras).
AlgebraPtr make_algebra(Fp field, std::vector<std::string> idem_names,
                        std::vector<std::string> basis_labels, std::vector<int> idem_index,
                        std::vector<int> src, std::vector<int> tgt,
                        std::vector<std::vector<std::vector<u32>>> mult);

}  // namespace presilt
