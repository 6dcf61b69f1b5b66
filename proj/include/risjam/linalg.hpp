#pragma once

#include "risjam/types.hpp"

namespace risjam {

// Column-wise Khatri-Rao product: column l of the result is kron(a_l, b_l).
// Satisfies (B^T ⋄ A) vecd{X} = vec{A X B} for diagonal X.
CMat khatri_rao_cols(const CMat& a, const CMat& b);

// Column-major stacking of a matrix into a vector.
CVec vec(const CMat& m);

struct Svd {
  CMat u;
  RVec sigma;  // descending
  CMat v;
};

// Deterministic SVD. Singular values descending; each left singular vector is
// rotated so its largest-magnitude entry is real-positive, with the paired
// right singular vector co-rotated so u * sigma * v^H is preserved.
Svd svd_canonical(const CMat& a, bool full_u = false, bool full_v = false);

// Left inverse (A^H A)^{-1} A^H of a full-column-rank tall matrix, computed
// via the SVD. Singular values below rel_tol * sigma_max are truncated, which
// degrades the result to a pseudo-inverse; `truncated` reports that fallback.
CMat left_inverse(const CMat& a, bool& truncated, double rel_tol = 1e-12);

// exp(j*angle(z)) elementwise, with angle(0) := 0 so the projection is total.
CVec project_unit_modulus(const CVec& phi);

// Deterministic summation with pairwise splitting (order-fixed, low error).
double pairwise_sum(const double* data, std::size_t n);

}  // namespace risjam
