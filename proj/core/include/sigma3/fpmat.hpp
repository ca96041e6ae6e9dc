// Dense row-major linear algebra over a prime field: reduced echelon forms,
// ranks, kernels, and the right action of matrices on row-spanned subspaces.
#pragma once

#include <string>
#include <vector>

#include "sigma3/pcgroup.hpp"

namespace sigma3 {

using FpMat = std::vector<std::vector<Exp>>;

// Reduced row echelon form with zero rows dropped; the result is the
// canonical basis of the row space.
FpMat rref(FpMat m, int p);
int mat_rank(FpMat m, int p);
FpMat mat_mul(const FpMat& a, const FpMat& b, int p);
FpMat mat_identity(int n);

// Basis (reduced echelon rows) of { x : x * m = 0 } with x a row vector of
// length `rows`; `cols` makes the shape explicit when m has no rows.
FpMat left_nullspace(const FpMat& m, int rows, int cols, int p);

// Echelonized image of a row-spanned subspace under the right action v -> v*m.
FpMat subspace_map(const FpMat& space, const FpMat& m, int p);

// Canonical byte key of a subspace given by reduced echelon rows.
std::string space_key(const FpMat& rref_rows);

}  // namespace sigma3
