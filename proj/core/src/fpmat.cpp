// Small dense matrices over F_p.  Everything here works on exponent-sized
// entries (p < 256), which is all the pc machinery ever needs.
#include "sigma3/fpmat.hpp"

#include <cassert>

namespace sigma3 {

namespace {

int inv_mod(int a, int p) {
  a %= p;
  assert(a > 0);
  int x = 1;
  while ((a * x) % p != 1) ++x;
  return x;
}

}  // namespace

FpMat rref(FpMat m, int p) {
  std::size_t r = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && !m[piv][c]) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    int s = inv_mod(m[r][c], p);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = (Exp)(m[r][j] * s % p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || !m[i][c]) continue;
      int f = p - m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = (Exp)((m[i][j] + f * m[r][j]) % p);
    }
    ++r;
  }
  m.resize(r);
  return m;
}

int mat_rank(FpMat m, int p) { return (int)rref(std::move(m), p).size(); }

FpMat mat_mul(const FpMat& a, const FpMat& b, int p) {
  if (a.empty()) return {};
  assert(b.size() == a[0].size() || a[0].empty());
  std::size_t cols = b.empty() ? 0 : b[0].size();
  FpMat out(a.size(), std::vector<Exp>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < cols; ++j)
        out[i][j] = (Exp)((out[i][j] + a[i][k] * b[k][j]) % p);
    }
  return out;
}

FpMat mat_identity(int n) {
  FpMat m(n, std::vector<Exp>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

FpMat left_nullspace(const FpMat& m, int rows, int cols, int p) {
  assert((int)m.size() == rows);
  if (rows == 0) return {};
  if (cols == 0) return mat_identity(rows);
  // x * m = 0 becomes m^T y = 0; reduce m^T and read the kernel off the free
  // columns.
  FpMat t(cols, std::vector<Exp>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = m[i][j];
  t = rref(std::move(t), p);
  std::vector<int> pivot_col(t.size());
  std::vector<bool> is_pivot(rows, false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    int c = 0;
    while (!t[i][c]) ++c;
    pivot_col[i] = c;
    is_pivot[c] = true;
  }
  FpMat basis;
  for (int f = 0; f < rows; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Exp> v(rows, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
      v[pivot_col[i]] = (Exp)((p - t[i][f] % p) % p);
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis), p);
}

FpMat subspace_map(const FpMat& space, const FpMat& m, int p) {
  return rref(mat_mul(space, m, p), p);
}

std::string space_key(const FpMat& rref_rows) {
  std::string key;
  key.push_back((char)rref_rows.size());
  for (const std::vector<Exp>& row : rref_rows)
    key.append(row.begin(), row.end());
  return key;
}

}  // namespace sigma3
