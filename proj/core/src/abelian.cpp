// Abelian type of a section H/(K*[H,H]): relation matrix diagonalization
// over the p-local integers, with all arithmetic mod p^B for a B exceeding
// any possible invariant-factor exponent.
#include <algorithm>
#include <cassert>

#include "sigma3/invariants.hpp"

namespace sigma3 {

int AbelianType::order_exp() const {
  int s = 0;
  for (int x : logs) s += x;
  return s;
}

std::string AbelianType::compact() const {
  if (logs.empty()) return "0";
  std::string out;
  for (int x : logs) {
    if (x >= 10)
      out += "(" + std::to_string(x) + ")";
    else
      out += std::to_string(x);
  }
  return out;
}

namespace {

// Diagonalize an integer matrix over Z localized at p, entries mod p^B.
// Returns the p-valuations of the nonunit diagonal entries.  Every column
// must acquire a pivot (finite section), asserted.
std::vector<int> plocal_diagonal(std::vector<std::vector<long long>> m, int p,
                                 int B) {
  std::vector<int> logs;
  if (m.empty()) return logs;
  const int rows = (int)m.size(), cols = (int)m[0].size();
  long long mod = 1;
  for (int i = 0; i < B; ++i) mod *= p;
  auto norm = [&](long long x) { return ((x % mod) + mod) % mod; };
  for (auto& r : m)
    for (auto& x : r) x = norm(x);
  auto val = [&](long long x) {
    if (!x) return B;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
  };
  auto mulmod = [&](long long a, long long b) {
    return (long long)((unsigned __int128)a * (unsigned __int128)b % mod);
  };
  // inverse of a unit mod p^B by Newton lifting from an inverse mod p
  auto invmod = [&](long long a) {
    assert(a % p);
    long long x = 1;
    while ((a % p) * x % p != 1) ++x;
    for (int i = 0; i < 7; ++i) x = mulmod(x, norm(2 - mulmod(a, x)));
    assert(mulmod(a, x) == 1);
    return x;
  };

  int d = 0;
  for (; d < rows && d < cols; ++d) {
    int bi = -1, bj = -1, bv = B;
    for (int i = d; i < rows; ++i)
      for (int j = d; j < cols; ++j) {
        int v = val(m[i][j]);
        if (v < bv) bv = v, bi = i, bj = j;
      }
    if (bi < 0) break;  // all remaining entries vanish mod p^B
    std::swap(m[d], m[bi]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][d], m[i][bj]);
    // scale the pivot row so the pivot becomes exactly p^bv
    long long pv = 1;
    for (int i = 0; i < bv; ++i) pv *= p;
    long long u = invmod(m[d][d] / pv);
    for (int j = d; j < cols; ++j) m[d][j] = mulmod(m[d][j], u);
    assert(m[d][d] == pv);
    for (int i = d + 1; i < rows; ++i) {
      if (!m[i][d]) continue;
      long long f = m[i][d] / pv;  // exact: minimal valuation pivot
      for (int j = d; j < cols; ++j)
        m[i][j] = norm(m[i][j] - mulmod(f, m[d][j]));
    }
    for (int j = d + 1; j < cols; ++j) {
      if (!m[d][j]) continue;
      long long f = m[d][j] / pv;
      for (int i = d; i < rows; ++i)
        m[i][j] = norm(m[i][j] - mulmod(f, m[i][d]));
    }
    logs.push_back(bv);
  }
  // a column without a finite pivot would be an infinite cyclic factor
  assert((int)logs.size() == cols);
  std::erase(logs, 0);
  std::sort(logs.rbegin(), logs.rend());
  return logs;
}

}  // namespace

AbelianType abelian_type(const Subgroup& h, const Subgroup& k) {
  const PcGroupPtr& g = h.g;
  assert(k.g == g);
  for (const ExpVec& v : k.igs)
    if (!contains(h, v)) throw UsageError("section subgroup not contained");
  if (!is_normal_under(k, h.igs))
    throw UsageError("section subgroup is not normal");

  std::vector<ExpVec> gens = k.igs;
  for (size_t a = 0; a < h.igs.size(); ++a)
    for (size_t b = a + 1; b < h.igs.size(); ++b)
      gens.push_back(g->comm_of(h.igs[b], h.igs[a]));
  Subgroup m = make_subgroup(g, std::move(gens), h.igs);

  const int ng = (int)h.igs.size();
  const int p = g->prime;
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < ng; ++i) {
    std::vector<int> c = sift_coords(h, g->pow(h.igs[i], p));
    std::vector<long long> row(c.begin(), c.end());
    row[i] -= p;
    rows.push_back(std::move(row));
  }
  for (const ExpVec& w : m.igs) {
    std::vector<int> c = sift_coords(h, w);
    rows.emplace_back(c.begin(), c.end());
  }

  const int B = std::min(39, ng + 1);
  assert(ng + 1 <= 39);
  AbelianType t;
  t.logs = plocal_diagonal(std::move(rows), p, B);
  assert(t.order_exp() == ng - m.order_exp());
  return t;
}

AbelianType abelian_type(const Subgroup& h) {
  return abelian_type(h, trivial_subgroup(h.g));
}

AbelianType abelianization_type(const PcGroupPtr& g) {
  return abelian_type(whole_group(g), trivial_subgroup(g));
}

}  // namespace sigma3
