// Small hand-written pc presentations with independent models, shared by the
// unit tests as oracles.
#pragma once

#include <cstdint>

#include "sigma3/pcgroup.hpp"
#include "sigma3/serialize.hpp"

namespace sigma3::testing {

// C9 x C3: a1^3 = a2, a2^3 = 1, a3^3 = 1, abelian.
inline PcGroupPtr make_c9xc3() {
  auto g = std::make_shared<PcGroup>(3, 3);
  g->power[0] = parse_word("a2", 3);
  return g;
}

// C27 x C3: a1^3 = a2, a2^3 = a3, rest trivial.
inline PcGroupPtr make_c27xc3() {
  auto g = std::make_shared<PcGroup>(3, 4);
  g->power[0] = parse_word("a2", 4);
  g->power[1] = parse_word("a3", 4);
  return g;
}

// Extraspecial 3^(1+2) of exponent 3: [a2,a1] = a3, all cubes trivial.
inline PcGroupPtr make_heis3() {
  auto g = std::make_shared<PcGroup>(3, 3);
  g->set_commutator_word(1, 0, parse_word("a3", 3));
  g->weight = {1, 1, 2};
  return g;
}

// Extraspecial 3^(1+2) of exponent 9: a1^3 = a3, [a2,a1] = a3.
inline PcGroupPtr make_extra9() {
  auto g = std::make_shared<PcGroup>(3, 3);
  g->power[0] = parse_word("a3", 3);
  g->set_commutator_word(1, 0, parse_word("a3", 3));
  g->weight = {1, 1, 2};
  return g;
}

// Quaternion group of order 8: a1^2 = a2^2 = [a2,a1] = a3.
inline PcGroupPtr make_q8() {
  auto g = std::make_shared<PcGroup>(2, 3);
  g->power[0] = parse_word("a3", 3);
  g->power[1] = parse_word("a3", 3);
  g->set_commutator_word(1, 0, parse_word("a3", 3));
  g->weight = {1, 1, 2};
  return g;
}

// a2 = a1^3 yet [a2,a1] = a4: a power of a1 failing to commute with a1 is a
// contradiction, so the overlap checks must reject this presentation.
inline PcGroupPtr make_inconsistent_power() {
  auto g = std::make_shared<PcGroup>(3, 4);
  g->power[0] = parse_word("a2", 4);
  g->power[1] = parse_word("a3", 4);
  g->power[2] = parse_word("a4", 4);
  g->set_commutator_word(1, 0, parse_word("a4", 4));
  return g;
}

// Independent model of C9 x C3 (resp. C27 x C3) by modular arithmetic.
inline std::pair<int, int> model_c9xc3(const ExpVec& v) {
  return {(v[0] + 3 * v[1]) % 9, v[2] % 3};
}
inline std::pair<int, int> model_c27xc3(const ExpVec& v) {
  return {(v[0] + 3 * v[1] + 9 * v[2]) % 27, v[3] % 3};
}

// Independent model of the exponent-3 extraspecial group: unitriangular
// triples (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b') mod 3;
// generators map to a1 -> (1,0,0), a2 -> (0,1,0), a3 -> (0,0,2).
struct Tri {
  int a, b, c;
  friend bool operator==(const Tri&, const Tri&) = default;
};
inline Tri tri_mul(Tri u, Tri v) {
  return Tri{(u.a + v.a) % 3, (u.b + v.b) % 3, (u.c + v.c + u.a * v.b) % 3};
}
inline Tri model_heis3(const ExpVec& v) {
  Tri r{0, 0, 0};
  for (int i = 0; i < v[0]; ++i) r = tri_mul(r, Tri{1, 0, 0});
  for (int i = 0; i < v[1]; ++i) r = tri_mul(r, Tri{0, 1, 0});
  for (int i = 0; i < v[2]; ++i) r = tri_mul(r, Tri{0, 0, 2});
  return r;
}

// Independent model of the exponent-9 extraspecial group as C9 rtimes C3
// with s^t = s^7: elements s^k t^m, (k,m)(k',m') = (k + k'*7^m mod 9, m+m').
struct SemiDir {
  int k, m;
  friend bool operator==(const SemiDir&, const SemiDir&) = default;
};
inline SemiDir sd_mul(SemiDir u, SemiDir v) {
  // t^-1 s t = s^7, hence t s t^-1 = s^4 and t^m s t^-m = s^(4^m)
  static const int pow4[3] = {1, 4, 7};
  return SemiDir{(u.k + v.k * pow4[u.m]) % 9, (u.m + v.m) % 3};
}
inline SemiDir model_extra9(const ExpVec& v) {
  return SemiDir{(v[0] + 3 * v[2]) % 9, v[1] % 3};
}

// Independent model of Q8: elements +-{1,i,j,k} encoded as (sign, axis).
struct Quat {
  int sign;  // 0 = +, 1 = -
  int axis;  // 0 = 1, 1 = i, 2 = j, 3 = k
  friend bool operator==(const Quat&, const Quat&) = default;
};
inline Quat quat_mul(Quat u, Quat v) {
  // i*i = -1, i*j = k, j*i = -k, and cyclically
  static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int negx[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return Quat{(u.sign + v.sign + negx[u.axis][v.axis]) % 2, axis[u.axis][v.axis]};
}
inline Quat model_q8(const ExpVec& v) {
  Quat r{0, 0};
  for (int i = 0; i < v[0]; ++i) r = quat_mul(r, Quat{0, 1});
  for (int i = 0; i < v[1]; ++i) r = quat_mul(r, Quat{0, 2});
  for (int i = 0; i < v[2]; ++i) r = quat_mul(r, Quat{1, 0});
  return r;
}

// Every exponent vector of a group, in odometer order.
inline std::vector<ExpVec> all_vectors(const PcGroupPtr& g) {
  std::vector<ExpVec> out;
  ExpVec v(g->n, 0);
  while (true) {
    out.push_back(v);
    int i = 0;
    while (i < g->n && v[i] == g->prime - 1) v[i++] = 0;
    if (i == g->n) break;
    ++v[i];
  }
  return out;
}

}  // namespace sigma3::testing
