// Collector arithmetic against independent models of small groups.
#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace sigma3;
using namespace sigma3::testing;

TEST_CASE("collection matches modular arithmetic on C9 x C3") {
  auto g = make_c9xc3();
  auto all = all_vectors(g);
  REQUIRE(all.size() == 27);
  for (const auto& u : all)
    for (const auto& v : all) {
      auto [k1, m1] = model_c9xc3(u);
      auto [k2, m2] = model_c9xc3(v);
      auto [k3, m3] = model_c9xc3(g->mul(u, v));
      CHECK(k3 == (k1 + k2) % 9);
      CHECK(m3 == (m1 + m2) % 3);
    }
  // the classic carry: a1^2 * a1^2 = a1 * a2
  ExpVec sq = g->mul(g->gen_vec(0, 2), g->gen_vec(0, 2));
  CHECK(sq == ExpVec{1, 1, 0});
}

TEST_CASE("element orders on C9 x C3") {
  auto g = make_c9xc3();
  std::map<long long, int> census;
  for (const auto& v : all_vectors(g)) ++census[g->element_order_vec(v)];
  CHECK(census[1] == 1);
  CHECK(census[3] == 8);
  CHECK(census[9] == 18);
}

TEST_CASE("collection matches the unitriangular model of the exponent-3 extraspecial group") {
  auto g = make_heis3();
  auto all = all_vectors(g);
  REQUIRE(all.size() == 27);
  // the map must be a bijection for the comparison to mean anything
  std::map<std::tuple<int, int, int>, int> seen;
  for (const auto& v : all) {
    Tri t = model_heis3(v);
    ++seen[{t.a, t.b, t.c}];
  }
  CHECK(seen.size() == 27);
  for (const auto& u : all)
    for (const auto& v : all)
      CHECK(model_heis3(g->mul(u, v)) == tri_mul(model_heis3(u), model_heis3(v)));
  for (const auto& v : all)
    if (PcGroup::last_nonzero(v) >= 0) CHECK(g->element_order_vec(v) == 3);
}

TEST_CASE("collection matches the semidirect model of the exponent-9 extraspecial group") {
  auto g = make_extra9();
  auto all = all_vectors(g);
  std::map<std::pair<int, int>, int> seen;
  for (const auto& v : all) {
    SemiDir s = model_extra9(v);
    ++seen[{s.k, s.m}];
  }
  CHECK(seen.size() == 27);
  for (const auto& u : all)
    for (const auto& v : all)
      CHECK(model_extra9(g->mul(u, v)) == sd_mul(model_extra9(u), model_extra9(v)));
  CHECK(g->element_order_vec(g->gen_vec(0)) == 9);
  CHECK(g->element_order_vec(g->gen_vec(1)) == 3);
}

TEST_CASE("collection matches the quaternion model at p = 2") {
  auto g = make_q8();
  auto all = all_vectors(g);
  REQUIRE(all.size() == 8);
  std::map<std::pair<int, int>, int> seen;
  for (const auto& v : all) {
    Quat q = model_q8(v);
    ++seen[{q.sign, q.axis}];
  }
  CHECK(seen.size() == 8);
  for (const auto& u : all)
    for (const auto& v : all)
      CHECK(model_q8(g->mul(u, v)) == quat_mul(model_q8(u), model_q8(v)));
  CHECK(g->element_order_vec(g->gen_vec(0)) == 4);
  CHECK(g->element_order_vec(g->gen_vec(2)) == 2);
}

TEST_CASE("inverse, powers, conjugation, commutators") {
  for (auto g : {make_heis3(), make_extra9(), make_c27xc3()}) {
    std::mt19937 rng(12345);
    auto all = all_vectors(g);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const ExpVec& u = all[pick(rng)];
      const ExpVec& v = all[pick(rng)];
      CHECK(g->mul(u, g->inv(u)) == g->identity_vec());
      CHECK(g->mul(g->inv(u), u) == g->identity_vec());
      CHECK(g->pow(u, 5) == g->mul(g->pow(u, 3), g->pow(u, 2)));
      CHECK(g->pow(u, -2) == g->inv(g->pow(u, 2)));
      // h^-1 u h  and  u * [u, h] agree
      ExpVec lhs = g->conj(u, v);
      ExpVec rhs = g->mul(u, g->comm_of(u, v));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("seeded associativity triples in C27 x C3") {
  auto g = make_c27xc3();
  auto all = all_vectors(g);
  std::mt19937 rng(987654);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const ExpVec& a = all[pick(rng)];
    const ExpVec& b = all[pick(rng)];
    const ExpVec& c = all[pick(rng)];
    CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    auto [k, m] = model_c27xc3(g->mul(a, b));
    auto [ka, ma] = model_c27xc3(a);
    auto [kb, mb] = model_c27xc3(b);
    CHECK(k == (ka + kb) % 27);
    CHECK(m == (ma + mb) % 3);
  }
}

TEST_CASE("overlap checks accept the consistent presentations") {
  for (auto g : {make_c9xc3(), make_heis3(), make_extra9(), make_c27xc3(), make_q8()}) {
    std::string why;
    CHECK(g->check_consistency(&why));
    CHECK(why.empty());
  }
}

TEST_CASE("overlap checks reject an impossible presentation") {
  auto g = make_inconsistent_power();
  std::string why;
  CHECK_FALSE(g->check_consistency(&why));
  CHECK(!why.empty());
}

TEST_CASE("abelian detection and trivial group") {
  CHECK(make_c9xc3()->is_abelian());
  CHECK_FALSE(make_heis3()->is_abelian());
  auto t = PcGroup::trivial(3);
  CHECK(t->n == 0);
  CHECK(t->mul({}, {}) == ExpVec{});
}
