// Subgroup sequences, sifting, series, and quotient presentations.
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "sigma3/series.hpp"

using namespace sigma3;
using namespace sigma3::testing;

TEST_CASE("cyclic subgroup and normal closure in the extraspecial group") {
  auto g = make_heis3();
  Subgroup cyc = make_subgroup(g, {g->gen_vec(0)}, {});
  CHECK(cyc.order_exp() == 1);
  CHECK(contains(cyc, g->gen_vec(0, 2)));
  CHECK_FALSE(contains(cyc, g->gen_vec(1)));
  CHECK_FALSE(is_normal_under(cyc, ambient_gens(g)));

  Subgroup nc = normal_closure(g, {g->gen_vec(0)});
  CHECK(nc.order_exp() == 2);  // picks up the commutator
  CHECK(contains(nc, g->gen_vec(2)));
  CHECK(is_normal_under(nc, ambient_gens(g)));
}

TEST_CASE("derived subgroup and enumeration") {
  auto g = make_heis3();
  Subgroup d = derived_subgroup(whole_group(g));
  CHECK(d.order_exp() == 1);
  CHECK(contains(d, g->gen_vec(2)));

  auto elems = enumerate_subgroup(whole_group(g));
  std::set<ExpVec> uniq(elems.begin(), elems.end());
  CHECK(uniq.size() == 27);

  Subgroup habel = make_subgroup(g, {g->gen_vec(1), g->gen_vec(2)}, {});
  auto sub = enumerate_subgroup(habel);
  CHECK(sub.size() == 9);
}

TEST_CASE("canonical subgroup keys agree for different generating sets") {
  auto g = make_c27xc3();
  Subgroup s1 = make_subgroup(g, {g->pow(g->gen_vec(0), 3)}, {});  // <a1^3>, order 9
  Subgroup s2 = make_subgroup(g, {g->gen_vec(2)}, {});             // <a3>, order 3
  CHECK(s1.order_exp() == 2);
  CHECK(s2.order_exp() == 1);
  CHECK_FALSE(same_subgroup(s1, s2));
  Subgroup s3 = make_subgroup(
      g, {g->mul(g->pow(g->gen_vec(0), 3), g->gen_vec(2))}, {});
  Subgroup s4 = make_subgroup(
      g, {g->mul(g->pow(g->gen_vec(0), 6), g->gen_vec(2, 2))}, {});
  CHECK(same_subgroup(s3, s4));
  CHECK(subgroup_key(s3) == subgroup_key(s4));
}

TEST_CASE("series invariants of the sample groups") {
  CHECK(cl_p(make_c9xc3()) == 2);
  CHECK(cl_p(make_c27xc3()) == 3);
  CHECK(nilpotency_class(make_heis3()) == 2);
  CHECK(nilpotency_class(make_c9xc3()) == 1);
  CHECK(solvable_length(make_heis3()) == 2);
  CHECK(solvable_length(make_c27xc3()) == 1);

  auto stats = group_stats(make_heis3());
  CHECK(stats.order_exp == 3);
  CHECK(stats.rank == 2);
  CHECK(stats.clp == 2);
  CHECK(stats.nilclass == 2);
  CHECK(stats.sl == 2);

  auto stats9 = group_stats(make_extra9());
  CHECK(stats9.rank == 2);
  CHECK(stats9.clp == 2);
}

TEST_CASE("cyclic-factor shapes of the lower central series") {
  // abelian groups have no factors beyond the first, so both shapes hold
  CHECK(is_cf(make_c9xc3()));
  CHECK(is_bcf(make_c9xc3()));
  CHECK(is_cf(make_heis3()));
  auto ranks = lcs_factor_ranks(make_heis3());
  REQUIRE(ranks.size() == 1);
  CHECK(ranks[0] == 1);
}

TEST_CASE("quotient by a central subgroup of C27 x C3") {
  auto g = make_c27xc3();
  Subgroup n = normal_closure(g, {g->gen_vec(2)});  // <a3> = <a1^9>
  Quotient q = quotient(g, n);
  CHECK(q.q->n == 3);
  CHECK(q.q->is_abelian());
  CHECK(q.q->element_order_vec(q.q->gen_vec(0)) == 9);
  CHECK(q.q->element_order_vec(q.q->gen_vec(2)) == 3);
  CHECK(q.project(g->gen_vec(2)) == q.q->identity_vec());
}

TEST_CASE("quotient projection is a homomorphism") {
  auto g = make_extra9();
  Subgroup n = normal_closure(g, {g->gen_vec(2)});
  Quotient q = quotient(g, n);
  CHECK(q.q->n == 2);
  auto all = all_vectors(g);
  for (const auto& u : all)
    for (const auto& v : all)
      CHECK(q.project(g->mul(u, v)) == q.q->mul(q.project(u), q.project(v)));
  // canonical section composes back to the sifted representative
  for (const auto& u : all) CHECK(q.project(q.lift(q.project(u))) == q.project(u));
}

TEST_CASE("parent quotient strips the last layer") {
  auto g = make_heis3();
  Quotient par = p_parent(g);
  CHECK(par.q->n == 2);
  CHECK(par.q->is_abelian());
  Quotient par2 = p_parent(make_c9xc3());
  CHECK(par2.q->n == 2);  // C9 x C3 -> (3,3)
  CHECK(par2.q->element_order_vec(par2.q->gen_vec(0)) == 3);
}

TEST_CASE("frattini subgroup") {
  CHECK(frattini_subgroup(make_heis3()).order_exp() == 1);
  CHECK(frattini_subgroup(make_c9xc3()).order_exp() == 1);
  CHECK(frattini_subgroup(make_c27xc3()).order_exp() == 2);
}
