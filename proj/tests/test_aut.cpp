// Automorphism groups, generator-inverting automorphisms, and Schur balance
// against brute-force oracles and hand-checked orders.
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "sigma3/aut.hpp"
#include "sigma3/fpres.hpp"
#include "sigma3/pquotient.hpp"
#include "sigma3/serialize.hpp"
#include "sigma3/series.hpp"

using namespace sigma3;
using namespace sigma3::testing;

namespace {

PcGroupPtr pq_text(const std::string& text, int bound, long long e = 0) {
  return p_quotient(instantiate(parse_fp_template(text), e), bound).g;
}

PcGroupPtr make_c9() {
  return pq_text("group c { prime 3; class 2; gens x; rel x^(3^2) }", 2);
}

// largest class-2 quotient of <x,y | x^9, y^3>: order 81
PcGroupPtr free81() {
  return pq_text("group m { prime 3; class 2; gens x, y;"
                 " rel y^3; rel x^(3^2) }",
                 2);
}

PcGroupPtr abelian_81_9() {
  return pq_text("group a { prime 3; class 4; gens x, y;"
                 " rel [y,x]; rel x^(3^4); rel y^(3^2) }",
                 99);
}

int minimal_rank(const PcGroupPtr& g) {
  PcGroupPtr s = standard_copy(g);
  int d = 0;
  while (d < s->n && s->weight[d] == 1) ++d;
  return d;
}

// Count automorphisms by trying every tuple of minimal-generator images.
long long aut_order_brute(const PcGroupPtr& g0) {
  PcGroupPtr g = standard_copy(g0);
  const int d = minimal_rank(g);
  std::vector<ExpVec> all = all_vectors(g);
  std::vector<std::size_t> idx(d, 0);
  long long count = 0;
  while (true) {
    std::vector<ExpVec> mi(d);
    for (int i = 0; i < d; ++i) mi[i] = all[idx[i]];
    if (is_automorphism(g, complete_images(g, mi))) ++count;
    int i = 0;
    while (i < d && idx[i] == all.size() - 1) idx[i++] = 0;
    if (i == d) break;
    ++idx[i];
  }
  return count;
}

std::string img_key(const std::vector<ExpVec>& img) {
  std::string key;
  for (const ExpVec& v : img) key.append(v.begin(), v.end());
  return key;
}

// Order of the group generated by the maps themselves (they act faithfully
// on the group, so distinct image tuples are distinct elements).
long long closure_order(const PcGroupPtr& g, const std::vector<AutMap>& gens) {
  std::vector<AutMap> pool{identity_aut(g)};
  std::set<std::string> seen{img_key(pool[0].img)};
  for (std::size_t at = 0; at < pool.size(); ++at)
    for (const AutMap& gen : gens) {
      AutMap next = compose_aut(g, pool[at], gen);
      if (seen.insert(img_key(next.img)).second) {
        REQUIRE(pool.size() < 5000);
        pool.push_back(std::move(next));
      }
    }
  return (long long)pool.size();
}

}  // namespace

TEST_CASE("identity, composition, and inversion of automorphism maps") {
  auto g = standard_copy(make_heis3());
  AutMap id = identity_aut(g);
  CHECK(is_identity_aut(g, id));
  CHECK(is_automorphism(g, id.img));

  // x -> xy is an automorphism of the free class-2 exponent-3 group
  std::vector<ExpVec> mi{g->mul(g->gen_vec(0), g->gen_vec(1)), g->gen_vec(1)};
  AutMap t{complete_images(g, mi), {}};
  CHECK(is_automorphism(g, t.img));
  std::vector<ExpVec> ni{g->mul(g->gen_vec(0), g->gen_vec(1, 2)),
                         g->gen_vec(1)};
  t.inv = complete_images(g, ni);
  CHECK(is_identity_aut(g, compose_aut(g, t, inverse_aut(t))));
  CHECK(is_identity_aut(g, compose_aut(g, inverse_aut(t), t)));
  CHECK(apply_aut(g, t, g->gen_vec(0)) == mi[0]);

  // composition order: (t then id) and (id then t) both equal t
  CHECK(compose_aut(g, t, id).img == t.img);
  CHECK(compose_aut(g, id, t).img == t.img);
}

TEST_CASE("completed images are rejected when not bijective") {
  auto g = standard_copy(make_heis3());
  // both minimal generators to the same image: a homomorphism, not onto
  std::vector<ExpVec> mi{g->gen_vec(0), g->gen_vec(0)};
  CHECK(!is_automorphism(g, complete_images(g, mi)));
  // wrong arity
  CHECK(!is_automorphism(g, {g->gen_vec(0)}));
  // relation-breaking assignment on the elementary abelian square
  auto a = PcGroup::elementary_abelian(3, 1);
  CHECK(is_automorphism(a, {a->gen_vec(0, 2)}));
}

TEST_CASE("automorphism group orders match the brute-force count") {
  struct Row {
    const char* name;
    PcGroupPtr g;
    long long order;
  };
  std::vector<Row> rows;
  rows.push_back({"c9", make_c9(), 6});
  rows.push_back({"3x3", PcGroup::elementary_abelian(3, 2), 48});
  rows.push_back({"3x3x3", PcGroup::elementary_abelian(3, 3), 11232});
  rows.push_back({"heis3", make_heis3(), 432});
  rows.push_back({"extra9", make_extra9(), 54});
  rows.push_back({"q8", make_q8(), 24});
  rows.push_back({"c9xc3", make_c9xc3(), 0});
  rows.push_back({"c27xc3", make_c27xc3(), 0});
  rows.push_back({"free81", free81(), 0});
  for (auto& r : rows) {
    CAPTURE(r.name);
    AutGroup a = aut_group(r.g);
    long long brute = aut_order_brute(r.g);
    CHECK(decimal(a.order) == std::to_string(brute));
    if (r.order) CHECK(decimal(a.order) == std::to_string(r.order));
  }
}

TEST_CASE("automorphism group of a rank-two abelian group of order 3^6") {
  auto g = abelian_81_9();
  REQUIRE(group_stats(g).order_exp == 6);
  AutGroup a = aut_group(g);
  CHECK(decimal(a.order) == std::to_string(aut_order_brute(g)));
}

TEST_CASE("trivial and cyclic edge cases") {
  AutGroup t = aut_group(PcGroup::trivial(3));
  CHECK(decimal(t.order) == "1");
  CHECK(t.generators.empty());
  AutGroup c2 = aut_group(PcGroup::elementary_abelian(2, 1));
  CHECK(decimal(c2.order) == "1");
  AutGroup c4 = aut_group(pq_text(
      "group c { prime 2; class 2; gens x; rel x^(2^2) }", 2));
  CHECK(decimal(c4.order) == "2");
}

TEST_CASE("generator maps are automorphisms and satisfy the presentation") {
  for (const PcGroupPtr& g :
       {standard_copy(make_heis3()), standard_copy(make_extra9()), free81()}) {
    AutGroup a = aut_group(g);
    FpInstance inst = instantiate(presentation_template(g));
    REQUIRE(inst.ngens() == g->n);
    for (const AutMap& m : a.generators) {
      CHECK(is_automorphism(g, m.img));
      CHECK(is_identity_aut(g, compose_aut(g, m, inverse_aut(m))));
      for (const FpRel& rel : inst.tpl->rels) {
        ExpVec res = eval_relator(rel, inst, g, m.img);
        CHECK(PcGroup::last_nonzero(res) == -1);
      }
    }
    // spot-check closure under composition
    if (a.generators.size() >= 2) {
      AutMap c = compose_aut(g, a.generators[0], a.generators[1]);
      CHECK(is_automorphism(g, c.img));
      CHECK(is_identity_aut(g, compose_aut(g, c, inverse_aut(c))));
    }
  }
}

TEST_CASE("generators preserve the lower exponent-p central series") {
  for (const PcGroupPtr& g : {standard_copy(make_heis3()), free81()}) {
    AutGroup a = aut_group(g);
    for (const Subgroup& term : lower_p_central_series(g))
      for (const AutMap& m : a.generators)
        for (const ExpVec& v : term.igs) {
          CHECK(contains(term, apply_aut(g, m, v)));
          CHECK(contains(term, map_through(g, m.inv, v)));
        }
  }
}

TEST_CASE("order equals the size of the generated group of maps") {
  for (const PcGroupPtr& g :
       {standard_copy(make_heis3()), standard_copy(make_extra9()),
        standard_copy(make_c9xc3()), make_c9(),
        PcGroup::elementary_abelian(3, 2), standard_copy(make_q8())}) {
    AutGroup a = aut_group(g);
    CHECK(decimal(a.order) == std::to_string(closure_order(g, a.generators)));
  }
}

TEST_CASE("abelianization action is deterministic and faithful on V") {
  AutGroup a = aut_group(PcGroup::elementary_abelian(3, 2));
  REQUIRE(a.generators.size() == a.abelianization_action.size());
  // lexicographic transvections first: the (0,1) transvection leads
  CHECK(a.abelianization_action[0] == FpMat{{1, 1}, {0, 1}});
  CHECK(a.abelianization_action[1] == FpMat{{1, 0}, {1, 1}});
  // final generator is the primitive scalar on the first generator
  CHECK(a.abelianization_action.back() == FpMat{{2, 0}, {0, 1}});

  AutGroup h = aut_group(standard_copy(make_heis3()));
  for (std::size_t k = 0; k < h.generators.size(); ++k) {
    REQUIRE(h.abelianization_action[k].size() == 2);
    // row r is the Frattini-quotient image of the r-th minimal generator
    FpMat want(2);
    for (int r = 0; r < 2; ++r) {
      ExpVec im = h.generators[k].img[r];
      want[r] = {im[0], im[1]};
    }
    CHECK(h.abelianization_action[k] == want);
  }
}

TEST_CASE("the same group given by another presentation has the same order") {
  // extraspecial of exponent nine, written with both power relations sharing
  // the centre and the commutator added on top
  auto g = parse_pcgroup(
      "pcgroup p=3 n=3\na1^3 = a3\na2^3 = a3\n[a2,a1] = a3");
  REQUIRE(!g->standard_form);
  AutGroup a = aut_group(g);
  CHECK(decimal(a.order) == "54");
  for (const AutMap& m : a.generators) {
    CHECK(is_automorphism(g, m.img));
    CHECK(is_identity_aut(g, compose_aut(g, m, inverse_aut(m))));
  }
  CHECK(closure_order(g, a.generators) == 54);
}

TEST_CASE("multiplicator action rows live in the tail block") {
  auto g = PcGroup::elementary_abelian(3, 2);
  PCover cov = p_cover(g);
  REQUIRE(cov.multiplicator.order_exp() == 3);
  AutMap id = identity_aut(g);
  CHECK(multiplicator_action(cov, id.img) == mat_identity(3));
  // x -> xy fixes x^3 + y^3 + [y,x] only up to a basis change; the matrix is
  // invertible either way
  std::vector<ExpVec> mi{g->mul(g->gen_vec(0), g->gen_vec(1)), g->gen_vec(1)};
  FpMat m = multiplicator_action(cov, complete_images(g, mi));
  CHECK(mat_rank(m, 3) == 3);
}

TEST_CASE("orbit budget is reported as a resource failure") {
  AutOptions tight;
  tight.max_orbit = 1;
  CHECK_THROWS_AS(aut_group(standard_copy(make_extra9()), tight),
                  BudgetExceeded);
  SigmaOptions stight;
  stight.aut.max_orbit = 2;
  CHECK_THROWS_AS(has_gi_automorphism(standard_copy(make_heis3()), stight),
                  BudgetExceeded);
}

TEST_CASE("generator-inverting automorphisms exist for abelian groups") {
  for (const PcGroupPtr& g :
       {make_c9(), standard_copy(make_c9xc3()), standard_copy(make_c27xc3()),
        PcGroup::elementary_abelian(3, 3)}) {
    AutMap w;
    CHECK(gi_witness(g, &w));
    CHECK(is_automorphism(g, w.img));
    CHECK(is_identity_aut(g, compose_aut(g, w, w)));
    for (int i = 0; i < g->n; ++i)
      CHECK(apply_aut(g, w, g->gen_vec(i)) == g->inv(g->gen_vec(i)));
  }
}

TEST_CASE("generator-inverting automorphism of the free class-2 groups") {
  for (const PcGroupPtr& g : {standard_copy(make_heis3()), free81()}) {
    CAPTURE(g->n);
    AutMap w;
    REQUIRE(gi_witness(g, &w));
    CHECK(is_automorphism(g, w.img));
    Quotient ab = quotient(g, derived_subgroup(whole_group(g)));
    // the witness inverts the abelianization, and its square centralizes it
    AutMap sq = compose_aut(g, w, w);
    for (int j = 0; j < ab.q->n; ++j) {
      ExpVec lifted = ab.lift(ab.q->gen_vec(j));
      CHECK(ab.project(apply_aut(g, w, lifted)) ==
            ab.q->inv(ab.q->gen_vec(j)));
      CHECK(ab.project(apply_aut(g, sq, lifted)) == ab.q->gen_vec(j));
    }
    // these groups even carry an involutory witness
    SigmaOptions two;
    two.require_order_two = true;
    CHECK(gi_witness(g, &w, two));
    CHECK(is_identity_aut(g, compose_aut(g, w, w)));
  }
}

TEST_CASE("the extraspecial group of exponent nine has no inverting map") {
  auto g = standard_copy(make_extra9());
  CHECK(!has_gi_automorphism(g));
  SigmaOptions full;
  full.full_aut_style = true;
  CHECK(!has_gi_automorphism(g, full));
  // invariance under re-presentation
  auto scrambled = parse_pcgroup(
      "pcgroup p=3 n=3\na1^3 = a3\na2^3 = a3\n[a2,a1] = a3");
  CHECK(!has_gi_automorphism(scrambled));
  auto twisted = parse_pcgroup("pcgroup p=3 n=3\na1^3 = a3^2\n[a2,a1] = a3");
  CHECK(!has_gi_automorphism(twisted));
}

TEST_CASE("targeted and full-group sigma searches agree") {
  SigmaOptions full;
  full.full_aut_style = true;
  for (const PcGroupPtr& g :
       {standard_copy(make_heis3()), free81(), standard_copy(make_c9xc3())}) {
    AutMap w;
    CHECK(gi_witness(g, &w, full));
    CHECK(is_automorphism(g, w.img));
    CHECK(has_gi_automorphism(g));
    SigmaOptions both = full;
    both.require_order_two = true;
    CHECK(has_gi_automorphism(g, both));
  }
  // re-presentation invariance on a twisted triangle copy
  auto h = parse_pcgroup("pcgroup p=3 n=3\n[a2,a1] = a3^2");
  CHECK(has_gi_automorphism(h));
  AutMap w;
  REQUIRE(gi_witness(h, &w));
  CHECK(is_automorphism(h, w.img));
}

TEST_CASE("schur balance compares minimal generators with relation rank") {
  auto extra9 = standard_copy(make_extra9());
  REQUIRE(minimal_rank(extra9) == 2);
  REQUIRE(relation_rank(extra9) == 2);
  CHECK(is_schur(extra9));
  CHECK(is_schur(make_c9()));

  CHECK(!is_schur(standard_copy(make_heis3())));       // relation rank 4
  CHECK(!is_schur(PcGroup::elementary_abelian(3, 2)));  // relation rank 3
  CHECK(!is_schur(standard_copy(make_c9xc3())));
  CHECK(!is_schur(free81()));

  // balanced plus inverting: cyclic yes, extraspecial of exponent nine no
  CHECK(is_schur_sigma(make_c9()));
  CHECK(!is_schur_sigma(extra9));
  CHECK(!is_schur_sigma(standard_copy(make_heis3())));
}

TEST_CASE("decimal renders 128-bit values") {
  CHECK(decimal(0) == "0");
  CHECK(decimal(48) == "48");
  unsigned __int128 x = 1;
  for (int i = 0; i < 40; ++i) x *= 3;
  CHECK(decimal(x) == "12157665459056928801");
}
