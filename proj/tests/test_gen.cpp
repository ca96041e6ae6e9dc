// Descendant generation against the order-27 triple, counted allowable
// subspaces, orbit partitions, parent recovery, and the tree exports.
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "sigma3/fpres.hpp"
#include "sigma3/gen.hpp"
#include "sigma3/invariants.hpp"
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

PcGroupPtr make_c27() {
  return pq_text("group c { prime 3; class 3; gens x; rel x^(3^3) }", 3);
}

}  // namespace

TEST_CASE("the elementary square has exactly the three order-27 descendants") {
  auto g = PcGroup::elementary_abelian(3, 2);
  std::vector<PcGroupPtr> ds = immediate_descendants(g, 1);
  REQUIRE(ds.size() == 3);
  int abelian_93 = 0, exponent3 = 0, exponent9 = 0;
  for (const PcGroupPtr& d : ds) {
    CHECK(group_stats(d).order_exp == 3);
    CHECK(cl_p(d) == 2);
    if (is_isomorphic_brute(d, make_c9xc3())) ++abelian_93;
    if (is_isomorphic_brute(d, make_heis3())) ++exponent3;
    if (is_isomorphic_brute(d, make_extra9())) ++exponent9;
  }
  CHECK(abelian_93 == 1);
  CHECK(exponent3 == 1);
  CHECK(exponent9 == 1);
}

TEST_CASE("census of the elementary square covers steps one to three") {
  auto g = PcGroup::elementary_abelian(3, 2);
  REQUIRE(nuclear_rank(g) == 3);
  Census c = census(g);
  REQUIRE(c.by_step.size() == 3);
  // step 1: the triple above, extraspecial of exponent nine not capable
  CHECK(c.by_step.at(1) == std::pair<long long, long long>{3, 2});
  // step 2: one abelian, two nonabelian types of order 81
  CHECK(c.by_step.at(2).first == 3);
  CHECK(c.by_step.at(2).second >= 1);
  // step 3: the cover itself is the only quotient, and it is capable
  CHECK(c.by_step.at(3) == std::pair<long long, long long>{1, 1});
  CHECK(c.n == 7);
}

TEST_CASE("allowable subspace counts and orbit partitions") {
  auto g = PcGroup::elementary_abelian(3, 2);
  PCover cov = p_cover(g);
  REQUIRE(cov.multiplicator.order_exp() == 3);
  REQUIRE(cov.nucleus.order_exp() == 3);
  AutGroup aut = aut_group(g);
  // 13 hyperplanes, 13 lines, one zero space; the nucleus is everything
  const long long totals[3] = {13, 13, 1};
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    CHECK((long long)allowable_subspaces(cov, s, 1 << 20).size() ==
          totals[s - 1]);
    AllowableOrbits o = allowable_orbits(cov, aut.generators, s);
    CHECK(o.total == totals[s - 1]);
    long long sum = 0;
    for (long long z : o.sizes) sum += z;
    CHECK(sum == o.total);
    if (s < 3) {
      // the linear action splits both layers into orbits of sizes 1, 4, 8
      std::multiset<long long> sizes(o.sizes.begin(), o.sizes.end());
      CHECK(sizes == std::multiset<long long>{1, 4, 8});
    }
  }

  auto h = standard_copy(make_heis3());
  PCover hcov = p_cover(h);
  REQUIRE(hcov.multiplicator.order_exp() == 4);
  REQUIRE(hcov.nucleus.order_exp() == 2);
  // hyperplanes not containing the nucleus: 40 - 4; complements: 3^(2*2)
  CHECK((long long)allowable_subspaces(hcov, 1, 1 << 20).size() == 36);
  CHECK((long long)allowable_subspaces(hcov, 2, 1 << 20).size() == 81);
  AutGroup haut = aut_group(h);
  for (int s = 1; s <= 2; ++s) {
    AllowableOrbits o = allowable_orbits(hcov, haut.generators, s);
    long long sum = 0;
    for (long long z : o.sizes) sum += z;
    CHECK(sum == o.total);
  }
}

TEST_CASE("steps outside the nuclear range and terminal groups") {
  auto g = PcGroup::elementary_abelian(3, 2);
  CHECK(immediate_descendants(g, 0).empty());
  CHECK(immediate_descendants(g, 4).empty());
  CHECK(immediate_descendants(PcGroup::trivial(3), 1).empty());
  CHECK(census(PcGroup::trivial(3)).by_step.empty());

  // the exponent-nine extraspecial group is terminal
  auto t = standard_copy(make_extra9());
  REQUIRE(!is_capable(t));
  CHECK(immediate_descendants(t, 1).empty());
  Census c = census(t);
  CHECK(c.n == 0);
  CHECK(c.by_step.empty());
}

TEST_CASE("cyclic chain: the only descendant of C9 is C27") {
  std::vector<PcGroupPtr> ds = immediate_descendants(make_c9(), 1);
  REQUIRE(ds.size() == 1);
  CHECK(is_isomorphic_brute(ds[0], make_c27()));
  Census c = census(make_c9());
  CHECK(c.by_step.at(1) == std::pair<long long, long long>{1, 1});
}

TEST_CASE("every descendant recovers its parent exactly") {
  for (const PcGroupPtr& g :
       {PcGroup::elementary_abelian(3, 2), standard_copy(make_heis3())}) {
    FpInstance inst = instantiate(presentation_template(g));
    for (int s = 1; s <= nuclear_rank(g); ++s)
      for (const PcGroupPtr& d : immediate_descendants(g, s)) {
        CHECK(group_stats(d).order_exp == group_stats(g).order_exp + s);
        CHECK(cl_p(d) == cl_p(g) + 1);
        Quotient pp = p_parent(d);
        REQUIRE(pp.q->n == g->n);
        std::vector<ExpVec> imgs(pp.q->n);
        for (int i = 0; i < pp.q->n; ++i) imgs[i] = pp.q->gen_vec(i);
        for (const FpRel& rel : inst.tpl->rels)
          CHECK(PcGroup::last_nonzero(eval_relator(rel, inst, pp.q, imgs)) ==
                -1);
      }
  }
}

TEST_CASE("descendant lists are duplicate-free") {
  for (const PcGroupPtr& g :
       {PcGroup::elementary_abelian(3, 2), standard_copy(make_heis3())}) {
    for (int s = 1; s <= nuclear_rank(g); ++s) {
      std::vector<PcGroupPtr> ds = immediate_descendants(g, s);
      for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
          CAPTURE(s);
          CHECK(!is_isomorphic_brute(ds[i], ds[j]));
        }
    }
  }
}

TEST_CASE("censuses and descendants are independent of the generating set") {
  auto g = PcGroup::elementary_abelian(3, 2);
  GenOptions alt;
  alt.seed = 0xDEADBEEF;
  for (int s = 1; s <= 3; ++s) {
    std::vector<PcGroupPtr> a = immediate_descendants(g, s);
    std::vector<PcGroupPtr> b = immediate_descendants(g, s, alt);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(print_pcgroup(*a[k]) == print_pcgroup(*b[k]));
  }
  auto h = standard_copy(make_heis3());
  GenOptions alt2;
  alt2.seed = 99991;
  Census c1 = census(h);
  Census c2 = census(h, alt2);
  CHECK(c1.n == c2.n);
  CHECK(c1.c == c2.c);
  CHECK(c1.by_step == c2.by_step);
}

TEST_CASE("the isomorphism oracle separates and identifies small groups") {
  CHECK(is_isomorphic_brute(make_heis3(),
                            parse_pcgroup("pcgroup p=3 n=3\n[a2,a1] = a3^2")));
  CHECK(is_isomorphic_brute(
      make_extra9(),
      parse_pcgroup("pcgroup p=3 n=3\na1^3 = a3^2\n[a2,a1] = a3")));
  CHECK(!is_isomorphic_brute(make_heis3(), make_extra9()));
  CHECK(!is_isomorphic_brute(make_heis3(), PcGroup::elementary_abelian(3, 3)));
  CHECK(!is_isomorphic_brute(make_c9xc3(), PcGroup::elementary_abelian(3, 3)));
  CHECK(!is_isomorphic_brute(make_q8(), PcGroup::elementary_abelian(2, 3)));
  CHECK(is_isomorphic_brute(make_c9xc3(), make_c9xc3()));
}

TEST_CASE("descendant trees expand breadth-limited with labels") {
  auto g = PcGroup::elementary_abelian(3, 2);
  std::unique_ptr<DescendantNode> leaf = descendant_tree(g, 0);
  CHECK(leaf->children.empty());
  CHECK(leaf->stats.order_exp == 2);
  CHECK(leaf->abelian == "11");
  CHECK(leaf->kappa == "-");  // commutator quotient not of shape (e,1), e >= 2

  std::unique_ptr<DescendantNode> tree = descendant_tree(g, 1);
  REQUIRE(tree->children.size() == 7);
  for (const auto& ch : tree->children) {
    CHECK(ch->stats.order_exp == 2 + ch->step);
    CHECK(ch->parent == tree.get());
  }

  std::string dot = to_dot(*tree);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("lo=2") != std::string::npos);
  CHECK(dot.find("s=3") != std::string::npos);
  CHECK(dot == to_dot(*descendant_tree(g, 1)));  // deterministic

  nlohmann::json j = nlohmann::json::parse(to_json(*tree));
  CHECK(j["lo"] == 2);
  CHECK(j["children"].size() == 7);
  CHECK(j["children"][0]["step"] == 1);
}

TEST_CASE("tree filters prune by a stated property") {
  auto g = PcGroup::elementary_abelian(3, 2);
  NodeFilter shape_21 = [](const PcGroupPtr& h) {
    return abelianization_type(h).logs == std::vector<int>{2, 1};
  };
  std::unique_ptr<DescendantNode> tree = descendant_tree(g, 1, shape_21);
  std::multiset<int> steps;
  for (const auto& ch : tree->children) steps.insert(ch->step);
  CHECK(steps == std::multiset<int>{1, 2, 2});
}

TEST_CASE("generation respects the node budget") {
  auto g = PcGroup::elementary_abelian(3, 2);
  PCover cov = p_cover(g);
  CHECK_THROWS_AS(allowable_subspaces(cov, 1, 5), BudgetExceeded);
  GenOptions tight;
  tight.max_space = 3;
  CHECK_THROWS_AS(descendant_tree(g, 1, {}, tight), BudgetExceeded);
}
