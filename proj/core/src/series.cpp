// Characteristic series and the invariants derived from them.
#include "sigma3/series.hpp"

#include <cassert>

namespace sigma3 {

std::vector<Subgroup> lower_p_central_series(const PcGroupPtr& g) {
  std::vector<Subgroup> terms{whole_group(g)};
  auto amb = ambient_gens(g);
  while (!terms.back().is_trivial()) {
    const Subgroup& prev = terms.back();
    std::vector<ExpVec> gens;
    for (const ExpVec& u : prev.igs) {
      gens.push_back(g->pow(u, g->prime));
      for (const ExpVec& a : amb) gens.push_back(g->comm_of(u, a));
    }
    Subgroup next = make_subgroup(g, std::move(gens), amb);
    if (next.is_trivial()) break;
    assert(next.order_exp() < prev.order_exp());
    terms.push_back(std::move(next));
  }
  return terms;
}

std::vector<Subgroup> lower_central_series(const PcGroupPtr& g) {
  std::vector<Subgroup> terms{whole_group(g)};
  auto amb = ambient_gens(g);
  while (!terms.back().is_trivial()) {
    const Subgroup& prev = terms.back();
    std::vector<ExpVec> gens;
    for (const ExpVec& u : prev.igs)
      for (const ExpVec& a : amb) gens.push_back(g->comm_of(u, a));
    Subgroup next = make_subgroup(g, std::move(gens), amb);
    if (next.is_trivial()) break;
    assert(next.order_exp() < prev.order_exp());
    terms.push_back(std::move(next));
  }
  return terms;
}

std::vector<Subgroup> derived_series(const PcGroupPtr& g) {
  std::vector<Subgroup> terms{whole_group(g)};
  while (!terms.back().is_trivial()) {
    Subgroup next = derived_subgroup(terms.back());
    if (next.is_trivial()) break;
    assert(next.order_exp() < terms.back().order_exp());
    terms.push_back(std::move(next));
  }
  return terms;
}

int cl_p(const PcGroupPtr& g) {
  if (g->n == 0) return 0;
  return (int)lower_p_central_series(g).size();
}

int nilpotency_class(const PcGroupPtr& g) {
  if (g->n == 0) return 0;
  return (int)lower_central_series(g).size();
}

int solvable_length(const PcGroupPtr& g) {
  if (g->n == 0) return 0;
  return (int)derived_series(g).size();
}

std::vector<int> lcs_factor_ranks(const PcGroupPtr& g) {
  auto lcs = lower_central_series(g);
  auto amb = ambient_gens(g);
  std::vector<int> ranks;
  for (std::size_t j = 1; j < lcs.size(); ++j) {  // factors gamma_j/gamma_{j+1}, j >= 2
    std::vector<ExpVec> gens;
    if (j + 1 < lcs.size()) gens = lcs[j + 1].igs;
    for (const ExpVec& u : lcs[j].igs) gens.push_back(g->pow(u, g->prime));
    Subgroup frat = make_subgroup(g, std::move(gens), amb);
    ranks.push_back(lcs[j].order_exp() - frat.order_exp());
  }
  return ranks;
}

bool is_cf(const PcGroupPtr& g) {
  for (int r : lcs_factor_ranks(g))
    if (r > 1) return false;
  return true;
}

bool is_bcf(const PcGroupPtr& g) {
  for (int r : lcs_factor_ranks(g))
    if (r > 2) return false;
  return true;
}

Subgroup frattini_subgroup(const PcGroupPtr& g) {
  auto amb = ambient_gens(g);
  std::vector<ExpVec> gens;
  for (const ExpVec& a : amb) {
    gens.push_back(g->pow(a, g->prime));
    for (const ExpVec& b : amb) gens.push_back(g->comm_of(a, b));
  }
  return make_subgroup(g, std::move(gens), amb);
}

GroupStats group_stats(const PcGroupPtr& g) {
  GroupStats s;
  s.order_exp = g->n;
  s.rank = g->n - frattini_subgroup(g).order_exp();
  s.clp = cl_p(g);
  s.nilclass = nilpotency_class(g);
  s.sl = solvable_length(g);
  return s;
}

Quotient p_parent(const PcGroupPtr& g) {
  auto series = lower_p_central_series(g);
  assert(!series.empty());
  return quotient(g, series.back());  // class 1 groups get the trivial parent
}

}  // namespace sigma3
