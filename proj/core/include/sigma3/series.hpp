// Characteristic series (lower exponent-p central, lower central, derived),
// the invariants read off them, and the parent quotient.
#pragma once

#include <vector>

#include "sigma3/subgroup.hpp"

namespace sigma3 {

// Terms P_1 = G >= P_2 >= ... down to (and excluding) the trivial term.
std::vector<Subgroup> lower_p_central_series(const PcGroupPtr& g);
std::vector<Subgroup> lower_central_series(const PcGroupPtr& g);
std::vector<Subgroup> derived_series(const PcGroupPtr& g);

int cl_p(const PcGroupPtr& g);              // exponent-p class
int nilpotency_class(const PcGroupPtr& g);
int solvable_length(const PcGroupPtr& g);

// Ranks of the lower central factors gamma_j / gamma_{j+1} for j >= 2.
// Every factor cyclic -> coclass family shape "cf"; every factor of rank at
// most two -> "bcf".
std::vector<int> lcs_factor_ranks(const PcGroupPtr& g);
bool is_cf(const PcGroupPtr& g);
bool is_bcf(const PcGroupPtr& g);

struct GroupStats {
  int order_exp = 0;     // log_p |G|
  int rank = 0;          // d(G) = dim G/Frattini
  int clp = 0;           // exponent-p class
  int nilclass = 0;
  int sl = 0;            // solvable length
};
GroupStats group_stats(const PcGroupPtr& g);

// Quotient by the last nontrivial term of the lower exponent-p central series.
Quotient p_parent(const PcGroupPtr& g);

Subgroup frattini_subgroup(const PcGroupPtr& g);  // P_2(G) = G^p [G,G]

}  // namespace sigma3
