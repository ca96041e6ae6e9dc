// The generation step for finite p-groups: immediate descendants as
// quotients of the p-cover by allowable multiplicator subgroups up to the
// automorphism action, descendant censuses and trees (DOT/JSON export), and
// periodicity verification for the built families.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sigma3/aut.hpp"
#include "sigma3/pquotient.hpp"
#include "sigma3/series.hpp"

namespace sigma3 {

struct GenOptions {
  AutOptions aut;                  // orbit caps inside the automorphism engine
  long long max_space = 1 << 20;   // cap on candidate subspaces / tree nodes
  std::uint64_t seed = 0;  // != 0: reshuffle and pad the Aut generating set
};

// Every allowable subgroup for step s: reduced row bases (codimension s) of
// multiplicator subspaces supplementing the nucleus.  Exposed for the
// orbit-partition cross-check; throws BudgetExceeded past the cap.
std::vector<FpMat> allowable_subspaces(const PCover& cov, int s,
                                       long long cap);

// The Aut(G)-orbit partition of the allowable subgroups for step s.
struct AllowableOrbits {
  std::vector<FpMat> reps;       // lexicographically minimal member per orbit
  std::vector<long long> sizes;  // orbit sizes, aligned with reps
  long long total = 0;           // number of allowable subgroups
};
AllowableOrbits allowable_orbits(const PCover& cov,
                                 const std::vector<AutMap>& aut_gens, int s,
                                 const GenOptions& opt = {});

// One consistent pc group per orbit, in canonical representative order.
// Steps outside 1..nu(G) give an empty list.
std::vector<PcGroupPtr> immediate_descendants(const PcGroupPtr& g, int s,
                                              const GenOptions& opt = {});

struct Census {
  long long n = 0, c = 0;  // descendants / capable descendants, all steps
  std::map<int, std::pair<long long, long long>> by_step;  // s -> (N, C)
};
Census census(const PcGroupPtr& g, const GenOptions& opt = {});

struct DescendantNode {
  PcGroupPtr group;
  const DescendantNode* parent = nullptr;
  int step = 0;  // lo difference to the parent; 0 at the root
  bool capable = false;
  GroupStats stats;
  std::string abelian;  // compact abelian type of G/G'
  std::string kappa;    // named transfer kernel class, "-" when undefined
  std::string alpha1;   // first abelian quotient invariants, "-" likewise
  std::vector<std::unique_ptr<DescendantNode>> children;
};

using NodeFilter = std::function<bool(const PcGroupPtr&)>;

// Breadth-limited expansion over all step sizes; children failing `keep`
// are pruned (no filter: keep everything).  depth 0 is the root alone.
std::unique_ptr<DescendantNode> descendant_tree(const PcGroupPtr& root,
                                                int depth,
                                                const NodeFilter& keep = {},
                                                const GenOptions& opt = {});

std::string to_dot(const DescendantNode& tree);
std::string to_json(const DescendantNode& tree);

// Exhaustive isomorphism test through minimal-generator images, for small
// orders in tests and verification; the generation path never needs it.
bool is_isomorphic_brute(const PcGroupPtr& a, const PcGroupPtr& b);

// Per-exponent outcome of the periodicity check of a family: the next trunk
// group appears among the step-1 descendants of the current one, and the
// leaf multiplet appears with the expected count and invariants.
struct PeriodicityReport {
  struct Row {
    long long e = 0;
    bool parent_ok = false;      // trunk(e+1) found among descendants
    long long leaves_found = 0;  // descendants matching the leaf claims
    long long leaves_expected = 0;
    bool pass = false;
  };
  std::string family;
  std::vector<Row> rows;
  bool pass = true;
};
PeriodicityReport verify_periodicity(const std::string& family, long long e_lo,
                                     long long e_hi,
                                     const GenOptions& opt = {});

}  // namespace sigma3
