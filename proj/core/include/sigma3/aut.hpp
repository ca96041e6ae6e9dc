// Automorphism groups of finite p-groups by lifting through the lower
// exponent-p central series, the generator-inverting automorphism test, and
// the Schur balance test.
#pragma once

#include <string>
#include <vector>

#include "sigma3/fpmat.hpp"
#include "sigma3/pquotient.hpp"

namespace sigma3 {

std::string decimal(unsigned __int128 x);

// An automorphism stored as the images of every pc generator, together with
// the images under the inverse automorphism.  Carrying both directions keeps
// products, orbit transversals and Schreier generators pure compositions; no
// step of the lifting algorithm ever inverts a map from scratch.
struct AutMap {
  std::vector<ExpVec> img;
  std::vector<ExpVec> inv;
};

AutMap identity_aut(const PcGroupPtr& g);
bool is_identity_aut(const PcGroupPtr& g, const AutMap& a);
ExpVec apply_aut(const PcGroupPtr& g, const AutMap& a, const ExpVec& v);
AutMap inverse_aut(AutMap a);
// a then b; the cached inverses compose the other way around.
AutMap compose_aut(const PcGroupPtr& g, const AutMap& a, const AutMap& b);

// Evaluate a pc word on generator images inside dst (letters index img).
ExpVec apply_word(const PcGroupPtr& dst, const std::vector<ExpVec>& img,
                  const Word& w);

// Extend images of the minimal generators (the weight-1 pc generators of a
// group with honest definitions) to images of every pc generator by
// evaluating the definitions in ascending order.
std::vector<ExpVec> complete_images(const PcGroupPtr& g,
                                    const std::vector<ExpVec>& min_images);

// The cross-group form: src supplies the definitions and relation words,
// dst the arithmetic.  Primes must match.  With src == dst this is
// complete_images.
std::vector<ExpVec> push_images(const PcGroupPtr& src, const PcGroupPtr& dst,
                                const std::vector<ExpVec>& min_images);

// All pc relations preserved and the images generate modulo the Frattini
// subgroup, which in a finite p-group makes the map an automorphism.
bool is_automorphism(const PcGroupPtr& g, const std::vector<ExpVec>& img);

// Induced action of an automorphism of cov.base (images of all its pc
// generators) on the p-multiplicator: row t is the image of cover tail t in
// tail coordinates, acting on row vectors from the right.
FpMat multiplicator_action(const PCover& cov, const std::vector<ExpVec>& img);

struct AutOptions {
  // Cap on the points of one orbit computation and on the states of one map
  // closure; exceeding it raises BudgetExceeded.
  long long max_orbit = 1 << 20;
};

struct AutGroup {
  PcGroupPtr group;
  std::vector<AutMap> generators;  // deterministic construction order
  unsigned __int128 order = 1;
  // Induced matrix of each generator on G/Phi(G) over F_p; row i is the
  // image of minimal generator i.
  std::vector<FpMat> abelianization_action;
};

AutGroup aut_group(const PcGroupPtr& g, const AutOptions& opt = {});

struct SigmaOptions {
  // Decide via the full automorphism group and the closure of its action on
  // G/G' instead of the targeted lifting of the inversion class.
  bool full_aut_style = false;
  // Stronger variant: demand a witness that squares to the identity of G,
  // not merely to the identity action on G/G'.
  bool require_order_two = false;
  AutOptions aut;
};

// Is there an automorphism inducing inversion on G/G'?  Fills *witness with
// one when found (witness may be null).
bool gi_witness(const PcGroupPtr& g, AutMap* witness,
                const SigmaOptions& opt = {});
bool has_gi_automorphism(const PcGroupPtr& g, const SigmaOptions& opt = {});

bool is_schur(const PcGroupPtr& g);  // minimal generator rank == relation rank
bool is_schur_sigma(const PcGroupPtr& g, const SigmaOptions& opt = {});

}  // namespace sigma3
