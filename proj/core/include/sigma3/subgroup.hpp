// Subgroups of a pc group as echelonized generating sequences (distinct
// leading positions, leading exponent 1), with sifting for membership,
// closure under powers and chosen conjugations, and quotient presentations.
#pragma once

#include <string>
#include <vector>

#include "sigma3/pcgroup.hpp"

namespace sigma3 {

struct Subgroup {
  PcGroupPtr g;                 // ambient group
  std::vector<ExpVec> igs;      // sorted by strictly increasing lead position

  int order_exp() const { return (int)igs.size(); }  // |H| = p^order_exp
  bool is_trivial() const { return igs.empty(); }
};

// Echelonize and close `gens` under p-th powers and conjugation by every
// element of `normalizers`.  With the ambient generators as normalizers this
// yields the normal closure; with a subgroup's own igs it yields the smallest
// subgroup containing `gens` that the given subgroup normalizes.
Subgroup make_subgroup(const PcGroupPtr& g, std::vector<ExpVec> gens,
                       const std::vector<ExpVec>& normalizers);

std::vector<ExpVec> ambient_gens(const PcGroupPtr& g);

Subgroup whole_group(const PcGroupPtr& g);
Subgroup trivial_subgroup(const PcGroupPtr& g);
Subgroup normal_closure(const PcGroupPtr& g, std::vector<ExpVec> gens);

// Left-sift: returns the residue of v after clearing every igs lead position.
// v lies in the subgroup iff the residue is the identity.
ExpVec sift(const Subgroup& h, const ExpVec& v);
bool contains(const Subgroup& h, const ExpVec& v);

// Coordinates of a member: v = prod igs[i]^{c[i]} in igs order (asserts
// membership).  The igs is a polycyclic sequence for the subgroup, so the
// coordinate vector is unique.
std::vector<int> sift_coords(const Subgroup& h, const ExpVec& v);
bool is_normal_under(const Subgroup& h, const std::vector<ExpVec>& normalizers);

// Back-substitute so every member has zeros at all other members' leads;
// the result is the unique reduced echelon sequence for the subgroup.
void canonicalize_igs(Subgroup& h);
bool same_subgroup(const Subgroup& a, const Subgroup& b);
std::string subgroup_key(const Subgroup& h);  // canonical byte key for hashing

// Derived subgroup [H, H] (closure under conjugation by igs(H)).
Subgroup derived_subgroup(const Subgroup& h);

// All p^k elements of a small subgroup, in lexicographic exponent order.
std::vector<ExpVec> enumerate_subgroup(const Subgroup& h);

// Quotient G/N by a subgroup that is normal in G, presented on the canonical
// complement positions of the igs leads.
struct Quotient {
  PcGroupPtr src;
  PcGroupPtr q;
  Subgroup ker;
  std::vector<int> comp;                  // q-generator i sits at src position comp[i]

  ExpVec project(const ExpVec& v) const;  // src -> q (homomorphism)
  ExpVec lift(const ExpVec& qv) const;    // canonical section q -> src
};

Quotient quotient(const PcGroupPtr& g, const Subgroup& n);

}  // namespace sigma3
