// Abelian quotient invariants, Artin transfers, punctured transfer kernel
// types, and the named-type classifier for groups with commutator quotient
// of shape (p^e, p).
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sigma3/subgroup.hpp"

namespace sigma3 {

// ---------------------------------------------------------------- types ---

// Invariant factors of a finite abelian p-group, as logarithmic exponents in
// descending order: (e+1,2,1) denotes Z/p^{e+1} x Z/p^2 x Z/p.
struct AbelianType {
  std::vector<int> logs;

  int rank() const { return (int)logs.size(); }
  int order_exp() const;
  // Concatenated digits, entries >= 10 parenthesized: (12,2,1) -> "(12)21".
  // The trivial type prints as "0".
  std::string compact() const;

  friend bool operator==(const AbelianType&, const AbelianType&) = default;
  friend auto operator<=>(const AbelianType&, const AbelianType&) = default;
};

// The four abelian types of the maximal subgroups, distinguished one last.
struct Aqi1 {
  std::array<AbelianType, 4> entries;
  std::string to_string() const;  // "(21,21,211;111)"
};

// Second-order data: for each maximal subgroup, its own type plus the types
// of all of its maximal subgroups (multiset, descending).
struct Aqi2 {
  struct Block {
    AbelianType self_type;
    std::vector<AbelianType> sub_types;
  };
  AbelianType top;
  std::array<Block, 4> blocks;
  std::string to_string() const;
};

// Punctured transfer kernel type: digit per maximal subgroup (puncture
// last).  0 = kernel is the whole socle of G/G'; 1..4 = the order-p socle
// subgroup with that label; -1 = trivial kernel (out-of-band marker).
struct PuncturedTkt {
  std::array<int, 4> digits{};
  std::array<Subgroup, 4> kernels;  // subgroups of G/G' (may be empty shells)

  std::string to_string() const;  // "(124;1)", trivial marker prints "."
};
PuncturedTkt make_tkt(std::array<int, 4> digits);  // validates digit range

enum class NamedType { a1, A1, b16, b31, B18, C4, D5, D6, D10, D11, unknown };
std::string to_string(NamedType t);

// ---------------------------------------------------- abelian invariants ---

// Type of the abelianized section H/(K*[H,H]).  K must be contained in H
// and normalized by it.  Computed from the relation matrix of the section,
// diagonalized over the p-local integers.
AbelianType abelian_type(const Subgroup& h, const Subgroup& k);
AbelianType abelian_type(const Subgroup& h);       // K trivial: H/[H,H]
AbelianType abelianization_type(const PcGroupPtr& g);

// ------------------------------------------------------ maximal subgroups ---

// Shared frame for a group whose commutator quotient has type (p^e, p) with
// e >= 2: the quotient map, the four maximal subgroups of G (distinguished
// one last), and the labeled order-p subgroups U_1..U_4 of the socle.
struct CommQuotientFrame {
  Quotient ab;                        // G -> G/G'
  int e = 0;                          // commutator quotient type (e, 1)
  std::array<Subgroup, 4> maximal;    // subgroups of G; distinguished last
  Subgroup socle;                     // subgroup of ab.q, order p^2
  std::array<Subgroup, 4> socle_u;    // U_1..U_4, subgroups of ab.q
};
CommQuotientFrame commutator_quotient_frame(const PcGroupPtr& g);

// The four index-p subgroups, distinguished one in position 4.  The
// distinguished subgroup is the preimage of {a in G/G' : a^{p^{e-1}} = 1};
// positions 1-3 are ordered by their line in G/G'Phi for determinism only.
std::array<Subgroup, 4> maximal_subgroups(const PcGroupPtr& g);

// All maximal subgroups of a subgroup H (hyperplane preimages over the
// Frattini quotient of H), in a deterministic order.
std::vector<Subgroup> maximal_subgroups_of(const Subgroup& h);

// --------------------------------------------------------- Artin transfer ---

// The transfer homomorphism V: G/G' -> H/H' for an index-p subgroup H,
// stored as images of the pc generators of G/G' inside G/H'.
struct ArtinTransfer {
  Quotient src_ab;                 // G -> G/G'
  Quotient mod_hd;                 // G -> G/H'
  Subgroup h_ab;                   // image of H in G/H' (the abelian target)
  std::vector<ExpVec> gen_images;  // in mod_hd.q coordinates

  ExpVec apply(const ExpVec& qv) const;  // src_ab.q element -> mod_hd.q
};
ArtinTransfer artin_transfer(const PcGroupPtr& g, const Subgroup& h);
// Same, with a caller-chosen transversal element t (must lie outside H).
ArtinTransfer artin_transfer_with(const PcGroupPtr& g, const Subgroup& h,
                                  const ExpVec& t);

// Kernel of the transfer as a subgroup of G/G' (of t.src_ab.q).
Subgroup transfer_kernel(const ArtinTransfer& t);

// --------------------------------------------------- transfer kernel type ---

// Compute the punctured transfer kernel type of G.  Kernels that are
// neither the socle, a labeled socle subgroup, nor trivial raise an
// integrity error ("unclassifiable kernel").
PuncturedTkt punctured_tkt(const PcGroupPtr& g);

// Equivalence: any permutation of positions 1-3 combined with any
// relabeling of digit values {1,2,3} applied to all four digits (0, 4 and
// the trivial marker are fixed).  Canonical form = lexicographic minimum.
std::array<int, 4> tkt_canonical_digits(const std::array<int, 4>& digits);
PuncturedTkt tkt_canonical(const PuncturedTkt& t);
bool tkt_equivalent(const PuncturedTkt& a, const PuncturedTkt& b);
bool tkt_equivalent_digits(const std::array<int, 4>& a,
                           const std::array<int, 4>& b);

NamedType classify_tkt(const PuncturedTkt& t);
NamedType classify_tkt_digits(const std::array<int, 4>& digits);

// ------------------------------------------------- higher-order invariants ---

Aqi1 aqi1(const PcGroupPtr& g);
Aqi2 aqi2(const PcGroupPtr& g);
std::array<int, 4> rank_distribution(const PcGroupPtr& g);  // rho
std::string rho_string(const std::array<int, 4>& rho);      // "(2,2,3;3)"

}  // namespace sigma3
