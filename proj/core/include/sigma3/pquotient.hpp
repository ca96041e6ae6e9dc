// Maximal exponent-p class-c quotients of parametrized presentations, tail
// extensions, p-covers, and standard forms.
//
// The engine works one class at a time: extend the current quotient by one
// central exponent-p "tail" generator per non-defining relation (and per
// presentation generator whose image is still free to deform), enforce the
// overlap consistency conditions, evaluate the relators at the lifted images,
// and cut the tail block by the resulting linear rows.
#pragma once

#include <vector>

#include "sigma3/fpres.hpp"
#include "sigma3/subgroup.hpp"

namespace sigma3 {

// Central extension of a consistent weighted presentation by the tail block.
// `ext` is in general inconsistent until rows are imposed; collection in it
// still terminates because every relation keeps support strictly above its
// generators.
struct TailExtension {
  PcGroupPtr base;
  PcGroupPtr ext;
  int base_n = 0;
  std::vector<int> image_tail;  // presentation gen -> ext tail index, or -1

  int ntails() const { return ext->n - base_n; }
};

// One tail per presentation generator without an Image-defined pc generator
// (when with_image_tails), then per non-defining power relation (ascending),
// then per non-defining commutator relation.  Definitions never get tails.
TailExtension make_tail_extension(const PcGroupPtr& base, int fp_ngens,
                                  const std::vector<ExpVec>& fp_images,
                                  bool with_image_tails);

// Overlap rows: both association orders of every power/product overlap of
// base generators collect to values differing by a pure tail vector.
std::vector<ExpVec> consistency_rows(const TailExtension& te);

// Quotient of a group by the span of `rows` inside its central tail block
// (generators base_n.. must be central of order p; rows must vanish on the
// base coordinates).  Eliminated tails are the row pivots, chosen at the
// highest index so the lowest-numbered tails survive; survivors are
// renumbered onto base_n.. keeping their definitions and weights.
struct CentralQuotient {
  PcGroupPtr src;
  PcGroupPtr q;
  int base_n = 0;
  std::vector<int> new_index;          // src gen -> q gen, or -1 if eliminated
  std::vector<std::vector<Exp>> elim;  // eliminated src tail -> coeffs on q tails

  ExpVec map_vec(const ExpVec& v) const;  // the quotient homomorphism src -> q
};

CentralQuotient central_quotient(const PcGroupPtr& src, int base_n,
                                 const std::vector<ExpVec>& rows,
                                 bool mark_standard);

// Maximal exponent-p quotient of class at most `class_bound`, together with
// the presentation-generator images realizing the epimorphism, and the class
// where the quotient stopped growing.
struct PqResult {
  PcGroupPtr g;
  std::vector<ExpVec> images;
  int reached_class = 0;
};
PqResult p_quotient(const FpInstance& inst, int class_bound);
inline PqResult p_quotient(const FpInstance& inst) {
  return p_quotient(inst, inst.class_bound);
}

// Evaluate a normal-form exponent vector of the group the images belong to
// through those generator images inside dst.
ExpVec map_through(const PcGroupPtr& dst, const std::vector<ExpVec>& images,
                   const ExpVec& v);

// The pc presentation of a group, re-read as a parametrized presentation with
// one generator per pc generator and one relator per power/commutator pair.
FpTemplatePtr presentation_template(const PcGroupPtr& g);

// Standard form (weight-graded, every generator Image- or relation-defined)
// of an arbitrary consistent pc group, with mutually inverse generator maps.
struct Standardized {
  PcGroupPtr g;
  std::vector<ExpVec> fwd;  // original generator -> element of g
  std::vector<ExpVec> rev;  // generator of g -> element of the original
};
Standardized standardize(const PcGroupPtr& g);

// g itself when already standard, otherwise standardize(g).g.
PcGroupPtr standard_copy(const PcGroupPtr& g);

// Truncation of a standard group to class k: the quotient by all generators
// of weight above k, realized on a coordinate prefix.
PcGroupPtr truncate_to_class(const PcGroupPtr& g, int k);

// Consistent tail extension with no relator imposed: the p-covering group.
struct PCover {
  PcGroupPtr base;   // standard form (standardized copy of the input if needed)
  PcGroupPtr cover;
  Subgroup multiplicator;  // subgroup of cover spanned by the tails
  Subgroup nucleus;        // P_{c+1}(cover) with c the class of base
  int base_n = 0;

  ExpVec project(const ExpVec& v) const {  // cover -> base truncation
    return ExpVec(v.begin(), v.begin() + base_n);
  }
};
PCover p_cover(const PcGroupPtr& g);

int relation_rank(const PcGroupPtr& g);  // rank of the multiplicator
int nuclear_rank(const PcGroupPtr& g);
bool is_capable(const PcGroupPtr& g);

// Do the images realize an isomorphism from the instantiated presentation's
// maximal class-bound quotient onto g?
bool matches_presentation(const PcGroupPtr& g, const FpInstance& inst,
                          const std::vector<ExpVec>& images);

}  // namespace sigma3
