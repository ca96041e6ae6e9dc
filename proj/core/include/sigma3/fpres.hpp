// Parametrized finite presentations: a line-oriented DSL
//   group <name> { prime 3; param e in 2..12; class e+1; gens x, y;
//                  def w = x^(3^e); rel x^(3^(e+1)) = 1; }
// with words built from names, products, powers (integer, affine, or 3^affine
// exponents), and commutator brackets.  Instances bind concrete parameter
// values; words evaluate directly on images inside a pc group.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sigma3/pcgroup.hpp"

namespace sigma3 {

// c0 + ce*e + ci*i + ck*k
struct AffExpr {
  long long c0 = 0, ce = 0, ci = 0, ck = 0;
  long long eval(long long e, long long i, long long k) const {
    return c0 + ce * e + ci * i + ck * k;
  }
  bool is_const() const { return !ce && !ci && !ck; }
  friend bool operator==(const AffExpr&, const AffExpr&) = default;
};
std::string aff_to_string(const AffExpr& a);

struct WordAst;
using WordPtr = std::shared_ptr<const WordAst>;
struct WordAst {
  enum class Kind { One, Name, Mul, Pow, PPow, Comm };
  Kind kind = Kind::One;
  std::string name;  // Name
  WordPtr a, b;      // Mul: a*b; Comm: [a,b]; Pow/PPow: base a
  AffExpr exp;       // Pow: a^exp; PPow: a^(p^exp)
};
std::string word_ast_to_string(const WordAst& w);

struct FpRel {
  WordPtr lhs, rhs;
  int line = 0;
};

struct ParamRange {
  long long lo = 0, hi = 0;
};

struct FpTemplate {
  std::string name;
  int prime = 3;
  std::vector<std::string> gens;
  std::vector<std::pair<std::string, WordPtr>> defs;  // acyclic, earlier names only
  std::vector<FpRel> rels;
  AffExpr class_bound;
  std::optional<ParamRange> e_range, i_range, k_range;
};
using FpTemplatePtr = std::shared_ptr<const FpTemplate>;

// Parse one group block (or all blocks in a file).  Errors carry line/column.
FpTemplatePtr parse_fp_template(const std::string& text);
std::vector<FpTemplatePtr> parse_fp_file(const std::string& text);
std::string print_fp_template(const FpTemplate& t);

// A template with parameter values bound (values validated against ranges).
struct FpInstance {
  FpTemplatePtr tpl;
  long long e = 0, i = 0, k = 0;
  int class_bound = 1;

  int ngens() const { return (int)tpl->gens.size(); }
};
FpInstance instantiate(const FpTemplatePtr& t, long long e = 0, long long i = 0,
                       long long k = 0);

// Evaluate a word on generator images inside g.  Definitions expand
// recursively and are memoized per call.
ExpVec eval_word(const WordAst& w, const FpInstance& inst, const PcGroupPtr& g,
                 const std::vector<ExpVec>& gen_images);

// lhs * rhs^-1 of a relator.
ExpVec eval_relator(const FpRel& r, const FpInstance& inst, const PcGroupPtr& g,
                    const std::vector<ExpVec>& gen_images);

}  // namespace sigma3
