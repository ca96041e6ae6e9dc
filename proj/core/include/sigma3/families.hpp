// Parametrized family corpus: presentation templates plus an
// expected-invariant registry, loaded from a families/ directory
// (SIGMA3_FAMILY_DIR overrides the build-time default).  build_family
// realizes one member as a pc group and cross-checks its order;
// verify_family_claims replays every registry claim against the built
// groups and reports pass/fail rows.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sigma3/fpres.hpp"
#include "sigma3/pcgroup.hpp"

namespace sigma3 {

// c0 + ce * e, the only parameter shape registry claims need.
struct AffForm {
  long long c0 = 0, ce = 0;

  long long eval(long long e) const { return c0 + ce * e; }
  std::string to_string() const;
};

// Symbolic logarithmic abelian type: one affine form per entry.
using TypeForm = std::vector<AffForm>;

struct ExpectedInvariants {
  AffForm lo;                      // log_3 of the order
  AffForm clp;                     // exponent-3 class
  TypeForm cq;                     // commutator quotient logs
  std::string kappa_class;         // named punctured transfer kernel type
  std::string kappa_digits;        // exact kernel pattern, "" when unclaimed
  std::array<TypeForm, 4> alpha1;  // puncture last
  std::array<int, 4> rho{};
  int sl = 0;
  bool metabelian = false, sigma = false, schur = false;
  int cf = 0;  // 0 unclaimed, 1 cyclic factors, 2 factors of rank <= 2
};

struct FamilySpec {
  std::string id;     // canonical form, e.g. "F-M-D10"
  int e_min = 2, e_max = 12;
  int i_lo = 0, i_hi = 0;  // 0..0 when the family has no variants
  int k_lo = 0, k_hi = 0;

  std::string template_file;  // empty for descendant-built families
  FpTemplatePtr tpl;          // null for descendant-built families
  int exceptional_e = -1;     // below-onset member with its own presentation
  FpTemplatePtr exceptional_tpl;
  std::map<long long, FpTemplatePtr> explicit_tpls;  // spelled-out renderings

  std::string descend_from;  // base family of a descendant-built family
  int descend_steps = 0;

  std::string trunk;      // mainline this leaf family hangs off
  int period_leaves = 0;  // members per mainline vertex (step-1 descendants)

  int root_steps = -1;  // parent steps from build(e_min) to the chain root
  int root_lo = 0;
  std::string root_kappa;
  TypeForm root_cq;

  ExpectedInvariants expect;

  bool has_variants() const { return i_hi > 0; }
};

// Loads every template and the registry once, then hands out specs.
// Construction throws UsageError on malformed input and IntegrityError on
// registry self-inconsistency (alpha1 ranks vs rho, dangling references,
// parameter ranges not covering [e_min, e_max]).
class FamilyRegistry {
 public:
  explicit FamilyRegistry(const std::string& dir);

  static const FamilyRegistry& instance();  // default directory, loaded once
  static std::string default_directory();   // env override or compile default

  const FamilySpec* find(const std::string& id) const;  // case-insensitive
  const FamilySpec& get(const std::string& id) const;   // UsageError if absent
  const std::vector<FamilySpec>& families() const { return specs_; }
  const std::string& directory() const { return dir_; }

 private:
  std::string dir_;
  std::vector<FamilySpec> specs_;
  std::map<std::string, int> by_id_;  // lowercased id -> index
};

// Realize one family member.  Template families instantiate and collect;
// descendant-built families walk immediate descendants below their base
// member and take the unique endpoint matching the registry's sl / schur /
// sigma row.  The built order is checked against the registry's order law;
// a mismatch raises IntegrityError and is never coerced.
PcGroupPtr build_family(const FamilySpec& f, long long e, long long i = 0,
                        long long k = 0);
PcGroupPtr build_family(const std::string& id, long long e, long long i = 0,
                        long long k = 0);

// Iterated parent quotient from build(e_min) down to the family's chain
// root (root_steps applications).
PcGroupPtr chain_root(const FamilySpec& f);

// True when g's leading generators satisfy every relator of the instantiated
// presentation and g is generated by them (rank check).  Combined with an
// order comparison this certifies isomorphism to the presented group.
bool matches_presentation(const PcGroupPtr& g, const FpTemplate& tpl,
                          long long e = 0, long long i = 0, long long k = 0);
bool matches_presentation(const PcGroupPtr& g, const FpTemplatePtr& tpl,
                          long long e = 0, long long i = 0, long long k = 0);

struct ClaimRow {
  std::string family;
  long long e = 0, i = 0, k = 0;
  std::string claim;     // "lo", "kappa", "alpha1", "parent", ...
  std::string expected;  // printable expected value
  std::string actual;    // printable computed value
  bool pass = false;
};

struct FamilyReport {
  std::string family;
  std::vector<ClaimRow> rows;  // (e, i, k, claim) order
  long long checked = 0, failed = 0;
  bool budget_exceeded = false;
  bool pass = false;  // no failures and no budget cut

  std::string summary() const;  // one line, e.g. "F-M-D10 84/84 pass"
};

struct VerifyOptions {
  int jobs = 1;             // parallel (e, i, k) cells
  double budget_secs = 0;   // 0 = unbudgeted
  bool parent_checks = true;
};

// Replay every registry claim of the family for e in [e_lo, e_hi] and all
// admissible variants: order law, class, commutator quotient, named kernel
// type (exact pattern where pinned), first-order abelian quotient invariants
// and rank distribution up to reordering of the non-punctured entries, sl,
// metabelian / sigma / schur flags, cyclic-factor claims, parent coherence
// along the mainline, the metabelianization identity for descendant-built
// families, and the chain-root claims.  Failures become report rows, never
// exceptions; blowing the budget truncates with budget_exceeded set.
FamilyReport verify_family_claims(const FamilySpec& f, long long e_lo,
                                  long long e_hi,
                                  const VerifyOptions& opt = {});

}  // namespace sigma3
