// Family corpus loading (templates + expected-invariant registry), member
// construction with order cross-checks, presentation matching, and the
// claim-replay / periodicity verifiers.
#include "sigma3/families.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include "sigma3/aut.hpp"
#include "sigma3/gen.hpp"
#include "sigma3/invariants.hpp"
#include "sigma3/pquotient.hpp"
#include "sigma3/series.hpp"
#include "sigma3/subgroup.hpp"

namespace sigma3 {

std::string AffForm::to_string() const {
  if (ce == 0) return std::to_string(c0);
  std::string s = ce == 1 ? "e" : std::to_string(ce) + "*e";
  if (c0 > 0) s += "+" + std::to_string(c0);
  if (c0 < 0) s += std::to_string(c0);
  return s;
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = (char)std::tolower((unsigned char)c);
  return s;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t nxt = s.find(sep, pos);
    out.push_back(strip(s.substr(pos, nxt - pos)));
    if (nxt == std::string::npos) break;
    pos = nxt + 1;
  }
  return out;
}

[[noreturn]] void bad_line(int line, const std::string& msg) {
  throw UsageError("registry.conf:" + std::to_string(line) + ": " + msg);
}

AffForm parse_aff(const std::string& text, int line) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) bad_line(line, "empty affine form");
  AffForm f;
  std::size_t pos = 0;
  if (s[0] == 'e') {
    f.ce = 1;
    pos = 1;
    if (pos == s.size()) return f;
  }
  try {
    std::size_t used = 0;
    f.c0 = std::stoll(s.substr(pos), &used);
    if (pos + used != s.size()) bad_line(line, "trailing text in '" + text + "'");
  } catch (const std::logic_error&) {
    bad_line(line, "cannot parse affine form '" + text + "'");
  }
  return f;
}

TypeForm parse_typeform(const std::string& text, int line) {
  TypeForm t;
  for (const std::string& part : split(text, ','))
    t.push_back(parse_aff(part, line));
  return t;
}

long long parse_int(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(strip(text), &used);
    if (used != strip(text).size()) throw std::invalid_argument("");
    return v;
  } catch (const std::logic_error&) {
    bad_line(line, "expected an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string& text, int line) {
  std::string s = strip(text);
  if (s == "true") return true;
  if (s == "false") return false;
  bad_line(line, "expected true/false, got '" + s + "'");
}

// "i 2..3" or "i 2..3 k 1..3" or "none"
void parse_variants(FamilySpec& f, const std::string& text, int line) {
  std::string s = strip(text);
  if (s == "none") return;
  std::istringstream in(s);
  std::string name, range;
  while (in >> name >> range) {
    std::size_t dots = range.find("..");
    if (dots == std::string::npos) bad_line(line, "variant range needs '..'");
    int lo = (int)parse_int(range.substr(0, dots), line);
    int hi = (int)parse_int(range.substr(dots + 2), line);
    if (name == "i") {
      f.i_lo = lo;
      f.i_hi = hi;
    } else if (name == "k") {
      f.k_lo = lo;
      f.k_hi = hi;
    } else {
      bad_line(line, "unknown variant parameter '" + name + "'");
    }
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FpTemplatePtr load_template(const std::string& dir, const std::string& file) {
  std::vector<FpTemplatePtr> all = parse_fp_file(slurp(dir + "/" + file));
  if (all.size() != 1)
    throw IntegrityError(file + ": expected exactly one group block, found " +
                         std::to_string(all.size()));
  return all[0];
}

[[noreturn]] void inconsistent(const FamilySpec& f, const std::string& msg) {
  throw IntegrityError("registry " + f.id + ": " + msg);
}

}  // namespace

std::string FamilyRegistry::default_directory() {
  if (const char* env = std::getenv("SIGMA3_FAMILY_DIR"); env && *env)
    return env;
  return SIGMA3_FAMILY_DIR_DEFAULT;
}

const FamilyRegistry& FamilyRegistry::instance() {
  static FamilyRegistry reg(default_directory());
  return reg;
}

FamilyRegistry::FamilyRegistry(const std::string& dir) : dir_(dir) {
  std::istringstream in(slurp(dir + "/registry.conf"));
  std::string raw;
  int line = 0;
  FamilySpec* cur = nullptr;
  std::map<std::string, std::pair<long long, std::string>> pending_exceptional;
  std::map<std::string, std::vector<std::pair<long long, std::string>>>
      pending_explicit;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    s = strip(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad_line(line, "unterminated section header");
      FamilySpec f;
      f.id = strip(s.substr(1, s.size() - 2));
      if (f.id.empty()) bad_line(line, "empty family id");
      if (by_id_.count(lower(f.id)))
        bad_line(line, "duplicate family id " + f.id);
      by_id_[lower(f.id)] = (int)specs_.size();
      specs_.push_back(f);
      cur = &specs_.back();
      continue;
    }
    std::size_t colon = s.find(':');
    if (!cur || colon == std::string::npos)
      bad_line(line, "expected 'key: value' inside a [FAMILY] block");
    std::string key = strip(s.substr(0, colon));
    std::string val = strip(s.substr(colon + 1));
    ExpectedInvariants& x = cur->expect;
    if (key == "template") {
      cur->template_file = val;
    } else if (key == "descend_from") {
      cur->descend_from = val;
    } else if (key == "descend_steps") {
      cur->descend_steps = (int)parse_int(val, line);
    } else if (key == "e_min") {
      cur->e_min = (int)parse_int(val, line);
    } else if (key == "e_max") {
      cur->e_max = (int)parse_int(val, line);
    } else if (key == "variants") {
      parse_variants(*cur, val, line);
    } else if (key == "exceptional" || key == "explicit") {
      std::istringstream pair(val);
      long long at = 0;
      std::string file;
      if (!(pair >> at >> file)) bad_line(line, key + " needs '<e> <file>'");
      if (key == "exceptional")
        pending_exceptional[cur->id] = {at, file};
      else
        pending_explicit[cur->id].push_back({at, file});
    } else if (key == "lo") {
      x.lo = parse_aff(val, line);
    } else if (key == "class") {
      x.clp = parse_aff(val, line);
    } else if (key == "cq") {
      x.cq = parse_typeform(val, line);
    } else if (key == "kappa") {
      x.kappa_class = val;
    } else if (key == "kappa_digits") {
      x.kappa_digits = val;
    } else if (key == "alpha1") {
      std::vector<std::string> entries = split(val, '|');
      if (entries.size() != 4)
        bad_line(line, "alpha1 needs four '|'-separated entries");
      for (int j = 0; j < 4; ++j) x.alpha1[j] = parse_typeform(entries[j], line);
    } else if (key == "rho") {
      std::vector<std::string> parts = split(val, ',');
      if (parts.size() != 4) bad_line(line, "rho needs four entries");
      for (int j = 0; j < 4; ++j) x.rho[j] = (int)parse_int(parts[j], line);
    } else if (key == "sl") {
      x.sl = (int)parse_int(val, line);
    } else if (key == "metabelian") {
      x.metabelian = parse_bool(val, line);
    } else if (key == "sigma") {
      x.sigma = parse_bool(val, line);
    } else if (key == "schur") {
      x.schur = parse_bool(val, line);
    } else if (key == "cf") {
      if (val == "cf")
        x.cf = 1;
      else if (val == "bcf")
        x.cf = 2;
      else
        bad_line(line, "cf must be 'cf' or 'bcf'");
    } else if (key == "trunk") {
      cur->trunk = val;
    } else if (key == "period_leaves") {
      cur->period_leaves = (int)parse_int(val, line);
    } else if (key == "root_steps") {
      cur->root_steps = (int)parse_int(val, line);
    } else if (key == "root_lo") {
      cur->root_lo = (int)parse_int(val, line);
    } else if (key == "root_kappa") {
      cur->root_kappa = val;
    } else if (key == "root_cq") {
      cur->root_cq = parse_typeform(val, line);
    } else {
      bad_line(line, "unknown key '" + key + "'");
    }
  }

  // Attach parsed presentation files.
  for (FamilySpec& f : specs_) {
    if (!f.template_file.empty()) f.tpl = load_template(dir_, f.template_file);
    if (auto it = pending_exceptional.find(f.id);
        it != pending_exceptional.end()) {
      f.exceptional_e = (int)it->second.first;
      f.exceptional_tpl = load_template(dir_, it->second.second);
    }
    if (auto it = pending_explicit.find(f.id); it != pending_explicit.end())
      for (const auto& [at, file] : it->second)
        f.explicit_tpls[at] = load_template(dir_, file);
  }

  // Registry self-consistency.
  for (const FamilySpec& f : specs_) {
    const ExpectedInvariants& x = f.expect;
    if (f.e_min > f.e_max) inconsistent(f, "e_min exceeds e_max");
    if ((f.tpl == nullptr) == f.descend_from.empty())
      inconsistent(f, "needs exactly one of template / descend_from");
    if (x.lo.ce != 1) inconsistent(f, "order law must have slope 1 in e");
    if (x.kappa_class.empty()) inconsistent(f, "missing kappa class");
    for (int j = 0; j < 4; ++j)
      if ((int)x.alpha1[j].size() != x.rho[j])
        inconsistent(f, "alpha1 entry " + std::to_string(j + 1) + " has rank " +
                            std::to_string(x.alpha1[j].size()) +
                            " but rho says " + std::to_string(x.rho[j]));
    if (f.tpl) {
      if (f.tpl->prime != 3) inconsistent(f, "template prime is not 3");
      if (f.tpl->gens.size() != 2) inconsistent(f, "template is not 2-generated");
      if (!f.tpl->e_range) inconsistent(f, "template lacks a range for e");
      if (f.tpl->e_range->lo > f.e_min || f.tpl->e_range->hi < f.e_max)
        inconsistent(f, "template e range does not cover [e_min, e_max]");
      bool tpl_has_i = f.tpl->i_range.has_value();
      if (tpl_has_i != f.has_variants())
        inconsistent(f, "template and registry disagree about variant i");
      if (tpl_has_i && (f.tpl->i_range->lo != f.i_lo ||
                        f.tpl->i_range->hi != f.i_hi))
        inconsistent(f, "template i range differs from registry variants");
    }
    if (!f.descend_from.empty()) {
      auto it = by_id_.find(lower(f.descend_from));
      if (it == by_id_.end())
        inconsistent(f, "descend_from " + f.descend_from + " is not defined");
      const FamilySpec& base = specs_[it->second];
      if (base.i_lo != f.i_lo || base.i_hi != f.i_hi)
        inconsistent(f, "variant range differs from base " + base.id);
      if (f.descend_steps < 1) inconsistent(f, "descend_steps must be >= 1");
    }
    if (!f.trunk.empty()) {
      auto it = by_id_.find(lower(f.trunk));
      if (it == by_id_.end())
        inconsistent(f, "trunk " + f.trunk + " is not defined");
      if (!specs_[it->second].tpl)
        inconsistent(f, "trunk " + f.trunk + " has no template");
      if (f.period_leaves < 1)
        inconsistent(f, "leaf family needs period_leaves >= 1");
    } else if (f.period_leaves > 0) {
      inconsistent(f, "period_leaves without a trunk");
    }
    if (f.root_steps >= 0 && f.root_lo <= 0)
      inconsistent(f, "root_steps without root_lo");
    if (f.exceptional_tpl && f.exceptional_e >= f.e_min)
      inconsistent(f, "exceptional member must sit below the onset");
  }
}

const FamilySpec* FamilyRegistry::find(const std::string& id) const {
  auto it = by_id_.find(lower(id));
  return it == by_id_.end() ? nullptr : &specs_[it->second];
}

const FamilySpec& FamilyRegistry::get(const std::string& id) const {
  if (const FamilySpec* f = find(id)) return *f;
  std::string known;
  for (const FamilySpec& f : specs_) known += (known.empty() ? "" : ", ") + f.id;
  throw UsageError("unknown family id '" + id + "' (known: " + known + ")");
}

namespace {

std::string member_name(const FamilySpec& f, long long e, long long i,
                        long long k) {
  std::string s = f.id + "(e=" + std::to_string(e);
  if (f.has_variants()) s += ", i=" + std::to_string(i);
  if (f.k_hi > 0) s += ", k=" + std::to_string(k);
  return s + ")";
}

// True when the group matches the registry's leaf row: derived length plus
// the Schur and sigma flags.  Cheapest test first.
bool matches_leaf_row(const PcGroupPtr& g, const ExpectedInvariants& x) {
  if (group_stats(g).sl != x.sl) return false;
  if (is_schur(g) != x.schur) return false;
  return has_gi_automorphism(g) == x.sigma;
}

}  // namespace

PcGroupPtr build_family(const FamilySpec& f, long long e, long long i,
                        long long k) {
  if (f.has_variants()) {
    if (i < f.i_lo || i > f.i_hi)
      throw UsageError(f.id + ": variant i=" + std::to_string(i) +
                       " outside admissible range " + std::to_string(f.i_lo) +
                       ".." + std::to_string(f.i_hi));
  } else if (i != 0) {
    throw UsageError(f.id + " takes no variant i");
  }
  if (f.k_hi > 0) {
    if (k < f.k_lo || k > f.k_hi)
      throw UsageError(f.id + ": variant k=" + std::to_string(k) +
                       " outside admissible range " + std::to_string(f.k_lo) +
                       ".." + std::to_string(f.k_hi));
  } else if (k != 0) {
    throw UsageError(f.id + " takes no variant k");
  }

  bool exceptional = f.exceptional_tpl && e == f.exceptional_e;
  if (!exceptional) {
    if (e < f.e_min) {
      std::string msg = f.id + " is defined for e >= " + std::to_string(f.e_min);
      if (f.exceptional_tpl)
        msg += " (plus an exceptional member at e = " +
               std::to_string(f.exceptional_e) + ")";
      throw UsageError(msg + "; got e = " + std::to_string(e));
    }
    if (e > f.e_max)
      throw UsageError(f.id + " is tabulated up to e = " +
                       std::to_string(f.e_max) + "; got e = " +
                       std::to_string(e));
  }

  PcGroupPtr g;
  if (f.tpl || exceptional) {
    FpInstance inst =
        instantiate(exceptional ? f.exceptional_tpl : f.tpl, e, i, k);
    g = p_quotient(inst, inst.class_bound).g;
  } else {
    const FamilySpec& base = FamilyRegistry::instance().get(f.descend_from);
    std::vector<PcGroupPtr> level = {build_family(base, e, i, k)};
    std::vector<PcGroupPtr> hits;
    for (int step = 1; step <= f.descend_steps; ++step) {
      std::vector<PcGroupPtr> next;
      for (const PcGroupPtr& cur : level) {
        if (!is_capable(cur)) continue;
        for (PcGroupPtr& child : immediate_descendants(cur, 1)) {
          if (step < f.descend_steps)
            next.push_back(std::move(child));
          else if (matches_leaf_row(child, f.expect))
            hits.push_back(std::move(child));
        }
      }
      level = std::move(next);
    }
    if (hits.size() != 1)
      throw IntegrityError(member_name(f, e, i, k) + ": descendant search found " +
                           std::to_string(hits.size()) +
                           " endpoints matching the registry row, expected "
                           "exactly one");
    g = hits.front();
  }

  int want = (int)f.expect.lo.eval(e);
  int got = group_stats(g).order_exp;
  if (got != want)
    throw IntegrityError(member_name(f, e, i, k) + ": built order 3^" +
                         std::to_string(got) + " but the registry order law " +
                         f.expect.lo.to_string() + " gives 3^" +
                         std::to_string(want) + "; refusing to coerce");
  return g;
}

PcGroupPtr build_family(const std::string& id, long long e, long long i,
                        long long k) {
  return build_family(FamilyRegistry::instance().get(id), e, i, k);
}

PcGroupPtr chain_root(const FamilySpec& f) {
  if (f.root_steps < 0)
    throw UsageError(f.id + " has no chain-root entry in the registry");
  PcGroupPtr g = build_family(f, f.e_min, f.has_variants() ? f.i_lo : 0,
                              f.k_hi > 0 ? f.k_lo : 0);
  for (int s = 0; s < f.root_steps; ++s) g = standard_copy(p_parent(g).q);
  return g;
}

bool matches_presentation(const PcGroupPtr& g, const FpTemplatePtr& tpl,
                          long long e, long long i, long long k) {
  assert(tpl);
  int d = (int)tpl->gens.size();
  if (g->n < d || group_stats(g).rank != d) return false;
  FpInstance inst = instantiate(tpl, e, i, k);
  std::vector<ExpVec> imgs;
  imgs.reserve(d);
  for (int j = 0; j < d; ++j) imgs.push_back(g->gen_vec(j));
  for (const FpRel& rel : inst.tpl->rels)
    if (PcGroup::last_nonzero(eval_relator(rel, inst, g, imgs)) != -1)
      return false;
  return true;
}

bool matches_presentation(const PcGroupPtr& g, const FpTemplate& tpl,
                          long long e, long long i, long long k) {
  return matches_presentation(
      g, FpTemplatePtr(&tpl, [](const FpTemplate*) {}), e, i, k);
}

namespace {

AbelianType eval_typeform(const TypeForm& t, long long e) {
  AbelianType a;
  for (const AffForm& f : t) a.logs.push_back((int)f.eval(e));
  std::sort(a.logs.rbegin(), a.logs.rend());
  return a;
}

std::string quad_string(const std::array<AbelianType, 4>& q) {
  std::string s = "(";
  for (int j = 0; j < 4; ++j)
    s += q[j].compact() + (j == 2 ? ";" : j < 2 ? "," : ")");
  return s;
}

// Equal up to reordering of the first three entries; the puncture is fixed.
template <typename T>
bool quad_equivalent(std::array<T, 4> a, std::array<T, 4> b) {
  if (a[3] != b[3]) return false;
  std::sort(a.begin(), a.begin() + 3);
  std::sort(b.begin(), b.begin() + 3);
  return a == b;
}

struct CellChecker {
  const FamilySpec& f;
  long long e, i, k;
  std::vector<ClaimRow> rows;

  void row(const std::string& claim, const std::string& want,
           const std::string& got, bool pass) {
    rows.push_back({f.id, e, i, k, claim, want, got, pass});
  }
  void eq_int(const std::string& claim, long long want, long long got) {
    row(claim, std::to_string(want), std::to_string(got), want == got);
  }
  void eq_str(const std::string& claim, const std::string& want,
              const std::string& got) {
    row(claim, want, got, want == got);
  }
  void eq_bool(const std::string& claim, bool want, bool got) {
    row(claim, want ? "true" : "false", got ? "true" : "false", want == got);
  }

  void run(bool parent_checks) {
    const ExpectedInvariants& x = f.expect;
    PcGroupPtr g;
    try {
      g = build_family(f, e, i, k);
    } catch (const std::exception& ex) {
      row("build", "a group of order 3^" + std::to_string(x.lo.eval(e)),
          ex.what(), false);
      return;
    }
    GroupStats st = group_stats(g);
    eq_int("lo", x.lo.eval(e), st.order_exp);
    eq_int("class", x.clp.eval(e), st.clp);
    eq_str("cq", eval_typeform(x.cq, e).compact(),
           abelianization_type(g).compact());

    PuncturedTkt tkt = punctured_tkt(g);
    eq_str("kappa", x.kappa_class, to_string(classify_tkt(tkt)));
    if (!x.kappa_digits.empty())
      eq_str("kappa-digits", x.kappa_digits, tkt.to_string());

    std::array<AbelianType, 4> want_a1;
    for (int j = 0; j < 4; ++j) want_a1[j] = eval_typeform(x.alpha1[j], e);
    Aqi1 a1 = aqi1(g);
    row("alpha1", quad_string(want_a1), a1.to_string(),
        quad_equivalent(want_a1, a1.entries));

    std::array<int, 4> rd = rank_distribution(g);
    row("rho", rho_string(x.rho), rho_string(rd), quad_equivalent(x.rho, rd));

    eq_int("sl", x.sl, st.sl);
    eq_bool("metabelian", x.metabelian, st.sl <= 2);
    eq_bool("sigma", x.sigma, has_gi_automorphism(g));
    eq_bool("schur", x.schur, is_schur(g));
    if (x.cf == 1) eq_bool("cf", true, is_cf(g));
    if (x.cf == 2) eq_bool("bcf", true, is_bcf(g));

    if (auto it = f.explicit_tpls.find(e); it != f.explicit_tpls.end())
      row("explicit", "presentation " + it->second->name + " satisfied",
          "checked", matches_presentation(g, it->second, e, i, k));

    if (parent_checks) check_parent(g);
  }

  // The parent quotient lands on the previous mainline vertex: one e lower
  // for a mainline family, the same-e trunk vertex for a leaf family.
  void check_parent(const PcGroupPtr& g) {
    const FamilySpec* target = nullptr;
    long long te = 0;
    if (!f.trunk.empty()) {
      target = &FamilyRegistry::instance().get(f.trunk);
      te = e;
    } else if (f.tpl) {
      target = &f;
      te = e - 1;
    } else {
      // Descendant-built family: the registry identity is G/G'' = base.
      const FamilySpec& base = FamilyRegistry::instance().get(f.descend_from);
      Subgroup second_derived =
          derived_subgroup(derived_subgroup(whole_group(g)));
      PcGroupPtr meta = standard_copy(quotient(g, second_derived).q);
      bool ok = group_stats(meta).order_exp == (int)base.expect.lo.eval(e) &&
                matches_presentation(meta, base.tpl, e, i, k);
      row("metabelianization", "G/G'' satisfies " + base.id + " at e=" +
                                   std::to_string(e),
          ok ? "satisfied" : "violated", ok);
      return;
    }
    if (te < target->e_min || te > target->e_max) return;
    PcGroupPtr parent = standard_copy(p_parent(g).q);
    bool ok = group_stats(parent).order_exp ==
                  (int)target->expect.lo.eval(te) &&
              matches_presentation(parent, target->tpl, te, 0, 0);
    row("parent", "p_parent lands on " + target->id + " at e=" +
                      std::to_string(te),
        ok ? "satisfied" : "violated", ok);
  }
};

std::vector<ClaimRow> run_cell(const FamilySpec& f, long long e, long long i,
                               long long k, bool parent_checks) {
  CellChecker c{f, e, i, k};
  try {
    c.run(parent_checks);
  } catch (const std::exception& ex) {
    c.row("error", "clean invariant evaluation", ex.what(), false);
  }
  return std::move(c.rows);
}

void append_root_rows(const FamilySpec& f, std::vector<ClaimRow>& rows) {
  if (f.root_steps < 0) return;
  CellChecker c{f, f.e_min, f.has_variants() ? f.i_lo : 0, 0};
  try {
    PcGroupPtr r = chain_root(f);
    c.eq_int("root-lo", f.root_lo, group_stats(r).order_exp);
    if (!f.root_kappa.empty())
      c.eq_str("root-kappa", f.root_kappa,
               to_string(classify_tkt(punctured_tkt(r))));
    if (!f.root_cq.empty())
      c.eq_str("root-cq", eval_typeform(f.root_cq, f.e_min).compact(),
               abelianization_type(r).compact());
  } catch (const std::exception& ex) {
    c.row("root", "chain root after " + std::to_string(f.root_steps) +
                      " parent steps",
          ex.what(), false);
  }
  rows.insert(rows.end(), c.rows.begin(), c.rows.end());
}

}  // namespace

std::string FamilyReport::summary() const {
  std::string s = family + " " + std::to_string(checked - failed) + "/" +
                  std::to_string(checked) + " claims pass";
  if (budget_exceeded) s += " (budget exceeded, partial)";
  return s;
}

FamilyReport verify_family_claims(const FamilySpec& f, long long e_lo,
                                  long long e_hi, const VerifyOptions& opt) {
  FamilyReport rep;
  rep.family = f.id;

  struct Cell {
    long long e, i, k;
  };
  std::vector<Cell> cells;
  for (long long e = e_lo; e <= e_hi; ++e) {
    if (e < f.e_min && e != f.exceptional_e) continue;
    if (e > f.e_max) continue;
    for (long long i = f.has_variants() ? f.i_lo : 0;
         i <= (f.has_variants() ? f.i_hi : 0); ++i)
      for (long long k = f.k_hi > 0 ? f.k_lo : 0;
           k <= (f.k_hi > 0 ? f.k_hi : 0); ++k)
        cells.push_back({e, i, k});
  }

  auto t0 = std::chrono::steady_clock::now();
  auto over_budget = [&] {
    return opt.budget_secs > 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
                   .count() > opt.budget_secs;
  };

  std::size_t idx = 0;
  while (idx < cells.size()) {
    if (over_budget()) {
      rep.budget_exceeded = true;
      break;
    }
    std::size_t batch =
        std::min<std::size_t>(std::max(1, opt.jobs), cells.size() - idx);
    if (batch == 1) {
      const Cell& c = cells[idx++];
      std::vector<ClaimRow> rows =
          run_cell(f, c.e, c.i, c.k, opt.parent_checks);
      rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    } else {
      std::vector<std::future<std::vector<ClaimRow>>> futs;
      for (std::size_t j = 0; j < batch; ++j) {
        const Cell& c = cells[idx + j];
        futs.push_back(std::async(std::launch::async, run_cell, std::cref(f),
                                  c.e, c.i, c.k, opt.parent_checks));
      }
      for (auto& fut : futs) {
        std::vector<ClaimRow> rows = fut.get();
        rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
      }
      idx += batch;
    }
  }
  if (!rep.budget_exceeded) append_root_rows(f, rep.rows);

  rep.checked = (long long)rep.rows.size();
  for (const ClaimRow& r : rep.rows)
    if (!r.pass) ++rep.failed;
  rep.pass = rep.failed == 0 && !rep.budget_exceeded;
  return rep;
}

// Periodicity of a leaf family over its mainline: every mainline vertex in
// the range has the next mainline vertex among its step-1 descendants, plus
// exactly the claimed number of leaf members.  Declared in gen.hpp next to
// the descendant machinery it drives.
PeriodicityReport verify_periodicity(const std::string& family, long long e_lo,
                                     long long e_hi, const GenOptions& opt) {
  const FamilyRegistry& reg = FamilyRegistry::instance();
  const FamilySpec* leaf = &reg.get(family);
  if (leaf->trunk.empty()) {
    const FamilySpec* found = nullptr;
    for (const FamilySpec& s : reg.families())
      if (!s.trunk.empty() && lower(s.trunk) == lower(leaf->id)) {
        found = &s;
        break;
      }
    if (!found)
      throw UsageError(family +
                       " has no periodicity row (not a leaf family, and no "
                       "leaf family references it as trunk)");
    leaf = found;
  }
  const FamilySpec& trunk = reg.get(leaf->trunk);

  PeriodicityReport rep;
  rep.family = leaf->id;
  for (long long e = e_lo; e <= e_hi; ++e) {
    PeriodicityReport::Row row;
    row.e = e;
    row.leaves_expected = leaf->period_leaves;
    PcGroupPtr t = build_family(trunk, e);
    std::vector<PcGroupPtr> kids = immediate_descendants(t, 1, opt);
    for (const PcGroupPtr& child : kids) {
      if (e + 1 <= trunk.e_max && !row.parent_ok &&
          matches_presentation(child, trunk.tpl, e + 1))
        row.parent_ok = true;
      if (matches_leaf_row(child, leaf->expect)) {
        PuncturedTkt tkt = punctured_tkt(child);
        if (to_string(classify_tkt(tkt)) == leaf->expect.kappa_class)
          ++row.leaves_found;
      }
    }
    row.pass = row.parent_ok && row.leaves_found == row.leaves_expected;
    rep.rows.push_back(row);
    rep.pass = rep.pass && row.pass;
  }
  return rep;
}

}  // namespace sigma3
