// Immediate descendants by the generation step: candidate multiplicator
// subspaces are enumerated as reduced row bases, filtered by the nucleus
// supplement condition, partitioned into orbits under the automorphism
// action, and each canonical representative is quotiented out of the cover.
#include "sigma3/gen.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sigma3/invariants.hpp"

namespace sigma3 {

namespace {

int min_rank(const PcGroup& g) {
  int d = 0;
  while (d < g.n && g.weight[d] == 1) ++d;
  return d;
}

// A different deterministic generating set for the same automorphism group:
// shuffle the given one and pad it with a few products.
std::vector<AutMap> reseed_gens(const PcGroupPtr& s, std::vector<AutMap> gens,
                                std::uint64_t seed) {
  if (!seed || gens.empty()) return gens;
  std::mt19937_64 rng(seed);
  std::shuffle(gens.begin(), gens.end(), rng);
  const std::size_t base = gens.size();
  for (int k = 0; k < 3; ++k) {
    const AutMap& x = gens[rng() % base];
    const AutMap& y = gens[rng() % base];
    gens.push_back(compose_aut(s, x, y));
  }
  return gens;
}

// The quotient of the cover by the subspace with the given rows (tail
// coordinates), restandardized.
PcGroupPtr descend_by(const PCover& cov, const FpMat& rows) {
  std::vector<ExpVec> gens;
  gens.reserve(rows.size());
  for (const std::vector<Exp>& r : rows) {
    ExpVec v = cov.cover->identity_vec();
    std::copy(r.begin(), r.end(), v.begin() + cov.base_n);
    gens.push_back(std::move(v));
  }
  Subgroup m0 = make_subgroup(cov.cover, std::move(gens), {});
  return standard_copy(quotient(cov.cover, m0).q);
}

}  // namespace

std::vector<FpMat> allowable_subspaces(const PCover& cov, int s,
                                       long long cap) {
  const int p = cov.cover->prime;
  const int T = cov.multiplicator.order_exp();
  if (s < 1 || s > T) return {};
  const int k = T - s;
  FpMat nuc;
  for (const ExpVec& v : cov.nucleus.igs) {
    assert(PcGroup::first_nonzero(v) >= cov.base_n);
    nuc.push_back(std::vector<Exp>(v.begin() + cov.base_n, v.end()));
  }
  std::vector<FpMat> out;
  // reduced row bases: pivot columns in lexicographic order, then the free
  // entries (right of the pivot, outside pivot columns) run an odometer
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<char> is_piv(T, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < k; ++r)
      for (int j = piv[r] + 1; j < T; ++j)
        if (!is_piv[j]) free_pos.emplace_back(r, j);
    std::vector<Exp> fill(free_pos.size(), 0);
    while (true) {
      FpMat m(k, std::vector<Exp>(T, 0));
      for (int r = 0; r < k; ++r) m[r][piv[r]] = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        m[free_pos[t].first][free_pos[t].second] = fill[t];
      FpMat stack = m;
      stack.insert(stack.end(), nuc.begin(), nuc.end());
      if (mat_rank(std::move(stack), p) == T) {
        if ((long long)out.size() >= cap)
          throw BudgetExceeded("candidate subspaces exceeded the node budget");
        out.push_back(std::move(m));
      }
      std::size_t t = 0;
      while (t < fill.size() && fill[t] == p - 1) fill[t++] = 0;
      if (t == fill.size()) break;
      ++fill[t];
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == T - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

AllowableOrbits allowable_orbits(const PCover& cov,
                                 const std::vector<AutMap>& aut_gens, int s,
                                 const GenOptions& opt) {
  const int p = cov.cover->prime;
  std::vector<FpMat> all = allowable_subspaces(cov, s, opt.max_space);
  AllowableOrbits out;
  out.total = (long long)all.size();
  if (all.empty()) return out;

  std::set<std::string> allowed;
  for (const FpMat& m : all) allowed.insert(space_key(m));
  std::vector<FpMat> mats;
  mats.reserve(aut_gens.size());
  for (const AutMap& a : aut_gens)
    mats.push_back(multiplicator_action(cov, a.img));

  struct Rep {
    std::string key;
    FpMat m;
    long long size;
  };
  std::vector<Rep> reps;
  std::set<std::string> seen;
  for (const FpMat& start : all) {
    if (seen.contains(space_key(start))) continue;
    std::vector<FpMat> orbit{start};
    seen.insert(space_key(start));
    std::string best = space_key(start);
    FpMat bestm = start;
    for (std::size_t at = 0; at < orbit.size(); ++at)
      for (const FpMat& mm : mats) {
        FpMat im = subspace_map(orbit[at], mm, p);
        std::string key = space_key(im);
        // the nucleus is characteristic, so the action never leaves the
        // allowable set
        assert(allowed.contains(key));
        if (seen.insert(key).second) {
          if (key < best) {
            best = key;
            bestm = im;
          }
          orbit.push_back(std::move(im));
        }
      }
    reps.push_back({std::move(best), std::move(bestm), (long long)orbit.size()});
  }
  std::sort(reps.begin(), reps.end(),
            [](const Rep& a, const Rep& b) { return a.key < b.key; });
  for (Rep& r : reps) {
    out.reps.push_back(std::move(r.m));
    out.sizes.push_back(r.size);
  }
  return out;
}

std::vector<PcGroupPtr> immediate_descendants(const PcGroupPtr& g, int s,
                                              const GenOptions& opt) {
  PcGroupPtr base = standard_copy(g);
  if (base->n == 0) return {};
  PCover cov = p_cover(base);
  if (s < 1 || s > cov.nucleus.order_exp()) return {};
  AutGroup aut = aut_group(base, opt.aut);
  std::vector<AutMap> gens = reseed_gens(base, aut.generators, opt.seed);
  AllowableOrbits orbits = allowable_orbits(cov, gens, s, opt);
  std::vector<PcGroupPtr> out;
  out.reserve(orbits.reps.size());
  for (const FpMat& rep : orbits.reps) out.push_back(descend_by(cov, rep));
  return out;
}

Census census(const PcGroupPtr& g, const GenOptions& opt) {
  Census out;
  PcGroupPtr base = standard_copy(g);
  if (base->n == 0) return out;
  PCover cov = p_cover(base);
  const int nu = cov.nucleus.order_exp();
  if (nu == 0) return out;
  AutGroup aut = aut_group(base, opt.aut);
  std::vector<AutMap> gens = reseed_gens(base, aut.generators, opt.seed);
  for (int s = 1; s <= nu; ++s) {
    AllowableOrbits orbits = allowable_orbits(cov, gens, s, opt);
    long long capable = 0;
    for (const FpMat& rep : orbits.reps)
      if (is_capable(descend_by(cov, rep))) ++capable;
    out.by_step[s] = {(long long)orbits.reps.size(), capable};
    out.n += (long long)orbits.reps.size();
    out.c += capable;
  }
  return out;
}

namespace {

std::unique_ptr<DescendantNode> make_node(const PcGroupPtr& g,
                                          const DescendantNode* parent,
                                          int step) {
  auto node = std::make_unique<DescendantNode>();
  node->group = g;
  node->parent = parent;
  node->step = step;
  node->capable = is_capable(g);
  node->stats = group_stats(g);
  node->abelian = abelianization_type(g).compact();
  try {
    PuncturedTkt t = punctured_tkt(g);
    NamedType named = classify_tkt(t);
    node->kappa =
        named == NamedType::unknown ? t.to_string() : to_string(named);
  } catch (const UsageError&) {
    node->kappa = "-";
  } catch (const IntegrityError&) {  // kernel outside the labeled socle frame
    node->kappa = "-";
  }
  try {
    node->alpha1 = aqi1(g).to_string();
  } catch (const UsageError&) {
    node->alpha1 = "-";
  }
  return node;
}

void expand_node(DescendantNode* node, int depth, const NodeFilter& keep,
                 const GenOptions& opt, long long* budget) {
  if (depth <= 0) return;
  PcGroupPtr base = standard_copy(node->group);
  if (base->n == 0) return;
  PCover cov = p_cover(base);
  const int nu = cov.nucleus.order_exp();
  if (nu == 0) return;
  AutGroup aut = aut_group(base, opt.aut);
  std::vector<AutMap> gens = reseed_gens(base, aut.generators, opt.seed);
  for (int s = 1; s <= nu; ++s)
    for (const FpMat& rep : allowable_orbits(cov, gens, s, opt).reps) {
      PcGroupPtr child = descend_by(cov, rep);
      if (keep && !keep(child)) continue;
      if (--*budget < 0)
        throw BudgetExceeded("descendant tree exceeded the node budget");
      node->children.push_back(make_node(child, node, s));
    }
  for (std::unique_ptr<DescendantNode>& ch : node->children)
    expand_node(ch.get(), depth - 1, keep, opt, budget);
}

void dot_node(std::ostringstream& os, const DescendantNode& n, long long id,
              long long* next_id) {
  os << "  n" << id << " [label=\"lo=" << n.stats.order_exp
     << "\\nκ=" << n.kappa << "\\n" << n.abelian << "\"];\n";
  for (const std::unique_ptr<DescendantNode>& ch : n.children) {
    long long cid = (*next_id)++;
    os << "  n" << id << " -> n" << cid << " [label=\"s=" << ch->step
       << "\"];\n";
    dot_node(os, *ch, cid, next_id);
  }
}

nlohmann::json json_node(const DescendantNode& n) {
  nlohmann::json j;
  j["lo"] = n.stats.order_exp;
  j["clp"] = n.stats.clp;
  j["sl"] = n.stats.sl;
  j["step"] = n.step;
  j["capable"] = n.capable;
  j["abelian"] = n.abelian;
  j["kappa"] = n.kappa;
  j["alpha1"] = n.alpha1;
  nlohmann::json kids = nlohmann::json::array();
  for (const std::unique_ptr<DescendantNode>& ch : n.children)
    kids.push_back(json_node(*ch));
  j["children"] = std::move(kids);
  return j;
}

}  // namespace

std::unique_ptr<DescendantNode> descendant_tree(const PcGroupPtr& root,
                                                int depth,
                                                const NodeFilter& keep,
                                                const GenOptions& opt) {
  std::unique_ptr<DescendantNode> tree =
      make_node(standard_copy(root), nullptr, 0);
  long long budget = opt.max_space;
  expand_node(tree.get(), depth, keep, opt, &budget);
  return tree;
}

std::string to_dot(const DescendantNode& tree) {
  std::ostringstream os;
  os << "digraph descendants {\n  node [shape=box];\n";
  long long next_id = 1;
  dot_node(os, tree, 0, &next_id);
  os << "}\n";
  return os.str();
}

std::string to_json(const DescendantNode& tree) {
  return json_node(tree).dump(2);
}

namespace {

bool relations_hold(const PcGroupPtr& src, const PcGroupPtr& dst,
                    const std::vector<ExpVec>& img) {
  for (int i = 0; i < src->n; ++i)
    if (dst->pow(img[i], dst->prime) != apply_word(dst, img, src->power[i]))
      return false;
  for (int j = 1; j < src->n; ++j)
    for (int i = 0; i < j; ++i)
      if (dst->comm_of(img[j], img[i]) !=
          apply_word(dst, img, src->commutator_word(j, i)))
        return false;
  return true;
}

}  // namespace

bool is_isomorphic_brute(const PcGroupPtr& a0, const PcGroupPtr& b0) {
  PcGroupPtr a = standard_copy(a0);
  PcGroupPtr b = standard_copy(b0);
  if (a->prime != b->prime || a->n != b->n) return false;
  const int d = min_rank(*a);
  if (d != min_rank(*b)) return false;
  if (abelianization_type(a).logs != abelianization_type(b).logs) return false;
  auto order_census = [](const PcGroupPtr& g) {
    std::map<long long, long long> m;
    for (const ExpVec& v : enumerate_subgroup(whole_group(g)))
      ++m[g->element_order_vec(v)];
    return m;
  };
  if (order_census(a) != order_census(b)) return false;

  std::vector<ExpVec> elems = enumerate_subgroup(whole_group(b));
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<ExpVec> mi(d);
    for (int i = 0; i < d; ++i) mi[i] = elems[idx[i]];
    std::vector<ExpVec> img = push_images(a, b, mi);
    if (relations_hold(a, b, img)) {
      FpMat m(d);
      for (int i = 0; i < d; ++i)
        m[i] = std::vector<Exp>(img[i].begin(), img[i].begin() + d);
      if (mat_rank(std::move(m), b->prime) == d) return true;
    }
    int i = 0;
    while (i < d && idx[i] == elems.size() - 1) idx[i++] = 0;
    if (i == d) break;
    ++idx[i];
  }
  return false;
}

}  // namespace sigma3
