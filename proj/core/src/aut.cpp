// Automorphism groups by lifting through the lower exponent-p central series,
// the generator-inverting (sigma) automorphism test, and the Schur balance
// test.
//
// The class-1 quotient's automorphisms form the full linear group on the
// minimal generators.  One class up, an automorphism alpha of the class-c
// quotient extends canonically to the p-cover (each surviving tail is the
// value of its defining relation, so its image is that relation evaluated at
// lifted images), and alpha lifts to the class-(c+1) quotient exactly when
// this multiplicator action fixes the kernel of the projection onto the new
// layer.  The kernel of the restriction Aut(Q_{c+1}) -> Aut(Q_c) consists of
// the central derivations g_i -> g_i * z with z in the layer, so every step
// divides the order by the orbit length of the kernel subspace and multiplies
// it by p^(d * layer rank).
#include "sigma3/aut.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>

#include "sigma3/series.hpp"

namespace sigma3 {

namespace {

ExpVec zeropad(const ExpVec& v, int n) {
  ExpVec out = v;
  out.resize(n, 0);
  return out;
}

// d(G) for a group with honest weights: the number of weight-1 generators.
int min_rank(const PcGroup& g) {
  int d = 0;
  while (d < g.n && g.weight[d] == 1) ++d;
  return d;
}

std::string expvec_key(const ExpVec& v) {
  return std::string(v.begin(), v.end());
}

std::string images_key(const std::vector<ExpVec>& img) {
  std::string key;
  for (const ExpVec& v : img) key.append(v.begin(), v.end());
  return key;
}

unsigned __int128 pow128(int b, int e) {
  unsigned __int128 out = 1;
  for (int i = 0; i < e; ++i) out *= (unsigned)b;
  return out;
}

int inv_mod(int a, int p) {
  a %= p;
  assert(a > 0);
  int x = 1;
  while ((a * x) % p != 1) ++x;
  return x;
}

int primitive_root(int p) {
  assert(p > 2);
  for (int r = 2; r < p; ++r) {
    int x = r, k = 1;
    while (x != 1) {
      x = x * r % p;
      ++k;
    }
    if (k == p - 1) return r;
  }
  assert(false && "no primitive root modulo a prime");
  return 1;
}

}  // namespace

std::string decimal(unsigned __int128 x) {
  if (!x) return "0";
  std::string s;
  while (x) {
    s.push_back((char)('0' + (int)(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

AutMap identity_aut(const PcGroupPtr& g) {
  AutMap a;
  a.img.resize(g->n);
  for (int i = 0; i < g->n; ++i) a.img[i] = g->gen_vec(i);
  a.inv = a.img;
  return a;
}

bool is_identity_aut(const PcGroupPtr& g, const AutMap& a) {
  for (int i = 0; i < g->n; ++i)
    if (a.img[i] != g->gen_vec(i)) return false;
  return true;
}

ExpVec apply_aut(const PcGroupPtr& g, const AutMap& a, const ExpVec& v) {
  return map_through(g, a.img, v);
}

AutMap inverse_aut(AutMap a) {
  std::swap(a.img, a.inv);
  return a;
}

AutMap compose_aut(const PcGroupPtr& g, const AutMap& a, const AutMap& b) {
  AutMap out;
  out.img.resize(g->n);
  out.inv.resize(g->n);
  for (int i = 0; i < g->n; ++i) {
    out.img[i] = map_through(g, b.img, a.img[i]);
    out.inv[i] = map_through(g, a.inv, b.inv[i]);
  }
  return out;
}

ExpVec apply_word(const PcGroupPtr& dst, const std::vector<ExpVec>& img,
                  const Word& w) {
  ExpVec out = dst->identity_vec();
  for (const GenExp& ge : w) {
    assert(ge.gen < img.size());
    out = dst->mul(out, dst->pow(img[ge.gen], ge.exp));
  }
  return out;
}

std::vector<ExpVec> push_images(const PcGroupPtr& src, const PcGroupPtr& dst,
                                const std::vector<ExpVec>& min_images) {
  assert(src->prime == dst->prime);
  const int d = min_rank(*src);
  assert((int)min_images.size() == d);
  std::vector<ExpVec> out(min_images);
  out.resize(src->n);
  for (int m = d; m < src->n; ++m) {
    const GenDef& def = src->defs[m];
    Word w;
    ExpVec lead;
    switch (def.kind) {
      case DefKind::Power:
        w = src->power[def.a];
        lead = dst->pow(out[def.a], dst->prime);
        break;
      case DefKind::Comm:
        w = src->commutator_word(def.a, def.b);
        lead = dst->comm_of(out[def.a], out[def.b]);
        break;
      default:
        assert(false && "generator above weight 1 without a relation definition");
    }
    assert(!w.empty() && (int)w.back().gen == m && w.back().exp == 1);
    w.pop_back();
    out[m] = dst->mul(dst->inv(apply_word(dst, out, w)), lead);
  }
  return out;
}

std::vector<ExpVec> complete_images(const PcGroupPtr& g,
                                    const std::vector<ExpVec>& min_images) {
  return push_images(g, g, min_images);
}

bool is_automorphism(const PcGroupPtr& g, const std::vector<ExpVec>& img) {
  if ((int)img.size() != g->n) return false;
  for (int i = 0; i < g->n; ++i)
    if (g->pow(img[i], g->prime) != apply_word(g, img, g->power[i]))
      return false;
  for (int j = 1; j < g->n; ++j)
    for (int i = 0; i < j; ++i)
      if (g->comm_of(img[j], img[i]) !=
          apply_word(g, img, g->commutator_word(j, i)))
        return false;
  // surjectivity modulo the Frattini subgroup
  if (g->standard_form) {
    const int d = min_rank(*g);
    FpMat m(d);
    for (int i = 0; i < d; ++i)
      m[i] = std::vector<Exp>(img[i].begin(), img[i].begin() + d);
    return mat_rank(std::move(m), g->prime) == d;
  }
  Quotient fq = quotient(g, frattini_subgroup(g));
  FpMat m(g->n);
  for (int i = 0; i < g->n; ++i) m[i] = fq.project(img[i]);
  return mat_rank(std::move(m), g->prime) == fq.q->n;
}

// ---------------------------------------------------------------------------
// Lifting machinery.

namespace {

// The relation word defining a Power/Comm-defined generator, read in h.
const Word& def_word(const PcGroup& h, const GenDef& d) {
  assert(d.kind == DefKind::Power || d.kind == DefKind::Comm);
  static const Word kEmpty;
  if (d.kind == DefKind::Power) return h.power[d.a];
  return h.comm[d.a].empty() ? kEmpty : h.comm[d.a][d.b];
}

// Zero-pad images of the minimal generators into dst (a cover or the next
// truncation, sharing the generator prefix) and rebuild the defined ones.
std::vector<ExpVec> lift_base_images(const PcGroupPtr& dst, int d,
                                     const std::vector<ExpVec>& img) {
  std::vector<ExpVec> mi(d);
  for (int i = 0; i < d; ++i) mi[i] = zeropad(img[i], dst->n);
  return complete_images(dst, mi);
}

// One step of the series: everything needed to pass from the class-c
// truncation to the class-(c+1) truncation of S.
struct LiftStep {
  PcGroupPtr qc, qn;
  int d = 0;         // minimal generator count (constant along the series)
  int layer_lo = 0;  // first generator of the new layer in qn
  int s = 0;         // layer rank
  int T = 0;         // multiplicator rank of the cover of qc
  PCover cov;
  FpMat m0;  // reduced basis of the allowable kernel inside F_p^T
  std::string m0_key;
};

LiftStep make_step(const PcGroupPtr& S, int c) {
  LiftStep st;
  st.qc = truncate_to_class(S, c);
  st.qn = truncate_to_class(S, c + 1);
  st.d = min_rank(*st.qc);
  st.layer_lo = st.qc->n;
  st.s = st.qn->n - st.qc->n;
  assert(st.s >= 1);
  st.cov = p_cover(st.qc);
  st.T = st.cov.multiplicator.order_exp();
  const int bn = st.cov.base_n;
  // Eliminations only ever substitute a tail into a *different* relation's
  // word, so each surviving tail still closes its own defining relation with
  // exponent one and no other tail besides it.
  for (int t = 0; t < st.T; ++t) {
    const Word& w = def_word(*st.cov.cover, st.cov.cover->defs[bn + t]);
    int tail_letters = 0;
    for (const GenExp& ge : w)
      if ((int)ge.gen >= bn) {
        ++tail_letters;
        assert((int)ge.gen == bn + t && ge.exp == 1);
      }
    assert(tail_letters == 1);
  }
  // Projection of the multiplicator onto the new layer: evaluate each tail's
  // defining relation in qn, where it lands in the layer block.
  std::vector<ExpVec> id_imgs(st.qc->n);
  for (int i = 0; i < st.qc->n; ++i) id_imgs[i] = st.qn->gen_vec(i);
  FpMat phi(st.T);
  for (int t = 0; t < st.T; ++t) {
    const GenDef& def = st.cov.cover->defs[bn + t];
    ExpVec lhs = def.kind == DefKind::Power
                     ? st.qn->pow(id_imgs[def.a], st.qn->prime)
                     : st.qn->comm_of(id_imgs[def.a], id_imgs[def.b]);
    ExpVec val = st.qn->mul(
        st.qn->inv(apply_word(st.qn, id_imgs, def_word(*st.qc, def))), lhs);
    assert(PcGroup::first_nonzero(val) >= st.layer_lo);
    phi[t] = std::vector<Exp>(val.begin() + st.layer_lo, val.end());
  }
  assert(mat_rank(phi, S->prime) == st.s);
  st.m0 = left_nullspace(phi, st.T, st.s, S->prime);
  st.m0_key = space_key(st.m0);
  return st;
}

// Exact-inverse repair: a.img is exact, a.inv composes with it to a map that
// moves each minimal generator by a layer element only and fixes the layer,
// so one central derivation correction makes the pair mutually inverse.
void repair_inverse(const PcGroupPtr& q, int d, int layer_lo, AutMap& a) {
  std::vector<ExpVec> err(d);
  bool clean = true;
  for (int i = 0; i < d; ++i) {
    ExpVec through = map_through(q, a.inv, a.img[i]);
    err[i] = q->mul(q->inv(q->gen_vec(i)), through);
    if (PcGroup::last_nonzero(err[i]) >= 0) {
      assert(PcGroup::first_nonzero(err[i]) >= layer_lo);
      clean = false;
    }
  }
  if (clean) return;
  std::vector<ExpVec> mi(d);
  for (int i = 0; i < d; ++i) mi[i] = q->mul(q->gen_vec(i), q->inv(err[i]));
  std::vector<ExpVec> corr = complete_images(q, mi);
  for (ExpVec& v : a.inv) v = map_through(q, corr, v);
  for (int i = 0; i < d; ++i)
    assert(map_through(q, a.inv, a.img[i]) == q->gen_vec(i));
}

AutMap lift_aut(const LiftStep& st, const AutMap& a) {
  AutMap out;
  out.img = lift_base_images(st.qn, st.d, a.img);
  out.inv = lift_base_images(st.qn, st.d, a.inv);
  repair_inverse(st.qn, st.d, st.layer_lo, out);
  return out;
}

// The automorphism moving minimal generator i by the central element z (from
// the top layer) and fixing the others; defined generators do not move since
// such derivations vanish on the Frattini subgroup.
AutMap derivation_map(const PcGroupPtr& q, int d, int i, const ExpVec& z) {
  std::vector<ExpVec> mi(d), mj(d);
  for (int j = 0; j < d; ++j) mi[j] = mj[j] = q->gen_vec(j);
  mi[i] = q->mul(q->gen_vec(i), z);
  mj[i] = q->mul(q->gen_vec(i), q->inv(z));
  AutMap out{complete_images(q, mi), complete_images(q, mj)};
  assert(map_through(q, out.inv, out.img[i]) == q->gen_vec(i));
  return out;
}

struct SubspaceOrbit {
  std::vector<FpMat> pts;             // reduced bases, pts[0] = the base point
  std::map<std::string, int> ids;
  std::vector<AutMap> upath;          // automorphism carrying pts[0] to pts[k]
  std::vector<AutMap> stab;           // Schreier generators at the base point
};

SubspaceOrbit subspace_orbit(const PcGroupPtr& qc, const FpMat& base,
                             const std::vector<AutMap>& gens,
                             const std::vector<FpMat>& mats, int p,
                             long long cap) {
  assert(gens.size() == mats.size());
  SubspaceOrbit o;
  o.pts.push_back(rref(base, p));
  o.ids.emplace(space_key(o.pts[0]), 0);
  o.upath.push_back(identity_aut(qc));
  std::set<std::string> stab_seen;
  for (std::size_t at = 0; at < o.pts.size(); ++at) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      FpMat image = subspace_map(o.pts[at], mats[k], p);
      std::string key = space_key(image);
      auto it = o.ids.find(key);
      if (it == o.ids.end()) {
        if ((long long)o.pts.size() >= cap)
          throw BudgetExceeded("subspace orbit exceeded the node budget");
        o.ids.emplace(std::move(key), (int)o.pts.size());
        o.upath.push_back(compose_aut(qc, o.upath[at], gens[k]));
        o.pts.push_back(std::move(image));
      } else {
        AutMap s = compose_aut(qc, compose_aut(qc, o.upath[at], gens[k]),
                               inverse_aut(o.upath[it->second]));
        if (!is_identity_aut(qc, s) &&
            stab_seen.insert(images_key(s.img)).second)
          o.stab.push_back(std::move(s));
      }
    }
  }
  return o;
}

AutMap translate_aut(const PcGroupPtr& g, const PcGroupPtr& S,
                     const Standardized& sd, const AutMap& a) {
  AutMap out;
  out.img.resize(g->n);
  out.inv.resize(g->n);
  for (int i = 0; i < g->n; ++i) {
    out.img[i] = map_through(g, sd.rev, apply_aut(S, a, sd.fwd[i]));
    out.inv[i] = map_through(g, sd.rev, map_through(S, a.inv, sd.fwd[i]));
  }
  return out;
}

// Generators of the full linear group on the class-1 quotient: all
// transvections plus, for p > 2, one primitive scalar.
std::vector<AutMap> linear_group_gens(const PcGroupPtr& q1, int d, int p) {
  std::vector<AutMap> gens;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      AutMap t = identity_aut(q1);
      t.img[i] = q1->mul(q1->gen_vec(i), q1->gen_vec(j));
      t.inv[i] = q1->mul(q1->gen_vec(i), q1->gen_vec(j, p - 1));
      gens.push_back(std::move(t));
    }
  if (p > 2 && d >= 1) {
    int r = primitive_root(p);
    AutMap sc = identity_aut(q1);
    sc.img[0] = q1->gen_vec(0, r);
    sc.inv[0] = q1->gen_vec(0, inv_mod(r, p));
    gens.push_back(std::move(sc));
  }
  return gens;
}

}  // namespace

FpMat multiplicator_action(const PCover& cov, const std::vector<ExpVec>& img) {
  const int d = min_rank(*cov.base);
  const int bn = cov.base_n;
  const int T = cov.cover->n - bn;
  std::vector<ExpVec> lifted = lift_base_images(cov.cover, d, img);
  FpMat rows(T);
  for (int t = 0; t < T; ++t) {
    const ExpVec& v = lifted[bn + t];
    assert(PcGroup::first_nonzero(v) >= bn);
    rows[t] = std::vector<Exp>(v.begin() + bn, v.end());
  }
  return rows;
}

AutGroup aut_group(const PcGroupPtr& g, const AutOptions& opt) {
  const int p = g->prime;
  Standardized sd;
  PcGroupPtr S = g;
  bool translated = false;
  if (!g->standard_form) {
    sd = standardize(g);
    S = sd.g;
    translated = true;
  }
  const int d = min_rank(*S);
  const int cl = S->n ? S->weight[S->n - 1] : 0;

  std::vector<AutMap> gens;
  unsigned __int128 order = 1;
  PcGroupPtr qc = S;
  if (cl >= 1) {
    qc = truncate_to_class(S, 1);
    gens = linear_group_gens(qc, d, p);
    for (int i = 0; i < d; ++i) order *= pow128(p, d) - pow128(p, i);
  }
  for (int c = 1; c < cl; ++c) {
    LiftStep st = make_step(S, c);
    assert(st.d == d);
    std::vector<FpMat> mats;
    mats.reserve(gens.size());
    for (const AutMap& a : gens)
      mats.push_back(multiplicator_action(st.cov, a.img));
    SubspaceOrbit orb =
        subspace_orbit(qc, st.m0, gens, mats, p, opt.max_orbit);
    assert(order % (unsigned __int128)orb.pts.size() == 0);
    order /= (unsigned __int128)orb.pts.size();
    order *= pow128(p, d * st.s);
    std::vector<AutMap> next;
    next.reserve(orb.stab.size() + (std::size_t)d * st.s);
    for (const AutMap& sg : orb.stab) {
      AutMap lifted = lift_aut(st, sg);
      assert(is_automorphism(st.qn, lifted.img));
      next.push_back(std::move(lifted));
    }
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < st.s; ++l)
        next.push_back(
            derivation_map(st.qn, d, i, st.qn->gen_vec(st.layer_lo + l)));
    gens = std::move(next);
    qc = st.qn;
  }
  assert(qc->n == S->n);

  AutGroup out;
  out.group = g;
  out.order = order;
  out.generators.reserve(gens.size());
  for (const AutMap& a : gens)
    out.generators.push_back(translated ? translate_aut(g, S, sd, a) : a);
  Quotient fq = quotient(g, frattini_subgroup(g));
  for (const AutMap& a : out.generators) {
    assert(is_automorphism(g, a.img));
    FpMat m(fq.q->n);
    for (int r = 0; r < fq.q->n; ++r)
      m[r] = fq.project(apply_aut(g, a, fq.lift(fq.q->gen_vec(r))));
    out.abelianization_action.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The sigma test.

namespace {

// Decide via the assembled automorphism group: close its induced action on
// G/G' and look for the inversion action (and, for the order-two variant,
// walk the automorphisms themselves).
bool gi_full_style(const PcGroupPtr& g, AutMap* witness,
                   const SigmaOptions& opt) {
  AutGroup aut = aut_group(g, opt.aut);
  Quotient ab = quotient(g, derived_subgroup(whole_group(g)));
  const int k = ab.q->n;
  auto action_key = [&](const AutMap& m) {
    std::string key;
    for (int j = 0; j < k; ++j) {
      ExpVec im = ab.project(apply_aut(g, m, ab.lift(ab.q->gen_vec(j))));
      key.append(im.begin(), im.end());
    }
    return key;
  };
  std::string target;
  for (int j = 0; j < k; ++j) {
    ExpVec im = ab.q->inv(ab.q->gen_vec(j));
    target.append(im.begin(), im.end());
  }
  std::vector<AutMap> pool{identity_aut(g)};
  std::map<std::string, int> seen;
  const bool by_action = !opt.require_order_two;
  auto state_key = [&](const AutMap& m) {
    return by_action ? action_key(m) : images_key(m.img);
  };
  seen.emplace(state_key(pool[0]), 0);
  for (std::size_t at = 0; at < pool.size(); ++at) {
    AutMap m = pool[at];  // by value: the pool may reallocate below
    if (action_key(m) == target &&
        (!opt.require_order_two ||
         is_identity_aut(g, compose_aut(g, m, m)))) {
      if (witness) *witness = std::move(m);
      return true;
    }
    for (const AutMap& gen : aut.generators) {
      AutMap next = compose_aut(g, m, gen);
      std::string key = state_key(next);
      if (seen.contains(key)) continue;
      if ((long long)pool.size() >= opt.aut.max_orbit)
        throw BudgetExceeded("automorphism closure exceeded the node budget");
      seen.emplace(std::move(key), (int)pool.size());
      pool.push_back(std::move(next));
    }
  }
  return false;
}

}  // namespace

bool gi_witness(const PcGroupPtr& g, AutMap* witness,
                const SigmaOptions& opt) {
  if (g->is_abelian()) {
    // Inversion itself is an automorphism, and it squares to the identity.
    if (witness) {
      AutMap w;
      w.img.resize(g->n);
      for (int i = 0; i < g->n; ++i) w.img[i] = g->inv(g->gen_vec(i));
      w.inv = w.img;
      *witness = w;
    }
    return true;
  }
  if (opt.full_aut_style) return gi_full_style(g, witness, opt);

  const int p = g->prime;
  Standardized sd;
  PcGroupPtr S = g;
  bool translated = false;
  if (!g->standard_form) {
    sd = standardize(g);
    S = sd.g;
    translated = true;
  }
  const int d = min_rank(*S);
  const int cl = S->weight[S->n - 1];
  assert(cl >= 2);

  // The automorphisms of the class-c truncation inverting its abelianization
  // form a coset w * IA of the subgroup IA acting trivially on it; the coset
  // is tracked by the witness w and generators of IA.  On the class-1
  // quotient the witness is inversion and IA is trivial.
  PcGroupPtr qc = truncate_to_class(S, 1);
  AutMap w;
  w.img.resize(d);
  for (int i = 0; i < d; ++i) w.img[i] = qc->gen_vec(i, p - 1);
  w.inv = w.img;
  std::vector<AutMap> ia;

  for (int c = 1; c < cl; ++c) {
    LiftStep st = make_step(S, c);
    std::vector<FpMat> mats;
    mats.reserve(ia.size());
    for (const AutMap& a : ia)
      mats.push_back(multiplicator_action(st.cov, a.img));
    SubspaceOrbit orb =
        subspace_orbit(qc, st.m0, ia, mats, p, opt.aut.max_orbit);
    // Some member w*h of the coset lifts iff some IA element carries the
    // witness image of the kernel subspace back onto it.
    FpMat wmat = multiplicator_action(st.cov, w.img);
    auto hit = orb.ids.find(space_key(subspace_map(st.m0, wmat, p)));
    if (hit == orb.ids.end()) return false;
    AutMap cand = compose_aut(qc, w, inverse_aut(orb.upath[hit->second]));
    AutMap wl = lift_aut(st, cand);

    Quotient ab = quotient(st.qn, derived_subgroup(whole_group(st.qn)));
    // Enumerate the layer once: representatives of its image in G/G' (for
    // derivation corrections) and a basis of its kernel part (the IA
    // derivations).
    long long total = 1;
    for (int l = 0; l < st.s; ++l) {
      total *= p;
      if (total > opt.aut.max_orbit)
        throw BudgetExceeded("layer enumeration exceeded the node budget");
    }
    std::map<std::string, ExpVec> rep;
    FpMat ker_rows;
    ExpVec z = st.qn->identity_vec();
    while (true) {
      ExpVec pr = ab.project(z);
      rep.emplace(expvec_key(pr), z);
      if (PcGroup::last_nonzero(pr) < 0 && PcGroup::last_nonzero(z) >= 0)
        ker_rows.push_back(
            std::vector<Exp>(z.begin() + st.layer_lo, z.end()));
      int l = 0;
      while (l < st.s && z[st.layer_lo + l] == p - 1) z[st.layer_lo + l++] = 0;
      if (l == st.s) break;
      ++z[st.layer_lo + l];
    }
    ker_rows = rref(std::move(ker_rows), p);

    // A lift is inversion (resp. trivial) on the new abelianization only up
    // to layer images; one derivation correction per minimal generator makes
    // it exact, and the needed layer element always exists because the
    // defect vanishes after factoring out the layer.
    auto fix_on_ab = [&](AutMap& m, bool invert) {
      std::vector<ExpVec> mi(d);
      bool changed = false;
      for (int i = 0; i < d; ++i) {
        ExpVec have = ab.project(m.img[i]);
        ExpVec base = ab.project(st.qn->gen_vec(i));
        ExpVec want = invert ? ab.q->inv(base) : base;
        ExpVec need = ab.q->mul(ab.q->inv(have), want);
        auto it = rep.find(expvec_key(need));
        if (it == rep.end())
          throw IntegrityError("abelianization defect misses the layer image");
        mi[i] = st.qn->mul(m.img[i], it->second);
        if (PcGroup::last_nonzero(it->second) >= 0) changed = true;
      }
      if (!changed) return;
      std::vector<ExpVec> guess = std::move(m.inv);
      m.img = complete_images(st.qn, mi);
      m.inv = std::move(guess);
      repair_inverse(st.qn, d, st.layer_lo, m);
    };

    fix_on_ab(wl, true);
    assert(is_automorphism(st.qn, wl.img));
    std::vector<AutMap> next;
    for (const AutMap& sg : orb.stab) {
      AutMap lifted = lift_aut(st, sg);
      fix_on_ab(lifted, false);
      next.push_back(std::move(lifted));
    }
    for (int i = 0; i < d; ++i)
      for (const std::vector<Exp>& row : ker_rows) {
        ExpVec zk = st.qn->identity_vec();
        std::copy(row.begin(), row.end(), zk.begin() + st.layer_lo);
        next.push_back(derivation_map(st.qn, d, i, zk));
      }
    w = std::move(wl);
    ia = std::move(next);
    qc = st.qn;
  }
  assert(qc->n == S->n);

  if (opt.require_order_two) {
    // Walk the IA subgroup: the inversion-inducing maps are exactly w * IA,
    // and we need one of them to be an involution.
    std::vector<AutMap> pool{identity_aut(qc)};
    std::set<std::string> seen{images_key(pool[0].img)};
    bool found = false;
    for (std::size_t at = 0; at < pool.size() && !found; ++at) {
      AutMap t = compose_aut(qc, w, pool[at]);
      if (is_identity_aut(qc, compose_aut(qc, t, t))) {
        w = std::move(t);
        found = true;
        break;
      }
      for (const AutMap& gen : ia) {
        AutMap next = compose_aut(qc, pool[at], gen);
        if (!seen.insert(images_key(next.img)).second) continue;
        if ((long long)pool.size() >= opt.aut.max_orbit)
          throw BudgetExceeded("involution search exceeded the node budget");
        pool.push_back(std::move(next));
      }
    }
    if (!found) return false;
  }

  if (witness) *witness = translated ? translate_aut(g, S, sd, w) : w;
  return true;
}

bool has_gi_automorphism(const PcGroupPtr& g, const SigmaOptions& opt) {
  return gi_witness(g, nullptr, opt);
}

bool is_schur(const PcGroupPtr& g) {
  PcGroupPtr s = standard_copy(g);
  return min_rank(*s) == relation_rank(s);
}

bool is_schur_sigma(const PcGroupPtr& g, const SigmaOptions& opt) {
  return is_schur(g) && has_gi_automorphism(g, opt);
}

}  // namespace sigma3
