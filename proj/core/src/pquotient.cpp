// Class-by-class quotient engine: tail extensions, overlap consistency,
// relator imposition, p-covers, and standardization.
#include "sigma3/pquotient.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "sigma3/series.hpp"

namespace sigma3 {

namespace {

int invmod(int a, int p) {
  int r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

ExpVec zeropad(const ExpVec& v, int n) {
  assert((int)v.size() <= n);
  ExpVec out(n, 0);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// normal-form word -> dense vector
ExpVec word_vec(const Word& w, int n) {
  ExpVec v(n, 0);
  int prev = -1;
  for (const GenExp& ge : w) {
    assert((int)ge.gen > prev && (int)ge.gen < n);
    prev = ge.gen;
    v[ge.gen] = ge.exp;
  }
  return v;
}

int max_weight(const PcGroup& g) {
  int w = 0;
  for (int x : g.weight) w = std::max(w, x);
  return w;
}

}  // namespace

TailExtension make_tail_extension(const PcGroupPtr& basep, int fp_ngens,
                                  const std::vector<ExpVec>& fp_images,
                                  bool with_image_tails) {
  assert(basep && basep->standard_form);
  const PcGroup& b = *basep;
  const int N = b.n;
  const int tail_weight = (N ? max_weight(b) : 0) + 1;

  // Relations that define a generator are exact and never receive a tail.
  std::vector<char> pow_defined(N, 0);
  std::vector<std::vector<char>> comm_defined(N);
  std::vector<char> img_defined(with_image_tails ? fp_ngens : 0, 0);
  for (int m = 0; m < N; ++m) {
    const GenDef& d = b.defs[m];
    if (d.kind == DefKind::Image) {
      if (with_image_tails) {
        assert((int)d.a < fp_ngens);
        img_defined[d.a] = 1;
      }
    } else if (d.kind == DefKind::Power) {
      pow_defined[d.a] = 1;
    } else if (d.kind == DefKind::Comm) {
      if (comm_defined[d.a].empty()) comm_defined[d.a].assign(d.a, 0);
      comm_defined[d.a][d.b] = 1;
    }
  }

  std::vector<GenDef> taildefs;
  std::vector<int> pow_tail(N, -1);
  for (int i = 0; i < N; ++i)
    if (!pow_defined[i]) {
      pow_tail[i] = N + (int)taildefs.size();
      GenDef d;
      d.kind = DefKind::Power;
      d.a = (std::uint16_t)i;
      taildefs.push_back(d);
    }
  std::vector<std::vector<int>> comm_tail(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      if (!comm_defined[j].empty() && comm_defined[j][i]) continue;
      if (comm_tail[j].empty()) comm_tail[j].assign(j, -1);
      comm_tail[j][i] = N + (int)taildefs.size();
      GenDef d;
      d.kind = DefKind::Comm;
      d.a = (std::uint16_t)j;
      d.b = (std::uint16_t)i;
      taildefs.push_back(d);
    }
  /* Image tails sit above every relation tail on purpose: elimination always
     removes the highest generator on a row, so when a relator ties an image
     tail to a relation tail, the relation tail survives and becomes the
     definition.  A presentation generator without an Image definition had its
     class-1 image pinned by some relator row; the same relators reproduce
     those coefficients on the image-tail block at every later class (tails
     are central), so image tails above class 1 are always eliminated and
     Image definitions only ever occur at weight 1. */
  std::vector<int> image_tail(with_image_tails ? fp_ngens : 0, -1);
  if (with_image_tails) {
    assert((int)fp_images.size() == fp_ngens);
    for (int j = 0; j < fp_ngens; ++j)
      if (!img_defined[j]) {
        image_tail[j] = N + (int)taildefs.size();
        GenDef d;
        d.kind = DefKind::Image;
        d.a = (std::uint16_t)j;
        d.base = PcGroup::to_word(fp_images[j]);
        taildefs.push_back(std::move(d));
      }
  }

  const int T = (int)taildefs.size();
  auto ep = std::make_shared<PcGroup>(b.prime, N + T);
  PcGroup& e = *ep;
  for (int i = 0; i < N; ++i) {
    e.weight[i] = b.weight[i];
    e.defs[i] = b.defs[i];
  }
  for (int t = 0; t < T; ++t) {
    e.weight[N + t] = tail_weight;
    e.defs[N + t] = taildefs[t];
  }
  e.fp_ngens = with_image_tails ? fp_ngens : b.fp_ngens;
  e.standard_form = false;

  for (int i = 0; i < N; ++i) {
    ExpVec v = b.identity_vec();
    b.mul_in_place(v, b.power[i]);
    ExpVec w = zeropad(v, N + T);
    if (pow_tail[i] >= 0) w[pow_tail[i]] = 1;
    e.power[i] = PcGroup::to_word(w);
  }
  for (int j = 1; j < N; ++j)
    for (int i = 0; i < j; ++i) {
      const Word& cw = b.commutator_word(j, i);
      int tl = comm_tail[j].empty() ? -1 : comm_tail[j][i];
      if (cw.empty() && tl < 0) continue;
      ExpVec v = b.identity_vec();
      b.mul_in_place(v, cw);
      ExpVec w = zeropad(v, N + T);
      if (tl >= 0) w[tl] = 1;
      e.set_commutator_word(j, i, PcGroup::to_word(w));
    }

  TailExtension te;
  te.base = basep;
  te.ext = ep;
  te.base_n = N;
  te.image_tail = std::move(image_tail);
  return te;
}

std::vector<ExpVec> consistency_rows(const TailExtension& te) {
  const PcGroup& e = *te.ext;
  const int N = te.base_n;
  const int p = e.prime;
  std::vector<ExpVec> rows;
  auto add = [&](const ExpVec& z1, const ExpVec& z2) {
    ExpVec r(e.n, 0);
    bool nz = false;
    for (int t = 0; t < e.n; ++t) {
      int d = ((int)z1[t] - (int)z2[t] + p) % p;
      // the tails are central, so both collections agree on the base block
      assert(t >= N || d == 0);
      r[t] = (Exp)d;
      nz |= d != 0;
    }
    if (nz) rows.push_back(std::move(r));
  };

  std::vector<ExpVec> gen(N), pw(N);
  for (int i = 0; i < N; ++i) {
    gen[i] = e.gen_vec(i);
    pw[i] = e.pow(gen[i], p);
  }
  for (int i = 0; i < N; ++i)
    add(e.mul(pw[i], gen[i]), e.mul(gen[i], pw[i]));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      ExpVec ji = e.mul(gen[j], gen[i]);
      add(e.mul(pw[j], gen[i]), e.mul(e.pow(gen[j], p - 1), ji));
      add(e.mul(gen[j], pw[i]), e.mul(ji, e.pow(gen[i], p - 1)));
      for (int k = j + 1; k < N; ++k)
        add(e.mul(e.mul(gen[k], gen[j]), gen[i]), e.mul(gen[k], ji));
    }
  return rows;
}

ExpVec CentralQuotient::map_vec(const ExpVec& v) const {
  assert((int)v.size() == src->n);
  const int p = q->prime;
  ExpVec out(q->n, 0);
  for (int i = 0; i < src->n; ++i) {
    int m = v[i];
    if (!m) continue;
    if (new_index[i] >= 0) {
      out[new_index[i]] = (Exp)((out[new_index[i]] + m) % p);
    } else {
      const std::vector<Exp>& red = elim[i];
      for (std::size_t s = 0; s < red.size(); ++s)
        if (red[s])
          out[base_n + s] = (Exp)((out[base_n + s] + m * red[s]) % p);
    }
  }
  return out;
}

CentralQuotient central_quotient(const PcGroupPtr& srcp, int base_n,
                                 const std::vector<ExpVec>& rows,
                                 bool mark_standard) {
  const PcGroup& e = *srcp;
  const int p = e.prime, n = e.n, T = n - base_n;
  assert(T >= 0);

  // Echelonize the rows over the tail block, pivots at the highest index,
  // iterating pivots descending so one reduction pass suffices.
  std::map<int, std::vector<int>, std::greater<int>> ech;
  for (const ExpVec& r0 : rows) {
    assert((int)r0.size() == n);
    std::vector<int> r(T);
    for (int t = 0; t < T; ++t) r[t] = r0[base_n + t] % p;
    for (int t = 0; t < base_n; ++t) assert(r0[t] == 0);
    for (auto& [piv, row] : ech) {
      int c = r[piv];
      if (!c) continue;
      for (int t = 0; t <= piv; ++t) r[t] = (r[t] + (p - c) * row[t]) % p;
    }
    int piv = -1;
    for (int t = T - 1; t >= 0; --t)
      if (r[t]) {
        piv = t;
        break;
      }
    if (piv < 0) continue;
    int iv = invmod(r[piv], p);
    for (int t = 0; t <= piv; ++t) r[t] = r[t] * iv % p;
    ech.emplace(piv, std::move(r));
  }
  // Back-substitute ascending so each pivot column is zero in every other row.
  for (auto it = ech.rbegin(); it != ech.rend(); ++it) {
    int piv = it->first;
    for (auto& [piv2, row2] : ech) {
      if (piv2 == piv || !row2[piv]) continue;
      int c = row2[piv];
      for (int t = 0; t <= piv; ++t)
        row2[t] = (row2[t] + (p - c) * it->second[t]) % p;
    }
  }

  CentralQuotient cq;
  cq.src = srcp;
  cq.base_n = base_n;
  cq.new_index.assign(n, -1);
  for (int i = 0; i < base_n; ++i) cq.new_index[i] = i;
  int nn = base_n;
  for (int t = 0; t < T; ++t)
    if (!ech.count(t)) cq.new_index[base_n + t] = nn++;
  const int S = nn - base_n;
  cq.elim.assign(n, {});
  for (const auto& [piv, row] : ech) {
    std::vector<Exp> red(S, 0);
    for (int t = 0; t < piv; ++t)
      if (row[t]) {
        int ni = cq.new_index[base_n + t];
        assert(ni >= 0);  // after back-substitution only survivors remain
        red[ni - base_n] = (Exp)((p - row[t]) % p);
      }
    cq.elim[base_n + piv] = std::move(red);
  }

  auto qp = std::make_shared<PcGroup>(p, nn);
  PcGroup& q = *qp;
  for (int i = 0; i < n; ++i) {
    int m = cq.new_index[i];
    if (m < 0) continue;
    q.weight[m] = e.weight[i];
    q.defs[m] = e.defs[i];
  }
  q.fp_ngens = e.fp_ngens;
  q.standard_form = mark_standard;
  cq.q = qp;  // map_vec usable from here on

  for (int i = 0; i < base_n; ++i)
    q.power[i] = PcGroup::to_word(cq.map_vec(word_vec(e.power[i], n)));
  for (int j = 1; j < base_n; ++j)
    for (int i = 0; i < j; ++i) {
      const Word& cw = e.commutator_word(j, i);
      if (cw.empty()) continue;
      Word w = PcGroup::to_word(cq.map_vec(word_vec(cw, n)));
      if (!w.empty()) q.set_commutator_word(j, i, std::move(w));
    }
  return cq;
}

PqResult p_quotient(const FpInstance& inst, int class_bound) {
  const FpTemplate& tpl = *inst.tpl;
  if (class_bound < 1) throw UsageError("class bound must be at least 1");
  const int r = (int)tpl.gens.size();
  PcGroupPtr g = PcGroup::trivial(tpl.prime);
  std::vector<ExpVec> images(r);
  int reached = 0;

  for (int c = 0; c < class_bound; ++c) {
    TailExtension te = make_tail_extension(g, r, images, true);
    if (te.ext->n == g->n) break;  // nothing left that could grow
    CentralQuotient star =
        central_quotient(te.ext, g->n, consistency_rows(te), false);

    std::vector<ExpVec> simg(r);
    for (int j = 0; j < r; ++j) {
      ExpVec v = zeropad(images[j], te.ext->n);
      if (te.image_tail[j] >= 0) {
        // image tails occur in no relation, hence in no consistency row
        assert(star.new_index[te.image_tail[j]] >= 0);
        v[te.image_tail[j]] = 1;
      }
      simg[j] = star.map_vec(v);
    }

    std::vector<ExpVec> rrows;
    for (const FpRel& rel : tpl.rels) {
      ExpVec val = eval_relator(rel, inst, star.q, simg);
      // the previous quotient already satisfies every relator
      for (int t = 0; t < g->n; ++t) assert(val[t] == 0);
      rrows.push_back(std::move(val));
    }
    CentralQuotient fin = central_quotient(star.q, g->n, rrows, true);
    if (fin.q->n == g->n) break;  // stabilized: the class-c quotient is maximal
    for (int j = 0; j < r; ++j) images[j] = fin.map_vec(simg[j]);
    g = fin.q;
    reached = c + 1;
  }
  return {g, images, reached};
}

ExpVec map_through(const PcGroupPtr& dst, const std::vector<ExpVec>& images,
                   const ExpVec& v) {
  ExpVec out = dst->identity_vec();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    assert(i < images.size());
    out = dst->mul(out, dst->pow(images[i], v[i]));
  }
  return out;
}

FpTemplatePtr presentation_template(const PcGroupPtr& gp) {
  const PcGroup& g = *gp;
  auto t = std::make_shared<FpTemplate>();
  t->name = "pc";
  t->prime = g.prime;
  t->class_bound.c0 = std::max(1, cl_p(gp));
  auto name_ast = [](const std::string& s) {
    auto w = std::make_shared<WordAst>();
    w->kind = WordAst::Kind::Name;
    w->name = s;
    return WordPtr(w);
  };
  auto one_ast = [] {
    return WordPtr(std::make_shared<WordAst>());
  };
  std::vector<WordPtr> gens(g.n);
  for (int i = 0; i < g.n; ++i) {
    t->gens.push_back("g" + std::to_string(i + 1));
    gens[i] = name_ast(t->gens.back());
  }
  auto pow_ast = [](WordPtr base, int k) {
    auto w = std::make_shared<WordAst>();
    w->kind = WordAst::Kind::Pow;
    w->a = std::move(base);
    w->exp.c0 = k;
    return WordPtr(w);
  };
  auto word_ast = [&](const Word& w) -> WordPtr {
    WordPtr acc;
    for (const GenExp& ge : w) {
      WordPtr f = gens[ge.gen];
      if (ge.exp != 1) f = pow_ast(f, ge.exp);
      if (!acc) {
        acc = f;
      } else {
        auto m = std::make_shared<WordAst>();
        m->kind = WordAst::Kind::Mul;
        m->a = acc;
        m->b = f;
        acc = m;
      }
    }
    return acc ? acc : one_ast();
  };
  for (int i = 0; i < g.n; ++i) {
    FpRel rel;
    rel.lhs = pow_ast(gens[i], g.prime);
    rel.rhs = word_ast(g.power[i]);
    t->rels.push_back(std::move(rel));
  }
  for (int j = 1; j < g.n; ++j)
    for (int i = 0; i < j; ++i) {
      auto c = std::make_shared<WordAst>();
      c->kind = WordAst::Kind::Comm;
      c->a = gens[j];
      c->b = gens[i];
      FpRel rel;
      rel.lhs = c;
      rel.rhs = word_ast(g.commutator_word(j, i));
      t->rels.push_back(std::move(rel));
    }
  return t;
}

Standardized standardize(const PcGroupPtr& gp) {
  const PcGroup& g = *gp;
  std::string why;
  if (!g.check_consistency(&why))
    throw IntegrityError("presentation is inconsistent: " + why);
  FpInstance inst = instantiate(presentation_template(gp));
  PqResult pq = p_quotient(inst, inst.class_bound);
  const PcGroupPtr h = pq.g;
  if (h->n != g.n)
    throw IntegrityError("standard form changed the order, from 3^" +
                         std::to_string(g.n) + " to 3^" + std::to_string(h->n));

  // Express each new generator in the original group, ascending (every
  // definition refers to strictly lower-numbered generators and to the
  // defining relation's own frozen word, whose extra letter is the defined
  // generator itself, last and with exponent one).
  std::vector<ExpVec> rev(h->n);
  auto eval_rev_word = [&](const Word& w, int upto) {
    ExpVec out = g.identity_vec();
    for (const GenExp& ge : w) {
      assert((int)ge.gen < upto);
      out = g.mul(out, g.pow(rev[ge.gen], ge.exp));
    }
    return out;
  };
  for (int m = 0; m < h->n; ++m) {
    const GenDef& d = h->defs[m];
    switch (d.kind) {
      case DefKind::Image: {
        ExpVec prior = eval_rev_word(d.base, m);
        rev[m] = g.mul(g.inv(prior), g.gen_vec(d.a));
        break;
      }
      case DefKind::Power: {
        Word w = h->power[d.a];
        assert(!w.empty() && (int)w.back().gen == m && w.back().exp == 1);
        w.pop_back();
        ExpVec prior = eval_rev_word(w, m);
        rev[m] = g.mul(g.inv(prior), g.pow(rev[d.a], g.prime));
        break;
      }
      case DefKind::Comm: {
        Word w = h->commutator_word(d.a, d.b);
        assert(!w.empty() && (int)w.back().gen == m && w.back().exp == 1);
        w.pop_back();
        ExpVec prior = eval_rev_word(w, m);
        rev[m] = g.mul(g.inv(prior), g.comm_of(rev[d.a], rev[d.b]));
        break;
      }
      default:
        assert(false && "standard form generator without definition");
    }
  }
  // fwd(rev) must fix every generator; with equal orders this makes both
  // directions isomorphisms.
  for (int m = 0; m < h->n; ++m)
    if (map_through(h, pq.images, rev[m]) != h->gen_vec(m))
      throw IntegrityError("standard form maps fail to invert each other");
  return {h, pq.images, rev};
}

PcGroupPtr standard_copy(const PcGroupPtr& g) {
  return g->standard_form ? g : standardize(g).g;
}

PcGroupPtr truncate_to_class(const PcGroupPtr& gp, int k) {
  const PcGroup& g = *gp;
  assert(g.standard_form && k >= 1);
  int nk = 0;
  for (int i = 0; i < g.n; ++i) {
    assert(i == 0 || g.weight[i] >= g.weight[i - 1]);
    if (g.weight[i] <= k) nk = i + 1;
  }
  if (nk == g.n) return gp;
  auto qp = std::make_shared<PcGroup>(g.prime, nk);
  PcGroup& q = *qp;
  auto cut = [&](const Word& w) {
    Word out;
    for (const GenExp& ge : w)
      if ((int)ge.gen < nk) out.push_back(ge);
    return out;
  };
  for (int i = 0; i < nk; ++i) {
    q.weight[i] = g.weight[i];
    q.defs[i] = g.defs[i];
    if (q.defs[i].kind == DefKind::Power || q.defs[i].kind == DefKind::Comm)
      assert((int)q.defs[i].a < nk && (int)q.defs[i].b < nk);
    q.power[i] = cut(g.power[i]);
  }
  for (int j = 1; j < nk; ++j)
    for (int i = 0; i < j; ++i) {
      Word w = cut(g.commutator_word(j, i));
      if (!w.empty()) q.set_commutator_word(j, i, std::move(w));
    }
  q.fp_ngens = g.fp_ngens;
  q.standard_form = true;
  return qp;
}

PCover p_cover(const PcGroupPtr& gp) {
  PcGroupPtr base = standard_copy(gp);
  TailExtension te = make_tail_extension(base, 0, {}, false);
  CentralQuotient star =
      central_quotient(te.ext, base->n, consistency_rows(te), false);
  PCover pc;
  pc.base = base;
  pc.cover = star.q;
  pc.base_n = base->n;
  std::vector<ExpVec> mg;
  for (int t = base->n; t < pc.cover->n; ++t)
    mg.push_back(pc.cover->gen_vec(t));
  pc.multiplicator = make_subgroup(pc.cover, mg, {});
  assert(pc.multiplicator.order_exp() == pc.cover->n - base->n);
  int c = base->n ? max_weight(*base) : 0;
  auto ser = lower_p_central_series(pc.cover);
  assert((int)ser.size() <= c + 1);
  pc.nucleus = (int)ser.size() == c + 1 && c >= 1 ? ser[c]
                                                  : trivial_subgroup(pc.cover);
  for (const ExpVec& v : pc.nucleus.igs)
    assert(contains(pc.multiplicator, v));
  return pc;
}

int relation_rank(const PcGroupPtr& g) {
  return p_cover(g).multiplicator.order_exp();
}

int nuclear_rank(const PcGroupPtr& g) { return p_cover(g).nucleus.order_exp(); }

bool is_capable(const PcGroupPtr& g) { return nuclear_rank(g) > 0; }

bool matches_presentation(const PcGroupPtr& g, const FpInstance& inst,
                          const std::vector<ExpVec>& images) {
  if ((int)images.size() != inst.ngens()) return false;
  for (const FpRel& rel : inst.tpl->rels) {
    ExpVec val = eval_relator(rel, inst, g, images);
    if (PcGroup::last_nonzero(val) >= 0) return false;
  }
  if (cl_p(g) > inst.class_bound) return false;
  // generation modulo the Frattini subgroup suffices in a p-group; the span
  // computed with ambient normalizers is the full subgroup generated since it
  // contains the Frattini subgroup already
  std::vector<ExpVec> gens = images;
  for (const ExpVec& v : frattini_subgroup(g).igs) gens.push_back(v);
  Subgroup s = make_subgroup(g, std::move(gens), ambient_gens(g));
  if (s.order_exp() != g->n) return false;
  PqResult pq = p_quotient(inst, inst.class_bound);
  return pq.g->n == g->n;
}

}  // namespace sigma3
