// Echelonized subgroup sequences: sifting, closure, canonical form, quotients.
#include "sigma3/subgroup.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace sigma3 {

namespace {

int inv_mod(int c, int p) {
  for (int d = 1; d < p; ++d)
    if (d * c % p == 1) return d;
  assert(false && "unit expected");
  return 0;
}

}  // namespace

std::vector<ExpVec> ambient_gens(const PcGroupPtr& g) {
  std::vector<ExpVec> out;
  out.reserve(g->n);
  for (int i = 0; i < g->n; ++i) out.push_back(g->gen_vec(i));
  return out;
}

ExpVec sift(const Subgroup& h, const ExpVec& v) {
  ExpVec r = v;
  for (const ExpVec& m : h.igs) {
    int l = PcGroup::first_nonzero(m);
    assert(l < h.g->n);
    int c = r[l];
    if (!c) continue;
    // left-multiplying by m^-c clears position l and touches only higher ones
    ExpVec w = h.g->pow(m, -(long long)c);
    h.g->mul_in_place(w, r);
    r = std::move(w);
    assert(r[l] == 0);
  }
  return r;
}

bool contains(const Subgroup& h, const ExpVec& v) {
  return PcGroup::last_nonzero(sift(h, v)) < 0;
}

std::vector<int> sift_coords(const Subgroup& h, const ExpVec& v) {
  std::vector<int> coords;
  coords.reserve(h.igs.size());
  ExpVec r = v;
  for (const ExpVec& m : h.igs) {
    int l = PcGroup::first_nonzero(m);
    int c = r[l];
    coords.push_back(c);
    if (!c) continue;
    ExpVec w = h.g->pow(m, -(long long)c);
    h.g->mul_in_place(w, r);
    r = std::move(w);
  }
  assert(PcGroup::last_nonzero(r) < 0);
  return coords;
}

Subgroup make_subgroup(const PcGroupPtr& g, std::vector<ExpVec> gens,
                       const std::vector<ExpVec>& normalizers) {
  Subgroup h{g, {}};
  std::deque<ExpVec> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    ExpVec v = std::move(queue.front());
    queue.pop_front();
    ExpVec r = sift(h, v);
    int l = PcGroup::first_nonzero(r);
    if (l >= g->n) continue;  // already in the span
    if ((int)r[l] != 1) r = g->pow(r, inv_mod(r[l], g->prime));
    assert(r[l] == 1);
    auto at = std::lower_bound(h.igs.begin(), h.igs.end(), l,
                               [](const ExpVec& m, int lead) {
                                 return PcGroup::first_nonzero(m) < lead;
                               });
    h.igs.insert(at, r);
    queue.push_back(g->pow(r, g->prime));
    for (const ExpVec& x : normalizers) queue.push_back(g->conj(r, x));
  }
  return h;
}

Subgroup whole_group(const PcGroupPtr& g) {
  Subgroup h{g, {}};
  for (int i = 0; i < g->n; ++i) h.igs.push_back(g->gen_vec(i));
  return h;
}

Subgroup trivial_subgroup(const PcGroupPtr& g) { return Subgroup{g, {}}; }

Subgroup normal_closure(const PcGroupPtr& g, std::vector<ExpVec> gens) {
  return make_subgroup(g, std::move(gens), ambient_gens(g));
}

bool is_normal_under(const Subgroup& h, const std::vector<ExpVec>& normalizers) {
  for (const ExpVec& m : h.igs)
    for (const ExpVec& x : normalizers)
      if (!contains(h, h.g->conj(m, x))) return false;
  return true;
}

void canonicalize_igs(Subgroup& h) {
  const auto& g = h.g;
  for (std::size_t i = 0; i < h.igs.size(); ++i) {
    // clear the other members' lead positions in ascending order; each step
    // disturbs only higher positions, so one pass settles
    for (std::size_t j = i + 1; j < h.igs.size(); ++j) {
      int l = PcGroup::first_nonzero(h.igs[j]);
      int c = h.igs[i][l];
      if (!c) continue;
      ExpVec w = g->pow(h.igs[j], -(long long)c);
      g->mul_in_place(h.igs[i], PcGroup::to_word(w));
      assert(h.igs[i][l] == 0);
    }
  }
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  if (a.igs.size() != b.igs.size()) return false;
  for (const ExpVec& m : a.igs)
    if (!contains(b, m)) return false;
  return true;
}

std::string subgroup_key(const Subgroup& h) {
  Subgroup c = h;
  canonicalize_igs(c);
  std::string key;
  for (const ExpVec& m : c.igs) key.append(m.begin(), m.end());
  return key;
}

Subgroup derived_subgroup(const Subgroup& h) {
  std::vector<ExpVec> gens;
  for (std::size_t j = 0; j < h.igs.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      gens.push_back(h.g->comm_of(h.igs[j], h.igs[i]));
  return make_subgroup(h.g, std::move(gens), h.igs);
}

std::vector<ExpVec> enumerate_subgroup(const Subgroup& h) {
  const auto& g = h.g;
  std::vector<ExpVec> out{g->identity_vec()};
  for (auto it = h.igs.rbegin(); it != h.igs.rend(); ++it) {
    std::vector<ExpVec> next;
    next.reserve(out.size() * g->prime);
    ExpVec pw = g->identity_vec();
    for (int e = 0; e < g->prime; ++e) {
      for (const ExpVec& v : out) next.push_back(g->mul(pw, v));
      if (e + 1 < g->prime) g->mul_in_place(pw, PcGroup::to_word(*it));
    }
    out = std::move(next);
  }
  return out;
}

ExpVec Quotient::project(const ExpVec& v) const {
  ExpVec r = sift(ker, v);
  ExpVec out(q->n, 0);
  for (int i = 0; i < q->n; ++i) out[i] = r[comp[i]];
  return out;
}

ExpVec Quotient::lift(const ExpVec& qv) const {
  ExpVec v = src->identity_vec();
  Word w;
  for (int i = 0; i < q->n; ++i)
    if (qv[i]) w.push_back(GenExp{(std::uint16_t)comp[i], qv[i]});
  src->mul_in_place(v, w);
  return v;
}

Quotient quotient(const PcGroupPtr& g, const Subgroup& n) {
  assert(n.g == g);
  assert(is_normal_under(n, ambient_gens(g)));
  Quotient out;
  out.src = g;
  out.ker = n;
  canonicalize_igs(out.ker);
  std::vector<bool> is_lead(g->n, false);
  for (const ExpVec& m : out.ker.igs) is_lead[PcGroup::first_nonzero(m)] = true;
  for (int i = 0; i < g->n; ++i)
    if (!is_lead[i]) out.comp.push_back(i);

  auto q = std::make_shared<PcGroup>(g->prime, (int)out.comp.size());
  for (int i = 0; i < q->n; ++i) q->weight[i] = g->weight[out.comp[i]];
  out.q = q;
  for (int i = 0; i < q->n; ++i) {
    ExpVec val = out.project(g->pow(g->gen_vec(out.comp[i]), g->prime));
    assert(PcGroup::first_nonzero(val) > i);
    q->power[i] = PcGroup::to_word(val);
  }
  for (int j = 1; j < q->n; ++j)
    for (int i = 0; i < j; ++i) {
      ExpVec val = out.project(
          g->comm_of(g->gen_vec(out.comp[j]), g->gen_vec(out.comp[i])));
      if (PcGroup::last_nonzero(val) >= 0) {
        assert(PcGroup::first_nonzero(val) > j);
        q->set_commutator_word(j, i, PcGroup::to_word(val));
      }
    }
  return out;
}

}  // namespace sigma3
