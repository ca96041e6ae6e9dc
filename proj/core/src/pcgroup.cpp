// Collection from the left for weighted polycyclic presentations.
#include "sigma3/pcgroup.hpp"

#include <cassert>

namespace sigma3 {

namespace {
constexpr long long kStepLimit = 200'000'000;  // guards inconsistent presentations
}

PcGroup::PcGroup(int p, int ngens) : prime(p), n(ngens) {
  assert(p >= 2 && ngens >= 0);
  power.resize(n);
  comm.resize(n);
  weight.assign(n, 1);
  defs.resize(n);
}

PcGroupPtr PcGroup::trivial(int p) {
  auto g = std::make_shared<PcGroup>(p, 0);
  g->standard_form = true;
  return g;
}

PcGroupPtr PcGroup::elementary_abelian(int p, int rank) {
  auto g = std::make_shared<PcGroup>(p, rank);
  for (int i = 0; i < rank; ++i) g->defs[i] = GenDef{DefKind::Image, (std::uint16_t)i, 0};
  g->standard_form = true;
  g->fp_ngens = rank;
  return g;
}

void PcGroup::set_commutator_word(int j, int i, Word w) {
  assert(j > i && j < n && i >= 0);
  if (comm[j].empty()) {
    if (w.empty()) return;        // keep the row sparse while it stays trivial
    comm[j].resize(j);
  }
  comm[j][i] = std::move(w);
}

int PcGroup::last_nonzero(const ExpVec& v) {
  for (int i = (int)v.size() - 1; i >= 0; --i)
    if (v[i]) return i;
  return -1;
}

int PcGroup::first_nonzero(const ExpVec& v) {
  for (int i = 0; i < (int)v.size(); ++i)
    if (v[i]) return i;
  return (int)v.size();
}

Word PcGroup::to_word(const ExpVec& v) {
  Word w;
  for (int i = 0; i < (int)v.size(); ++i)
    if (v[i]) w.push_back(GenExp{(std::uint16_t)i, v[i]});
  return w;
}

ExpVec PcGroup::gen_vec(int i, int e) const {
  assert(i >= 0 && i < n && e > 0 && e < prime);
  ExpVec v(n, 0);
  v[i] = (Exp)e;
  return v;
}

bool PcGroup::is_abelian() const {
  for (const auto& row : comm)
    for (const auto& w : row)
      if (!w.empty()) return false;
  return true;
}

// The work stack holds pending right factors; the top frame is the factor
// multiplied in next (i.e. the leftmost pending word).
struct PcGroup::Frame {
  Word w;
  std::size_t pos = 0;
  int rem = 0;
};

void PcGroup::mul_in_place(ExpVec& u, const Word& w0) const {
  if (w0.empty()) return;
  assert((int)u.size() == n);
  std::vector<Frame> st;
  auto push = [&st](Word w) {
    if (w.empty()) return;
    int r = w[0].exp;
    st.push_back(Frame{std::move(w), 0, r});
  };
  push(w0);
  long long steps = 0;

  while (!st.empty()) {
    int g;
    {
      Frame& f = st.back();
      if (f.pos >= f.w.size()) { st.pop_back(); continue; }
      g = f.w[f.pos].gen;
      if (--f.rem <= 0) {
        ++f.pos;
        if (f.pos < f.w.size()) f.rem = f.w[f.pos].exp;
      }
    }
    // Insert a single a_g into the collected prefix u.
    if (++steps > kStepLimit)
      throw IntegrityError("collection step limit exceeded (inconsistent presentation?)");
    assert(g >= 0 && g < n);

    int m = last_nonzero(u);
    // Highest occupied position above g whose generator does not commute with a_g.
    int kb = -1;
    for (int k = m; k > g; --k) {
      if (u[k] && !commutator_word(k, g).empty()) { kb = k; break; }
    }

    if (kb < 0) {
      // a_g commutes past everything above position g.
      if (u[g] + 1 < prime) { ++u[g]; continue; }
      u[g] = 0;
      Word tail;
      for (int k = g + 1; k <= m; ++k)
        if (u[k]) { tail.push_back(GenExp{(std::uint16_t)k, u[k]}); u[k] = 0; }
      // pending factors, left to right: (a_g^p value) then the old tail
      push(std::move(tail));
      push(power[g]);
      continue;
    }

    // Strip the commuting suffix above kb, then the block a_kb^v itself:
    //   u = A * a_kb^v * T,  u * a_g = A * a_g * (a_kb * [a_kb,a_g])^v * T.
    Word tail;
    for (int k = kb + 1; k <= m; ++k)
      if (u[k]) { tail.push_back(GenExp{(std::uint16_t)k, u[k]}); u[k] = 0; }
    int v = u[kb];
    u[kb] = 0;
    const Word& c = commutator_word(kb, g);
    Word cw;
    cw.reserve((std::size_t)v * (1 + c.size()));
    for (int t = 0; t < v; ++t) {
      cw.push_back(GenExp{(std::uint16_t)kb, 1});
      cw.insert(cw.end(), c.begin(), c.end());
    }
    push(std::move(tail));
    push(std::move(cw));
    push(Word{GenExp{(std::uint16_t)g, 1}});
  }
}

void PcGroup::mul_in_place(ExpVec& u, const ExpVec& v) const {
  mul_in_place(u, to_word(v));
}

ExpVec PcGroup::mul(const ExpVec& a, const ExpVec& b) const {
  ExpVec u = a;
  mul_in_place(u, to_word(b));
  return u;
}

ExpVec PcGroup::inv(const ExpVec& a) const {
  // Solve a * x = 1 position by position; multiplying by a_f^(p-c) clears
  // position f and only disturbs higher positions.
  ExpVec x(n, 0), v = a;
  for (int f = 0; f < n; ++f) {
    int c = v[f];
    if (!c) continue;
    Word corr{GenExp{(std::uint16_t)f, (Exp)(prime - c)}};
    mul_in_place(v, corr);
    mul_in_place(x, corr);
    assert(v[f] == 0);
  }
  assert(last_nonzero(v) == -1);
  return x;
}

ExpVec PcGroup::pow(const ExpVec& a, long long k) const {
  if (k < 0) return pow(inv(a), -k);
  ExpVec r(n, 0), b = a;
  while (k > 0) {
    if (k & 1) mul_in_place(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

ExpVec PcGroup::conj(const ExpVec& g, const ExpVec& h) const {
  ExpVec r = inv(h);
  mul_in_place(r, g);
  mul_in_place(r, h);
  return r;
}

ExpVec PcGroup::comm_of(const ExpVec& g, const ExpVec& h) const {
  ExpVec r = inv(g);
  mul_in_place(r, inv(h));
  mul_in_place(r, g);
  mul_in_place(r, h);
  return r;
}

long long PcGroup::element_order_vec(const ExpVec& g) const {
  long long ord = 1;
  ExpVec v = g;
  while (last_nonzero(v) >= 0) {
    v = pow(v, prime);
    ord *= prime;
    assert(ord < (1LL << 62));
  }
  return ord;
}

bool PcGroup::check_consistency(std::string* why) const {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::vector<ExpVec> gv(n), gp(n), gp1(n);
  for (int i = 0; i < n; ++i) {
    gv[i] = gen_vec(i);
    gp[i] = pow(gv[i], prime);
    gp1[i] = pow(gv[i], prime - 1);
  }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        if (mul(mul(gv[k], gv[j]), gv[i]) != mul(gv[k], mul(gv[j], gv[i])))
          return fail("associativity overlap failed at (" + std::to_string(k) + "," +
                      std::to_string(j) + "," + std::to_string(i) + ")");
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (mul(gp[j], gv[i]) != mul(gp1[j], mul(gv[j], gv[i])))
        return fail("power overlap a_j^p a_i failed at (" + std::to_string(j) + "," +
                    std::to_string(i) + ")");
      if (mul(gv[j], gp[i]) != mul(mul(gv[j], gv[i]), gp1[i]))
        return fail("power overlap a_j a_i^p failed at (" + std::to_string(j) + "," +
                    std::to_string(i) + ")");
    }
  for (int i = 0; i < n; ++i)
    if (mul(gp[i], gv[i]) != mul(gv[i], gp[i]))
      return fail("power overlap a_i^p a_i failed at " + std::to_string(i));
  return true;
}

Element PcGroup::identity() const {
  return Element{shared_from_this(), identity_vec()};
}

Element PcGroup::generator(int i) const {
  return Element{shared_from_this(), gen_vec(i)};
}

Element PcGroup::element(ExpVec v) const {
  assert((int)v.size() == n);
  return Element{shared_from_this(), std::move(v)};
}

Element multiply(const Element& g, const Element& h) {
  assert(g.group == h.group);
  return Element{g.group, g.group->mul(g.e, h.e)};
}

Element power(const Element& g, long long k) {
  return Element{g.group, g.group->pow(g.e, k)};
}

Element inverse(const Element& g) {
  return Element{g.group, g.group->inv(g.e)};
}

Element commutator(const Element& g, const Element& h) {
  assert(g.group == h.group);
  return Element{g.group, g.group->comm_of(g.e, h.e)};
}

Element conjugate(const Element& g, const Element& h) {
  assert(g.group == h.group);
  return Element{g.group, g.group->conj(g.e, h.e)};
}

long long element_order(const Element& g) {
  return g.group->element_order_vec(g.e);
}

}  // namespace sigma3
