// Polycyclic presentations of finite p-groups with prime relative orders,
// elements as dense exponent vectors, and collection from the left.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigma3 {

using Exp = std::uint8_t;          // exponent in [0, p)
using ExpVec = std::vector<Exp>;   // dense exponent vector, index 0 <-> first pc generator

struct GenExp {
  std::uint16_t gen;               // 0-based generator index
  std::uint8_t exp;                // exponent in [1, p)
  friend bool operator==(const GenExp&, const GenExp&) = default;
};
using Word = std::vector<GenExp>;  // sparse word; stored relation words are collected
                                   // normal forms (strictly ascending generator indices)

// How a pc generator came into being.  Generators of a group in standard form
// are either images of presentation generators (weight 1) or defined by a
// single power/commutator relation on earlier generators.
enum class DefKind : std::uint8_t { None, Image, Power, Comm };
struct GenDef {
  DefKind kind = DefKind::None;
  std::uint16_t a = 0;             // Image: presentation generator; Power: base generator
  std::uint16_t b = 0;             // Comm: [gen a, gen b] with a > b
  // Image definitions above weight 1 record the prior image word w, so that
  // the defined generator equals (current image) * w^-1.
  std::vector<GenExp> base;
  friend bool operator==(const GenDef&, const GenDef&) = default;
};

class PcGroup;
using PcGroupPtr = std::shared_ptr<const PcGroup>;

struct Element {
  PcGroupPtr group;
  ExpVec e;

  bool is_identity() const {
    for (Exp x : e) if (x) return false;
    return true;
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.e == b.e;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when a computation contradicts a structural guarantee (e.g. a family
// build whose order differs from the registered expectation).
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when a configured node/time budget is exhausted.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PcGroup : public std::enable_shared_from_this<PcGroup> {
public:
  int prime = 3;
  int n = 0;                       // number of pc generators

  // power[i]: collected word for a_i^p (support strictly above i); empty = identity.
  std::vector<Word> power;
  // comm[j][i] (i < j): collected word for [a_j, a_i] (support strictly above j);
  // comm[j] may be left empty entirely when a_j commutes with every earlier
  // generator (dense storage would be wasteful for large central blocks).
  std::vector<std::vector<Word>> comm;

  std::vector<int> weight;         // lower exponent-p central weight per generator
  std::vector<GenDef> defs;        // definitions (meaningful iff standard_form)
  bool standard_form = false;      // every generator is Image- or relation-defined
  int fp_ngens = 0;                // number of presentation generators when standard

  PcGroup() = default;
  PcGroup(int p, int ngens);

  static PcGroupPtr trivial(int p);
  static PcGroupPtr elementary_abelian(int p, int rank);

  const Word& commutator_word(int j, int i) const {   // [a_j, a_i], j > i
    static const Word kEmpty;
    if (comm[j].empty()) return kEmpty;
    return comm[j][i];
  }
  void set_commutator_word(int j, int i, Word w);

  // --- element arithmetic (collection from the left) ---
  void mul_in_place(ExpVec& u, const Word& w) const;      // u := u * w
  void mul_in_place(ExpVec& u, const ExpVec& v) const;    // u := u * v
  ExpVec mul(const ExpVec& a, const ExpVec& b) const;
  ExpVec inv(const ExpVec& a) const;
  ExpVec pow(const ExpVec& a, long long k) const;
  ExpVec conj(const ExpVec& g, const ExpVec& h) const;    // h^-1 g h
  ExpVec comm_of(const ExpVec& g, const ExpVec& h) const; // g^-1 h^-1 g h
  ExpVec identity_vec() const { return ExpVec(n, 0); }
  ExpVec gen_vec(int i, int e = 1) const;
  long long element_order_vec(const ExpVec& g) const;     // p-power order

  // highest / lowest index with nonzero exponent, or -1 / n when trivial
  static int last_nonzero(const ExpVec& v);
  static int first_nonzero(const ExpVec& v);

  static Word to_word(const ExpVec& v);                   // ascending syllables

  bool is_abelian() const;
  // Every overlap test word collects identically in both association orders.
  bool check_consistency(std::string* why = nullptr) const;

  // --- Element-level convenience API ---
  Element identity() const;
  Element generator(int i) const;
  Element element(ExpVec v) const;

private:
  struct Frame;  // collection work-stack frame
};

Element multiply(const Element& g, const Element& h);
Element power(const Element& g, long long k);
Element inverse(const Element& g);
Element commutator(const Element& g, const Element& h);
Element conjugate(const Element& g, const Element& h);
long long element_order(const Element& g);

}  // namespace sigma3
