// Punctured transfer kernel types: computation from the four Artin
// transfers, the 36-image equivalence, canonical forms, and the named-type
// table.
#include <algorithm>
#include <cassert>

#include "sigma3/invariants.hpp"

namespace sigma3 {

std::string PuncturedTkt::to_string() const {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    s += digits[i] < 0 ? std::string(".") : std::to_string(digits[i]);
    if (i == 2) s += ";";
  }
  return s + ")";
}

PuncturedTkt make_tkt(std::array<int, 4> digits) {
  for (int d : digits)
    if (d < -1 || d > 4)
      throw UsageError("transfer kernel digit out of range: " +
                       std::to_string(d));
  PuncturedTkt t;
  t.digits = digits;
  return t;
}

PuncturedTkt punctured_tkt(const PcGroupPtr& g) {
  CommQuotientFrame f = commutator_quotient_frame(g);
  PuncturedTkt t;
  for (int i = 0; i < 4; ++i) {
    ArtinTransfer v = artin_transfer(g, f.maximal[i]);
    Subgroup ker = transfer_kernel(v);
    t.kernels[i] = ker;
    if (ker.is_trivial()) {
      t.digits[i] = -1;  // out-of-band marker, surfaced by to_string
      continue;
    }
    if (same_subgroup(ker, f.socle)) {
      t.digits[i] = 0;
      continue;
    }
    int label = 0;
    for (int j = 0; j < 4; ++j)
      if (same_subgroup(ker, f.socle_u[j])) {
        label = j + 1;
        break;
      }
    if (!label)
      throw IntegrityError("unclassifiable transfer kernel at position " +
                           std::to_string(i + 1));
    t.digits[i] = label;
  }
  return t;
}

std::array<int, 4> tkt_canonical_digits(const std::array<int, 4>& digits) {
  static const int kPerm3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::array<int, 4> best = digits;
  bool first = true;
  for (const auto& pos : kPerm3)
    for (const auto& val : kPerm3) {
      std::array<int, 4> im;
      for (int i = 0; i < 3; ++i) im[i] = digits[pos[i]];
      im[3] = digits[3];
      for (int& d : im)
        if (d >= 1 && d <= 3) d = val[d - 1] + 1;
      if (first || im < best) best = im, first = false;
    }
  return best;
}

PuncturedTkt tkt_canonical(const PuncturedTkt& t) {
  PuncturedTkt out;
  out.digits = tkt_canonical_digits(t.digits);
  return out;
}

bool tkt_equivalent_digits(const std::array<int, 4>& a,
                           const std::array<int, 4>& b) {
  return tkt_canonical_digits(a) == tkt_canonical_digits(b);
}

bool tkt_equivalent(const PuncturedTkt& a, const PuncturedTkt& b) {
  return tkt_equivalent_digits(a.digits, b.digits);
}

std::string to_string(NamedType t) {
  switch (t) {
    case NamedType::a1: return "a.1";
    case NamedType::A1: return "A.1";
    case NamedType::b16: return "b.16";
    case NamedType::b31: return "b.31";
    case NamedType::B18: return "B.18";
    case NamedType::C4: return "C.4";
    case NamedType::D5: return "D.5";
    case NamedType::D6: return "D.6";
    case NamedType::D10: return "D.10";
    case NamedType::D11: return "D.11";
    case NamedType::unknown: return "unknown";
  }
  return "unknown";
}

NamedType classify_tkt_digits(const std::array<int, 4>& digits) {
  struct Row {
    std::array<int, 4> kappa;
    NamedType type;
  };
  static const Row kTable[] = {
      {{0, 0, 0, 0}, NamedType::a1},  {{1, 1, 1, 1}, NamedType::A1},
      {{0, 0, 4, 0}, NamedType::b16}, {{0, 4, 4, 4}, NamedType::b31},
      {{1, 4, 4, 4}, NamedType::B18}, {{1, 1, 3, 3}, NamedType::C4},
      {{1, 1, 2, 3}, NamedType::D5},  {{1, 2, 3, 1}, NamedType::D6},
      {{1, 1, 4, 3}, NamedType::D10}, {{1, 2, 4, 1}, NamedType::D11},
  };
  std::array<int, 4> c = tkt_canonical_digits(digits);
  for (const Row& r : kTable)
    if (tkt_canonical_digits(r.kappa) == c) return r.type;
  return NamedType::unknown;
}

NamedType classify_tkt(const PuncturedTkt& t) {
  return classify_tkt_digits(t.digits);
}

}  // namespace sigma3
