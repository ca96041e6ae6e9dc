// First and second abelian quotient invariants and the rank distribution.
#include <algorithm>
#include <cassert>

#include "sigma3/invariants.hpp"

namespace sigma3 {

std::string Aqi1::to_string() const {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    s += entries[i].compact();
    if (i < 2) s += ",";
    if (i == 2) s += ";";
  }
  return s + ")";
}

std::string Aqi2::to_string() const {
  std::string s = "(" + top.compact() + "; ";
  for (int b = 0; b < 4; ++b) {
    const Block& blk = blocks[b];
    s += "[" + blk.self_type.compact() + "; ";
    // group equal consecutive types as type^count
    for (size_t i = 0; i < blk.sub_types.size();) {
      size_t j = i;
      while (j < blk.sub_types.size() && blk.sub_types[j] == blk.sub_types[i])
        ++j;
      if (i) s += ",";
      s += blk.sub_types[i].compact();
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    s += "]";
    if (b < 3) s += ", ";
  }
  return s + ")";
}

Aqi1 aqi1(const PcGroupPtr& g) {
  std::array<Subgroup, 4> hs = maximal_subgroups(g);
  Aqi1 out;
  for (int i = 0; i < 4; ++i) out.entries[i] = abelian_type(hs[i]);
  return out;
}

Aqi2 aqi2(const PcGroupPtr& g) {
  CommQuotientFrame f = commutator_quotient_frame(g);
  Aqi2 out;
  out.top = abelian_type(whole_group(g), f.ab.ker);
  for (int i = 0; i < 4; ++i) {
    Aqi2::Block& blk = out.blocks[i];
    blk.self_type = abelian_type(f.maximal[i]);
    for (const Subgroup& m : maximal_subgroups_of(f.maximal[i]))
      blk.sub_types.push_back(abelian_type(m));
    std::sort(blk.sub_types.rbegin(), blk.sub_types.rend());
  }
  return out;
}

std::array<int, 4> rank_distribution(const PcGroupPtr& g) {
  Aqi1 a = aqi1(g);
  std::array<int, 4> rho;
  for (int i = 0; i < 4; ++i) rho[i] = a.entries[i].rank();
  return rho;
}

std::string rho_string(const std::array<int, 4>& rho) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    s += std::to_string(rho[i]);
    if (i < 2) s += ",";
    if (i == 2) s += ";";
  }
  return s + ")";
}

}  // namespace sigma3
