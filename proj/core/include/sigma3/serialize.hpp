// Plain-text serialization of pc presentations:
//   pcgroup p=3 n=5
//   a1^3 = a4
//   [a2,a1] = a3
// Omitted relations have trivial right-hand side; printing then parsing
// reproduces the presentation exactly.
#pragma once

#include <string>

#include "sigma3/pcgroup.hpp"

namespace sigma3 {

std::string word_to_string(const Word& w);            // "a3^2*a5", identity "1"
Word parse_word(const std::string& s, int ngens);     // 1-based generator names

std::string print_pcgroup(const PcGroup& g);
PcGroupPtr parse_pcgroup(const std::string& text);

}  // namespace sigma3
