// Text form of pc presentations and the matching parser.
#include "sigma3/serialize.hpp"

#include <cassert>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace sigma3 {

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += 'a';
    out += std::to_string(w[i].gen + 1);
    if (w[i].exp != 1) {
      out += '^';
      out += std::to_string((int)w[i].exp);
    }
  }
  return out;
}

Word parse_word(const std::string& s, int ngens) {
  Word w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  if (i < s.size() && s[i] == '1') {
    ++i;
    skip_ws();
    if (i != s.size()) throw UsageError("trailing text after identity word: " + s);
    return w;
  }
  while (i < s.size()) {
    if (s[i] != 'a') throw UsageError("expected generator in word: " + s);
    ++i;
    std::size_t start = i;
    while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
    if (start == i) throw UsageError("missing generator index in word: " + s);
    int gen = std::stoi(s.substr(start, i - start));
    if (gen < 1 || gen > ngens) throw UsageError("generator index out of range: " + s);
    int exp = 1;
    skip_ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip_ws();
      start = i;
      while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
      if (start == i) throw UsageError("missing exponent in word: " + s);
      exp = std::stoi(s.substr(start, i - start));
    }
    if (exp < 1) throw UsageError("exponent must be positive: " + s);
    w.push_back(GenExp{(std::uint16_t)(gen - 1), (std::uint8_t)exp});
    skip_ws();
    if (i < s.size()) {
      if (s[i] != '*') throw UsageError("expected '*' between syllables: " + s);
      ++i;
      skip_ws();
    }
  }
  return w;
}

std::string print_pcgroup(const PcGroup& g) {
  std::ostringstream out;
  out << "pcgroup p=" << g.prime << " n=" << g.n << "\n";
  for (int i = 0; i < g.n; ++i)
    if (!g.power[i].empty())
      out << "a" << i + 1 << "^" << g.prime << " = " << word_to_string(g.power[i])
          << "\n";
  for (int j = 1; j < g.n; ++j)
    for (int i = 0; i < j; ++i) {
      const Word& w = g.commutator_word(j, i);
      if (!w.empty())
        out << "[a" << j + 1 << ",a" << i + 1 << "] = " << word_to_string(w) << "\n";
    }
  return out.str();
}

PcGroupPtr parse_pcgroup(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::shared_ptr<PcGroup> g;
  int lineno = 0;
  auto bad = [&](const std::string& why) -> UsageError {
    return UsageError("pcgroup line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.empty() || line[0] == '#') continue;
    if (!g) {
      int p = 0, n = -1;
      if (sscanf(line.c_str(), "pcgroup p=%d n=%d", &p, &n) != 2 || p < 2 || n < 0)
        throw bad("expected header 'pcgroup p=<prime> n=<count>'");
      g = std::make_shared<PcGroup>(p, n);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw bad("expected '=' in relation");
    std::string lhs = line.substr(0, eq);
    std::string rhs = line.substr(eq + 1);
    while (!lhs.empty() && (lhs.back() == ' ' || lhs.back() == '\t')) lhs.pop_back();
    Word w = parse_word(rhs, g->n);
    int j = 0, i = 0, p = 0;
    if (sscanf(lhs.c_str(), "[a%d,a%d]", &j, &i) == 2) {
      if (j < 1 || j > g->n || i < 1 || i >= j) throw bad("bad commutator generators");
      for (const GenExp& s : w)
        if (s.gen + 1 <= j) throw bad("commutator value must use higher generators");
      g->set_commutator_word(j - 1, i - 1, std::move(w));
    } else if (sscanf(lhs.c_str(), "a%d^%d", &i, &p) == 2) {
      if (p != g->prime) throw bad("power relation must use the group prime");
      if (i < 1 || i > g->n) throw bad("bad power generator");
      for (const GenExp& s : w)
        if (s.gen + 1 <= i) throw bad("power value must use higher generators");
      g->power[i - 1] = std::move(w);
    } else {
      throw bad("unrecognized relation '" + lhs + "'");
    }
  }
  if (!g) throw UsageError("pcgroup text is empty");
  return g;
}

}  // namespace sigma3
