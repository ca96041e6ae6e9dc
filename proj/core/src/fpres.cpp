// Lexer, recursive-descent parser, printer, and evaluator for the
// parametrized presentation DSL.
#include "sigma3/fpres.hpp"

#include <cassert>
#include <cctype>
#include <set>
#include <sstream>

namespace sigma3 {

namespace {

struct Tok {
  enum Kind { Ident, Int, Sym, Newline, End };
  Kind kind = End;
  std::string s;
  long long v = 0;
  int line = 1, col = 1;
};

std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bad = [&](const std::string& m) -> UsageError {
    return UsageError(std::to_string(line) + ":" + std::to_string(col) + ": " + m);
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::Newline, "\n", 0, line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      int c0 = col;
      std::string s;
      while (i < src.size() &&
             (std::isalnum((unsigned char)src[i]) || src[i] == '_')) {
        s += src[i++];
        ++col;
      }
      out.push_back({Tok::Ident, s, 0, line, c0});
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      int c0 = col;
      long long v = 0;
      while (i < src.size() && std::isdigit((unsigned char)src[i])) {
        v = v * 10 + (src[i++] - '0');
        ++col;
        if (v > (1LL << 40)) throw bad("integer literal too large");
      }
      out.push_back({Tok::Int, "", v, line, c0});
      continue;
    }
    if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      out.push_back({Tok::Sym, "..", 0, line, col});
      i += 2;
      col += 2;
      continue;
    }
    if (std::string("{}()[],;=*^+-").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), 0, line, col});
      ++i;
      ++col;
      continue;
    }
    throw bad(std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

struct Parser {
  std::vector<Tok> toks;
  std::size_t pos = 0;

  const Tok& peek() const { return toks[pos]; }
  Tok take() { return toks[pos++]; }
  [[noreturn]] void fail(const Tok& t, const std::string& m) const {
    throw UsageError(std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + m);
  }
  bool is_sym(const char* s) const {
    return peek().kind == Tok::Sym && peek().s == s;
  }
  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(peek(), std::string("expected '") + s + "'");
    ++pos;
  }
  void skip_separators() {
    while (peek().kind == Tok::Newline || is_sym(";")) ++pos;
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) ++pos;
  }
  void end_statement() {
    if (peek().kind == Tok::Newline || is_sym(";")) {
      ++pos;
      return;
    }
    if (is_sym("}")) return;
    fail(peek(), "expected ';' or end of line after statement");
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
    return take().s;
  }
  long long expect_int(const char* what) {
    if (peek().kind != Tok::Int) fail(peek(), std::string("expected ") + what);
    return take().v;
  }

  // --- affine expressions in e, i, k ---
  void add_var(AffExpr& a, const Tok& t, const std::string& v, long long c,
               const std::set<char>& params) {
    if (v.size() != 1 || (v != "e" && v != "i" && v != "k"))
      fail(t, "exponent expressions may only use parameters e, i, k");
    if (!params.count(v[0]))
      fail(t, "parameter '" + v + "' is not declared in this group");
    if (v == "e") a.ce += c;
    if (v == "i") a.ci += c;
    if (v == "k") a.ck += c;
  }

  AffExpr parse_aff_term(const std::set<char>& params) {
    Tok t = peek();
    if (is_sym("(")) {
      ++pos;
      AffExpr inner = parse_aff(params);
      expect_sym(")");
      return inner;
    }
    AffExpr a;
    if (t.kind == Tok::Int) {
      long long v = take().v;
      if (is_sym("*")) {  // coefficient * parameter
        ++pos;
        Tok vt = peek();
        std::string name = expect_ident("parameter after '*'");
        add_var(a, vt, name, v, params);
      } else {
        a.c0 = v;
      }
      return a;
    }
    if (t.kind == Tok::Ident) {
      std::string name = take().s;
      add_var(a, t, name, 1, params);
      return a;
    }
    fail(t, "expected term in exponent expression");
  }

  AffExpr parse_aff(const std::set<char>& params) {
    AffExpr a;
    long long sign = 1;
    if (is_sym("-")) {
      ++pos;
      sign = -1;
    } else if (is_sym("+")) {
      ++pos;
    }
    while (true) {
      AffExpr t = parse_aff_term(params);
      a.c0 += sign * t.c0;
      a.ce += sign * t.ce;
      a.ci += sign * t.ci;
      a.ck += sign * t.ck;
      if (is_sym("+")) {
        ++pos;
        sign = 1;
      } else if (is_sym("-")) {
        ++pos;
        sign = -1;
      } else {
        break;
      }
    }
    return a;
  }

  // --- words ---
  WordPtr parse_primary(const std::set<std::string>& names,
                        const std::set<char>& params, int prime) {
    Tok t = peek();
    if (t.kind == Tok::Int && t.v == 1) {
      ++pos;
      auto w = std::make_shared<WordAst>();
      w->kind = WordAst::Kind::One;
      return w;
    }
    if (t.kind == Tok::Ident) {
      ++pos;
      if (!names.count(t.s)) fail(t, "unknown name '" + t.s + "'");
      auto w = std::make_shared<WordAst>();
      w->kind = WordAst::Kind::Name;
      w->name = t.s;
      return w;
    }
    if (is_sym("(")) {
      ++pos;
      WordPtr w = parse_word(names, params, prime);
      expect_sym(")");
      return w;
    }
    if (is_sym("[")) {
      ++pos;
      WordPtr a = parse_word(names, params, prime);
      expect_sym(",");
      WordPtr b = parse_word(names, params, prime);
      expect_sym("]");
      auto w = std::make_shared<WordAst>();
      w->kind = WordAst::Kind::Comm;
      w->a = a;
      w->b = b;
      return w;
    }
    fail(t, "expected word");
  }

  WordPtr parse_factor(const std::set<std::string>& names,
                       const std::set<char>& params, int prime) {
    WordPtr base = parse_primary(names, params, prime);
    while (is_sym("^")) {
      Tok caret = take();
      auto w = std::make_shared<WordAst>();
      w->a = base;
      if (peek().kind == Tok::Int || is_sym("-")) {  // plain integer exponent
        long long sign = 1;
        if (is_sym("-")) {
          ++pos;
          sign = -1;
        }
        w->kind = WordAst::Kind::Pow;
        w->exp.c0 = sign * expect_int("integer exponent");
      } else if (is_sym("(")) {
        ++pos;
        // distinguish  (3^affine)  from a plain affine expression
        if (peek().kind == Tok::Int && toks[pos + 1].kind == Tok::Sym &&
            toks[pos + 1].s == "^") {
          Tok baset = take();
          if (baset.v != prime)
            fail(baset, "power-tower base must equal the group prime");
          ++pos;  // '^'
          w->kind = WordAst::Kind::PPow;
          w->exp = parse_aff(params);
        } else {
          w->kind = WordAst::Kind::Pow;
          w->exp = parse_aff(params);
        }
        expect_sym(")");
      } else {
        fail(caret, "expected exponent after '^'");
      }
      base = w;
    }
    return base;
  }

  WordPtr parse_word(const std::set<std::string>& names,
                     const std::set<char>& params, int prime) {
    WordPtr w = parse_factor(names, params, prime);
    while (is_sym("*")) {
      ++pos;
      WordPtr rhs = parse_factor(names, params, prime);
      auto m = std::make_shared<WordAst>();
      m->kind = WordAst::Kind::Mul;
      m->a = w;
      m->b = rhs;
      w = m;
    }
    return w;
  }

  FpTemplatePtr parse_group() {
    skip_separators();
    Tok t = peek();
    std::string kw = expect_ident("'group'");
    if (kw != "group") fail(t, "expected 'group'");
    auto tpl = std::make_shared<FpTemplate>();
    tpl->name = expect_ident("group name");
    skip_newlines();
    expect_sym("{");
    std::set<std::string> names;
    std::set<char> params;
    bool saw_class = false;
    while (true) {
      skip_separators();
      if (is_sym("}")) {
        ++pos;
        break;
      }
      Tok st = peek();
      std::string stmt = expect_ident("statement keyword");
      if (stmt == "prime") {
        long long p = expect_int("prime value");
        if (p < 2 || p > 251) fail(st, "unsupported prime");
        tpl->prime = (int)p;
      } else if (stmt == "param") {
        Tok vt = peek();
        std::string v = expect_ident("parameter name");
        if (v != "e" && v != "i" && v != "k")
          fail(vt, "parameters must be one of e, i, k");
        if (params.count(v[0])) fail(vt, "parameter '" + v + "' declared twice");
        std::string inkw = expect_ident("'in'");
        if (inkw != "in") fail(st, "expected 'in' after parameter name");
        ParamRange r;
        r.lo = expect_int("range start");
        expect_sym("..");
        r.hi = expect_int("range end");
        if (r.hi < r.lo) fail(st, "empty parameter range");
        params.insert(v[0]);
        if (v == "e") tpl->e_range = r;
        if (v == "i") tpl->i_range = r;
        if (v == "k") tpl->k_range = r;
      } else if (stmt == "class") {
        tpl->class_bound = parse_aff(params);
        saw_class = true;
      } else if (stmt == "gens") {
        if (!tpl->gens.empty()) fail(st, "duplicate gens statement");
        while (true) {
          Tok gt = peek();
          std::string gname = expect_ident("generator name");
          if (names.count(gname)) fail(gt, "duplicate name '" + gname + "'");
          names.insert(gname);
          tpl->gens.push_back(gname);
          if (is_sym(",")) {
            ++pos;
            continue;
          }
          break;
        }
      } else if (stmt == "def") {
        Tok dt = peek();
        std::string dname = expect_ident("definition name");
        if (names.count(dname)) fail(dt, "duplicate name '" + dname + "'");
        expect_sym("=");
        WordPtr w = parse_word(names, params, tpl->prime);  // earlier names only
        names.insert(dname);
        tpl->defs.emplace_back(dname, w);
      } else if (stmt == "rel") {
        FpRel r;
        r.line = st.line;
        r.lhs = parse_word(names, params, tpl->prime);
        if (is_sym("=")) {
          ++pos;
          r.rhs = parse_word(names, params, tpl->prime);
        } else {
          auto one = std::make_shared<WordAst>();
          one->kind = WordAst::Kind::One;
          r.rhs = one;
        }
        tpl->rels.push_back(std::move(r));
      } else {
        fail(st, "unknown statement '" + stmt + "'");
      }
      end_statement();
    }
    if (tpl->gens.empty()) fail(t, "group '" + tpl->name + "' declares no generators");
    if (!saw_class) fail(t, "group '" + tpl->name + "' declares no class bound");
    return tpl;
  }
};

}  // namespace

std::string aff_to_string(const AffExpr& a) {
  std::string out;
  auto term = [&](long long c, const char* v) {
    if (!c) return;
    if (!out.empty()) out += c > 0 ? "+" : "-";
    else if (c < 0) out += "-";
    long long m = c > 0 ? c : -c;
    if (m != 1 || !*v) out += std::to_string(m);
    if (*v && m != 1) out += "*";
    out += v;
  };
  term(a.ce, "e");
  term(a.ci, "i");
  term(a.ck, "k");
  if (a.c0 || out.empty()) term(a.c0, "");
  return out;
}

std::string word_ast_to_string(const WordAst& w) {
  auto paren = [](const WordAst& x, const std::string& s) {
    if (x.kind == WordAst::Kind::Mul) return "(" + s + ")";
    return s;
  };
  switch (w.kind) {
    case WordAst::Kind::One:
      return "1";
    case WordAst::Kind::Name:
      return w.name;
    case WordAst::Kind::Mul:
      return word_ast_to_string(*w.a) + "*" + word_ast_to_string(*w.b);
    case WordAst::Kind::Comm:
      return "[" + word_ast_to_string(*w.a) + "," + word_ast_to_string(*w.b) + "]";
    case WordAst::Kind::Pow: {
      std::string base = paren(*w.a, word_ast_to_string(*w.a));
      if (w.a->kind == WordAst::Kind::Pow || w.a->kind == WordAst::Kind::PPow)
        base = "(" + base + ")";
      if (w.exp.is_const() && w.exp.c0 >= 0)
        return base + "^" + std::to_string(w.exp.c0);
      return base + "^(" + aff_to_string(w.exp) + ")";
    }
    case WordAst::Kind::PPow: {
      std::string base = paren(*w.a, word_ast_to_string(*w.a));
      if (w.a->kind == WordAst::Kind::Pow || w.a->kind == WordAst::Kind::PPow)
        base = "(" + base + ")";
      return base + "^(3^" + (aff_to_string(w.exp).find_first_of("+-*") ==
                                      std::string::npos
                                  ? aff_to_string(w.exp)
                                  : "(" + aff_to_string(w.exp) + ")") +
             ")";
    }
  }
  return "1";
}

FpTemplatePtr parse_fp_template(const std::string& text) {
  Parser p{lex(text)};
  auto tpl = p.parse_group();
  p.skip_separators();
  if (p.peek().kind != Tok::End) p.fail(p.peek(), "trailing text after group block");
  return tpl;
}

std::vector<FpTemplatePtr> parse_fp_file(const std::string& text) {
  Parser p{lex(text)};
  std::vector<FpTemplatePtr> out;
  while (true) {
    p.skip_separators();
    if (p.peek().kind == Tok::End) break;
    out.push_back(p.parse_group());
  }
  return out;
}

std::string print_fp_template(const FpTemplate& t) {
  std::ostringstream out;
  out << "group " << t.name << " {\n";
  out << "  prime " << t.prime << ";\n";
  auto prange = [&](const char* v, const std::optional<ParamRange>& r) {
    if (r) out << "  param " << v << " in " << r->lo << ".." << r->hi << ";\n";
  };
  prange("e", t.e_range);
  prange("i", t.i_range);
  prange("k", t.k_range);
  out << "  class " << aff_to_string(t.class_bound) << ";\n";
  out << "  gens ";
  for (std::size_t j = 0; j < t.gens.size(); ++j)
    out << (j ? ", " : "") << t.gens[j];
  out << ";\n";
  for (const auto& [name, w] : t.defs)
    out << "  def " << name << " = " << word_ast_to_string(*w) << ";\n";
  for (const FpRel& r : t.rels) {
    out << "  rel " << word_ast_to_string(*r.lhs);
    if (r.rhs->kind != WordAst::Kind::One)
      out << " = " << word_ast_to_string(*r.rhs);
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

FpInstance instantiate(const FpTemplatePtr& t, long long e, long long i,
                       long long k) {
  assert(t);
  auto check = [&](const char* v, const std::optional<ParamRange>& r, long long val) {
    if (r && (val < r->lo || val > r->hi))
      throw UsageError("group " + t->name + ": parameter " + v + "=" +
                       std::to_string(val) + " outside admissible range " +
                       std::to_string(r->lo) + ".." + std::to_string(r->hi));
  };
  check("e", t->e_range, e);
  check("i", t->i_range, i);
  check("k", t->k_range, k);
  FpInstance inst;
  inst.tpl = t;
  inst.e = e;
  inst.i = i;
  inst.k = k;
  long long cb = t->class_bound.eval(e, i, k);
  if (cb < 1)
    throw UsageError("group " + t->name + ": class bound " + std::to_string(cb) +
                     " below 1");
  inst.class_bound = (int)cb;
  return inst;
}

namespace {

struct EvalCtx {
  const FpInstance& inst;
  const PcGroupPtr& g;
  const std::vector<ExpVec>& images;
  std::map<std::string, ExpVec> cache;

  ExpVec ev(const WordAst& w) {
    switch (w.kind) {
      case WordAst::Kind::One:
        return g->identity_vec();
      case WordAst::Kind::Name: {
        const auto& gens = inst.tpl->gens;
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (gens[j] == w.name) return images[j];
        auto it = cache.find(w.name);
        if (it != cache.end()) return it->second;
        for (const auto& [name, def] : inst.tpl->defs)
          if (name == w.name) {
            ExpVec v = ev(*def);
            cache.emplace(name, v);
            return v;
          }
        throw UsageError("unknown name '" + w.name + "' during evaluation");
      }
      case WordAst::Kind::Mul:
        return g->mul(ev(*w.a), ev(*w.b));
      case WordAst::Kind::Comm:
        return g->comm_of(ev(*w.a), ev(*w.b));
      case WordAst::Kind::Pow:
        return g->pow(ev(*w.a), w.exp.eval(inst.e, inst.i, inst.k));
      case WordAst::Kind::PPow: {
        long long E = w.exp.eval(inst.e, inst.i, inst.k);
        if (E < 0 || E > 39)
          throw UsageError("power-tower exponent out of range: " + std::to_string(E));
        long long n = 1;
        for (long long t = 0; t < E; ++t) n *= inst.tpl->prime;
        return g->pow(ev(*w.a), n);
      }
    }
    return g->identity_vec();
  }
};

}  // namespace

ExpVec eval_word(const WordAst& w, const FpInstance& inst, const PcGroupPtr& g,
                 const std::vector<ExpVec>& gen_images) {
  assert(gen_images.size() == inst.tpl->gens.size());
  EvalCtx ctx{inst, g, gen_images};
  return ctx.ev(w);
}

ExpVec eval_relator(const FpRel& r, const FpInstance& inst, const PcGroupPtr& g,
                    const std::vector<ExpVec>& gen_images) {
  EvalCtx ctx{inst, g, gen_images};
  ExpVec lhs = ctx.ev(*r.lhs);
  ExpVec rhs = ctx.ev(*r.rhs);
  return g->mul(lhs, g->inv(rhs));
}

}  // namespace sigma3
