#include "sc/textio.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace sc::textio {

std::string format_word(const RleWord& w, const Alphabet& a, const Limits& lim) {
  if (w.empty()) return "e";
  std::string out;
  bool first = true;
  for (const Run& r : w.runs(lim)) {
    if (!first) out += ' ';
    first = false;
    out += a.name(r.sym);
    if (r.sign < 0) {
      out += "^-";
      out += r.exp.get_str();
    } else if (r.exp != 1) {
      out += '^';
      out += r.exp.get_str();
    }
  }
  return out;
}

RleWord parse_word(std::string_view text, const Alphabet& a) {
  std::istringstream in{std::string(text)};
  std::vector<Run> raw;
  std::string tok;
  bool sawTok = false;
  while (in >> tok) {
    sawTok = true;
    if (tok == "e") continue;
    std::string sym = tok;
    Int exp = 1;
    int sign = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      sym = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      if (es.empty()) throw error("word: missing exponent in '" + tok + "'");
      try {
        exp = Int(es);
      } catch (const std::invalid_argument&) {
        throw error("word: bad exponent in '" + tok + "'");
      }
      if (exp < 0) {
        sign = -1;
        exp = -exp;
      }
      if (exp == 0) continue;
    }
    auto id = a.find(sym);
    if (!id) throw error("word: unknown symbol '" + sym + "'");
    raw.push_back(Run{*id, sign, exp});
  }
  if (!sawTok) throw error("word: empty input");
  return RleWord::from_runs(raw);
}

// --------------------------------------------------------------- expressions

struct Expr::Node {
  enum class Kind { Lit, Var, Add, Sub, Mul, Pow, Neg } kind;
  Int lit;
  std::string var;
  std::shared_ptr<const Node> a, b;
};

namespace {

struct Parser {
  std::string_view s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  using P = std::shared_ptr<const Expr::Node>;

  static P mk(Expr::Node n) { return std::make_shared<Expr::Node>(std::move(n)); }

  P expr() {
    P a = term();
    for (;;) {
      if (eat('+'))
        a = mk({Expr::Node::Kind::Add, 0, {}, a, term()});
      else if (eat('-'))
        a = mk({Expr::Node::Kind::Sub, 0, {}, a, term()});
      else
        return a;
    }
  }
  P term() {
    P a = unary();
    while (eat('*')) a = mk({Expr::Node::Kind::Mul, 0, {}, a, unary()});
    return a;
  }
  P unary() {
    if (eat('-')) return mk({Expr::Node::Kind::Neg, 0, {}, unary(), nullptr});
    return power();
  }
  P power() {
    P a = atom();
    if (eat('^')) return mk({Expr::Node::Kind::Pow, 0, {}, a, unary()});
    return a;
  }
  P atom() {
    skip();
    if (eat('(')) {
      P a = expr();
      if (!eat(')')) throw error("expr: missing ')'");
      return a;
    }
    if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      return mk({Expr::Node::Kind::Lit, Int(std::string(s.substr(start, pos - start))),
                 {}, nullptr, nullptr});
    }
    if (pos < s.size() &&
        (std::isalpha((unsigned char)s[pos]) || s[pos] == '_')) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      Expr::Node n{Expr::Node::Kind::Var, 0, std::string(s.substr(start, pos - start)),
                   nullptr, nullptr};
      return mk(std::move(n));
    }
    throw error("expr: unexpected character in '" + std::string(s) + "'");
  }
};

Int eval_node(const Expr::Node* n, const std::map<std::string, Int>& vars) {
  using K = Expr::Node::Kind;
  switch (n->kind) {
    case K::Lit:
      return n->lit;
    case K::Var: {
      auto it = vars.find(n->var);
      if (it == vars.end()) throw error("expr: unbound variable '" + n->var + "'");
      return it->second;
    }
    case K::Add:
      return eval_node(n->a.get(), vars) + eval_node(n->b.get(), vars);
    case K::Sub:
      return eval_node(n->a.get(), vars) - eval_node(n->b.get(), vars);
    case K::Mul:
      return eval_node(n->a.get(), vars) * eval_node(n->b.get(), vars);
    case K::Pow:
      return ipow(eval_node(n->a.get(), vars), eval_node(n->b.get(), vars));
    case K::Neg:
      return -eval_node(n->a.get(), vars);
  }
  throw error("expr: corrupt node");
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Parser p{text};
  Expr e;
  e.root_ = p.expr();
  p.skip();
  if (p.pos != text.size()) throw error("expr: trailing input in '" + std::string(text) + "'");
  e.text_ = std::string(text);
  return e;
}

Int Expr::eval(const std::map<std::string, Int>& vars) const {
  if (!root_) throw error("expr: empty");
  return eval_node(root_.get(), vars);
}

Rat parse_rat(std::string_view text) {
  try {
    Rat r{std::string(text)};
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw error("bad rational '" + std::string(text) + "'");
  }
}

std::string format_rat(const Rat& r) { return r.get_str(); }

}  // namespace sc::textio
