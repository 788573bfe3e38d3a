#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "sc/words.hpp"

namespace sc::textio {

// Word grammar: whitespace-separated runs `sym` or `sym^E` with E a signed
// decimal big integer; `e` alone denotes the empty word.  format_word emits
// the canonical spelling (exponent omitted when +1), so parse/format
// round-trips are bit-exact on canonical input.
std::string format_word(const RleWord& w, const Alphabet& a,
                        const Limits& lim = {});
RleWord parse_word(std::string_view text, const Alphabet& a);

// Arithmetic over big integers with named variables: + - * ^ ( ), decimal
// literals, identifiers.  '^' is exponentiation (right-associative, binds
// tightest); unary minus allowed.
class Expr {
 public:
  struct Node;
  Expr() = default;
  static Expr parse(std::string_view text);
  Int eval(const std::map<std::string, Int>& vars) const;
  const std::string& text() const { return text_; }
  bool empty() const { return root_ == nullptr; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

Rat parse_rat(std::string_view text);  // "p/q" or "p"
std::string format_rat(const Rat& r);

}  // namespace sc::textio
