#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sc/ints.hpp"

namespace sc {

// Generating set.  Symbol names are nonempty, contain no whitespace or '^',
// and "1" and "e" are reserved.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);
  int size() const { return (int)syms_.size(); }
  const std::string& name(int i) const { return syms_.at(i); }
  std::optional<int> find(std::string_view s) const;
  const std::vector<std::string>& symbols() const { return syms_; }

 private:
  std::vector<std::string> syms_;
  std::map<std::string, int, std::less<>> index_;
};

// A maximal block s^(sign*exp) of a word; exp >= 1.
struct Run {
  int sym = 0;
  int sign = 1;  // +1 or -1
  Int exp = 0;
  bool operator==(const Run& o) const {
    return sym == o.sym && sign == o.sign && exp == o.exp;
  }
};

// Caps for operations that expand compressed words.
struct Limits {
  Int dense_letters = 1000000;  // max letters for dense materialization
  Int explicit_runs = 1000000;  // max runs for materialized run lists
};

// Freely reduced word, stored as a run sequence `core` repeated `repeat`
// times.  Canonical form: core is freely reduced (adjacent runs have distinct
// symbols), the junction core-end/core-start neither merges nor cancels when
// repeat > 1, and core is primitive as a run sequence (not itself a proper
// power), with repeat maximal.  Structural equality is then word equality.
class RleWord {
 public:
  RleWord() : repeat_(1), length_(0) {}

  static RleWord from_runs(std::span<const Run> raw);
  static RleWord letter(int sym, int sign);
  // core^repeat, where core's junction must not merge or cancel.
  static RleWord power_of(const RleWord& core, const Int& repeat);

  const Int& length() const { return length_; }
  bool empty() const { return length_ == 0; }
  const std::vector<Run>& core() const { return core_; }
  const Int& repeat() const { return repeat_; }
  Int run_count() const { return Int((long)core_.size()) * repeat_; }

  // Materialized run list; throws if run_count() exceeds lim.explicit_runs.
  std::vector<Run> runs(const Limits& lim = {}) const;

  RleWord inverse() const;
  RleWord pow(const Int& e, const Limits& lim = {}) const;

  bool operator==(const RleWord& o) const {
    return repeat_ == o.repeat_ && core_ == o.core_;
  }
  bool operator!=(const RleWord& o) const { return !(*this == o); }

 private:
  std::vector<Run> core_;
  Int repeat_;
  Int length_;
  friend RleWord concat(const RleWord&, const RleWord&, const Limits&);
  void canonicalize();  // fold maximal repeat, recompute length
};

RleWord concat(const RleWord& a, const RleWord& b, const Limits& lim = {});

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicReduction {
  RleWord core;
  RleWord conjugator;
};
CyclicReduction cyclic_reduce(const RleWord& w);
bool is_cyclically_reduced(const RleWord& w);

// v equal to some cyclic shift of u (exact, not up to inversion).
bool is_cyclic_shift(const RleWord& u, const RleWord& v);
// v in {u}_* : cyclic shifts of u and of u^-1.
bool star_equivalent(const RleWord& u, const RleWord& v);

// Unreduced run sequence (free-monoid word).  Used where concatenation length
// must be preserved exactly even if junctions would cancel.
struct RawRuns {
  std::vector<Run> runs;
  Int length = 0;
  void append(const Run& r);
  void append_word(const RleWord& w, const Limits& lim = {});
  RleWord reduced() const { return RleWord::from_runs(runs); }
};

// Dense letter encoding: sym*2 + (sign<0).  Inverse letter flips the low bit.
using Letter = std::uint32_t;
inline Letter letter_code(int sym, int sign) {
  return (Letter)(sym * 2 + (sign < 0 ? 1 : 0));
}
inline Letter letter_inv(Letter l) { return l ^ 1u; }

// Throws if w.length() exceeds lim.dense_letters.
std::vector<Letter> materialize(const RleWord& w, const Limits& lim = {});

// Longest word that is a common prefix of some u' in {u}_* and v' in {v}_*
// with u' != v'.  Shifts/variants identify the witnesses: variant +1 means a
// shift of the word itself, -1 a shift of its inverse; shift k is the word
// rotated left by k letters.
struct PieceReport {
  Int length = 0;
  int u_variant = 1;
  Int u_shift = 0;
  int v_variant = 1;
  Int v_shift = 0;
};

// Both words must be cyclically reduced and nonempty, and each must be either
// materializable under lim or of the block-periodic shape (a^M x^M)^N (or its
// inverse).  Throws on unsupported structure.
PieceReport max_piece(const RleWord& u, const RleWord& v, const Limits& lim = {});

// Pieces between the infinite family {letter^h : h in Z} and {v}_*: the
// longest run of `sym` (either sign) in v read cyclically.  If v itself is a
// power of the letter, every common prefix extends: unbounded.
struct PowerPiece {
  bool unbounded = false;
  Int length = 0;
};
PowerPiece max_piece_with_power(int sym, const RleWord& v);

// max_piece(u, v).length < lambda * min(|u|, |v|), computed exactly.
bool check_cprime_pair(const RleWord& u, const RleWord& v, const Rat& lambda,
                       const Limits& lim = {});

// Brute-force oracle over dense letter arrays (cyclically reduced words):
// maximum common prefix length over all rotations of u^{+-1} and v^{+-1},
// excluding pairs where the rotated words are equal.
Int dense_max_piece(const std::vector<Letter>& u, const std::vector<Letter>& v);

// Shape (s0^M s1^M)^N with two distinct symbols and uniform sign; s0 is the
// word's first symbol.
struct BlockShape {
  int sym0 = 0;
  int sym1 = 0;
  int sign = 1;
  Int M = 0;
  Int N = 0;
};
std::optional<BlockShape> block_shape(const RleWord& w);

}  // namespace sc
