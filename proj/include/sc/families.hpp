#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sc/presentation.hpp"
#include "sc/report.hpp"
#include "sc/textio.hpp"
#include "sc/words.hpp"

namespace sc {

// Partition of N into consecutive blocks: for finite m the blocks
// {jm,...,(j+1)m-1}, for the infinity marker {j^2,...,(j+1)^2-1}.
Int block_min(const ExtNat& m, const Int& j);
Int block_size(const ExtNat& m, const Int& j);
Int block_of(const ExtNat& m, const Int& i);  // j with i in block j

// Value of the inflated sequence (m x s) at i: s_{floor(i/m)} resp.
// s_{floor(sqrt(i))}.
Int inflate_at(const ExtNat& m, const std::function<Int(const Int&)>& s,
               const Int& i);

// Parametric relator family over an ordered symbol pair (a,x):
//   Block:     u_i = (a^{m_i} x^{m_i})^{n_i}
//   Staircase: u_i = (a^{k^(p_j - r_i)} x^{k^(p_j - r_i)})^{k^(r_i + 1)}
// with j the block of i and r_i = i - block_min, so |u_i| = 2k^(p_j+1) is
// constant on blocks.
struct FamilySpec {
  enum class Kind { Block, Staircase };
  Kind kind = Kind::Staircase;
  int a_sym = 0;
  int x_sym = 1;
  Int k = 14;
  ExtNat m{Int(1)};        // Staircase partition parameter (may be infinity)
  textio::Expr p_rule;     // Staircase: variable j
  std::vector<Int> p_list; // explicit override of p_rule when nonempty
  textio::Expr m_rule;     // Block: variable i
  textio::Expr n_rule;     // Block: variable i
  textio::Expr ell_rule;   // order sequence, variable i
  Int N = 16;              // truncation: indices 0..N-1 are materialized
  std::map<std::string, Int> consts;  // extra bindings for the rules

  Int p_at(const Int& j) const;
  Int ell_at(const Int& i) const;
  Int mseq_at(const Int& i) const;
  Int nseq_at(const Int& i) const;
};

// i < spec.N; output is positive, cyclically reduced, block-periodic.
RleWord gen_word(const FamilySpec& spec, const Int& i);
Int word_length(const FamilySpec& spec, const Int& i);

// Two staircase families over the disjoint symbol pairs (a,x) and (b,y),
// with the shared small-cancellation parameter.
struct ConstructionConfig {
  Alphabet alphabet{std::vector<std::string>{"a", "x", "b", "y"}};
  Int m = 1;
  ExtNat n{Int(2)};
  Rat lambda = Rat(1, 13);
  FamilySpec U;  // over symbols 0,1
  FamilySpec V;  // over symbols 2,3
  Int N = 16;

  void check_basic() const;  // throws on malformed configuration
};

// The worked parameter choice: p_j = m(j+2)^2 and q_j = n^2(j+3)^2 for
// finite n, m(j+3)^4 for n = infinity.  Returned as evaluable rules.
std::pair<textio::Expr, textio::Expr> example_sequences(const Int& m,
                                                        const ExtNat& n);

// Full configuration with the example sequences, order rule ell_i = k^(i+1),
// and lambda = 1/13.
ConstructionConfig example_config(const Int& m, const ExtNat& n,
                                  const Int& k = 14, const Int& N = 16);

// Growth conditions on the exponent sequences, for all j < J (and all
// indices whose block lies below J):
//   (a) p_{j+1} >= p_j + (j+2)m
//   (b) q_{j+1} >= q_j + (j+2)n   (finite n; (j+2)^2 when n = infinity)
//   (c) p_{floor(i/m)} <= q_{floor(i/n)}   (q_{floor(sqrt(i))} for infinity)
// When an order rule is supplied, additionally checks the sufficient
// condition k^{p_{j+1}} >= k^{p_j} * ell_{block-end} * k^{|block j+1|} that
// makes the staircase lengths dominate the orders.
Report validate_pq(const Int& m, const ExtNat& n, const FamilySpec& u,
                   const FamilySpec& v, const Int& J);

// Conditions imposed on the families, over indices < N:
//   (a) cyclic minimality/reducedness and C'(lambda) of the union,
//   (b) bounded pieces against powers of the second V-symbol,
//   (c) 2 <= |u_i| <= |v_i|,
//   (d) injectivity of i -> u_i and i -> v_i,
//   (e) length constancy on partition blocks,
//   (f) growth |u_{(j+1)m}| >= ell_{(j+1)m} |u_{jm}| and the V-analogue,
//   (g) rules are closed-form,
// plus the exponent-distinctness assertion for staircase specs.
Report validate_family_conditions(const ConstructionConfig& c,
                                  const Limits& lim = {});

enum class Target { A, B, H, G };

// Truncated presentation for i < N: A = commutators [s,u_i] over the U
// symbols plus u_i^{ell_i}; B likewise from V; H = the u_i and v_i; G = all
// four commutators, u_i^{ell_i}, and u_i v_i^-1.  Commutator relators are
// stored cyclically reduced.
Presentation emit_presentation(const ConstructionConfig& c, Target t,
                               const Limits& lim = {});

// Case split realizing prescribed dimensions (4 <= k <= m <= n, each
// possibly infinite) from the base construction at (m-3, n-2).
std::string plan_construction(const ExtNat& k, const ExtNat& m,
                              const ExtNat& n);

// ----------------------------------------------------------- text format
//
//   alphabet: a x b y
//   lambda: 1/13
//   family staircase sym=a,x m=1 k=14 p="m*(j+2)^2" l="k^(i+1)" N=16
//   a^3 x^3 a^3 x^3
//
// Lines are either the alphabet header (first), an optional lambda line, a
// family directive, or a relator in the word grammar.  '#' starts a comment
// line.  format -> parse -> format is byte-identical.
struct PresentationDoc {
  Alphabet alphabet{std::vector<std::string>{"a", "x"}};
  std::optional<Rat> lambda;
  std::vector<FamilySpec> families;
  std::vector<RleWord> relators;
};

PresentationDoc parse_presentation_doc(const std::string& text);
std::string format_presentation_doc(const PresentationDoc& doc,
                                    const Limits& lim = {});

// Materializes directives: family words for i < N followed by the explicit
// relators, as a Presentation (lambda defaults to 1/6 when absent).
Presentation expand_doc(const PresentationDoc& doc);

// A doc holding exactly two staircase directives (U then V) over a 4-symbol
// alphabet, as a ConstructionConfig.
ConstructionConfig config_from_doc(const PresentationDoc& doc);

}  // namespace sc
