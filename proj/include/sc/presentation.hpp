#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sc/report.hpp"
#include "sc/words.hpp"

namespace sc {

// Finite (or family-truncated) presentation with a small-cancellation
// parameter.  Relators are cyclically reduced, and no two distinct relators
// are star-equivalent.
struct Presentation {
  Alphabet alphabet;
  std::vector<RleWord> relators;
  Rat lambda = Rat(1, 6);
};

// All unordered relator pairs, self-pairs included, satisfy the piece bound
// |p| < lambda*min(|u|,|v|).  Also re-asserts the structural invariants.
Report check_cprime(const Presentation& p, const Limits& lim = {});

// Central extension shape: base relators u_i (and optionally v_i) with
// commutator relators [s,u_i], power relators u_i^{ell_i}, and for the
// G-shape the identifications u_i v_i^-1.
struct ExtRelator {
  RleWord u;
  std::optional<RleWord> v;  // set only for the G-shape
  Int ell = 0;               // order of the central image; 0 = no power relator
};

struct CentralExtSpec {
  Alphabet alphabet;
  std::vector<ExtRelator> rels;
  Rat lambda = Rat(1, 13);

  // H-side presentation whose relators are the u_i (and v_i when present).
  Presentation base() const;
};

// One rewriting step: the relator (by index into the base presentation's
// relator list, with sign) whose long factor was replaced.
struct DehnStep {
  int relator = 0;
  int sign = 1;       // which of r / r^-1 was rotated
  Int shift = 0;      // left rotation applied to r^sign
  Int word_pos = 0;   // letter offset of the replaced factor
  Int factor_len = 0;
};

struct DehnTrace {
  RleWord residual;
  std::map<int, Int> exponents;  // relator index -> signed face count
  std::vector<DehnStep> steps;
};

// Greendlinger rewriting: repeatedly replace a factor q with |q| > |r|/2 by
// the complementary side of the relator, leftmost/longest/lowest-index/
// smallest-shift first.  Requires p to pass check_cprime at lambda <= 1/6.
DehnTrace dehn_reduce(const RleWord& w, const Presentation& p,
                      const Limits& lim = {});

struct ExtVerdict {
  bool trivial = false;
  RleWord residual;               // image under the quotient map
  std::map<int, Int> kernel;      // coordinate per relator index, mod ell_i
};

ExtVerdict word_problem_central_ext(const RleWord& w, const CentralExtSpec& s,
                                    const Limits& lim = {});

struct BfsCaps {
  long radius = 8;
  long states = 100000;
};

struct NormResult {
  bool exceeded_cap = false;
  Int value = 0;  // exact norm, valid only when !exceeded_cap
  Int lower = 0;  // always a sound lower bound (== value when exact)
};

// Exact word norm of w in the central extension by breadth-first enumeration
// with equality-based deduplication.  When the cap is exceeded, `lower` still
// certifies that no shorter representative exists.
NormResult bfs_norm(const RleWord& w, const CentralExtSpec& s,
                    const BfsCaps& caps = {}, const Limits& lim = {});

struct AuditResult {
  bool inconclusive = false;  // norm unknown and the lower bound was not enough
  bool ok = false;            // inequality |u| <= C*norm held
  Int word_len = 0;
  Int norm = 0;               // exact norm, or the certified lower bound
  bool norm_exact = false;
  Rat constant;               // 3/(1-12*lambda)
  Rat ratio;                  // |u| / norm (0 when norm = 0)
  Report hypotheses;
};

// Checks the hypotheses (small cancellation, 2 <= |u_i| <= |v_i|, prefix
// piece bound, injectivity, |k_i| <= ell_i/2), builds u = prefix *
// prod u_i^{k_i}, and audits |u| <= 3/(1-12*lambda) * ||u||.
AuditResult quasigeodesic_audit(const RleWord& prefix,
                                const std::vector<std::pair<int, Int>>& powers,
                                const CentralExtSpec& s,
                                const BfsCaps& caps = {},
                                const Limits& lim = {});

}  // namespace sc
