#pragma once

#include <map>
#include <vector>

#include "sc/families.hpp"
#include "sc/report.hpp"
#include "sc/words.hpp"

namespace sc {

// Direct sum of cyclic groups Z_{ell_i} (infinite marker = Z) where the i-th
// coordinate contributes with weight scalings[i] to the norm.
struct ScaledSum {
  std::vector<ExtNat> orders;  // each >= 2 or infinity
  std::vector<Rat> scalings;   // each > 0

  long size() const { return (long)orders.size(); }
  void check() const;  // throws on malformed data
};

// Group element: finite support, residues stored canonically (finite order:
// in [0, ell_i); infinite order: any nonzero integer).
struct SumElement {
  std::map<long, Int> residues;

  bool is_identity() const { return residues.empty(); }
  // largest supported index, -1 for the identity
  long height() const {
    return residues.empty() ? -1 : residues.rbegin()->first;
  }
};

SumElement make_element(const ScaledSum& g, const std::map<long, Int>& raw);
SumElement add(const ScaledSum& g, const SumElement& a, const SumElement& b);
SumElement negate(const ScaledSum& g, const SumElement& a);
SumElement subtract(const ScaledSum& g, const SumElement& a,
                    const SumElement& b);

// Per-coordinate representative y_i = x_i mod ell_i chosen in
// {-floor((ell-1)/2), ..., +floor(ell/2)}; infinite order keeps x_i.
struct GeodesicForm {
  std::map<long, Int> y;
};

GeodesicForm geodesic_form(const SumElement& x, const ScaledSum& g);

// Sum s_i * |y_i| over the geodesic form.
Rat norm_induced(const SumElement& x, const ScaledSum& g);

// s_h * ||x_h|| at the height h = max(supp x); requires finite orders on the
// support.
Rat norm_qu(const SumElement& x, const ScaledSum& g);

// Verifies the hypotheses (coordinate diameters non-decreasing,
// s_{i+1} >= 2 s_i diam(Z_{ell_i}) with diam = floor(ell/2)), then samples
// elements checking qu <= norm <= 2 qu, and checks the ceiling-scaling bound
// norm_s <= norm_ceil(s) <= (1+1/eps) norm_s with eps = min s_i.  When the
// growth hypothesis fails, searches 2-coordinate elements exhaustively for a
// witness with norm > 2 qu and reports it.
Report check_norm_equivalences(const ScaledSum& g, long samples = 1000,
                               unsigned seed = 1);

// Cube points {0..k_P}^n placed at the first n indices of P, all of which
// must carry scaling s_P and order >= 2 k_P.  The embedding multiplies l1
// distances by exactly s_P; certified by exhaustive pairwise check when the
// point count is at most 10^4.
struct CubeEmbedding {
  std::vector<std::pair<std::vector<long>, SumElement>> points;
  bool certified = false;
};

CubeEmbedding cube_embedding(const ScaledSum& g, const std::vector<long>& P,
                             const Rat& s_P, const Int& k_P, long n);

// Evaluation of (h, z) -> prefix^h * prod_i u_i^{y_i} with geodesic-form
// exponents y_i of z_i mod ell_i.  The unreduced concatenation length is
// |h| |prefix| + sum |y_i| |u_i|, returned as length_formula; `word` is the
// freely reduced product.
struct PhiWord {
  RleWord word;
  Int length_formula;
};

PhiWord phi_word(const Int& h, const SumElement& z, const RleWord& prefix,
                 const FamilySpec& family, const Limits& lim = {});

}  // namespace sc
