#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sc/presentation.hpp"
#include "sc/report.hpp"
#include "sc/words.hpp"

namespace sc {

// Planar combinatorial map.  Each edge is a pair of twinned darts; `next` is
// the counterclockwise successor among darts sharing an origin.  A dart with
// sym = -1 carries the silent label "1"; an essential dart reads (sym, sign)
// and its twin reads the inverse.  Faces are the orbits of d -> next[twin[d]];
// with this convention a bounded face's orbit reads its boundary
// counterclockwise, and the outer face's orbit reads the diagram boundary
// clockwise.
struct Dart {
  long twin = -1;
  long next = -1;
  long origin = -1;
  int sym = -1;  // -1 = inessential
  int sign = 1;
};

struct Diagram {
  std::vector<Dart> darts;
  long outer = -1;  // any dart on the outer face's orbit (-1 iff no darts)
  Presentation pres;
  bool aspherical = false;
  bool generators_nontrivial = false;
};

// One letter of a face/boundary label: (sym, sign), sym = -1 for "1".
using LabelSeq = std::vector<std::pair<int, int>>;

// Faces indexed by discovery order (scanning dart ids ascending).
struct FaceSet {
  std::vector<std::vector<long>> orbits;
  std::vector<long> face_of;  // dart -> face index
  long outer_face = -1;
};

FaceSet trace_faces(const Diagram& d);

struct FaceInfo {
  bool outer = false;
  bool essential = false;
  int relator = -1;  // index into pres.relators when essential
  int sigma = 0;     // +1 / -1 when the label reads the relator exactly
  LabelSeq label;    // counterclockwise for bounded faces
};

std::vector<FaceInfo> face_info(const Diagram& d);

// Counterclockwise boundary walk of the whole diagram, as dart ids.
std::vector<long> boundary_walk(const Diagram& d);
LabelSeq boundary_label(const Diagram& d);
Int boundary_length(const Diagram& d);

RleWord seq_word(const LabelSeq& s);  // free reduction, dropping 1-letters

Report validate_diagram(const Diagram& d);

struct FaceCounts {
  std::map<int, Int> kappa;  // relator index -> unsigned count
  std::map<int, Int> sigma;  // relator index -> signed count
};

FaceCounts face_counts(const Diagram& d);

bool is_bare(const Diagram& d);
bool is_reduced(const Diagram& d);

// Operation 1: remove an inessential edge (given by either of its darts).
// Contracts a non-loop, deletes a loop; both sides must be bounded
// inessential faces.
Diagram op_remove_inessential_edge(const Diagram& d, long dart);

// Operation 2: remove a simple subdiagram with freely trivial boundary label
// and no inessential boundary edges, folding its boundary shut.
Diagram op_remove_trivial_subdiagram(const Diagram& d,
                                     const std::vector<long>& faces);

// Operation 3: pad every corner at `vertex` with a clone joined by an
// inessential edge and duplicated flanking edges; requires the given face to
// visit the vertex at least twice.  Face labels are preserved letter-for-
// letter; each new inessential face reads 1 s s^-1.
Diagram op_pad_vertex(const Diagram& d, long vertex, long face);

// Operation 4: replace a simple bounded face by a diagram with the same
// boundary label (the replacement's boundary must be simple too).
Diagram op_quotient_face(const Diagram& d, long face,
                         const Diagram& replacement);

// Operation 5: excise the boundary subpath of length |r| starting at letter
// offset `start` of the counterclockwise boundary walk; its label must lie in
// the star closure of relator `rel`, and its endpoints must be distinct.
Diagram op_excise(const Diagram& d, long start, long rel);

enum class Wlog { One = 1, Two = 2, Three = 3, Four = 4 };

// WLOG passes.  One: inessential faces reduced to s s^-1 / 1 s s^-1 shapes
// and inessential edges made loops.  Two: additionally verifies each
// inessential face sits in a simple s s^-1 subdiagram (needs
// generators_nontrivial).  Three: bare (needs aspherical).  Four: bare and
// reduced (needs C'(1/6) and all |r| >= 2).  All passes preserve the boundary
// label and every signed face count.
Diagram normalize(const Diagram& d, Wlog level);

struct GreendlingerFace {
  bool applicable = false;
  long face = -1;
  Int shared = 0;
};

// For bare reduced diagrams over C'(1/6) with at least one bounded face:
// returns a face sharing a boundary subpath longer than half its perimeter
// with the diagram boundary.  Throws if no face qualifies (theorem
// violation).
GreendlingerFace greendlinger_check(const Diagram& d);

// (1 - 6 lambda) * PS(M) <= l(dM) for bare reduced diagrams over C'(lambda).
Report perimeter_check(const Diagram& d, const Rat& lambda);

// Builders ------------------------------------------------------------------

// Single bounded face reading `boundary` counterclockwise (a cycle of
// |boundary| edges).
Diagram cycle_diagram(const Presentation& pres, const RleWord& boundary);

// Wedge of face cycles at one base vertex; petal i reads word^sign
// counterclockwise, and the diagram boundary reads the concatenation.
Diagram bouquet_diagram(const Presentation& pres,
                        const std::vector<std::pair<RleWord, int>>& petals);

// Two essential faces sharing one edge, reading r and a shift of r^-1: a
// canceling pair.
Diagram mirror_pair_diagram(const Presentation& pres, long rel);

// Pads outer-boundary repeated vertices until the boundary walk is simple.
Diagram pad_to_simple_boundary(const Diagram& d);

// Text format: `dart <id> <twin> <next> <origin> <label> <dir>` records plus
// header lines; round-trips bit-exactly.
std::string format_diagram(const Diagram& d);
Diagram parse_diagram(const std::string& text, const Presentation& pres);

// Deterministic mixed corpus (cycles, bouquets, mirrors, pads, excisions,
// quotients, normalizations) of at least `minimum` diagrams.
std::vector<Diagram> build_corpus(long minimum, unsigned seed = 1);

}  // namespace sc
