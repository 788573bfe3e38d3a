#include "sc/vkd.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace sc {

namespace {

using Lbl = std::pair<int, int>;

Lbl inv_lbl(const Lbl& l) {
  if (l.first < 0) return l;
  return {l.first, -l.second};
}

LabelSeq seq_invert(const LabelSeq& s) {
  LabelSeq out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(inv_lbl(*it));
  return out;
}

bool seq_has_silent(const LabelSeq& s) {
  for (const auto& l : s)
    if (l.first < 0) return true;
  return false;
}

LabelSeq word_seq(const RleWord& w, const Limits& lim = {}) {
  LabelSeq out;
  for (Letter l : materialize(w, lim))
    out.push_back({(int)(l / 2), (l & 1) ? -1 : 1});
  return out;
}

// s equals some rotation of r (exact letters).
bool seq_is_rotation(const LabelSeq& s, const LabelSeq& r) {
  if (s.size() != r.size()) return false;
  size_t n = r.size();
  for (size_t o = 0; o < n; ++o) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = s[i] == r[(i + o) % n];
    if (ok) return true;
  }
  return false;
}

long dart_count_alive(const Diagram& d) { return (long)d.darts.size(); }

void structural_check(const Diagram& d) {
  long n = dart_count_alive(d);
  std::vector<int> next_seen(n, 0);
  for (long i = 0; i < n; ++i) {
    const Dart& a = d.darts[i];
    if (a.twin < 0 || a.twin >= n || a.twin == i ||
        d.darts[a.twin].twin != i)
      throw error("diagram: twin is not a fixed-point-free involution");
    const Dart& b = d.darts[a.twin];
    if (a.sym != b.sym) throw error("diagram: twin labels disagree");
    if (a.sym >= 0 && a.sign != -b.sign)
      throw error("diagram: twin signs must be opposite");
    if (a.next < 0 || a.next >= n) throw error("diagram: next out of range");
    if (d.darts[a.next].origin != a.origin)
      throw error("diagram: next leaves the origin vertex");
    next_seen[a.next]++;
  }
  for (long i = 0; i < n; ++i)
    if (next_seen[i] != 1) throw error("diagram: next is not a permutation");
  // one rotation cycle per vertex
  {
    std::map<long, long> at_vertex;
    for (long i = 0; i < n; ++i) at_vertex[d.darts[i].origin]++;
    std::vector<char> seen(n, 0);
    for (long i = 0; i < n; ++i) {
      if (seen[i]) continue;
      long cur = i, len = 0;
      while (!seen[cur]) {
        seen[cur] = 1;
        ++len;
        cur = d.darts[cur].next;
      }
      if (len != at_vertex[d.darts[i].origin])
        throw error("diagram: vertex rotation splits into several cycles");
    }
  }
  if (n > 0 && (d.outer < 0 || d.outer >= n))
    throw error("diagram: outer dart out of range");
}

}  // namespace

FaceSet trace_faces(const Diagram& d) {
  FaceSet fs;
  long n = dart_count_alive(d);
  fs.face_of.assign(n, -1);
  for (long i = 0; i < n; ++i) {
    if (fs.face_of[i] >= 0) continue;
    std::vector<long> orbit;
    long cur = i;
    while (fs.face_of[cur] < 0) {
      fs.face_of[cur] = (long)fs.orbits.size();
      orbit.push_back(cur);
      cur = d.darts[d.darts[cur].twin].next;
    }
    if (cur != i) throw error("diagram: face orbit does not close");
    fs.orbits.push_back(std::move(orbit));
  }
  fs.outer_face = n > 0 ? fs.face_of[d.outer] : -1;
  return fs;
}

std::vector<long> boundary_walk(const Diagram& d) {
  if (d.darts.empty()) return {};
  FaceSet fs = trace_faces(d);
  const auto& orbit = fs.orbits[fs.outer_face];
  size_t start = 0;
  while (orbit[start] != d.outer) ++start;
  std::vector<long> walk;
  for (size_t i = 0; i < orbit.size(); ++i) {
    long g = orbit[(start + orbit.size() - 1 - i) % orbit.size()];
    walk.push_back(d.darts[g].twin);
  }
  return walk;
}

LabelSeq boundary_label(const Diagram& d) {
  LabelSeq out;
  for (long w : boundary_walk(d))
    out.push_back({d.darts[w].sym, d.darts[w].sign});
  return out;
}

Int boundary_length(const Diagram& d) {
  if (d.darts.empty()) return 0;
  FaceSet fs = trace_faces(d);
  return Int((long)fs.orbits[fs.outer_face].size());
}

RleWord seq_word(const LabelSeq& s) {
  RawRuns rr;
  for (const auto& [sym, sign] : s)
    if (sym >= 0) rr.append({sym, sign, 1});
  return rr.reduced();
}

std::vector<FaceInfo> face_info(const Diagram& d) {
  FaceSet fs = trace_faces(d);
  std::vector<LabelSeq> rel;
  for (const auto& r : d.pres.relators) rel.push_back(word_seq(r));
  std::vector<FaceInfo> out;
  for (size_t f = 0; f < fs.orbits.size(); ++f) {
    FaceInfo fi;
    for (long dart : fs.orbits[f])
      fi.label.push_back({d.darts[dart].sym, d.darts[dart].sign});
    if ((long)f == fs.outer_face) {
      fi.outer = true;
      fi.label = seq_invert(fi.label);  // counterclockwise boundary reading
    } else if (!seq_has_silent(fi.label)) {
      for (size_t r = 0; r < rel.size() && !fi.essential; ++r) {
        if (seq_is_rotation(fi.label, rel[r])) {
          fi.essential = true;
          fi.relator = (int)r;
          fi.sigma = 1;
        } else if (seq_is_rotation(seq_invert(fi.label), rel[r])) {
          fi.essential = true;
          fi.relator = (int)r;
          fi.sigma = -1;
        }
      }
    }
    out.push_back(std::move(fi));
  }
  return out;
}

Report validate_diagram(const Diagram& d) {
  Report rep;
  if (d.darts.empty()) {
    rep.add(d.outer == -1, "empty diagram has no outer dart");
    return rep;
  }
  try {
    structural_check(d);
    rep.add(true, "dart table is well-formed");
  } catch (const error& e) {
    rep.add(false, "dart table is well-formed", e.what());
    return rep;
  }
  long n = dart_count_alive(d);
  // connectivity over vertices
  {
    std::map<long, std::vector<long>> adj;
    for (long i = 0; i < n; ++i)
      adj[d.darts[i].origin].push_back(d.darts[d.darts[i].twin].origin);
    std::set<long> seen;
    std::vector<long> stack = {d.darts[0].origin};
    seen.insert(stack[0]);
    while (!stack.empty()) {
      long v = stack.back();
      stack.pop_back();
      for (long w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    rep.add(seen.size() == adj.size(), "underlying graph is connected");
    FaceSet fs = trace_faces(d);
    long V = (long)adj.size(), E = n / 2, F = (long)fs.orbits.size();
    rep.add(V - E + F == 2, "Euler characteristic V - E + F = 2",
            "V=" + std::to_string(V) + " E=" + std::to_string(E) +
                " F=" + std::to_string(F));
  }
  bool labels_ok = true;
  std::string bad;
  auto info = face_info(d);
  for (size_t f = 0; f < info.size(); ++f) {
    if (info[f].outer || info[f].essential) continue;
    if (!seq_word(info[f].label).empty()) {
      labels_ok = false;
      bad = "face " + std::to_string(f) +
            " is neither a relator face nor freely trivial";
      break;
    }
  }
  rep.add(labels_ok, "bounded face labels are relators or freely trivial", bad);
  return rep;
}

FaceCounts face_counts(const Diagram& d) {
  FaceCounts fc;
  for (size_t r = 0; r < d.pres.relators.size(); ++r) {
    fc.kappa[(int)r] = 0;
    fc.sigma[(int)r] = 0;
  }
  for (const auto& fi : face_info(d)) {
    if (!fi.essential) continue;
    fc.kappa[fi.relator] += 1;
    fc.sigma[fi.relator] += fi.sigma;
  }
  return fc;
}

bool is_bare(const Diagram& d) {
  for (const auto& dart : d.darts)
    if (dart.sym < 0) return false;
  for (const auto& fi : face_info(d))
    if (!fi.outer && !fi.essential) return false;
  return true;
}

namespace {

// Canceling pair test across the edge given by dart e: the two face labels,
// based at e and its twin, must be mirror images.
bool edges_cancel(const Diagram& d, const FaceSet& fs,
                  const std::vector<FaceInfo>& info, long e) {
  long t = d.darts[e].twin;
  long f1 = fs.face_of[e], f2 = fs.face_of[t];
  if (f1 == fs.outer_face || f2 == fs.outer_face || f1 == f2) return false;
  if (!info[f1].essential || !info[f2].essential) return false;
  auto from = [&](long start) {
    LabelSeq s;
    long cur = start;
    do {
      s.push_back({d.darts[cur].sym, d.darts[cur].sign});
      cur = d.darts[d.darts[cur].twin].next;
    } while (cur != start);
    return s;
  };
  LabelSeq s1 = from(e), s2 = from(t);
  size_t m = s1.size();
  if (s2.size() != m) return false;
  for (size_t i = 0; i < m; ++i)
    if (s1[i] != inv_lbl(s2[(m - i) % m])) return false;
  return true;
}

}  // namespace

bool is_reduced(const Diagram& d) {
  FaceSet fs = trace_faces(d);
  auto info = face_info(d);
  for (long e = 0; e < dart_count_alive(d); ++e)
    if (e < d.darts[e].twin && edges_cancel(d, fs, info, e)) return false;
  return true;
}

// Mutable rotation-system form used by the operations -----------------------

namespace {

struct BD {
  long twin = -1;
  long origin = -1;
  int sym = -1;
  int sign = 1;
  bool alive = true;
};

struct Builder {
  std::vector<BD> ds;
  std::map<long, std::vector<long>> rot;  // vertex -> ccw dart cycle
  long outer = -1;
  long fresh_vertex = 0;

  static Builder from(const Diagram& d) {
    Builder b;
    long n = (long)d.darts.size();
    for (long i = 0; i < n; ++i) {
      const Dart& a = d.darts[i];
      b.ds.push_back({a.twin, a.origin, a.sym, a.sign, true});
      b.fresh_vertex = std::max(b.fresh_vertex, a.origin + 1);
    }
    std::vector<char> seen(n, 0);
    for (long i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::vector<long> cyc;
      long cur = i;
      while (!seen[cur]) {
        seen[cur] = 1;
        cyc.push_back(cur);
        cur = d.darts[cur].next;
      }
      b.rot[d.darts[i].origin] = std::move(cyc);
    }
    b.outer = d.outer;
    return b;
  }

  Diagram to_diagram(const Diagram& src) const {
    Diagram out{{}, -1, src.pres, src.aspherical, src.generators_nontrivial};
    std::vector<long> remap(ds.size(), -1);
    for (size_t i = 0; i < ds.size(); ++i)
      if (ds[i].alive) {
        remap[i] = (long)out.darts.size();
        out.darts.push_back({-1, -1, ds[i].origin, ds[i].sym, ds[i].sign});
      }
    for (size_t i = 0; i < ds.size(); ++i)
      if (ds[i].alive) out.darts[remap[i]].twin = remap[ds[i].twin];
    for (const auto& [v, cyc] : rot) {
      (void)v;
      for (size_t j = 0; j < cyc.size(); ++j)
        out.darts[remap[cyc[j]]].next = remap[cyc[(j + 1) % cyc.size()]];
    }
    out.outer = out.darts.empty() ? -1 : remap[outer];
    structural_check(out);
    return out;
  }

  long new_dart(long origin, int sym, int sign) {
    ds.push_back({-1, origin, sym, sign, true});
    return (long)ds.size() - 1;
  }
  void link(long a, long b) {
    ds[a].twin = b;
    ds[b].twin = a;
  }
  size_t pos_in(const std::vector<long>& r, long d) const {
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == d) return i;
    throw error("diagram op: dart missing from its rotation");
  }
  long succ(long d) const {
    const auto& r = rot.at(ds[d].origin);
    return r[(pos_in(r, d) + 1) % r.size()];
  }
  long psi(long d) const { return succ(ds[d].twin); }
  void insert_after(long anchor, long d) {
    auto& r = rot[ds[anchor].origin];
    r.insert(r.begin() + (long)pos_in(r, anchor) + 1, d);
  }
  void insert_before(long anchor, long d) {
    auto& r = rot[ds[anchor].origin];
    r.insert(r.begin() + (long)pos_in(r, anchor), d);
  }
  void remove_from_rot(long d) {
    auto& r = rot[ds[d].origin];
    r.erase(r.begin() + (long)pos_in(r, d));
    if (r.empty()) rot.erase(ds[d].origin);
  }
  void kill_edge(long d) {
    long t = ds[d].twin;
    remove_from_rot(d);
    remove_from_rot(t);
    ds[d].alive = false;
    ds[t].alive = false;
  }
  std::vector<long> face_orbit(long d) const {
    std::vector<long> orbit;
    long cur = d;
    do {
      orbit.push_back(cur);
      cur = psi(cur);
      if (orbit.size() > ds.size()) throw error("diagram op: orbit runaway");
    } while (cur != d);
    return orbit;
  }
};

LabelSeq cyclic_slice(const LabelSeq& s, size_t start, size_t len) {
  LabelSeq out;
  for (size_t i = 0; i < len; ++i) out.push_back(s[(start + i) % s.size()]);
  return out;
}

void check_same_boundary(const Diagram& before, const Diagram& after,
                         const char* op) {
  LabelSeq a = boundary_label(before), b = boundary_label(after);
  if (a.size() != b.size() || (!a.empty() && !seq_is_rotation(b, a)))
    throw error(std::string(op) + ": boundary label changed");
}

}  // namespace

Diagram op_remove_inessential_edge(const Diagram& d, long dart) {
  structural_check(d);
  if (dart < 0 || dart >= (long)d.darts.size() || d.darts[dart].sym >= 0)
    throw error("remove edge: dart is not an inessential edge");
  FaceSet fs = trace_faces(d);
  auto info = face_info(d);
  long t = d.darts[dart].twin;
  for (long side : {dart, t}) {
    long f = fs.face_of[side];
    if (f == fs.outer_face || info[f].essential)
      throw error("remove edge: side face must be bounded and inessential");
  }
  if (d.outer == dart || d.outer == t)
    throw error("remove edge: outer dart on a bounded face");
  Builder b = Builder::from(d);
  long x = b.ds[dart].origin, y = b.ds[t].origin;
  if (x == y) {
    b.kill_edge(dart);
  } else {
    // contract: splice y's rotation (minus t) into x's place of `dart`
    auto ry = b.rot[y];
    size_t pt = b.pos_in(ry, t);
    std::vector<long> splice;
    for (size_t i = 1; i < ry.size(); ++i)
      splice.push_back(ry[(pt + i) % ry.size()]);
    auto& rx = b.rot[x];
    size_t pd = b.pos_in(rx, dart);
    rx.erase(rx.begin() + (long)pd);
    rx.insert(rx.begin() + (long)pd, splice.begin(), splice.end());
    b.rot.erase(y);
    for (long s : splice) b.ds[s].origin = x;
    b.ds[dart].alive = false;
    b.ds[t].alive = false;
  }
  Diagram out = b.to_diagram(d);
  check_same_boundary(d, out, "remove edge");
  return out;
}

namespace {

// Pads the single corner (a, succ(a)) at vertex x, rerouting the incident
// face through a clone joined by an inessential edge and two duplicated
// edges.  Returns nothing; remaps b.outer when the rerouted darts carried it.
void pad_corner(Builder& b, long x, long a) {
  long bd = b.succ(a);
  long ta = b.ds[a].twin, tb = b.ds[bd].twin;
  long va = b.ds[ta].origin, vb = b.ds[tb].origin;
  if (va == x || vb == x) throw error("pad: loop edge at the padded vertex");
  long xc = b.fresh_vertex++;
  long e = b.new_dart(x, -1, 1), te = b.new_dart(xc, -1, 1);
  b.link(e, te);
  long ap = b.new_dart(xc, b.ds[a].sym, b.ds[a].sign);
  long tap = b.new_dart(va, b.ds[ta].sym, b.ds[ta].sign);
  b.link(ap, tap);
  long bp = b.new_dart(xc, b.ds[bd].sym, b.ds[bd].sign);
  long tbp = b.new_dart(vb, b.ds[tb].sym, b.ds[tb].sign);
  b.link(bp, tbp);
  b.insert_after(a, e);
  b.rot[xc] = {bp, te, ap};
  b.insert_before(ta, tap);
  b.insert_after(tb, tbp);
  if (b.outer == ta) b.outer = tap;
  if (b.outer == bd) b.outer = bp;
}

// Splits every corner at the vertex apart, with no revisit precondition.
Diagram pad_all_corners(const Diagram& d, long vertex) {
  Builder b = Builder::from(d);
  auto it = b.rot.find(vertex);
  if (it == b.rot.end()) throw error("pad: no such vertex");
  std::vector<long> original = it->second;
  if (original.size() < 2) throw error("pad: vertex has a single corner");
  for (long a : original) pad_corner(b, vertex, a);
  Diagram out = b.to_diagram(d);
  check_same_boundary(d, out, "pad");
  return out;
}

}  // namespace

Diagram op_pad_vertex(const Diagram& d, long vertex, long face) {
  structural_check(d);
  FaceSet fs = trace_faces(d);
  if (face < 0 || face >= (long)fs.orbits.size())
    throw error("pad: no such face");
  long visits = 0;
  for (long dart : fs.orbits[face])
    if (d.darts[dart].origin == vertex) ++visits;
  if (visits < 2) throw error("pad: face does not revisit the vertex");
  return pad_all_corners(d, vertex);
}

namespace {

// Boundary cycle of the union of the given bounded faces, as the inside-face
// darts in counterclockwise order.  Requires the union's boundary to be a
// simple cycle; when `repeated` is given, a revisited boundary vertex is
// reported there (and an empty cycle returned) instead of throwing.
std::vector<long> subdiagram_boundary(const Diagram& d, const FaceSet& fs,
                                      const std::vector<long>& faces,
                                      long* repeated = nullptr) {
  std::set<long> fset(faces.begin(), faces.end());
  if (fset.count(fs.outer_face))
    throw error("subdiagram: faces must be bounded");
  std::set<long> inside;
  long nb = 0;
  for (long f : faces)
    for (long dart : fs.orbits[f]) {
      inside.insert(dart);
      if (!fset.count(fs.face_of[d.darts[dart].twin])) ++nb;
    }
  auto interior = [&](long dart) {
    return inside.count(dart) && inside.count(d.darts[dart].twin);
  };
  long start = -1;
  for (long dart : inside)
    if (!interior(dart)) {
      start = dart;
      break;
    }
  if (start < 0) throw error("subdiagram: no boundary (closed surface?)");
  // Face walk of the region left after deleting the interior edges: the
  // rotation successor skips darts of deleted edges at the same vertex.
  std::vector<long> cycle;
  long cur = start;
  do {
    cycle.push_back(cur);
    long e = d.darts[d.darts[cur].twin].next;  // psi
    while (interior(e)) e = d.darts[e].next;
    cur = e;
    if ((long)cycle.size() > nb) throw error("subdiagram: boundary runaway");
  } while (cur != start);
  if ((long)cycle.size() != nb)
    throw error("subdiagram: boundary is not a single cycle");
  std::set<long> verts;
  for (long dart : cycle)
    if (!verts.insert(d.darts[dart].origin).second) {
      if (repeated) {
        *repeated = d.darts[dart].origin;
        return {};
      }
      throw error("subdiagram: boundary is not simple");
    }
  return cycle;
}

}  // namespace

Diagram op_remove_trivial_subdiagram(const Diagram& d,
                                     const std::vector<long>& faces) {
  structural_check(d);
  FaceSet fs = trace_faces(d);
  std::vector<long> cycle = subdiagram_boundary(d, fs, faces);
  LabelSeq lbl;
  for (long dart : cycle) lbl.push_back({d.darts[dart].sym, d.darts[dart].sign});
  if (!seq_word(lbl).empty())
    throw error("remove subdiagram: boundary label is not freely trivial");
  if (seq_has_silent(lbl))
    throw error("remove subdiagram: inessential boundary edge");
  std::set<long> fset(faces.begin(), faces.end());
  std::set<long> inside;
  for (long f : faces)
    for (long dart : fs.orbits[f]) inside.insert(dart);
  Builder b = Builder::from(d);
  // delete strict interior
  for (long dart : inside)
    if (inside.count(d.darts[dart].twin) && b.ds[dart].alive) b.kill_edge(dart);
  // fold the emptied region shut
  std::vector<long> cyc = cycle;
  while (!cyc.empty()) {
    if (cyc.size() == 2) {
      long d1 = cyc[0], d2 = cyc[1];
      if (!(Lbl{b.ds[d2].sym, b.ds[d2].sign} ==
            inv_lbl({b.ds[d1].sym, b.ds[d1].sign})))
        throw error("remove subdiagram: final fold labels do not cancel");
      long td1 = b.ds[d1].twin, td2 = b.ds[d2].twin;
      if (b.outer == d2) b.outer = td1;
      if (b.outer == td2) b.outer = d1;
      b.kill_edge(d2);
      cyc.clear();
      continue;
    }
    size_t k = cyc.size();
    for (size_t i = 0; i + 1 < cyc.size(); ++i) {
      if (Lbl{b.ds[cyc[i + 1]].sym, b.ds[cyc[i + 1]].sign} ==
          inv_lbl({b.ds[cyc[i]].sym, b.ds[cyc[i]].sign})) {
        k = i;
        break;
      }
    }
    if (k >= cyc.size())
      throw error("remove subdiagram: no canceling corner");
    long d1 = cyc[k], d2 = cyc[k + 1];
    long td1 = b.ds[d1].twin, td2 = b.ds[d2].twin;
    long za = b.ds[d1].origin, vfar = b.ds[td2].origin;
    if (b.succ(td1) != d2)
      throw error("remove subdiagram: fold corner not adjacent");
    b.remove_from_rot(d2);
    // splice vfar's darts (minus td2), starting after td2, in before d1
    auto ry = b.rot[vfar];
    size_t pt = b.pos_in(ry, td2);
    std::vector<long> splice;
    for (size_t i = 1; i < ry.size(); ++i)
      splice.push_back(ry[(pt + i) % ry.size()]);
    b.rot.erase(vfar);
    for (long s : splice) b.ds[s].origin = za;
    auto& ra = b.rot[za];
    size_t pd = b.pos_in(ra, d1);
    ra.insert(ra.begin() + (long)pd, splice.begin(), splice.end());
    if (b.outer == d2) b.outer = td1;
    if (b.outer == td2) b.outer = d1;
    b.ds[d2].alive = false;
    b.ds[td2].alive = false;
    cyc.erase(cyc.begin() + (long)k, cyc.begin() + (long)k + 2);
  }
  Diagram out = b.to_diagram(d);
  check_same_boundary(d, out, "remove subdiagram");
  return out;
}

Diagram op_quotient_face(const Diagram& d, long face,
                         const Diagram& replacement) {
  structural_check(d);
  if (!validate_diagram(replacement).ok())
    throw error("quotient: replacement diagram is invalid");
  FaceSet fs = trace_faces(d);
  if (face < 0 || face >= (long)fs.orbits.size() || face == fs.outer_face)
    throw error("quotient: no such bounded face");
  const auto& orbit = fs.orbits[face];
  {
    std::set<long> verts;
    for (long dart : orbit)
      if (!verts.insert(d.darts[dart].origin).second)
        throw error("quotient: face is not simple");
  }
  std::vector<long> walk = boundary_walk(replacement);
  {
    std::set<long> verts;
    for (long w : walk)
      if (!verts.insert(replacement.darts[w].origin).second)
        throw error("quotient: replacement boundary is not simple");
  }
  size_t n = orbit.size();
  if (walk.size() != n)
    throw error("quotient: boundary lengths differ");
  LabelSeq fl, rl;
  for (long dart : orbit) fl.push_back({d.darts[dart].sym, d.darts[dart].sign});
  for (long w : walk)
    rl.push_back({replacement.darts[w].sym, replacement.darts[w].sign});
  size_t off = n;
  for (size_t o = 0; o < n && off == n; ++o) {
    bool ok = true;
    for (size_t j = 0; j < n && ok; ++j) ok = fl[j] == rl[(j + o) % n];
    if (ok) off = o;
  }
  if (off == n) throw error("quotient: boundary labels do not match");

  Builder b = Builder::from(d);
  std::set<long> bedge;  // replacement boundary darts and twins
  for (long w : walk) {
    bedge.insert(w);
    bedge.insert(replacement.darts[w].twin);
  }
  // vertex map: replacement walk position p sits at face position (p-off)%n
  std::map<long, long> vmap;
  for (size_t p = 0; p < n; ++p) {
    size_t j = (p + n - off) % n;
    vmap[replacement.darts[walk[p]].origin] = b.ds[orbit[j]].origin;
  }
  Builder rb = Builder::from(replacement);
  std::map<long, long> dmap;
  for (size_t i = 0; i < replacement.darts.size(); ++i) {
    if (bedge.count((long)i)) continue;
    long ov = replacement.darts[i].origin;
    auto vt = vmap.find(ov);
    long nv;
    if (vt != vmap.end()) {
      nv = vt->second;
    } else {
      nv = b.fresh_vertex++;
      vmap[ov] = nv;
    }
    dmap[(long)i] =
        b.new_dart(nv, replacement.darts[i].sym, replacement.darts[i].sign);
  }
  for (const auto& [old_id, new_id] : dmap)
    b.ds[new_id].twin = dmap.at(replacement.darts[old_id].twin);
  // interior vertices: copy rotation cycles wholesale
  for (const auto& [v, cyc] : rb.rot) {
    bool on_boundary = false;
    for (long w : walk)
      if (replacement.darts[w].origin == v) on_boundary = true;
    if (on_boundary) continue;
    std::vector<long> mapped;
    for (long c : cyc) mapped.push_back(dmap.at(c));
    b.rot[vmap.at(v)] = std::move(mapped);
  }
  // boundary vertices: splice the interior fan into the face corner
  for (size_t p = 0; p < n; ++p) {
    long op_dart = walk[p];
    long q_dart = replacement.darts[walk[(p + n - 1) % n]].twin;
    const auto& rcyc = rb.rot.at(replacement.darts[op_dart].origin);
    size_t pq = rb.pos_in(rcyc, q_dart);
    std::vector<long> fan;
    for (size_t i = 1; i < rcyc.size(); ++i) {
      long c = rcyc[(pq + i) % rcyc.size()];
      if (c == op_dart) break;
      fan.push_back(dmap.at(c));
    }
    if (fan.empty()) continue;
    size_t j = (p + n - off) % n;
    long c_j = orbit[j];
    long a_j = b.ds[orbit[(j + n - 1) % n]].twin;
    if (b.succ(a_j) != c_j) throw error("quotient: corner mismatch");
    auto& r = b.rot[b.ds[c_j].origin];
    size_t pc = b.pos_in(r, c_j);
    r.insert(r.begin() + (long)pc, fan.begin(), fan.end());
  }
  Diagram out = b.to_diagram(d);
  check_same_boundary(d, out, "quotient");
  return out;
}

Diagram op_excise(const Diagram& d, long start, long rel) {
  structural_check(d);
  if (rel < 0 || rel >= (long)d.pres.relators.size())
    throw error("excise: no such relator");
  std::vector<long> walk = boundary_walk(d);
  long L = (long)walk.size();
  LabelSeq bl = boundary_label(d);
  LabelSeq rw = word_seq(d.pres.relators[rel]);
  long n = (long)rw.size();
  if (n >= L) throw error("excise: complement would be empty");
  if (start < 0 || start >= L) throw error("excise: offset out of range");
  LabelSeq rho = cyclic_slice(bl, (size_t)start, (size_t)n);
  bool plus = seq_is_rotation(rho, rw);
  bool minus = seq_is_rotation(seq_invert(rho), rw);
  if (!plus && !minus)
    throw error("excise: subpath label is not a relator shift");
  long ws = walk[start];
  long wend = walk[(start + n - 1) % L];
  long wbeta = walk[(start + n) % L];
  long wprev = walk[(start - 1 + L) % L];
  Builder b = Builder::from(d);
  long x = b.ds[ws].origin;
  long y = b.ds[b.ds[wend].twin].origin;
  if (x == y) throw error("excise: subpath endpoints coincide");
  if (wbeta == ws || b.ds[wbeta].origin != y)
    throw error("excise: boundary walk is degenerate at the subpath");
  if (b.succ(ws) != b.ds[wprev].twin || b.succ(wbeta) != b.ds[wend].twin)
    throw error("excise: outer corners not in expected position");
  // merge y into x across the outer face
  auto rx = b.rot[x];
  auto ry = b.rot[y];
  std::vector<long> ax, ay;
  size_t px = b.pos_in(rx, b.ds[wprev].twin);
  for (size_t i = 0; i < rx.size(); ++i) ax.push_back(rx[(px + i) % rx.size()]);
  size_t py = b.pos_in(ry, b.ds[wend].twin);
  for (size_t i = 0; i < ry.size(); ++i) ay.push_back(ry[(py + i) % ry.size()]);
  std::vector<long> merged = ay;
  merged.insert(merged.end(), ax.begin(), ax.end());
  b.rot.erase(y);
  b.rot[x] = merged;
  for (long dart : ay) b.ds[dart].origin = x;
  b.outer = b.ds[wbeta].twin;
  Diagram out = b.to_diagram(d);
  if (boundary_length(out) != Int(L - n))
    throw error("excise: boundary length did not drop by |r|");
  return out;
}

// Builders ------------------------------------------------------------------

Diagram cycle_diagram(const Presentation& pres, const RleWord& boundary) {
  LabelSeq w = word_seq(boundary);
  if (w.empty()) throw error("cycle diagram: empty boundary");
  long n = (long)w.size();
  Diagram d{{}, -1, pres, false, false};
  d.darts.resize(2 * n);
  for (long i = 0; i < n; ++i) {
    long fwd = 2 * i, bwd = 2 * i + 1;
    d.darts[fwd] = {bwd, -1, i, w[i].first, w[i].second};
    d.darts[bwd] = {fwd, -1, (i + 1) % n, w[i].first, -w[i].second};
  }
  for (long i = 0; i < n; ++i) {
    long fwd = 2 * i;
    long tprev = 2 * ((i - 1 + n) % n) + 1;
    d.darts[fwd].next = tprev;
    d.darts[tprev].next = fwd;
  }
  // the boundary walk then starts at letter 0
  d.outer = 2 * (n - 1) + 1;
  structural_check(d);
  return d;
}

Diagram bouquet_diagram(const Presentation& pres,
                        const std::vector<std::pair<RleWord, int>>& petals) {
  if (petals.empty()) throw error("bouquet: no petals");
  Builder b;
  b.fresh_vertex = 1;
  std::vector<long> first, last_twin, first_twin;
  for (const auto& [w, sign] : petals) {
    LabelSeq ls = word_seq(sign >= 0 ? w : w.inverse());
    if (ls.empty()) throw error("bouquet: empty petal");
    long n = (long)ls.size();
    std::vector<long> fwd(n), bwd(n), verts(n);
    verts[0] = 0;
    for (long i = 1; i < n; ++i) verts[i] = b.fresh_vertex++;
    for (long i = 0; i < n; ++i) {
      fwd[i] = b.new_dart(verts[i], ls[i].first, ls[i].second);
      bwd[i] = b.new_dart(verts[(i + 1) % n], ls[i].first, -ls[i].second);
      b.link(fwd[i], bwd[i]);
    }
    for (long i = 1; i < n; ++i) b.rot[verts[i]] = {fwd[i], bwd[i - 1]};
    first.push_back(fwd[0]);
    last_twin.push_back(bwd[n - 1]);
    first_twin.push_back(bwd[0]);
  }
  auto& r0 = b.rot[0];
  for (size_t j = 0; j < petals.size(); ++j) {
    r0.push_back(last_twin[j]);
    r0.push_back(first[j]);
  }
  // outer dart: successor of the first petal's opening twin on the outer
  // orbit, so the boundary walk starts at the first petal's first letter
  b.outer = b.psi(first_twin[0]);
  Diagram tmpl{{}, -1, pres, false, false};
  return b.to_diagram(tmpl);
}

Diagram mirror_pair_diagram(const Presentation& pres, long rel) {
  if (rel < 0 || rel >= (long)pres.relators.size())
    throw error("mirror pair: no such relator");
  LabelSeq r = word_seq(pres.relators[rel]);
  long n = (long)r.size();
  if (n < 2) throw error("mirror pair: relator too short");
  Builder b;
  b.fresh_vertex = 2;
  long e = b.new_dart(0, r[0].first, r[0].second);
  long te = b.new_dart(1, r[0].first, -r[0].second);
  b.link(e, te);
  // alpha: path 1 -> ... -> 0 reading r[1..n-1]
  std::vector<long> av(n), a(n), ta(n);  // av[i] = origin of a[i]
  av[1] = 1;
  for (long i = 2; i < n; ++i) av[i] = b.fresh_vertex++;
  for (long i = 1; i < n; ++i) {
    long head = i + 1 < n ? av[i + 1] : 0;
    a[i] = b.new_dart(av[i], r[i].first, r[i].second);
    ta[i] = b.new_dart(head, r[i].first, -r[i].second);
    b.link(a[i], ta[i]);
  }
  // beta: path 0 -> ... -> 1 reading r[n-1]^-1 ... r[1]^-1
  std::vector<long> bv(n), bd(n), tb(n);
  bv[1] = 0;
  for (long i = 2; i < n; ++i) bv[i] = b.fresh_vertex++;
  for (long i = 1; i < n; ++i) {
    long head = i + 1 < n ? bv[i + 1] : 1;
    bd[i] = b.new_dart(bv[i], r[n - i].first, -r[n - i].second);
    tb[i] = b.new_dart(head, r[n - i].first, r[n - i].second);
    b.link(bd[i], tb[i]);
  }
  b.rot[0] = {e, bd[1], ta[n - 1]};
  b.rot[1] = {te, a[1], tb[n - 1]};
  for (long i = 2; i < n; ++i) {
    b.rot[av[i]] = {a[i], ta[i - 1]};
    b.rot[bv[i]] = {bd[i], tb[i - 1]};
  }
  b.outer = ta[1];
  Diagram tmpl{{}, -1, pres, false, false};
  return b.to_diagram(tmpl);
}

Diagram pad_to_simple_boundary(const Diagram& d) {
  Diagram cur = d;
  for (int guard = 0; guard < 10000; ++guard) {
    std::vector<long> walk = boundary_walk(cur);
    std::map<long, int> count;
    long bad = -1;
    for (long w : walk)
      if (++count[cur.darts[w].origin] == 2) bad = cur.darts[w].origin;
    if (bad < 0) return cur;
    FaceSet fs = trace_faces(cur);
    cur = op_pad_vertex(cur, bad, fs.outer_face);
  }
  throw error("pad to simple boundary: did not terminate");
}

// Normalization -------------------------------------------------------------

namespace {

bool label_is_ss(const LabelSeq& l) {
  return l.size() == 2 && l[0].first >= 0 && l[1] == inv_lbl(l[0]);
}

bool label_is_1ss(const LabelSeq& l) {
  if (l.size() != 3) return false;
  for (size_t i = 0; i < 3; ++i) {
    if (l[i].first >= 0) continue;
    const Lbl& u = l[(i + 1) % 3];
    const Lbl& v = l[(i + 2) % 3];
    if (u.first >= 0 && v == inv_lbl(u)) return true;
  }
  return false;
}

bool conforming(const LabelSeq& l) { return label_is_ss(l) || label_is_1ss(l); }

// Folds one canceling corner of the face: two consecutive essential boundary
// darts with inverse labels, on distinct edges, get glued together, shrinking
// the face by two darts.  Boundary label and face counts are untouched.
// Returns nothing when the face has no foldable corner.
std::optional<Diagram> fold_face_corner(const Diagram& d,
                                        const std::vector<long>& orbit) {
  size_t n = orbit.size();
  for (size_t i = 0; i < n; ++i) {
    long d1 = orbit[i], d2 = orbit[(i + 1) % n];
    if (d1 == d2 || d.darts[d1].sym < 0 || d.darts[d2].sym < 0) continue;
    if (!(Lbl{d.darts[d2].sym, d.darts[d2].sign} ==
          inv_lbl({d.darts[d1].sym, d.darts[d1].sign})))
      continue;
    long td1 = d.darts[d1].twin, td2 = d.darts[d2].twin;
    if (d2 == td1) continue;  // spur: the edge would be glued onto itself
    long za = d.darts[d1].origin, v = d.darts[d2].origin;
    long vfar = d.darts[td2].origin;
    if (za == v || vfar == v) continue;  // loop edges are handled elsewhere
    if (d.outer == d1 || d.outer == d2) continue;
    // the glued edge keeps the two outward darts: twin(td1) becomes td2
    Builder b = Builder::from(d);
    b.remove_from_rot(d2);
    if (za == vfar) {
      // gluing pulls the face's two visits of za together, which pinches
      // the vertex apart: the arc between d1 and td2 moves to a new vertex
      // together with the surviving dart td2
      auto r = b.rot[za];
      size_t pd = b.pos_in(r, d1), pt = b.pos_in(r, td2);
      std::vector<long> arc_in, arc_out;
      for (size_t j = (pd + 1) % r.size(); j != pt; j = (j + 1) % r.size())
        arc_in.push_back(r[j]);
      for (size_t j = (pt + 1) % r.size(); j != pd; j = (j + 1) % r.size())
        arc_out.push_back(r[j]);
      arc_in.push_back(td2);
      long zin = b.fresh_vertex++;
      if (arc_out.empty())
        b.rot.erase(za);
      else
        b.rot[za] = arc_out;
      b.rot[zin] = arc_in;
      for (long s : arc_in) b.ds[s].origin = zin;
    } else {
      // merge vfar into za at d1's slot, ending with td2
      auto ry = b.rot[vfar];
      size_t pt = b.pos_in(ry, td2);
      std::vector<long> splice;
      for (size_t j = 1; j <= ry.size(); ++j)
        splice.push_back(ry[(pt + j) % ry.size()]);
      b.rot.erase(vfar);
      for (long s : splice) b.ds[s].origin = za;
      auto& ra = b.rot[za];
      size_t pd = b.pos_in(ra, d1);
      ra.erase(ra.begin() + (long)pd);
      ra.insert(ra.begin() + (long)pd, splice.begin(), splice.end());
    }
    b.ds[d1].alive = false;
    b.ds[d2].alive = false;
    b.link(td1, td2);
    Diagram out = b.to_diagram(d);
    check_same_boundary(d, out, "fold corner");
    return out;
  }
  return std::nullopt;
}

// One elimination step against the chosen inessential face; returns the new
// diagram.  Steps, in order of preference: delete a bare 1-loop face,
// contract a non-loop inessential boundary edge, pad a repeated vertex, fold
// the face away (pairing it with its loop partner when it has a loop edge).
Diagram eliminate_step(const Diagram& d, long face, const FaceSet& fs,
                       const std::vector<FaceInfo>& info) {
  const auto& orbit = fs.orbits[face];
  if (orbit.size() == 1 && d.darts[orbit[0]].sym < 0) {
    // silent loop around an empty disk
    long dart = orbit[0];
    long t = d.darts[dart].twin;
    if (d.outer == dart) throw error("eliminate: outer inside a silent loop");
    Builder b = Builder::from(d);
    if (b.outer == t) {
      // the merged face keeps every other dart of the old outer orbit
      long repl = -1;
      for (long i = 0; i < (long)d.darts.size(); ++i)
        if (i != dart && i != t && fs.face_of[i] == fs.face_of[t]) repl = i;
      if (repl < 0) throw error("eliminate: silent loop is the whole diagram");
      b.outer = repl;
    }
    b.kill_edge(dart);
    Diagram out = b.to_diagram(d);
    return out;
  }
  for (long dart : orbit) {
    if (d.darts[dart].sym >= 0) continue;
    long t = d.darts[dart].twin;
    if (d.darts[dart].origin != d.darts[t].origin)
      return op_remove_inessential_edge(d, dart);
  }
  // glue canceling corners shut; this collapses pinched freely trivial
  // faces without padding
  if (auto folded = fold_face_corner(d, orbit)) return *folded;
  std::map<long, int> count;
  for (long dart : orbit)
    if (++count[d.darts[dart].origin] == 2) {
      long x = d.darts[dart].origin;
      // a silent loop at the vertex blocks padding; when both of its sides
      // are bounded inessential faces, deleting it merges them into one
      // freely trivial face and unblocks the vertex
      for (long i = 0; i < (long)d.darts.size(); ++i) {
        const Dart& a = d.darts[i];
        if (a.sym >= 0 || i > a.twin || a.origin != x) continue;
        if (d.darts[a.twin].origin != x) continue;
        long f1 = fs.face_of[i], f2 = fs.face_of[a.twin];
        if (f1 == fs.outer_face || f2 == fs.outer_face || f1 == f2) continue;
        if (info[f1].essential || info[f2].essential) continue;
        return op_remove_inessential_edge(d, i);
      }
      return op_pad_vertex(d, x, face);
    }
  for (long dart : orbit) {
    if (d.darts[dart].sym >= 0) continue;
    // inessential loop on the boundary: fold together with the partner face
    long partner = fs.face_of[d.darts[dart].twin];
    if (partner == face) return op_remove_inessential_edge(d, dart);
    if (partner == fs.outer_face || info[partner].essential)
      throw error("eliminate: inessential loop against an essential side");
    return op_remove_trivial_subdiagram(d, {face, partner});
  }
  return op_remove_trivial_subdiagram(d, {face});
}

Diagram eliminate_inessential(const Diagram& d, bool only_nonconforming) {
  Diagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    FaceSet fs = trace_faces(cur);
    auto info = face_info(cur);
    long target = -1;
    for (size_t f = 0; f < info.size() && target < 0; ++f) {
      if (info[f].outer || info[f].essential) continue;
      if (only_nonconforming && conforming(info[f].label)) continue;
      target = (long)f;
    }
    if (target < 0) return cur;
    cur = eliminate_step(cur, target, fs, info);
  }
  throw error("normalize: elimination did not terminate");
}

Diagram contract_stray_inessential_edges(const Diagram& d) {
  Diagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    long found = -1;
    for (long i = 0; i < (long)cur.darts.size() && found < 0; ++i) {
      const Dart& a = cur.darts[i];
      if (a.sym < 0 && a.origin != cur.darts[a.twin].origin) found = i;
    }
    if (found < 0) return cur;
    cur = op_remove_inessential_edge(cur, found);
  }
  throw error("normalize: edge contraction did not terminate");
}

// A silent loop between two bounded inessential faces blocks the simple
// s s^-1 shape (their union boundary always revisits the loop vertex).
// Deleting the loop merges them into one freely trivial face, which the
// nonconforming sweep then removes.
Diagram enforce_wlog2(const Diagram& d) {
  Diagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    FaceSet fs = trace_faces(cur);
    auto info = face_info(cur);
    long loop = -1;
    for (long i = 0; i < (long)cur.darts.size() && loop < 0; ++i) {
      const Dart& a = cur.darts[i];
      if (a.sym >= 0 || i > a.twin) continue;
      if (a.origin != cur.darts[a.twin].origin) continue;
      long f1 = fs.face_of[i], f2 = fs.face_of[a.twin];
      if (f1 == fs.outer_face || f2 == fs.outer_face || f1 == f2) continue;
      if (info[f1].essential || info[f2].essential) continue;
      loop = i;
    }
    if (loop < 0) return cur;
    cur = op_remove_inessential_edge(cur, loop);
    cur = eliminate_inessential(cur, /*only_nonconforming=*/true);
    cur = contract_stray_inessential_edges(cur);
  }
  throw error("normalize: wlog2 enforcement did not terminate");
}

void verify_wlog2(const Diagram& d) {
  FaceSet fs = trace_faces(d);
  auto info = face_info(d);
  for (size_t f = 0; f < info.size(); ++f) {
    if (info[f].outer || info[f].essential) continue;
    if (label_is_ss(info[f].label)) {
      std::set<long> verts;
      for (long dart : fs.orbits[f]) verts.insert(d.darts[dart].origin);
      if (verts.size() == fs.orbits[f].size()) continue;
      throw error("wlog2: s s^-1 face is not simple");
    }
    if (label_is_1ss(info[f].label)) {
      long loop = -1;
      for (long dart : fs.orbits[f])
        if (d.darts[dart].sym < 0) loop = dart;
      long partner = fs.face_of[d.darts[loop].twin];
      if (partner == fs.outer_face || info[partner].essential)
        throw error("wlog2: 1 s s^-1 face has no inessential partner");
      auto cyc = subdiagram_boundary(d, fs, {(long)f, partner});
      LabelSeq lbl;
      for (long c : cyc) lbl.push_back({d.darts[c].sym, d.darts[c].sign});
      if (!seq_word(lbl).empty() || seq_has_silent(lbl))
        throw error("wlog2: enclosing subdiagram boundary is not s...s^-1");
      continue;
    }
    throw error("wlog2: inessential face of unexpected shape");
  }
}

Diagram reduce_cancellations(const Diagram& d) {
  Diagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    FaceSet fs = trace_faces(cur);
    auto info = face_info(cur);
    std::vector<long> cancels;
    for (long e = 0; e < (long)cur.darts.size(); ++e)
      if (e < cur.darts[e].twin && edges_cancel(cur, fs, info, e))
        cancels.push_back(e);
    if (cancels.empty()) {
      // folding behind a padded vertex leaves sliver faces; sweep them out
      // and re-scan, since new essential adjacencies can appear
      if (is_bare(cur)) return cur;
      cur = eliminate_inessential(cur, /*only_nonconforming=*/false);
      cur = contract_stray_inessential_edges(cur);
      continue;
    }
    // fold any pair whose union boundary is already a simple cycle
    bool progressed = false;
    std::vector<long> blocked;  // repeated vertices of the stuck pairs
    for (long edge : cancels) {
      long f1 = fs.face_of[edge], f2 = fs.face_of[cur.darts[edge].twin];
      // a pair glued along every edge is a sphere bubble hanging off a
      // pinch vertex; excise it outright (the signed counts cancel)
      bool closed = true;
      for (long f : {f1, f2})
        for (long dart : fs.orbits[f]) {
          long tf = fs.face_of[cur.darts[dart].twin];
          if (tf != f1 && tf != f2) closed = false;
        }
      if (closed) {
        Builder b = Builder::from(cur);
        for (long f : {f1, f2})
          for (long dart : fs.orbits[f])
            if (b.ds[dart].alive) b.kill_edge(dart);
        Diagram next = b.to_diagram(cur);
        check_same_boundary(cur, next, "remove closed pair");
        cur = next;
        progressed = true;
        break;
      }
      long bad = -1;
      subdiagram_boundary(cur, fs, {f1, f2}, &bad);
      if (bad < 0) {
        cur = op_remove_trivial_subdiagram(cur, {f1, f2});
        progressed = true;
        break;
      }
      blocked.push_back(bad);
    }
    if (progressed) continue;
    // otherwise split a revisited vertex apart; padding preserves the
    // boundary label and all face counts
    for (long bad : blocked) {
      try {
        cur = pad_all_corners(cur, bad);
        progressed = true;
        break;
      } catch (const error&) {
        // a loop edge at this vertex; try another stuck pair
      }
    }
    if (!progressed)
      throw error("normalize: canceling pair is blocked by loop edges");
  }
  throw error("normalize: reduction did not terminate");
}

}  // namespace

Diagram normalize(const Diagram& d, Wlog level) {
  FaceCounts before = face_counts(d);
  Diagram cur = eliminate_inessential(d, /*only_nonconforming=*/true);
  cur = contract_stray_inessential_edges(cur);
  if (level >= Wlog::Two) {
    if (!cur.generators_nontrivial)
      throw error("normalize: wlog2 needs nontrivial generators");
    cur = enforce_wlog2(cur);
    verify_wlog2(cur);
  }
  if (level >= Wlog::Three) {
    if (!cur.aspherical) throw error("normalize: wlog3 needs asphericity");
    cur = eliminate_inessential(cur, /*only_nonconforming=*/false);
    cur = contract_stray_inessential_edges(cur);
    if (!is_bare(cur)) throw error("normalize: wlog3 did not reach bare");
  }
  if (level >= Wlog::Four) {
    if (!check_cprime(cur.pres).ok())
      throw error("normalize: wlog4 needs C'(1/6)");
    for (const auto& r : cur.pres.relators)
      if (r.length() < 2) throw error("normalize: wlog4 needs |r| >= 2");
    cur = reduce_cancellations(cur);
    if (!is_reduced(cur)) throw error("normalize: wlog4 did not reach reduced");
  }
  check_same_boundary(d, cur, "normalize");
  FaceCounts after = face_counts(cur);
  if (before.sigma != after.sigma)
    throw error("normalize: signed face counts changed");
  return cur;
}

GreendlingerFace greendlinger_check(const Diagram& d) {
  if (!is_bare(d) || !is_reduced(d))
    throw error("greendlinger: diagram must be bare and reduced");
  if (!check_cprime(d.pres).ok())
    throw error("greendlinger: presentation must satisfy C'(1/6)");
  FaceSet fs = trace_faces(d);
  if (fs.orbits.size() < 2)
    throw error("greendlinger: no bounded face");
  std::vector<long> walk = boundary_walk(d);
  std::map<long, long> pos;
  for (size_t i = 0; i < walk.size(); ++i) pos[walk[i]] = (long)i;
  long L = (long)walk.size();
  for (size_t f = 0; f < fs.orbits.size(); ++f) {
    if ((long)f == fs.outer_face) continue;
    const auto& orbit = fs.orbits[f];
    long m = (long)orbit.size();
    // max cyclic run of orbit darts that are consecutive along the walk
    auto on_walk = [&](long i) { return pos.count(orbit[i % m]); };
    auto chained = [&](long i) {
      // orbit position i and i+1 both on the walk and consecutive there
      if (!on_walk(i) || !on_walk(i + 1)) return false;
      return (pos[orbit[(i + 1) % m]] - pos[orbit[i % m]] - 1 + 2 * L) % L ==
             0;
    };
    long best = 0;
    for (long s = 0; s < m; ++s) {
      if (!on_walk(s)) continue;
      long len = 1;
      while (len < m && chained(s + len - 1)) ++len;
      best = std::max(best, len);
      if (best == m) break;
    }
    if (2 * best > m) return {true, (long)f, Int(best)};
  }
  throw error("greendlinger: no qualifying face (theorem violation)");
}

Report perimeter_check(const Diagram& d, const Rat& lambda) {
  Report rep;
  rep.add(is_bare(d), "diagram is bare");
  rep.add(is_reduced(d), "diagram is reduced");
  Presentation p = d.pres;
  p.lambda = lambda;
  rep.add(check_cprime(p).ok(), "presentation satisfies the piece bound");
  FaceSet fs = trace_faces(d);
  Int ps = 0;
  for (size_t f = 0; f < fs.orbits.size(); ++f)
    if ((long)f != fs.outer_face) ps += Int((long)fs.orbits[f].size());
  Int L = d.darts.empty() ? Int(0)
                          : Int((long)fs.orbits[fs.outer_face].size());
  Rat lhs = (Rat(1) - Rat(6) * lambda) * Rat(ps);
  rep.add(lhs <= Rat(L), "(1 - 6 lambda) * PS(M) <= l(dM)",
          "PS=" + ps.get_str() + " l(dM)=" + L.get_str());
  return rep;
}

// Text format ---------------------------------------------------------------

std::string format_diagram(const Diagram& d) {
  std::ostringstream os;
  os << "diagram\n";
  os << "outer " << d.outer << "\n";
  os << "aspherical " << (d.aspherical ? 1 : 0) << "\n";
  os << "gens_nontrivial " << (d.generators_nontrivial ? 1 : 0) << "\n";
  os << "darts " << d.darts.size() << "\n";
  for (size_t i = 0; i < d.darts.size(); ++i) {
    const Dart& a = d.darts[i];
    os << "dart " << i << " " << a.twin << " " << a.next << " " << a.origin
       << " ";
    if (a.sym < 0)
      os << "1 .";
    else
      os << d.pres.alphabet.name(a.sym) << " " << (a.sign > 0 ? "+" : "-");
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

Diagram parse_diagram(const std::string& text, const Presentation& pres) {
  std::istringstream is(text);
  std::string tok;
  Diagram d{{}, -1, pres, false, false};
  if (!(is >> tok) || tok != "diagram") throw error("parse diagram: header");
  long ndarts = -1;
  while (is >> tok) {
    if (tok == "outer") {
      is >> d.outer;
    } else if (tok == "aspherical") {
      int v;
      is >> v;
      d.aspherical = v != 0;
    } else if (tok == "gens_nontrivial") {
      int v;
      is >> v;
      d.generators_nontrivial = v != 0;
    } else if (tok == "darts") {
      is >> ndarts;
      if (ndarts < 0) throw error("parse diagram: dart count");
      d.darts.resize(ndarts);
    } else if (tok == "dart") {
      long id;
      Dart a;
      std::string label, dir;
      if (!(is >> id >> a.twin >> a.next >> a.origin >> label >> dir))
        throw error("parse diagram: dart record");
      if (id < 0 || id >= ndarts) throw error("parse diagram: dart id");
      if (label == "1") {
        a.sym = -1;
        a.sign = 1;
        if (dir != ".") throw error("parse diagram: inessential dir");
      } else {
        auto s = pres.alphabet.find(label);
        if (!s) throw error("parse diagram: unknown symbol " + label);
        a.sym = *s;
        if (dir != "+" && dir != "-") throw error("parse diagram: dir");
        a.sign = dir == "+" ? 1 : -1;
      }
      d.darts[id] = a;
    } else if (tok == "end") {
      structural_check(d);
      return d;
    } else {
      throw error("parse diagram: unknown token " + tok);
    }
  }
  throw error("parse diagram: missing end");
}

// Corpus --------------------------------------------------------------------

namespace {

RleWord wpow(const RleWord& core, long e) { return core.pow(Int(e)); }

Presentation corpus_pres_small_cancel() {
  Alphabet al({"a", "x"});
  RleWord ax = concat(RleWord::letter(0, 1), RleWord::letter(1, 1));
  RleWord a2x2 = concat(RleWord::letter(0, 1).pow(2), RleWord::letter(1, 1).pow(2));
  return Presentation{al, {wpow(ax, 7), wpow(a2x2, 5)}, Rat(1, 6)};
}

Presentation corpus_pres_extension() {
  Alphabet al({"a", "x", "b"});
  RleWord ax = concat(RleWord::letter(0, 1), RleWord::letter(1, 1));
  RleWord x2a2 = concat(RleWord::letter(1, 1).pow(2), RleWord::letter(0, 1).pow(2));
  RleWord u = wpow(ax, 5);
  RleWord v = wpow(x2a2, 3);
  RleWord bl = RleWord::letter(2, 1);
  RleWord comm = concat(concat(bl, u), concat(bl.inverse(), u.inverse()));
  return Presentation{
      al, {u, v, comm, u.pow(3), concat(u, v.inverse())}, Rat(1, 6)};
}

// Template with boundary s u s^-1 u^-1: an s-edge with a u-petal at its head
// and a u^-1-petal at its tail.
Diagram commutator_template(const Presentation& pres, int s_sym,
                            const RleWord& u) {
  Builder b;
  b.fresh_vertex = 2;
  long B = b.new_dart(0, s_sym, 1), tB = b.new_dart(1, s_sym, -1);
  b.link(B, tB);
  auto chain = [&](long base, const LabelSeq& ls, std::vector<long>& fwd,
                   std::vector<long>& bwd) {
    long n = (long)ls.size();
    std::vector<long> verts(n);
    verts[0] = base;
    for (long i = 1; i < n; ++i) verts[i] = b.fresh_vertex++;
    fwd.resize(n);
    bwd.resize(n);
    for (long i = 0; i < n; ++i) {
      fwd[i] = b.new_dart(verts[i], ls[i].first, ls[i].second);
      bwd[i] = b.new_dart(verts[(i + 1) % n], ls[i].first, -ls[i].second);
      b.link(fwd[i], bwd[i]);
    }
    for (long i = 1; i < n; ++i) b.rot[verts[i]] = {fwd[i], bwd[i - 1]};
  };
  std::vector<long> p, tp, q, tq;
  chain(1, word_seq(u), p, tp);
  chain(0, word_seq(u.inverse()), q, tq);
  long np = (long)p.size(), nq = (long)q.size();
  b.rot[0] = {q[0], B, tq[nq - 1]};
  b.rot[1] = {p[0], tB, tp[np - 1]};
  b.outer = tq[nq - 1];
  Diagram tmpl{{}, -1, pres, false, false};
  return b.to_diagram(tmpl);
}

void push(std::vector<Diagram>& out, Diagram d) {
  auto rep = validate_diagram(d);
  if (!rep.ok()) throw error("corpus: generated invalid diagram\n" + rep.text());
  out.push_back(std::move(d));
}

// offsets where the boundary label contains a shift of relator rel
std::vector<long> excise_offsets(const Diagram& d, long rel) {
  LabelSeq bl = boundary_label(d);
  LabelSeq rw = word_seq(d.pres.relators[rel]);
  std::vector<long> out;
  if (rw.size() >= bl.size()) return out;
  for (size_t o = 0; o < bl.size(); ++o) {
    LabelSeq rho = cyclic_slice(bl, o, rw.size());
    if (seq_is_rotation(rho, rw) || seq_is_rotation(seq_invert(rho), rw))
      out.push_back((long)o);
  }
  return out;
}

}  // namespace

std::vector<Diagram> build_corpus(long minimum, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Diagram> out;
  Presentation p1 = corpus_pres_small_cancel();
  Presentation p2 = corpus_pres_extension();

  auto mark = [](Diagram d, bool aspherical) {
    d.aspherical = aspherical;
    d.generators_nontrivial = true;
    return d;
  };

  for (const Presentation* pp : {&p1, &p2}) {
    const Presentation& p = *pp;
    bool asph = pp == &p1;
    for (size_t r = 0; r < p.relators.size(); ++r) {
      push(out, mark(cycle_diagram(p, p.relators[r]), asph));
      push(out, mark(cycle_diagram(p, p.relators[r].inverse()), asph));
      push(out, mark(mirror_pair_diagram(p, (long)r), asph));
    }
  }

  // quotient demonstrations over the extension-shaped presentation
  {
    RleWord u = p2.relators[0], v = p2.relators[1];
    Diagram comm = pad_to_simple_boundary(commutator_template(p2, 2, u));
    Diagram wheel =
        pad_to_simple_boundary(bouquet_diagram(p2, {{u, 1}, {u, 1}, {u, 1}}));
    Diagram bigon = pad_to_simple_boundary(bouquet_diagram(p2, {{u, 1}, {v, -1}}));
    push(out, mark(comm, false));
    push(out, mark(wheel, false));
    push(out, mark(bigon, false));
    auto face_one = [](const Diagram& d, size_t n) {
      FaceSet fs = trace_faces(d);
      for (size_t f = 0; f < fs.orbits.size(); ++f)
        if ((long)f != fs.outer_face && fs.orbits[f].size() == n)
          return (long)f;
      throw error("corpus: quotient target face missing");
    };
    Diagram c2 = cycle_diagram(p2, p2.relators[2]);
    Diagram q2 = op_quotient_face(c2, face_one(c2, word_seq(p2.relators[2]).size()), comm);
    push(out, mark(q2, false));
    Diagram c3 = cycle_diagram(p2, p2.relators[3]);
    Diagram q3 = op_quotient_face(c3, face_one(c3, word_seq(p2.relators[3]).size()), wheel);
    push(out, mark(q3, false));
    Diagram c4 = cycle_diagram(p2, p2.relators[4]);
    Diagram q4 = op_quotient_face(c4, face_one(c4, word_seq(p2.relators[4]).size()), bigon);
    push(out, mark(q4, false));
  }

  // randomized bouquets, pads, excisions, normalizations
  long guard = 0;
  while ((long)out.size() < minimum && guard++ < 10 * minimum) {
    const Presentation& p = (rng() % 2 == 0) ? p1 : p2;
    bool asph = &p == &p1;
    std::vector<std::pair<RleWord, int>> petals;
    long k = 2 + (long)(rng() % 3);
    for (long i = 0; i < k; ++i) {
      long r = rng() % p.relators.size();
      petals.push_back({p.relators[r], rng() % 2 == 0 ? 1 : -1});
    }
    Diagram bq = mark(bouquet_diagram(p, petals), asph);
    push(out, bq);
    Diagram padded = pad_to_simple_boundary(bq);
    push(out, padded);
    // excise where possible
    Diagram cur = padded;
    for (int tries = 0; tries < 2; ++tries) {
      long r = rng() % p.relators.size();
      auto offs = excise_offsets(cur, r);
      if (offs.empty()) continue;
      try {
        cur = op_excise(cur, offs[rng() % offs.size()], r);
        push(out, cur);
      } catch (const error&) {
        break;
      }
    }
    if (rng() % 2 == 0) {
      try {
        push(out, normalize(padded, asph ? Wlog::Four : Wlog::One));
      } catch (const error&) {
        // padding interacting with loops can refuse; skip quietly
      }
    }
  }
  if ((long)out.size() < minimum) throw error("corpus: generation fell short");
  return out;
}

}  // namespace sc
