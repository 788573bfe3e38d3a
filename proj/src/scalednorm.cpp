#include "sc/scalednorm.hpp"

#include <random>
#include <sstream>

namespace sc {

void ScaledSum::check() const {
  if (orders.size() != scalings.size())
    throw error("scaled sum: orders/scalings size mismatch");
  for (size_t i = 0; i < orders.size(); ++i) {
    if (!orders[i].is_inf() && orders[i].value() < 2)
      throw error("scaled sum: order < 2 at index " + std::to_string(i));
    if (scalings[i] <= 0)
      throw error("scaled sum: scaling <= 0 at index " + std::to_string(i));
  }
}

namespace {

Int canon_residue(const ScaledSum& g, long i, const Int& v) {
  if (i < 0 || i >= g.size())
    throw error("element: index " + std::to_string(i) + " out of range");
  if (g.orders[i].is_inf()) return v;
  return imod(v, g.orders[i].value());
}

}  // namespace

SumElement make_element(const ScaledSum& g, const std::map<long, Int>& raw) {
  SumElement e;
  for (const auto& [i, v] : raw) {
    Int r = canon_residue(g, i, v);
    if (r != 0) e.residues[i] = r;
  }
  return e;
}

SumElement add(const ScaledSum& g, const SumElement& a, const SumElement& b) {
  std::map<long, Int> raw = a.residues;
  for (const auto& [i, v] : b.residues) raw[i] += v;
  return make_element(g, raw);
}

SumElement negate(const ScaledSum& g, const SumElement& a) {
  std::map<long, Int> raw;
  for (const auto& [i, v] : a.residues) raw[i] = -v;
  return make_element(g, raw);
}

SumElement subtract(const ScaledSum& g, const SumElement& a,
                    const SumElement& b) {
  return add(g, a, negate(g, b));
}

GeodesicForm geodesic_form(const SumElement& x, const ScaledSum& g) {
  GeodesicForm f;
  for (const auto& [i, v] : x.residues) {
    if (g.orders[i].is_inf()) {
      f.y[i] = v;
      continue;
    }
    const Int& ell = g.orders[i].value();
    Int r = imod(v, ell);
    if (r == 0) continue;
    f.y[i] = 2 * r <= ell ? r : Int(r - ell);
  }
  return f;
}

Rat norm_induced(const SumElement& x, const ScaledSum& g) {
  Rat total = 0;
  for (const auto& [i, y] : geodesic_form(x, g).y)
    total += g.scalings[i] * Rat(abs(y));
  return total;
}

Rat norm_qu(const SumElement& x, const ScaledSum& g) {
  if (x.is_identity()) return 0;
  for (const auto& [i, v] : x.residues) {
    (void)v;
    if (g.orders[i].is_inf())
      throw error("norm_qu: infinite-order coordinate in support");
  }
  long h = x.height();
  Int y = abs(geodesic_form(x, g).y.at(h));
  return g.scalings[h] * Rat(y);
}

namespace {

Int diam(const ExtNat& ell) {
  if (ell.is_inf()) throw error("diam: infinite order");
  return floordiv(ell.value(), 2);
}

std::string elem_str(const SumElement& e) {
  std::ostringstream out;
  out << "(";
  bool first = true;
  for (const auto& [i, v] : e.residues) {
    if (!first) out << ", ";
    first = false;
    out << i << ":" << v.get_str();
  }
  out << ")";
  return out.str();
}

}  // namespace

Report check_norm_equivalences(const ScaledSum& g, long samples,
                               unsigned seed) {
  Report rep;
  g.check();
  bool all_finite = true;
  for (const auto& o : g.orders)
    if (o.is_inf()) all_finite = false;

  // Hypotheses for the two-sided qu bound.
  bool hyp = all_finite;
  std::string hyp_detail;
  if (!all_finite) hyp_detail = "infinite-order coordinate present";
  for (long i = 0; hyp && i + 1 < g.size(); ++i) {
    if (diam(g.orders[i + 1]) < diam(g.orders[i])) {
      hyp = false;
      hyp_detail = "diameters decrease at index " + std::to_string(i);
    } else if (g.scalings[i + 1] < 2 * g.scalings[i] * Rat(diam(g.orders[i]))) {
      hyp = false;
      hyp_detail = "s_" + std::to_string(i + 1) + " < 2 s_" +
                   std::to_string(i) + " diam at index " + std::to_string(i);
    }
  }
  rep.add(hyp, "growth hypotheses", hyp_detail);

  std::mt19937 rng(seed);
  auto sample = [&]() {
    SumElement e;
    std::map<long, Int> raw;
    for (long i = 0; i < g.size(); ++i) {
      long hi = g.orders[i].is_inf() ? 17 : to_long(g.orders[i].value());
      std::uniform_int_distribution<long> d(g.orders[i].is_inf() ? -8 : 0,
                                            g.orders[i].is_inf() ? 8 : hi - 1);
      raw[i] = d(rng);
    }
    return make_element(g, raw);
  };

  if (hyp) {
    bool ok = true;
    std::string detail;
    for (long t = 0; ok && t < samples; ++t) {
      SumElement e = sample();
      Rat qu = norm_qu(e, g), nm = norm_induced(e, g);
      if (!(qu <= nm && nm <= 2 * qu)) {
        ok = false;
        detail = "element " + elem_str(e) + ": qu=" + qu.get_str() + " norm=" +
                 nm.get_str();
      }
    }
    rep.add(ok, "qu <= norm <= 2 qu", detail);
  } else {
    // demonstrate that the bound genuinely needs the hypothesis: exhaustive
    // search over elements supported on two finite coordinates
    bool found = false;
    std::string witness;
    for (long i = 0; !found && i < g.size(); ++i) {
      if (g.orders[i].is_inf() || g.orders[i].value() > 128) continue;
      for (long j = i + 1; !found && j < g.size(); ++j) {
        if (g.orders[j].is_inf() || g.orders[j].value() > 128) continue;
        for (long a = 1; !found && a < to_long(g.orders[i].value()); ++a)
          for (long b = 1; !found && b < to_long(g.orders[j].value()); ++b) {
            SumElement e = make_element(g, {{i, a}, {j, b}});
            if (norm_induced(e, g) > 2 * norm_qu(e, g)) {
              found = true;
              witness = elem_str(e);
            }
          }
      }
    }
    rep.add(true, "two-sided bound witness",
            found ? "found element with norm > 2 qu: " + witness
                  : "no 2-coordinate witness in range");
  }

  // Ceiling scalings: holds without any growth hypothesis.
  {
    ScaledSum up = g;
    Rat eps = g.scalings.empty() ? Rat(1) : g.scalings[0];
    for (size_t i = 0; i < up.scalings.size(); ++i) {
      Int c = floordiv(up.scalings[i].get_num(), up.scalings[i].get_den());
      if (Rat(c) < up.scalings[i]) c += 1;
      up.scalings[i] = Rat(c);
      eps = std::min(eps, g.scalings[i]);
    }
    Rat factor = 1 + 1 / eps;
    bool ok = true;
    std::string detail;
    for (long t = 0; ok && t < samples; ++t) {
      SumElement e = sample();
      Rat lo = norm_induced(e, g), hi = norm_induced(e, up);
      if (!(lo <= hi && hi <= factor * lo)) {
        ok = false;
        detail = "element " + elem_str(e);
      }
    }
    rep.add(ok, "integer ceiling scalings stay bi-Lipschitz", detail);
  }
  return rep;
}

CubeEmbedding cube_embedding(const ScaledSum& g, const std::vector<long>& P,
                             const Rat& s_P, const Int& k_P, long n) {
  g.check();
  if (n < 0 || (long)P.size() < n)
    throw error("cube: block smaller than dimension");
  if (s_P < 1 || s_P.get_den() != 1)
    throw error("cube: block scaling must be a positive integer");
  for (long t = 0; t < n; ++t) {
    long i = P[t];
    if (i < 0 || i >= g.size()) throw error("cube: index out of range");
    if (g.scalings[i] != s_P)
      throw error("cube: scaling not constant on the block");
    if (!g.orders[i].is_inf() && 2 * k_P > g.orders[i].value())
      throw error("cube: side length exceeds half the coordinate order");
  }
  if (k_P < 0) throw error("cube: negative side length");

  CubeEmbedding out;
  long side = to_long(k_P) + 1;
  std::vector<long> c(n, 0);
  for (;;) {
    std::map<long, Int> raw;
    for (long t = 0; t < n; ++t)
      if (c[t] != 0) raw[P[t]] = c[t];
    out.points.emplace_back(c, make_element(g, raw));
    long t = 0;
    while (t < n && c[t] == side - 1) c[t++] = 0;
    if (t == n) break;
    ++c[t];
  }

  if ((long)out.points.size() <= 10000) {
    for (size_t a = 0; a < out.points.size(); ++a)
      for (size_t b = a + 1; b < out.points.size(); ++b) {
        Int l1 = 0;
        for (long t = 0; t < n; ++t)
          l1 += abs(Int(out.points[a].first[t] - out.points[b].first[t]));
        Rat d = norm_induced(
            subtract(g, out.points[a].second, out.points[b].second), g);
        if (d != s_P * Rat(l1))
          throw error("cube: embedding failed the isometry check");
      }
    out.certified = true;
  }
  return out;
}

PhiWord phi_word(const Int& h, const SumElement& z, const RleWord& prefix,
                 const FamilySpec& family, const Limits& lim) {
  PhiWord out;
  out.word = prefix.pow(h, lim);
  out.length_formula = abs(h) * prefix.length();
  for (const auto& [i, v] : z.residues) {
    if (i < 0 || i >= family.N)
      throw error("phi: coordinate outside family truncation");
    Int ell = family.ell_at(i);
    Int r = imod(v, ell);
    if (r == 0) continue;
    Int y = 2 * r <= ell ? r : Int(r - ell);
    RleWord u = gen_word(family, i);
    out.word = concat(out.word, u.pow(y, lim), lim);
    out.length_formula += abs(y) * u.length();
  }
  return out;
}

}  // namespace sc
