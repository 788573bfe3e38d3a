#include "sc/families.hpp"

#include <algorithm>
#include <sstream>

namespace sc {

Int block_min(const ExtNat& m, const Int& j) {
  if (j < 0) throw error("block_min: negative index");
  return m.is_inf() ? Int(j * j) : Int(j * m.value());
}

Int block_size(const ExtNat& m, const Int& j) {
  if (j < 0) throw error("block_size: negative index");
  return m.is_inf() ? Int(2 * j + 1) : m.value();
}

Int block_of(const ExtNat& m, const Int& i) {
  if (i < 0) throw error("block_of: negative index");
  return m.is_inf() ? isqrt(i) : floordiv(i, m.value());
}

Int inflate_at(const ExtNat& m, const std::function<Int(const Int&)>& s,
               const Int& i) {
  return s(block_of(m, i));
}

namespace {

Int eval_rule(const textio::Expr& e, const char* var, const Int& val,
              const std::map<std::string, Int>& consts, const char* what) {
  if (e.empty()) throw error(std::string(what) + ": no rule supplied");
  auto vars = consts;
  vars[var] = val;
  return e.eval(vars);
}

}  // namespace

Int FamilySpec::p_at(const Int& j) const {
  if (!p_list.empty()) {
    if (j < 0 || j >= (long)p_list.size())
      throw error("p list: index " + j.get_str() + " out of range");
    return p_list[to_long(j)];
  }
  return eval_rule(p_rule, "j", j, consts, "p rule");
}

Int FamilySpec::ell_at(const Int& i) const {
  return eval_rule(ell_rule, "i", i, consts, "order rule");
}

Int FamilySpec::mseq_at(const Int& i) const {
  return eval_rule(m_rule, "i", i, consts, "m rule");
}

Int FamilySpec::nseq_at(const Int& i) const {
  return eval_rule(n_rule, "i", i, consts, "n rule");
}

RleWord gen_word(const FamilySpec& spec, const Int& i) {
  if (i < 0 || i >= spec.N)
    throw error("gen_word: index " + i.get_str() + " outside truncation N=" +
                spec.N.get_str());
  Int inner, reps;
  if (spec.kind == FamilySpec::Kind::Staircase) {
    Int j = block_of(spec.m, i);
    Int r = i - block_min(spec.m, j);
    Int e = spec.p_at(j) - r;
    if (e < 1)
      throw error("gen_word: exponent p_j - r_i = " + e.get_str() +
                  " < 1 at i=" + i.get_str());
    inner = ipow(spec.k, e);
    reps = ipow(spec.k, r + 1);
  } else {
    inner = spec.mseq_at(i);
    reps = spec.nseq_at(i);
    if (inner < 1 || reps < 1)
      throw error("gen_word: block family needs m_i, n_i >= 1 at i=" +
                  i.get_str());
  }
  Run core[2] = {{spec.a_sym, 1, inner}, {spec.x_sym, 1, inner}};
  return RleWord::power_of(RleWord::from_runs(core), reps);
}

Int word_length(const FamilySpec& spec, const Int& i) {
  return gen_word(spec, i).length();
}

void ConstructionConfig::check_basic() const {
  if (alphabet.size() != 4) throw error("config: alphabet must have 4 symbols");
  if (U.a_sym != 0 || U.x_sym != 1 || V.a_sym != 2 || V.x_sym != 3)
    throw error("config: U must use symbols 0,1 and V symbols 2,3");
  if (m < 1) throw error("config: m must be a positive integer");
  if (!(ExtNat(m) < n)) throw error("config: m < n required");
  if (!(U.m == ExtNat(m)) || !(V.m == n))
    throw error("config: family partitions must match (m, n)");
  if (lambda <= 0 || lambda >= Rat(1, 12))
    throw error("config: lambda must lie in (0, 1/12)");
  if (N < 1 || U.N < N || V.N < N)
    throw error("config: truncations must cover N >= 1 indices");
}

std::pair<textio::Expr, textio::Expr> example_sequences(const Int& m,
                                                        const ExtNat& n) {
  if (m < 1 || !(ExtNat(m) < n))
    throw error("example_sequences: need 1 <= m < n");
  auto p = textio::Expr::parse("m*(j+2)^2");
  auto q = n.is_inf() ? textio::Expr::parse("c*(j+3)^4")
                      : textio::Expr::parse("n^2*(j+3)^2");
  return {p, q};
}

ConstructionConfig example_config(const Int& m, const ExtNat& n, const Int& k,
                                  const Int& N) {
  auto [p, q] = example_sequences(m, n);
  ConstructionConfig c;
  c.m = m;
  c.n = n;
  c.N = N;
  c.lambda = Rat(1, 13);

  c.U.kind = FamilySpec::Kind::Staircase;
  c.U.a_sym = 0;
  c.U.x_sym = 1;
  c.U.k = k;
  c.U.m = ExtNat(m);
  c.U.p_rule = p;
  c.U.ell_rule = textio::Expr::parse("k^(i+1)");
  c.U.N = N;
  c.U.consts = {{"m", m}, {"k", k}};

  c.V.kind = FamilySpec::Kind::Staircase;
  c.V.a_sym = 2;
  c.V.x_sym = 3;
  c.V.k = k;
  c.V.m = n;
  c.V.p_rule = q;
  c.V.ell_rule = textio::Expr::parse("k^(i+1)");
  c.V.N = N;
  if (n.is_inf())
    c.V.consts = {{"c", m}, {"k", k}};
  else
    c.V.consts = {{"m", n.value()}, {"n", n.value()}, {"k", k}};
  return c;
}

namespace {

// Sufficient growth of the exponent sequence against the order rule:
// k^{p_{j+1}} >= k^{p_j} * ell_{min block j+1} * k^{|block j+1|}, checked
// as k^{p_{j+1} - p_j - |block j+1|} >= ell to keep the numbers small.
void check_order_growth(Report& rep, const std::string& tag,
                        const FamilySpec& f, const Int& J) {
  if (f.ell_rule.empty()) {
    rep.add(true, tag, "no order rule; growth check skipped");
    return;
  }
  for (Int j = 0; j < J; ++j) {
    Int d = f.p_at(j + 1) - f.p_at(j) - block_size(f.m, j + 1);
    Int idx = block_min(f.m, j + 1);
    if (d < 0 || ipow(f.k, d) < f.ell_at(idx)) {
      rep.add(false, tag,
              "fails at j=" + j.get_str() + ": k^(p_{j+1}-p_j-|block|) < ell_" +
                  idx.get_str());
      return;
    }
  }
  rep.add(true, tag);
}

}  // namespace

Report validate_pq(const Int& m, const ExtNat& n, const FamilySpec& u,
                   const FamilySpec& v, const Int& J) {
  Report rep;
  if (J < 1) throw error("validate_pq: J >= 1 required");

  bool ok = true;
  for (Int j = 0; ok && j < J; ++j) {
    Int lhs = u.p_at(j + 1), rhs = u.p_at(j) + (j + 2) * m;
    if (lhs < rhs) {
      rep.add(false, "(a) p growth",
              "fails at j=" + j.get_str() + ": " + lhs.get_str() + " < " +
                  rhs.get_str());
      ok = false;
    }
  }
  if (ok) rep.add(true, "(a) p growth");

  ok = true;
  for (Int j = 0; ok && j < J; ++j) {
    Int step = n.is_inf() ? Int((j + 2) * (j + 2)) : Int((j + 2) * n.value());
    Int lhs = v.p_at(j + 1), rhs = v.p_at(j) + step;
    if (lhs < rhs) {
      rep.add(false, "(b) q growth",
              "fails at j=" + j.get_str() + ": " + lhs.get_str() + " < " +
                  rhs.get_str());
      ok = false;
    }
  }
  if (ok) rep.add(true, "(b) q growth");

  ok = true;
  Int imax = m * J;
  for (Int i = 0; ok && i < imax; ++i) {
    Int pv = u.p_at(block_of(ExtNat(m), i));
    Int qv = v.p_at(block_of(n, i));
    if (pv > qv) {
      rep.add(false, "(c) p below q",
              "fails at i=" + i.get_str() + ": p=" + pv.get_str() + " > q=" +
                  qv.get_str());
      ok = false;
    }
  }
  if (ok) rep.add(true, "(c) p below q");

  check_order_growth(rep, "order growth (u side)", u, J);
  check_order_growth(rep, "order growth (v side)", v, J);
  return rep;
}

namespace {

std::string idx_name(const char* fam, const Int& i) {
  return std::string(fam) + "_" + i.get_str();
}

}  // namespace

Report validate_family_conditions(const ConstructionConfig& c,
                                  const Limits& lim) {
  Report rep;
  try {
    c.check_basic();
  } catch (const error& e) {
    rep.add(false, "config", e.what());
    return rep;
  }
  long N = to_long(c.N);

  std::vector<RleWord> us, vs;
  try {
    for (long i = 0; i < N; ++i) us.push_back(gen_word(c.U, i));
    for (long i = 0; i < N; ++i) vs.push_back(gen_word(c.V, i));
  } catch (const error& e) {
    rep.add(false, "generation", e.what());
    return rep;
  }

  // (a) cyclic reducedness, cyclic minimality, and the piece bound over the
  // union of both families.
  {
    bool ok = true;
    std::string detail;
    std::vector<std::pair<std::string, const RleWord*>> all;
    for (long i = 0; i < N; ++i) all.emplace_back(idx_name("u", i), &us[i]);
    for (long i = 0; i < N; ++i) all.emplace_back(idx_name("v", i), &vs[i]);
    for (auto& [nm, w] : all)
      if (!is_cyclically_reduced(*w)) {
        ok = false;
        detail = nm + " not cyclically reduced";
        break;
      }
    for (size_t i = 0; ok && i < all.size(); ++i)
      for (size_t j = i + 1; ok && j < all.size(); ++j)
        if (star_equivalent(*all[i].second, *all[j].second)) {
          ok = false;
          detail = all[i].first + " and " + all[j].first +
                   " share a cyclic class";
        }
    for (size_t i = 0; ok && i < all.size(); ++i)
      for (size_t j = i; ok && j < all.size(); ++j)
        if (!check_cprime_pair(*all[i].second, *all[j].second, c.lambda, lim)) {
          auto piece = max_piece(*all[i].second, *all[j].second, lim);
          ok = false;
          detail = "piece bound fails for " + all[i].first + " vs " +
                   all[j].first + ": piece length " + piece.length.get_str();
        }
    rep.add(ok, "(a) small cancellation", detail);
  }

  // (b) pieces against powers of the second V symbol stay below the bound.
  {
    bool ok = true;
    std::string detail;
    for (long i = 0; ok && i < N; ++i) {
      auto pp = max_piece_with_power(c.V.x_sym, vs[i]);
      if (pp.unbounded || !(Rat(pp.length) < c.lambda * Rat(vs[i].length()))) {
        ok = false;
        detail = idx_name("v", i) + ": power piece " +
                 (pp.unbounded ? std::string("unbounded") : pp.length.get_str());
      }
    }
    rep.add(ok, "(b) letter-power pieces", detail);
  }

  // (c) 2 <= |u_i| <= |v_i|.
  {
    bool ok = true;
    std::string detail;
    for (long i = 0; ok && i < N; ++i)
      if (us[i].length() < 2 || us[i].length() > vs[i].length()) {
        ok = false;
        detail = "at i=" + std::to_string(i) + ": |u|=" +
                 us[i].length().get_str() + ", |v|=" +
                 vs[i].length().get_str();
      }
    rep.add(ok, "(c) length ordering", detail);
  }

  // (d) injectivity.
  {
    bool ok = true;
    std::string detail;
    for (const auto* fam : {&us, &vs})
      for (size_t i = 0; ok && i < fam->size(); ++i)
        for (size_t j = i + 1; ok && j < fam->size(); ++j)
          if ((*fam)[i] == (*fam)[j]) {
            ok = false;
            detail = std::string(fam == &us ? "u" : "v") + " repeats at " +
                     std::to_string(i) + "," + std::to_string(j);
          }
    rep.add(ok, "(d) injectivity", detail);
  }

  // (e) lengths constant on partition blocks.
  {
    bool ok = true;
    std::string detail;
    auto check = [&](const FamilySpec& f, const std::vector<RleWord>& ws,
                     const char* nm) {
      for (long i = 0; ok && i + 1 < N; ++i)
        if (block_of(f.m, i) == block_of(f.m, i + 1) &&
            ws[i].length() != ws[i + 1].length()) {
          ok = false;
          detail = std::string(nm) + " lengths differ inside block at i=" +
                   std::to_string(i);
        }
    };
    check(c.U, us, "u");
    check(c.V, vs, "v");
    rep.add(ok, "(e) block-constant lengths", detail);
  }

  // (f) |u_{min block j+1}| >= ell * |u_{min block j}|, both families.
  {
    bool ok = true;
    std::string detail;
    auto check = [&](const FamilySpec& f, const std::vector<RleWord>& ws,
                     const char* nm) {
      for (Int j = 0; ok; ++j) {
        Int i2 = block_min(f.m, j + 1);
        if (i2 >= N) break;
        Int i1 = block_min(f.m, j);
        if (ws[to_long(i2)].length() <
            f.ell_at(i2) * ws[to_long(i1)].length()) {
          ok = false;
          detail = std::string(nm) + " growth fails at block " + j.get_str();
        }
      }
    };
    check(c.U, us, "u");
    check(c.V, vs, "v");
    rep.add(ok, "(f) block growth", detail);
  }

  // (g) the families are given by closed-form rules.
  {
    bool ok = true;
    std::string detail;
    for (const auto* f : {&c.U, &c.V})
      if (f->kind == FamilySpec::Kind::Staircase
              ? (f->p_rule.empty() && f->p_list.empty())
              : (f->m_rule.empty() || f->n_rule.empty())) {
        ok = false;
        detail = "missing rule";
      }
    rep.add(ok, "(g) closed-form rules", detail);
  }

  // Inner exponents pairwise distinct per staircase family.
  {
    bool ok = true;
    std::string detail;
    for (const auto* f : {&c.U, &c.V}) {
      if (f->kind != FamilySpec::Kind::Staircase) continue;
      std::vector<Int> es;
      for (long i = 0; i < N; ++i) {
        Int j = block_of(f->m, i);
        es.push_back(f->p_at(j) - (Int(i) - block_min(f->m, j)));
      }
      std::sort(es.begin(), es.end());
      if (std::adjacent_find(es.begin(), es.end()) != es.end()) {
        ok = false;
        detail = std::string(f == &c.U ? "u" : "v") +
                 " family repeats an inner exponent";
      }
    }
    rep.add(ok, "distinct inner exponents", detail);
  }

  // Orders strictly increasing, starting at 2 or more.
  {
    bool ok = true;
    std::string detail;
    for (const auto* f : {&c.U, &c.V}) {
      if (f->ell_at(0) < 2) {
        ok = false;
        detail = "ell_0 = " + f->ell_at(0).get_str() + " < 2";
      }
      for (long i = 0; ok && i + 1 < N; ++i)
        if (f->ell_at(i + 1) <= f->ell_at(i)) {
          ok = false;
          detail = "orders not increasing at i=" + std::to_string(i);
        }
    }
    rep.add(ok, "orders increasing from 2", detail);
    rep.add(true, "order rule note",
            "ell_i starts at ell_0 = " + c.U.ell_at(0).get_str() +
                "; the rule is shifted by one position so every order is >= 2");
  }

  return rep;
}

namespace {

// Renames symbols through an injective map, preserving compression.
RleWord remap(const RleWord& w, const std::vector<int>& map) {
  std::vector<Run> core = w.core();
  for (Run& r : core) r.sym = map.at(r.sym);
  return RleWord::power_of(RleWord::from_runs(core), w.repeat());
}

RleWord commutator(int sym, const RleWord& w, const Limits& lim) {
  RleWord s = RleWord::letter(sym, 1);
  RleWord c = concat(concat(s, w, lim), concat(s.inverse(), w.inverse(), lim),
                     lim);
  return cyclic_reduce(c).core;
}

}  // namespace

Presentation emit_presentation(const ConstructionConfig& c, Target t,
                               const Limits& lim) {
  c.check_basic();
  long N = to_long(c.N);

  auto local = [&](Target side) {
    // A and B are presented over their own two-symbol alphabet.
    int base = side == Target::A ? 0 : 2;
    const FamilySpec& f = side == Target::A ? c.U : c.V;
    std::vector<int> map(4, -1);
    map[base] = 0;
    map[base + 1] = 1;
    Presentation p{Alphabet({c.alphabet.name(base), c.alphabet.name(base + 1)}),
                   {},
                   c.lambda};
    for (long i = 0; i < N; ++i) {
      RleWord w = remap(gen_word(f, i), map);
      p.relators.push_back(commutator(0, w, lim));
      p.relators.push_back(commutator(1, w, lim));
      p.relators.push_back(w.pow(f.ell_at(i), lim));
    }
    return p;
  };

  switch (t) {
    case Target::A:
      return local(Target::A);
    case Target::B:
      return local(Target::B);
    case Target::H: {
      Presentation p{c.alphabet, {}, c.lambda};
      for (long i = 0; i < N; ++i) {
        p.relators.push_back(gen_word(c.U, i));
        p.relators.push_back(gen_word(c.V, i));
      }
      return p;
    }
    case Target::G: {
      Presentation p{c.alphabet, {}, c.lambda};
      for (long i = 0; i < N; ++i) {
        RleWord u = gen_word(c.U, i), v = gen_word(c.V, i);
        for (int s = 0; s < 4; ++s)
          p.relators.push_back(commutator(s, u, lim));
        p.relators.push_back(u.pow(c.U.ell_at(i), lim));
        p.relators.push_back(concat(u, v.inverse(), lim));
      }
      return p;
    }
  }
  throw error("emit_presentation: bad target");
}

namespace {

ExtNat ext_minus(const ExtNat& e, long c) {
  if (e.is_inf()) return ExtNat::infinity();
  return ExtNat(Int(e.value() - c));
}

}  // namespace

std::string plan_construction(const ExtNat& k, const ExtNat& m,
                              const ExtNat& n) {
  if (ExtNat(Int(4)) <= k && k <= m && m <= n) {
    // ok
  } else {
    throw error("plan_construction: need 4 <= k <= m <= n");
  }
  ExtNat m3 = ext_minus(m, 3), n2 = ext_minus(n, 2);
  std::ostringstream out;
  out << "base: apply the two-family construction at (m', n') = (" << m3.str()
      << ", " << n2.str() << ")\n"
      << "  giving B0 <= G0 with asdim(G0) in [1,2], AN-dim(G0) in ["
      << ext_minus(m, 2).str() << "," << ext_minus(m, 1).str()
      << "], AN-dim(B0) in [" << ext_minus(n, 1).str() << "," << n.str()
      << "]\n"
      << "step 1: if AN-dim(G0) = " << ext_minus(m, 2).str()
      << " take G1 = G0 x Z^2; if AN-dim(G0) = " << ext_minus(m, 1).str()
      << " take G1 = G0 x Z\n"
      << "step 2: G = G1 * Z^" << k.str() << "  (then asdim(G) = " << k.str()
      << ", AN-dim(G) = " << m.str() << ")\n"
      << "step 3: if AN-dim(B0) = " << ext_minus(n, 1).str()
      << " take H = B0 x Z; if AN-dim(B0) = " << n.str()
      << " take H = B0  (then AN-dim(H) = " << n.str() << ", H <= G)\n";
  return out.str();
}

// ----------------------------------------------------------- text format

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string format_family(const FamilySpec& f, const Alphabet& a) {
  std::ostringstream out;
  out << "family "
      << (f.kind == FamilySpec::Kind::Staircase ? "staircase" : "block")
      << " sym=" << a.name(f.a_sym) << "," << a.name(f.x_sym);
  std::map<std::string, Int> extras = f.consts;
  extras.erase("k");
  if (f.kind == FamilySpec::Kind::Staircase) {
    out << " m=" << f.m.str();
    if (!f.m.is_inf()) {
      auto it = extras.find("m");
      if (it != extras.end() && it->second == f.m.value()) extras.erase(it);
    }
    out << " k=" << f.k.get_str();
    if (!f.p_list.empty()) {
      out << " plist=";
      for (size_t i = 0; i < f.p_list.size(); ++i)
        out << (i ? "," : "") << f.p_list[i].get_str();
    } else {
      out << " p=" << quote(f.p_rule.text());
    }
  } else {
    out << " k=" << f.k.get_str() << " mseq=" << quote(f.m_rule.text())
        << " nseq=" << quote(f.n_rule.text());
  }
  if (!f.ell_rule.empty()) out << " l=" << quote(f.ell_rule.text());
  for (const auto& [nm, val] : extras) out << " " << nm << "=" << val.get_str();
  out << " N=" << f.N.get_str();
  return out.str();
}

std::vector<std::pair<std::string, std::string>> split_attrs(
    const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t i = 0;
  auto skip_ws = [&] { while (i < line.size() && line[i] == ' ') ++i; };
  while (true) {
    skip_ws();
    if (i >= line.size()) break;
    size_t eq = line.find('=', i);
    if (eq == std::string::npos)
      throw error("family directive: expected key=value near '" +
                  line.substr(i) + "'");
    std::string key = line.substr(i, eq - i);
    i = eq + 1;
    std::string val;
    if (i < line.size() && line[i] == '"') {
      size_t close = line.find('"', i + 1);
      if (close == std::string::npos)
        throw error("family directive: unterminated quote");
      val = line.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      size_t sp = line.find(' ', i);
      if (sp == std::string::npos) sp = line.size();
      val = line.substr(i, sp - i);
      i = sp;
    }
    out.emplace_back(key, val);
  }
  return out;
}

FamilySpec parse_family(const std::string& rest, const Alphabet& a) {
  std::istringstream in(rest);
  std::string kind;
  in >> kind;
  FamilySpec f;
  if (kind == "staircase")
    f.kind = FamilySpec::Kind::Staircase;
  else if (kind == "block")
    f.kind = FamilySpec::Kind::Block;
  else
    throw error("family directive: unknown kind '" + kind + "'");
  std::string attrs;
  std::getline(in, attrs);

  bool saw_m = false;
  for (auto& [key, val] : split_attrs(attrs)) {
    if (key == "sym") {
      auto comma = val.find(',');
      if (comma == std::string::npos)
        throw error("family directive: sym wants two names");
      auto s0 = a.find(val.substr(0, comma));
      auto s1 = a.find(val.substr(comma + 1));
      if (!s0 || !s1) throw error("family directive: unknown symbol in sym=");
      f.a_sym = *s0;
      f.x_sym = *s1;
    } else if (key == "m") {
      saw_m = true;
      f.m = val == "inf" ? ExtNat::infinity() : ExtNat(Int(val));
    } else if (key == "k") {
      f.k = Int(val);
    } else if (key == "p") {
      f.p_rule = textio::Expr::parse(val);
    } else if (key == "plist") {
      std::istringstream ls(val);
      std::string item;
      while (std::getline(ls, item, ',')) f.p_list.emplace_back(item);
    } else if (key == "mseq") {
      f.m_rule = textio::Expr::parse(val);
    } else if (key == "nseq") {
      f.n_rule = textio::Expr::parse(val);
    } else if (key == "l") {
      f.ell_rule = textio::Expr::parse(val);
    } else if (key == "N") {
      f.N = Int(val);
    } else {
      f.consts[key] = Int(val);
    }
  }
  if (f.kind == FamilySpec::Kind::Staircase && !saw_m)
    throw error("family directive: staircase needs m=");
  f.consts["k"] = f.k;
  if (!f.m.is_inf() && !f.consts.count("m")) f.consts["m"] = f.m.value();
  return f;
}

}  // namespace

PresentationDoc parse_presentation_doc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<PresentationDoc> doc;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::string body = line.substr(start);

    if (!doc) {
      if (body.rfind("alphabet:", 0) != 0)
        throw error("presentation doc: first line must be 'alphabet: ...'");
      std::istringstream as(body.substr(9));
      std::vector<std::string> syms;
      std::string s;
      while (as >> s) syms.push_back(s);
      doc.emplace();
      doc->alphabet = Alphabet(syms);
      continue;
    }
    if (body.rfind("lambda:", 0) == 0) {
      std::string v = body.substr(7);
      size_t p = v.find_first_not_of(' ');
      doc->lambda = textio::parse_rat(v.substr(p == std::string::npos ? 0 : p));
      continue;
    }
    if (body.rfind("family ", 0) == 0) {
      doc->families.push_back(parse_family(body.substr(7), doc->alphabet));
      continue;
    }
    doc->relators.push_back(textio::parse_word(body, doc->alphabet));
  }
  if (!doc) throw error("presentation doc: empty input");
  return *doc;
}

std::string format_presentation_doc(const PresentationDoc& doc,
                                    const Limits& lim) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& s : doc.alphabet.symbols()) out << " " << s;
  out << "\n";
  if (doc.lambda) out << "lambda: " << textio::format_rat(*doc.lambda) << "\n";
  for (const auto& f : doc.families)
    out << format_family(f, doc.alphabet) << "\n";
  for (const auto& w : doc.relators)
    out << textio::format_word(w, doc.alphabet, lim) << "\n";
  return out.str();
}

Presentation expand_doc(const PresentationDoc& doc) {
  Presentation p{doc.alphabet, {}, doc.lambda.value_or(Rat(1, 6))};
  for (const auto& f : doc.families)
    for (Int i = 0; i < f.N; ++i) p.relators.push_back(gen_word(f, i));
  for (const auto& w : doc.relators) p.relators.push_back(w);
  return p;
}

ConstructionConfig config_from_doc(const PresentationDoc& doc) {
  if (doc.families.size() != 2)
    throw error("config: doc must contain exactly two family directives");
  ConstructionConfig c;
  c.alphabet = doc.alphabet;
  c.U = doc.families[0];
  c.V = doc.families[1];
  if (c.U.m.is_inf()) throw error("config: first family partition must be finite");
  c.m = c.U.m.value();
  c.n = c.V.m;
  if (doc.lambda) c.lambda = *doc.lambda;
  c.N = std::min(c.U.N, c.V.N);
  c.check_basic();
  return c;
}

}  // namespace sc
