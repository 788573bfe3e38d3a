#include "sc/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace sc {

namespace {

using Dense = std::vector<Letter>;

void append_reduce(Dense& w, Letter l) {
  if (!w.empty() && w.back() == letter_inv(l))
    w.pop_back();
  else
    w.push_back(l);
}

Dense dense_inverse(const Dense& w) {
  Dense out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inv(*it));
  return out;
}

Dense reduce_concat(const Dense& a, const Dense& b) {
  Dense out = a;
  for (Letter l : b) append_reduce(out, l);
  return out;
}

RleWord word_of(const Dense& d) {
  std::vector<Run> runs;
  for (Letter l : d) {
    int sym = (int)(l >> 1), sign = (l & 1) ? -1 : 1;
    if (!runs.empty() && runs.back().sym == sym && runs.back().sign == sign)
      runs.back().exp += 1;
    else
      runs.push_back({sym, sign, 1});
  }
  return RleWord::from_runs(runs);
}

// Greendlinger rewriting over materialized relator rotations.
struct Engine {
  struct RotInfo {
    int rel;
    int sign;
    long shift;
  };
  std::vector<Dense> rots;
  std::vector<RotInfo> info;
  std::vector<long> rel_len;
  std::vector<std::vector<int>> by_first;

  Engine(const Presentation& p, const Limits& lim) {
    if (p.lambda > Rat(1, 6))
      throw error("dehn: presentation lambda exceeds 1/6");
    Presentation sixth = p;
    sixth.lambda = Rat(1, 6);
    Report rep = check_cprime(sixth, lim);
    if (!rep.ok())
      throw error("dehn: presentation failed the C'(1/6) check\n" + rep.text());
    by_first.resize(2 * (size_t)p.alphabet.size());
    for (size_t t = 0; t < p.relators.size(); ++t) {
      Dense r = materialize(p.relators[t], lim);
      rel_len.push_back((long)r.size());
      for (int sign : {1, -1}) {
        Dense base = sign > 0 ? r : dense_inverse(r);
        for (long k = 0; k < (long)base.size(); ++k) {
          Dense rot(base.begin() + k, base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + k);
          by_first[rot[0]].push_back((int)rots.size());
          rots.push_back(std::move(rot));
          info.push_back({(int)t, sign, k});
        }
      }
    }
  }

  struct Match {
    long pos = 0;
    long len = 0;
    int rot = -1;
  };

  // Leftmost position admitting a factor q with 2|q| > |r|; among those the
  // longest, then the first star element in (relator, +/-, shift) order.
  bool find(const Dense& w, Match& out) const {
    for (long pos = 0; pos < (long)w.size(); ++pos) {
      long best_len = 0;
      int best_rot = -1;
      for (int id : by_first[w[pos]]) {
        const Dense& r = rots[id];
        long cap = std::min((long)r.size(), (long)w.size() - pos);
        long L = 0;
        while (L < cap && w[pos + L] == r[L]) ++L;
        if (2 * L > rel_len[info[id].rel] && L > best_len) {
          best_len = L;
          best_rot = id;
        }
      }
      if (best_rot >= 0) {
        out = {pos, best_len, best_rot};
        return true;
      }
    }
    return false;
  }

  DehnTrace run_dense(Dense cur) const {
    DehnTrace tr;
    Match m;
    while (find(cur, m)) {
      const RotInfo& ri = info[m.rot];
      const Dense& rot = rots[m.rot];
      tr.steps.push_back({ri.rel, ri.sign, Int(ri.shift), Int(m.pos), Int(m.len)});
      tr.exponents[ri.rel] += ri.sign;
      Dense next(cur.begin(), cur.begin() + m.pos);
      for (long i = (long)rot.size() - 1; i >= m.len; --i)
        append_reduce(next, letter_inv(rot[i]));
      for (long i = m.pos + m.len; i < (long)cur.size(); ++i)
        append_reduce(next, cur[i]);
      if (next.size() >= cur.size())
        throw error("dehn: replacement failed to shorten the word");
      cur = std::move(next);
    }
    for (auto it = tr.exponents.begin(); it != tr.exponents.end();)
      it = it->second == 0 ? tr.exponents.erase(it) : std::next(it);
    tr.residual = word_of(cur);
    return tr;
  }
};

// Engine plus the relator-index bookkeeping of a central-extension spec.
struct ExtEngine {
  const CentralExtSpec& spec;
  Presentation base;
  Engine eng;
  std::vector<std::vector<int>> base_of;  // ext index -> base relator indices

  ExtEngine(const CentralExtSpec& s, const Limits& lim)
      : spec(s), base(s.base()), eng(base, lim) {
    for (size_t i = 0; i < s.rels.size(); ++i) {
      const ExtRelator& r = s.rels[i];
      if (r.u.empty() || !is_cyclically_reduced(r.u))
        throw error("central ext: relator u must be nonempty cyclically reduced");
      if (r.v && (r.v->empty() || !is_cyclically_reduced(*r.v)))
        throw error("central ext: relator v must be nonempty cyclically reduced");
      if (r.ell < 0 || r.ell == 1)
        throw error("central ext: central order must be 0 (infinite) or >= 2");
      std::vector<int> ids;
      ids.push_back((int)base_count());
      if (r.v) ids.push_back((int)base_count() + 1);
      base_of.push_back(ids);
    }
  }

  long base_count() const {
    long n = 0;
    for (const auto& ids : base_of) n += (long)ids.size();
    return n;
  }

  struct Verdict {
    bool trivial = false;
    Dense residual;
    std::map<int, Int> kernel;
  };

  Verdict verdict(Dense w) const {
    DehnTrace tr = eng.run_dense(std::move(w));
    Verdict v;
    v.residual = materialize(tr.residual);
    bool ok = v.residual.empty();
    for (size_t i = 0; i < base_of.size(); ++i) {
      Int e = 0;
      for (int b : base_of[i]) {
        auto it = tr.exponents.find(b);
        if (it != tr.exponents.end()) e += it->second;
      }
      const Int& ell = spec.rels[i].ell;
      Int c = ell > 0 ? imod(e, ell) : e;
      if (c != 0) {
        v.kernel[(int)i] = c;
        ok = false;
      }
    }
    v.trivial = ok;
    return v;
  }

  std::string fingerprint(const Verdict& v) const {
    std::ostringstream out;
    for (Letter l : v.residual) out << l << ',';
    out << '|';
    for (const auto& [i, c] : v.kernel) out << i << ':' << c.get_str() << ';';
    return out.str();
  }

  bool equal(const Dense& a, const Dense& b_inv) const {
    return verdict(reduce_concat(a, b_inv)).trivial;
  }
};

// Longest factor of w shared with any element of the star closure of u.
Int longest_common_factor_with_star(const Dense& w, const Dense& u) {
  long best = 0;
  for (int sign : {1, -1}) {
    Dense base = sign > 0 ? u : dense_inverse(u);
    for (long k = 0; k < (long)base.size(); ++k) {
      for (long pos = 0; pos < (long)w.size(); ++pos) {
        long cap = std::min((long)base.size(), (long)w.size() - pos);
        long L = 0;
        while (L < cap && w[pos + L] == base[(k + L) % (long)base.size()]) ++L;
        best = std::max(best, L);
      }
    }
  }
  return best;
}

}  // namespace

Presentation CentralExtSpec::base() const {
  Presentation p{alphabet, {}, lambda};
  for (const ExtRelator& r : rels) {
    p.relators.push_back(r.u);
    if (r.v) p.relators.push_back(*r.v);
  }
  return p;
}

Report check_cprime(const Presentation& p, const Limits& lim) {
  Report rep;
  if (p.lambda <= 0) throw error("check_cprime: lambda must be positive");

  bool cyc = true;
  std::string cyc_detail;
  for (size_t i = 0; cyc && i < p.relators.size(); ++i) {
    if (p.relators[i].empty() || !is_cyclically_reduced(p.relators[i])) {
      cyc = false;
      cyc_detail = "relator " + std::to_string(i);
    }
  }
  rep.add(cyc, "relators nonempty and cyclically reduced", cyc_detail);

  bool distinct = true;
  std::string dd;
  for (size_t i = 0; cyc && distinct && i < p.relators.size(); ++i)
    for (size_t j = i + 1; distinct && j < p.relators.size(); ++j)
      if (star_equivalent(p.relators[i], p.relators[j])) {
        distinct = false;
        dd = "relators " + std::to_string(i) + " and " + std::to_string(j);
      }
  rep.add(distinct, "no two relators share a star closure", dd);

  bool bound = cyc;
  std::string bd = cyc ? "" : "skipped: relators not cyclically reduced";
  Rat worst(0);
  for (size_t i = 0; bound && i < p.relators.size(); ++i)
    for (size_t j = i; bound && j < p.relators.size(); ++j) {
      PieceReport pr = max_piece(p.relators[i], p.relators[j], lim);
      Int mn = std::min(p.relators[i].length(), p.relators[j].length());
      Rat ratio = Rat(pr.length) / Rat(mn);
      worst = std::max(worst, ratio);
      if (!(Rat(pr.length) < p.lambda * Rat(mn))) {
        bound = false;
        Rat lim_here = p.lambda * Rat(mn);
        bd = "relators " + std::to_string(i) + "," + std::to_string(j) +
             ": piece " + pr.length.get_str() + " vs " + lim_here.get_str();
      }
    }
  if (bound) bd = "max piece ratio " + worst.get_str();
  rep.add(bound, "piece bound |p| < lambda min(|u|,|v|)", bd);
  return rep;
}

DehnTrace dehn_reduce(const RleWord& w, const Presentation& p,
                      const Limits& lim) {
  Engine eng(p, lim);
  return eng.run_dense(materialize(w, lim));
}

ExtVerdict word_problem_central_ext(const RleWord& w, const CentralExtSpec& s,
                                    const Limits& lim) {
  ExtEngine eng(s, lim);
  auto v = eng.verdict(materialize(w, lim));
  ExtVerdict out;
  out.trivial = v.trivial;
  out.residual = word_of(v.residual);
  out.kernel = v.kernel;
  return out;
}

NormResult bfs_norm(const RleWord& w, const CentralExtSpec& s,
                    const BfsCaps& caps, const Limits& lim) {
  ExtEngine eng(s, lim);
  Dense target = materialize(w, lim);
  if (eng.verdict(target).trivial) return {false, 0, 0};
  Dense target_inv = dense_inverse(target);

  long nletters = 2 * s.alphabet.size();
  std::set<std::string> seen;
  seen.insert(eng.fingerprint(eng.verdict({})));
  std::deque<Dense> layer = {{}};
  for (long len = 0; len < caps.radius; ++len) {
    std::deque<Dense> next;
    for (const Dense& cur : layer) {
      for (long l = 0; l < nletters; ++l) {
        if (!cur.empty() && cur.back() == letter_inv((Letter)l)) continue;
        Dense cand = cur;
        cand.push_back((Letter)l);
        auto v = eng.verdict(cand);
        std::string key = eng.fingerprint(v);
        if (seen.count(key)) continue;
        if (eng.equal(cand, target_inv)) return {false, len + 1, len + 1};
        if ((long)seen.size() >= caps.states)
          return {true, 0, len + 1};
        seen.insert(std::move(key));
        next.push_back(std::move(cand));
      }
    }
    layer = std::move(next);
  }
  return {true, 0, caps.radius + 1};
}

AuditResult quasigeodesic_audit(const RleWord& prefix,
                                const std::vector<std::pair<int, Int>>& powers,
                                const CentralExtSpec& s, const BfsCaps& caps,
                                const Limits& lim) {
  AuditResult a;
  Report& hyp = a.hypotheses;

  hyp.add(s.lambda < Rat(1, 12), "lambda below 1/12", s.lambda.get_str());

  Presentation b = s.base();
  Report cp = check_cprime(b, lim);
  hyp.add(cp.ok(), "relators satisfy C'(lambda)", cp.ok() ? "" : cp.text());

  bool lens = true;
  std::string lens_detail;
  for (size_t i = 0; lens && i < s.rels.size(); ++i) {
    if (s.rels[i].u.length() < 2 ||
        (s.rels[i].v && s.rels[i].u.length() > s.rels[i].v->length())) {
      lens = false;
      lens_detail = "relator " + std::to_string(i);
    }
  }
  hyp.add(lens, "2 <= |u_i| <= |v_i|", lens_detail);

  bool pieces = true;
  std::string pd;
  if (!prefix.empty()) {
    Dense pre = materialize(prefix, lim);
    for (size_t i = 0; pieces && i < s.rels.size(); ++i) {
      Dense u = materialize(s.rels[i].u, lim);
      Int lcf = longest_common_factor_with_star(pre, u);
      if (!(Rat(lcf) < s.lambda * Rat(s.rels[i].u.length()))) {
        pieces = false;
        pd = "prefix shares a factor of length " + lcf.get_str() +
             " with relator " + std::to_string(i);
      }
    }
  }
  hyp.add(pieces, "prefix pieces below lambda |u_i|", pd);

  bool inj = true;
  for (size_t i = 0; inj && i < s.rels.size(); ++i)
    for (size_t j = i + 1; inj && j < s.rels.size(); ++j)
      if (s.rels[i].u == s.rels[j].u) inj = false;
  hyp.add(inj, "distinct u_i", "");

  bool exps = true;
  std::string ed;
  std::map<int, Int> pw;
  for (const auto& [i, k] : powers) {
    if (i < 0 || i >= (int)s.rels.size())
      throw error("audit: exponent index out of range");
    if (pw.count(i)) throw error("audit: duplicate exponent index");
    pw[i] = k;
    if (s.rels[i].ell > 0 && 2 * abs(k) > s.rels[i].ell) {
      exps = false;
      ed = "k_" + std::to_string(i) + " = " + k.get_str() + " with ell = " +
           s.rels[i].ell.get_str();
    }
  }
  hyp.add(exps, "|k_i| <= ell_i / 2", ed);

  RleWord u = prefix;
  for (const auto& [i, k] : pw) u = concat(u, s.rels[i].u.pow(k, lim), lim);
  a.word_len = u.length();
  a.constant = Rat(3) / (Rat(1) - 12 * s.lambda);

  NormResult nr = bfs_norm(u, s, caps, lim);
  a.norm_exact = !nr.exceeded_cap;
  a.norm = a.norm_exact ? nr.value : nr.lower;
  if (a.norm == 0) {
    a.ok = a.norm_exact && a.word_len == 0;
    a.ratio = 0;
  } else {
    a.ratio = Rat(a.word_len) / Rat(a.norm);
    if (Rat(a.word_len) <= a.constant * Rat(a.norm))
      a.ok = true;  // sound even against a lower bound
    else if (!a.norm_exact)
      a.inconclusive = true;
  }
  return a;
}

}  // namespace sc
