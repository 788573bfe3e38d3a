#include "sc/words.hpp"

#include <algorithm>
#include <cctype>

namespace sc {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : syms_(std::move(symbols)) {
  if (syms_.empty()) throw error("alphabet: empty");
  for (int i = 0; i < (int)syms_.size(); ++i) {
    const std::string& s = syms_[i];
    if (s.empty() || s == "1" || s == "e")
      throw error("alphabet: reserved or empty symbol '" + s + "'");
    for (char c : s)
      if (std::isspace((unsigned char)c) || c == '^' || c == '"')
        throw error("alphabet: bad character in symbol '" + s + "'");
    if (!index_.emplace(s, i).second)
      throw error("alphabet: duplicate symbol '" + s + "'");
  }
}

std::optional<int> Alphabet::find(std::string_view s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- RleWord

void RleWord::canonicalize() {
  if (core_.empty()) {
    repeat_ = 1;
    length_ = 0;
    return;
  }
  if (core_.size() == 1) {
    core_[0].exp *= repeat_;
    repeat_ = 1;
  } else {
    // fold the core to its primitive root (KMP border)
    size_t n = core_.size();
    std::vector<size_t> fail(n, 0);
    for (size_t i = 1; i < n; ++i) {
      size_t k = fail[i - 1];
      while (k > 0 && !(core_[i] == core_[k])) k = fail[k - 1];
      if (core_[i] == core_[k]) ++k;
      fail[i] = k;
    }
    size_t p = n - fail[n - 1];
    if (p < n && n % p == 0) {
      repeat_ *= Int((unsigned long)(n / p));
      core_.resize(p);
    }
  }
  if (repeat_ > 1 && core_.size() > 1 &&
      core_.front().sym == core_.back().sym)
    throw error("RleWord: repeated core with mergeable junction");
  Int per = 0;
  for (const Run& r : core_) per += r.exp;
  length_ = per * repeat_;
}

RleWord RleWord::from_runs(std::span<const Run> raw) {
  std::vector<Run> st;
  for (Run r : raw) {
    if (r.exp == 0) continue;
    if (r.exp < 0) {
      r.sign = -r.sign;
      r.exp = -r.exp;
    }
    if (r.sign != 1 && r.sign != -1) throw error("Run: sign must be +-1");
    while (r.exp > 0 && !st.empty() && st.back().sym == r.sym) {
      if (st.back().sign == r.sign) {
        st.back().exp += r.exp;
        r.exp = 0;
      } else {
        Int c = std::min(st.back().exp, r.exp);
        st.back().exp -= c;
        r.exp -= c;
        if (st.back().exp == 0) st.pop_back();
      }
    }
    if (r.exp > 0) st.push_back(std::move(r));
  }
  RleWord w;
  w.core_ = std::move(st);
  w.repeat_ = 1;
  w.canonicalize();
  return w;
}

RleWord RleWord::letter(int sym, int sign) {
  Run r{sym, sign, 1};
  return from_runs(std::span<const Run>(&r, 1));
}

RleWord RleWord::power_of(const RleWord& base, const Int& repeat) {
  if (repeat < 0) throw error("power_of: negative repeat");
  if (repeat == 0 || base.empty()) return {};
  if (base.core_.size() > 1 && base.core_.front().sym == base.core_.back().sym)
    throw error("power_of: core junction merges");
  RleWord w;
  w.core_ = base.core_;
  w.repeat_ = base.repeat_ * repeat;
  w.canonicalize();
  return w;
}

std::vector<Run> RleWord::runs(const Limits& lim) const {
  if (run_count() > lim.explicit_runs)
    throw error("RleWord: run materialization over limit");
  std::vector<Run> out;
  out.reserve((size_t)to_long(run_count()));
  long rep = to_long(repeat_);
  for (long i = 0; i < rep; ++i)
    out.insert(out.end(), core_.begin(), core_.end());
  return out;
}

RleWord RleWord::inverse() const {
  RleWord w;
  w.core_.reserve(core_.size());
  for (auto it = core_.rbegin(); it != core_.rend(); ++it)
    w.core_.push_back(Run{it->sym, -it->sign, it->exp});
  w.repeat_ = repeat_;
  w.canonicalize();
  return w;
}

RleWord concat(const RleWord& a, const RleWord& b, const Limits& lim) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Run> all = a.runs(lim);
  std::vector<Run> rb = b.runs(lim);
  all.insert(all.end(), rb.begin(), rb.end());
  return RleWord::from_runs(all);
}

CyclicReduction cyclic_reduce(const RleWord& w) {
  if (w.repeat() > 1 || w.core().size() <= 1) return {w, {}};
  std::vector<Run> R = w.core();
  std::vector<Run> conj;
  while (R.size() >= 2 && R.front().sym == R.back().sym &&
         R.front().sign == -R.back().sign) {
    Int c = std::min(R.front().exp, R.back().exp);
    conj.push_back(Run{R.front().sym, R.front().sign, c});
    R.front().exp -= c;
    R.back().exp -= c;
    if (R.back().exp == 0) R.pop_back();
    if (R.front().exp == 0) R.erase(R.begin());
  }
  CyclicReduction cr;
  cr.core = RleWord::from_runs(R);
  cr.conjugator = RleWord::from_runs(conj);
  return cr;
}

bool is_cyclically_reduced(const RleWord& w) {
  return cyclic_reduce(w).conjugator.empty();
}

RleWord RleWord::pow(const Int& e, const Limits& lim) const {
  if (e == 0 || empty()) return {};
  if (e < 0) return inverse().pow(-e, lim);
  if (e == 1) return *this;
  CyclicReduction cr = cyclic_reduce(*this);
  const RleWord& u = cr.core;
  RleWord up;
  if (u.core_.size() == 1) {
    Run r = u.core_[0];
    r.exp *= e;
    up = from_runs(std::span<const Run>(&r, 1));
  } else if (u.core_.front().sym != u.core_.back().sym) {
    up = power_of(u, e);
  } else {
    // cyclically reduced but the ends merge (same symbol and sign):
    // u = f m  =>  u^e = f (m f)^e f^-1
    std::vector<Run> R = u.runs(lim);
    Run f = R.front();
    std::vector<Run> g(R.begin() + 1, R.end());
    g.back().exp += f.exp;
    RleWord gw = from_runs(g);
    RleWord fw = from_runs(std::span<const Run>(&f, 1));
    up = concat(fw, concat(power_of(gw, e), fw.inverse(), lim), lim);
  }
  if (cr.conjugator.empty()) return up;
  return concat(cr.conjugator, concat(up, cr.conjugator.inverse(), lim), lim);
}

// Run sequence of the word read as a cyclic word, primitive root and its
// multiplicity.  The root list may start anywhere on the circle.
static void cyclic_root(const RleWord& w, std::vector<Run>& root, Int& times) {
  root.clear();
  times = 1;
  if (w.empty()) return;
  std::vector<Run> L = w.core();
  times = w.repeat();
  if (times == 1 && L.size() >= 2 && L.front().sym == L.back().sym &&
      L.front().sign == L.back().sign) {
    L.back().exp += L.front().exp;
    L.erase(L.begin());
  }
  // refold linearly (cyclic-shift periodicity of a cyclic sequence with
  // period dividing its size implies linear periodicity)
  RleWord tmp;
  if (L.size() > 1) {
    size_t n = L.size();
    std::vector<size_t> fail(n, 0);
    for (size_t i = 1; i < n; ++i) {
      size_t k = fail[i - 1];
      while (k > 0 && !(L[i] == L[k])) k = fail[k - 1];
      if (L[i] == L[k]) ++k;
      fail[i] = k;
    }
    size_t p = n - fail[n - 1];
    if (p < n && n % p == 0) {
      times *= Int((unsigned long)(n / p));
      L.resize(p);
    }
  }
  root = std::move(L);
}

// is `pat` a rotation of `txt` (equal-length run lists)?
static bool is_rotation(const std::vector<Run>& pat, const std::vector<Run>& txt) {
  if (pat.size() != txt.size()) return false;
  if (pat.empty()) return true;
  std::vector<Run> dbl = txt;
  dbl.insert(dbl.end(), txt.begin(), txt.end());
  auto it = std::search(dbl.begin(), dbl.end(), pat.begin(), pat.end());
  return it != dbl.end();
}

bool is_cyclic_shift(const RleWord& u, const RleWord& v) {
  if (u.length() != v.length()) return false;
  if (u.empty()) return true;
  std::vector<Run> ru, rv;
  Int tu, tv;
  cyclic_root(u, ru, tu);
  cyclic_root(v, rv, tv);
  if (tu != tv) return false;
  return is_rotation(ru, rv);
}

bool star_equivalent(const RleWord& u, const RleWord& v) {
  return is_cyclic_shift(u, v) || is_cyclic_shift(u.inverse(), v);
}

// ---------------------------------------------------------------- RawRuns

void RawRuns::append(const Run& r) {
  if (r.exp == 0) return;
  if (r.exp < 0) throw error("RawRuns: negative exponent");
  if (!runs.empty() && runs.back().sym == r.sym && runs.back().sign == r.sign)
    runs.back().exp += r.exp;
  else
    runs.push_back(r);
  length += r.exp;
}

void RawRuns::append_word(const RleWord& w, const Limits& lim) {
  for (const Run& r : w.runs(lim)) append(r);
}

// ---------------------------------------------------------------- dense

std::vector<Letter> materialize(const RleWord& w, const Limits& lim) {
  if (w.length() > lim.dense_letters)
    throw error("materialize: word over dense limit");
  std::vector<Letter> out;
  out.reserve((size_t)to_long(w.length()));
  long rep = to_long(w.repeat());
  for (long i = 0; i < rep; ++i)
    for (const Run& r : w.core()) {
      Letter l = letter_code(r.sym, r.sign);
      long e = to_long(r.exp);
      out.insert(out.end(), (size_t)e, l);
    }
  return out;
}

static std::vector<long> zarray(const std::vector<Letter>& s) {
  long n = (long)s.size();
  std::vector<long> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  long l = 0, r = 0;
  for (long i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

static std::vector<Letter> inv_word(const std::vector<Letter>& w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (Letter& l : out) l = letter_inv(l);
  return out;
}

static const Letter kSep = 0xffffffffu;

// Full dense search returning witnesses.
static PieceReport dense_piece_report(const std::vector<Letter>& U,
                                      const std::vector<Letter>& V) {
  if (U.empty() || V.empty()) throw error("dense piece: empty word");
  PieceReport best;
  long n = (long)U.size(), s = (long)V.size();
  Int cap = Int(std::min(n, s));
  for (int uv : {1, -1}) {
    std::vector<Letter> A = uv > 0 ? U : inv_word(U);
    for (int vv : {1, -1}) {
      std::vector<Letter> B = vv > 0 ? V : inv_word(V);
      std::vector<Letter> BB = B;
      BB.insert(BB.end(), B.begin(), B.end());
      std::vector<Letter> T;
      T.reserve((size_t)(n + 1 + 2 * s));
      for (long a = 0; a < n; ++a) {
        T.clear();
        T.insert(T.end(), A.begin() + a, A.end());
        T.insert(T.end(), A.begin(), A.begin() + a);
        T.push_back(kSep);
        T.insert(T.end(), BB.begin(), BB.end());
        std::vector<long> Z = zarray(T);
        for (long b = 0; b < s; ++b) {
          long z = std::min(Z[n + 1 + b], std::min(n, s));
          if (n == s && z == n) continue;  // identical rotated words
          if (Int(z) > best.length) {
            best.length = z;
            best.u_variant = uv;
            best.u_shift = a;
            best.v_variant = vv;
            best.v_shift = b;
          }
        }
      }
      if (best.length == cap) return best;
    }
  }
  return best;
}

Int dense_max_piece(const std::vector<Letter>& u, const std::vector<Letter>& v) {
  return dense_piece_report(u, v).length;
}

// ---------------------------------------------------------------- shapes

std::optional<BlockShape> block_shape(const RleWord& w) {
  const auto& c = w.core();
  if (c.size() != 2) return std::nullopt;
  if (c[0].sym == c[1].sym || c[0].sign != c[1].sign || c[0].exp != c[1].exp)
    return std::nullopt;
  BlockShape s;
  s.sym0 = c[0].sym;
  s.sym1 = c[1].sym;
  s.sign = c[0].sign;
  s.M = c[0].exp;
  s.N = w.repeat();
  return s;
}

namespace {

struct NormShape {
  BlockShape s;  // sign always +1
  int variant;   // +1: shape of w, -1: shape of w^-1
  Int len;
};

std::optional<NormShape> norm_shape(const RleWord& w) {
  auto s = block_shape(w);
  if (!s) return std::nullopt;
  NormShape ns;
  ns.len = w.length();
  if (s->sign > 0) {
    ns.s = *s;
    ns.variant = 1;
  } else {
    // (s0^-M s1^-M)^N inverted is (s1^M s0^M)^N
    ns.s = BlockShape{s->sym1, s->sym0, 1, s->M, s->N};
    ns.variant = -1;
  }
  return ns;
}

// Offset of the start of the first run of `sym` in (s0^M s1^M)^N.
Int run_start(const BlockShape& s, int sym) {
  if (sym == s.sym0) return 0;
  return s.M;
}

PieceReport symbolic_piece(const NormShape& u, const NormShape& v) {
  PieceReport rep;
  rep.u_variant = u.variant;
  rep.v_variant = v.variant;
  const BlockShape& a = u.s;
  const BlockShape& b = v.s;
  bool share0 = a.sym0 == b.sym0 || a.sym0 == b.sym1;
  bool share1 = a.sym1 == b.sym0 || a.sym1 == b.sym1;
  if (!share0 && !share1) return rep;  // disjoint alphabets: no common factor
  if (share0 != share1) {
    // exactly one common symbol: longest common factor is a power of it
    int c = share0 ? a.sym0 : a.sym1;
    rep.length = std::min(a.M, b.M);
    rep.u_shift = run_start(a, c) + a.M - rep.length;
    rep.v_shift = run_start(b, c) + b.M - rep.length;
    return rep;
  }
  // same two symbols
  if (a.M != b.M) {
    // a factor cannot contain a full inner run of both words, so it has at
    // most two runs: suffix of a c-run followed by a prefix of the next run
    Int m = std::min(a.M, b.M);
    rep.length = 2 * m;
    rep.u_shift = run_start(a, a.sym0) + a.M - m;
    rep.v_shift = run_start(b, a.sym0) + b.M - m;
    return rep;
  }
  if (a.N != b.N) {
    // same period, different block counts: the shorter word is a prefix of
    // a rotation of the longer one
    rep.length = 2 * a.M * std::min(a.N, b.N);
    rep.u_shift = run_start(a, a.sym0);
    rep.v_shift = run_start(b, a.sym0);
    return rep;
  }
  // identical cyclic words; rotations differing by 1 share a prefix of M-1,
  // and no pair of distinct rotations does better
  if (a.M >= 2) {
    rep.length = a.M - 1;
    rep.u_shift = run_start(a, a.sym0);
    rep.v_shift = run_start(b, a.sym0) + 1;
  }
  return rep;
}

// Common factors of a dense word and a (possibly huge) block-periodic word.
// Returns the report oriented as (dense word, shaped word).  Lengths differ
// by assumption (the shaped word exceeds the dense limit), so no equal-pair
// exclusion is needed.
PieceReport mixed_piece(const RleWord& dense, const NormShape& shaped,
                        const Limits& lim) {
  PieceReport rep;
  std::vector<Run> L = dense.runs(lim);
  // cyclic run list; merging rotates the word left by the front run length
  Int offset = 0;
  if (L.size() >= 2 && L.front().sym == L.back().sym &&
      L.front().sign == L.back().sign) {
    offset = L.front().exp;
    L.back().exp += L.front().exp;
    L.erase(L.begin());
  }
  long k = (long)L.size();
  if (k == 0) throw error("mixed piece: empty word");
  std::vector<Run> D = L;
  D.insert(D.end(), L.begin(), L.end());
  std::vector<Int> start(D.size() + 1, 0);  // letter offset of run i
  for (size_t i = 0; i < D.size(); ++i) start[i + 1] = start[i] + D[i].exp;
  const BlockShape& s = shaped.s;  // positive-sign shape, P = (s0^M s1^M)^N
  Int cap = std::min(dense.length(), shaped.len);
  // A common factor is a letter segment of the cyclic dense word that is also
  // a factor of the cyclic word P or P^-1: an alternating chain of runs over
  // {s0, s1} with uniform sign, all interior runs of exponent exactly M and
  // the two end runs clipped to at most M.
  for (int sv : {1, -1}) {  // factor of P (+) or of P^-1 (-)
    auto fits = [&](const Run& r) {
      return r.sign == sv && (r.sym == s.sym0 || r.sym == s.sym1);
    };
    for (long i = 0; i < k; ++i) {
      if (!fits(D[i])) continue;
      Int head = std::min(D[i].exp, s.M);
      Int val = head;
      long j = i;
      // extending past run j turns it into an interior run, which must then
      // have exponent exactly M (except run i, which stays a boundary run)
      while (j + 1 < i + k && fits(D[j + 1]) && D[j + 1].sym != D[j].sym &&
             (j == i || D[j].exp == s.M)) {
        ++j;
        val += std::min(D[j].exp, s.M);
      }
      if (k >= 2 && j + 1 == i + k && fits(D[j + 1]) &&
          D[j + 1].sym != D[j].sym && D[j].exp == s.M) {
        // wrap all the way around: the final clip reuses run i, so together
        // with the head clip it cannot exceed that run's letters
        Int tail = std::min(Int(D[i].exp - head), s.M);
        if (tail > 0) val += tail;
      }
      val = std::min(val, cap);
      if (val > rep.length) {
        rep.length = val;
        rep.u_variant = 1;
        Int over = D[i].exp > s.M ? Int(D[i].exp - s.M) : Int(0);
        rep.u_shift = imod(start[i] + over + offset, dense.length());
        // the witness on the family side is a rotation of w (v_variant +1)
        // or w^-1 (-1); that word equals P^sv, whose shape is s with the
        // symbols swapped when sv < 0
        rep.v_variant = sv * shaped.variant;
        BlockShape eff = s;
        if (sv < 0) std::swap(eff.sym0, eff.sym1);
        int firstSym = D[i].sym;
        Int clip = std::min(D[i].exp, s.M);
        rep.v_shift = imod(run_start(eff, firstSym) + eff.M - clip, shaped.len);
      }
    }
  }
  return rep;
}

}  // namespace

PieceReport max_piece(const RleWord& u, const RleWord& v, const Limits& lim) {
  if (u.empty() || v.empty()) throw error("max_piece: empty word");
  if (!is_cyclically_reduced(u) || !is_cyclically_reduced(v))
    throw error("max_piece: words must be cyclically reduced");
  auto su = norm_shape(u);
  auto sv = norm_shape(v);
  if (su && sv) return symbolic_piece(*su, *sv);
  bool um = u.length() <= lim.dense_letters;
  bool vm = v.length() <= lim.dense_letters;
  if (um && vm) return dense_piece_report(materialize(u, lim), materialize(v, lim));
  if (sv && um) {
    return mixed_piece(u, *sv, lim);
  }
  if (su && vm) {
    PieceReport r = mixed_piece(v, *su, lim);
    std::swap(r.u_variant, r.v_variant);
    std::swap(r.u_shift, r.v_shift);
    return r;
  }
  throw error("max_piece: unsupported structure (too large, not block-periodic)");
}

PowerPiece max_piece_with_power(int sym, const RleWord& v) {
  PowerPiece out;
  if (v.empty()) return out;
  if (!is_cyclically_reduced(v))
    throw error("max_piece_with_power: word must be cyclically reduced");
  std::vector<Run> L = v.core();
  if (v.repeat() == 1 && L.size() >= 2 && L.front().sym == L.back().sym &&
      L.front().sign == L.back().sign) {
    L.back().exp += L.front().exp;
    L.erase(L.begin());
  }
  if (L.size() == 1 && L[0].sym == sym) {
    out.unbounded = true;
    out.length = v.length();
    return out;
  }
  for (const Run& r : L)
    if (r.sym == sym) out.length = std::max(out.length, r.exp);
  return out;
}

bool check_cprime_pair(const RleWord& u, const RleWord& v, const Rat& lambda,
                       const Limits& lim) {
  PieceReport p = max_piece(u, v, lim);
  Rat lhs(p.length);
  Rat rhs = lambda * Rat(std::min(u.length(), v.length()));
  return lhs < rhs;
}

}  // namespace sc
