#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sc {

using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// base^exp for exp >= 0.  exp must fit in an unsigned long.
inline Int ipow(const Int& base, const Int& exp) {
  if (exp < 0) throw error("ipow: negative exponent");
  if (!exp.fits_ulong_p()) throw error("ipow: exponent too large");
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return r;
}

inline Int isqrt(const Int& n) {
  if (n < 0) throw error("isqrt: negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int floordiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int imod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw error("integer too large: " + n.get_str());
  return n.get_si();
}

// Natural number extended with an infinity marker, used for block sizes and
// cyclic orders.
class ExtNat {
 public:
  ExtNat() : inf_(false), v_(0) {}
  explicit ExtNat(Int v) : inf_(false), v_(std::move(v)) {}
  static ExtNat infinity() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }
  bool is_inf() const { return inf_; }
  const Int& value() const {
    if (inf_) throw error("ExtNat: value of infinity");
    return v_;
  }
  bool operator==(const ExtNat& o) const {
    return inf_ == o.inf_ && (inf_ || v_ == o.v_);
  }
  bool operator<(const ExtNat& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return v_ < o.v_;
  }
  bool operator<=(const ExtNat& o) const { return *this < o || *this == o; }
  std::string str() const { return inf_ ? "inf" : v_.get_str(); }

 private:
  bool inf_;
  Int v_;
};

}  // namespace sc
