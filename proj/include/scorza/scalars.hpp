#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals
// (GMP-backed), small prime fields F_p, binomial coefficients, and reduction
// of p-integral rationals into F_p.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scorza {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Int& a) { return sgn(a) == 0; }
inline bool is_zero(const Rat& a) { return sgn(a) == 0; }

namespace detail {
// Dispatch that picks up is_zero overloads for coefficient types declared
// after a generic container (argument-dependent lookup at instantiation).
template <class T>
bool value_is_zero(const T& v) {
  return is_zero(v);
}
}  // namespace detail

/// Thrown when a rational with a p-divisible denominator reaches reduce_mod.
/// This signals that a computation left the p-integral regime and the
/// finite-field reduction is meaningless; callers must not swallow it.
class NotPIntegralError : public std::runtime_error {
 public:
  explicit NotPIntegralError(const std::string& what) : std::runtime_error(what) {}
};

// Element of F_p in canonical representation 0 <= r < p.  A default
// constructed element has p == 0 and acts as "zero of any prime field";
// this makes FpElem usable as a coefficient type in generic containers.
// Mixing two elements with different nonzero moduli is a caller bug.
struct FpElem {
  std::uint64_t r = 0;
  std::uint64_t p = 0;

  bool is_zero() const { return r == 0; }
};

inline bool is_zero(const FpElem& a) { return a.r == 0; }

namespace detail {

inline std::uint64_t resolve_modulus(const FpElem& a, const FpElem& b) {
  if (a.p != 0 && b.p != 0 && a.p != b.p)
    throw std::logic_error("FpElem: mixed moduli " + std::to_string(a.p) + " and " +
                           std::to_string(b.p));
  return a.p != 0 ? a.p : b.p;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace detail

inline bool operator==(const FpElem& a, const FpElem& b) {
  if (a.p != 0 && b.p != 0 && a.p != b.p) return false;
  return a.r == b.r;
}

inline bool operator!=(const FpElem& a, const FpElem& b) { return !(a == b); }

inline FpElem operator+(const FpElem& a, const FpElem& b) {
  const std::uint64_t p = detail::resolve_modulus(a, b);
  if (p == 0) return FpElem{0, 0};
  std::uint64_t s = a.r + b.r;
  if (s >= p) s -= p;
  return FpElem{s, p};
}

inline FpElem operator-(const FpElem& a, const FpElem& b) {
  const std::uint64_t p = detail::resolve_modulus(a, b);
  if (p == 0) return FpElem{0, 0};
  return FpElem{a.r >= b.r ? a.r - b.r : a.r + p - b.r, p};
}

inline FpElem operator-(const FpElem& a) {
  if (a.r == 0) return a;
  return FpElem{a.p - a.r, a.p};
}

inline FpElem operator*(const FpElem& a, const FpElem& b) {
  const std::uint64_t p = detail::resolve_modulus(a, b);
  if (p == 0 || a.r == 0 || b.r == 0) return FpElem{0, p};
  return FpElem{detail::mulmod_u64(a.r, b.r, p), p};
}

inline FpElem& operator+=(FpElem& a, const FpElem& b) { return a = a + b; }
inline FpElem& operator-=(FpElem& a, const FpElem& b) { return a = a - b; }
inline FpElem& operator*=(FpElem& a, const FpElem& b) { return a = a * b; }

inline FpElem fp_pow(FpElem base, std::uint64_t e) {
  if (base.p == 0) return e == 0 ? FpElem{1, 0} : base;
  FpElem acc{1 % base.p, base.p};
  while (e != 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return acc;
}

inline FpElem fp_inv(const FpElem& a) {
  if (a.p == 0 || a.r == 0) throw std::domain_error("fp_inv: inverse of zero");
  return fp_pow(a, a.p - 2);
}

inline FpElem operator/(const FpElem& a, const FpElem& b) { return a * fp_inv(b); }

// Arithmetic context for F_p.  Primality is checked once here; FpElem values
// are produced through the context so a composite modulus cannot circulate.
class FpCtx {
 public:
  explicit FpCtx(std::uint64_t p) : p_(p) {
    if (p < 2 || mpz_probab_prime_p(Int(p).get_mpz_t(), 32) == 0)
      throw std::invalid_argument("FpCtx: modulus " + std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  FpElem zero() const { return FpElem{0, p_}; }
  FpElem one() const { return FpElem{1 % p_, p_}; }

  FpElem from_int(long v) const {
    long m = v % static_cast<long>(p_);
    if (m < 0) m += static_cast<long>(p_);
    return FpElem{static_cast<std::uint64_t>(m), p_};
  }

  FpElem from_int(const Int& v) const {
    Int m = v % static_cast<unsigned long>(p_);
    if (sgn(m) < 0) m += static_cast<unsigned long>(p_);
    return FpElem{m.get_ui(), p_};
  }

 private:
  std::uint64_t p_;
};

/// C(n, k) over Z.  Returns 0 for k < 0 or k > n.
inline Int binom_exact(unsigned long n, long k) {
  if (k < 0) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

/// C(n, k) mod p for k < p, via the falling factorial n(n-1)...(n-k+1) times
/// the inverse of k!.  k! is a unit in F_p exactly because k < p; larger k is
/// a caller bug and rejected.
inline FpElem binom_mod(unsigned long n, long k, const FpCtx& F) {
  if (k < 0) return F.zero();
  if (static_cast<std::uint64_t>(k) >= F.modulus())
    throw std::invalid_argument("binom_mod: k >= p; falling-factorial formula invalid");
  FpElem num = F.one();
  FpElem fact = F.one();
  for (long i = 0; i < k; ++i) {
    num = num * (F.from_int(static_cast<long>(n % F.modulus())) - F.from_int(i));
    fact = fact * F.from_int(i + 1);
  }
  return num / fact;
}

/// Reduction of a p-integral rational: num * den^{-1} mod p.  A p-divisible
/// denominator (in lowest terms) is a hard error.
inline FpElem reduce_mod(const Rat& q_in, const FpCtx& F) {
  Rat q = q_in;
  q.canonicalize();
  const FpElem den = F.from_int(Int(q.get_den()));
  if (den.is_zero())
    throw NotPIntegralError("reduce_mod: denominator divisible by " +
                            std::to_string(F.modulus()) + " (not p-integral)");
  return F.from_int(Int(q.get_num())) / den;
}

inline FpElem reduce_mod(const Int& z, const FpCtx& F) { return F.from_int(z); }

// Multiplicative identities and small-integer embeddings for generic ring
// code (polynomials, powers).
inline Int ring_one(const Int&) { return Int(1); }
inline Rat ring_one(const Rat&) { return Rat(1); }
inline FpElem ring_one(const FpElem& a) { return FpElem{1, a.p}; }

inline Int ring_from_int(long v, const Int&) { return Int(v); }
inline Rat ring_from_int(long v, const Rat&) { return Rat(v); }
inline FpElem ring_from_int(long v, const FpElem& a) {
  if (a.p == 0) {
    if (v < 0) throw std::logic_error("ring_from_int: FpElem with unresolved modulus");
    return FpElem{static_cast<std::uint64_t>(v), 0};
  }
  long m = v % static_cast<long>(a.p);
  if (m < 0) m += static_cast<long>(a.p);
  return FpElem{static_cast<std::uint64_t>(m), a.p};
}

/// x^e by binary powering in any commutative ring; e == 0 yields the identity.
template <class T>
T ring_pow(T base, unsigned long e) {
  T acc = ring_one(base);
  while (e != 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return acc;
}

inline Int ring_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat ring_pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  return r;
}

/// Exact division helpers; non-exact integer division is a caller bug.
inline Int div_exact(const Int& a, const Int& b) {
  if (is_zero(b)) throw std::domain_error("div_exact: division by zero");
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (!is_zero(r)) throw std::domain_error("div_exact: non-exact integer division");
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace scorza
