#pragma once

// Dense univariate polynomials over an exact coefficient ring.  Used for the
// interpolation polynomials p_i^b(c), for forms carrying a symbolic variable
// c through the multilinear covariant sums, and for quasi-polynomials in n
// over F_p.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scorza/scalars.hpp"

namespace scorza {

template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Poly constant(T v) {
    Poly p;
    if (!detail::value_is_zero(v)) p.c_.push_back(std::move(v));
    return p;
  }

  // The variable itself (coefficient ring must embed small integers).
  static Poly variable(const T& one) {
    Poly p;
    p.c_.resize(2, T{});
    p.c_[1] = one;
    p.normalize();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for 0

  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
  const std::vector<T>& coeffs() const { return c_; }

  void set_coeff(std::size_t i, T v) {
    if (i >= c_.size()) c_.resize(i + 1, T{});
    c_[i] = std::move(v);
    normalize();
  }

  template <class S>
  S eval(const S& x) const {
    S acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T{});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T{});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c_) v = T{} - v;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    Poly r;
    r.c_.resize(a.c_.size() + b.c_.size() - 1, T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::value_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
  }

  friend Poly operator*(const Poly& a, const T& s) {
    Poly r;
    if (detail::value_is_zero(s)) return r;
    r.c_ = a.c_;
    for (auto& v : r.c_) v *= s;
    r.normalize();
    return r;
  }
  friend Poly operator*(const T& s, const Poly& a) { return a * s; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void normalize() {
    while (!c_.empty() && detail::value_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;  // c_[i] is the coefficient of x^i; no trailing zeros
};

template <class T>
bool is_zero(const Poly<T>& p) {
  return p.is_zero();
}

template <class T>
Poly<T> ring_one(const Poly<T>& p) {
  (void)p;
  return Poly<T>::constant(ring_one(T{}));
}

template <class T>
Poly<T> ring_from_int(long v, const Poly<T>&) {
  return Poly<T>::constant(ring_from_int(v, T{}));
}

/// Euclidean division over a field-like coefficient ring (needs operator/).
/// Returns {quotient, remainder} with deg r < deg b.
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
  std::vector<T> rem(a.coeffs());
  const long db = b.degree();
  const T lead = b.coeff(static_cast<std::size_t>(db));
  std::vector<T> quot;
  long dr = a.degree();
  if (dr >= db) quot.resize(static_cast<std::size_t>(dr - db) + 1, T{});
  while (dr >= db) {
    T q = rem[static_cast<std::size_t>(dr)] / lead;
    quot[static_cast<std::size_t>(dr - db)] = q;
    for (long i = 0; i <= db; ++i)
      rem[static_cast<std::size_t>(dr - db + i)] -= q * b.coeff(static_cast<std::size_t>(i));
    while (dr >= 0 && is_zero(rem[static_cast<std::size_t>(dr)])) --dr;
  }
  rem.resize(static_cast<std::size_t>(dr + 1));
  return {Poly<T>(std::move(quot)), Poly<T>(std::move(rem))};
}

}  // namespace scorza
