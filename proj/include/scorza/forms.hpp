#pragma once

// Homogeneous ternary forms, multi-indices, linear forms and the two
// coordinate systems used throughout:
//
//   monomial coordinates  f = sum c_i x^i
//   A-coordinates         f = sum (d!/i!) A_i x^i
//
// The A convention is what makes the d-th power of a linear form l satisfy
// A_i = l^i; keeping the two systems tagged in the type prevents silent
// mixing, which is the most likely correctness bug in this domain.

#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

#include "scorza/scalars.hpp"

namespace scorza {

struct MultiIndex {
  std::array<int, 3> v{0, 0, 0};

  int total() const { return v[0] + v[1] + v[2]; }
  int operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  auto operator<=>(const MultiIndex&) const = default;
};

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  return MultiIndex{{a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]}};
}

inline Int factorial(int n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// d! / (i1! i2! i3!) for |i| = d.
inline Int multinomial(int d, const MultiIndex& i) {
  if (i.total() != d) throw std::invalid_argument("multinomial: |i| != d");
  return div_exact(factorial(d), factorial(i[0]) * factorial(i[1]) * factorial(i[2]));
}

/// All multi-indices of weight d, descending in i1 then i2.  This order is
/// frozen: it fixes the row order of every matrix built downstream.
inline std::vector<MultiIndex> basis(int d) {
  if (d < 0) throw std::invalid_argument("basis: negative degree");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  for (int i1 = d; i1 >= 0; --i1)
    for (int i2 = d - i1; i2 >= 0; --i2) out.push_back(MultiIndex{{i1, i2, d - i1 - i2}});
  return out;
}

/// Position of a multi-index in basis(d).
inline std::size_t basis_index(int d, const MultiIndex& i) {
  if (i.total() != d || i[0] < 0 || i[1] < 0 || i[2] < 0)
    throw std::invalid_argument("basis_index: index not in basis");
  const int r = d - i[0];
  return static_cast<std::size_t>(r * (r + 1) / 2 + (r - i[1]));
}

inline std::size_t basis_size(int d) {
  return static_cast<std::size_t>((d + 1) * (d + 2) / 2);
}

// Coefficient vector of a linear form w.r.t. x1, x2, x3.
template <class T>
struct LinearForm {
  std::array<T, 3> c{};

  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.c == b.c; }
};

using LinearFormZ = LinearForm<Int>;
using LinearFormQ = LinearForm<Rat>;

template <class T>
bool is_zero_form(const LinearForm<T>& l) {
  return is_zero(l.c[0]) && is_zero(l.c[1]) && is_zero(l.c[2]);
}

enum class Coords { A, Monomial };

// Homogeneous ternary form of fixed degree with exact coefficients, stored
// sparsely.  All stored indices have |i| == degree; zero coefficients are
// never stored.
template <class T>
class HomForm {
 public:
  HomForm() : degree_(0), kind_(Coords::Monomial) {}
  HomForm(int degree, Coords kind) : degree_(degree), kind_(kind) {
    if (degree < 0) throw std::invalid_argument("HomForm: negative degree");
  }

  int degree() const { return degree_; }
  Coords kind() const { return kind_; }
  const std::map<MultiIndex, T>& terms() const { return coeff_; }
  bool is_zero() const { return coeff_.empty(); }

  T coeff(const MultiIndex& i) const {
    auto it = coeff_.find(i);
    return it == coeff_.end() ? T{} : it->second;
  }

  void add(const MultiIndex& i, const T& v) {
    if (i.total() != degree_) throw std::invalid_argument("HomForm::add: |i| != degree");
    if (detail::value_is_zero(v)) return;
    auto [it, inserted] = coeff_.emplace(i, v);
    if (!inserted) {
      it->second += v;
      if (detail::value_is_zero(it->second)) coeff_.erase(it);
    }
  }

  void set(const MultiIndex& i, T v) {
    if (i.total() != degree_) throw std::invalid_argument("HomForm::set: |i| != degree");
    if (detail::value_is_zero(v))
      coeff_.erase(i);
    else
      coeff_[i] = std::move(v);
  }

  HomForm& operator+=(const HomForm& o) {
    require_compatible(o);
    for (const auto& [i, v] : o.coeff_) add(i, v);
    return *this;
  }

  HomForm& operator-=(const HomForm& o) {
    require_compatible(o);
    for (const auto& [i, v] : o.coeff_) add(i, T{} - v);
    return *this;
  }

  friend HomForm operator+(HomForm a, const HomForm& b) { return a += b; }
  friend HomForm operator-(HomForm a, const HomForm& b) { return a -= b; }

  friend HomForm operator*(const HomForm& f, const T& s) {
    HomForm r(f.degree_, f.kind_);
    if (detail::value_is_zero(s)) return r;
    for (const auto& [i, v] : f.coeff_) r.add(i, v * s);
    return r;
  }
  friend HomForm operator*(const T& s, const HomForm& f) { return f * s; }

  friend bool operator==(const HomForm& a, const HomForm& b) {
    return a.degree_ == b.degree_ && a.kind_ == b.kind_ && a.coeff_ == b.coeff_;
  }

  /// Product of two forms in monomial coordinates.
  friend HomForm operator*(const HomForm& a, const HomForm& b) {
    if (a.kind_ != Coords::Monomial || b.kind_ != Coords::Monomial)
      throw std::invalid_argument("HomForm multiplication requires monomial coordinates");
    HomForm r(a.degree_ + b.degree_, Coords::Monomial);
    for (const auto& [i, u] : a.coeff_)
      for (const auto& [j, v] : b.coeff_) r.add(i + j, u * v);
    return r;
  }

  /// Dense coefficient vector over basis(degree).
  std::vector<T> dense() const {
    std::vector<T> out(basis_size(degree_), T{});
    for (const auto& [i, v] : coeff_) out[basis_index(degree_, i)] = v;
    return out;
  }

 private:
  void require_compatible(const HomForm& o) const {
    if (degree_ != o.degree_ || kind_ != o.kind_)
      throw std::invalid_argument("HomForm: mixing degrees or coordinate kinds");
  }

  int degree_;
  Coords kind_;
  std::map<MultiIndex, T> coeff_;
};

template <class T>
bool is_zero(const HomForm<T>& f) {
  return f.is_zero();
}

/// c_i = (d!/i!) A_i.
template <class T>
HomForm<T> to_monomial(const HomForm<T>& f) {
  if (f.kind() == Coords::Monomial) return f;
  HomForm<T> r(f.degree(), Coords::Monomial);
  for (const auto& [i, v] : f.terms()) r.add(i, v * T(multinomial(f.degree(), i)));
  return r;
}

/// A_i = (i!/d!) c_i; requires a coefficient ring with exact division by
/// integers (use Rat, or Int when divisibility is guaranteed).
inline HomForm<Rat> to_A(const HomForm<Rat>& f) {
  if (f.kind() == Coords::A) return f;
  HomForm<Rat> r(f.degree(), Coords::A);
  for (const auto& [i, v] : f.terms()) r.add(i, v / Rat(multinomial(f.degree(), i)));
  return r;
}

inline HomForm<Int> to_A(const HomForm<Int>& f) {
  if (f.kind() == Coords::A) return f;
  HomForm<Int> r(f.degree(), Coords::A);
  for (const auto& [i, v] : f.terms()) r.add(i, div_exact(v, multinomial(f.degree(), i)));
  return r;
}

/// d-th power of a linear form in A-coordinates: A_i = l1^i1 l2^i2 l3^i3.
template <class T>
HomForm<T> power_of_linear(const LinearForm<T>& l, int d) {
  if (d < 1) throw std::invalid_argument("power_of_linear: degree must be >= 1");
  HomForm<T> r(d, Coords::A);
  for (const MultiIndex& i : basis(d)) {
    T v = ring_pow(l.c[0], static_cast<unsigned long>(i[0])) *
          ring_pow(l.c[1], static_cast<unsigned long>(i[1])) *
          ring_pow(l.c[2], static_cast<unsigned long>(i[2]));
    r.add(i, v);
  }
  return r;
}

template <class T>
HomForm<T> as_form(const LinearForm<T>& l) {
  HomForm<T> r(1, Coords::Monomial);
  r.add(MultiIndex{{1, 0, 0}}, l.c[0]);
  r.add(MultiIndex{{0, 1, 0}}, l.c[1]);
  r.add(MultiIndex{{0, 0, 1}}, l.c[2]);
  return r;
}

/// Expanded product l1*l2*l3*l4, a quartic in monomial coordinates.
template <class T>
HomForm<T> mul_linears(const std::array<LinearForm<T>, 4>& ls) {
  HomForm<T> r = as_form(ls[0]);
  for (int i = 1; i < 4; ++i) r = r * as_form(ls[i]);
  return r;
}

/// Expanded product (l1*l2*l3*l4)^2, an octic in monomial coordinates.
template <class T>
HomForm<T> mul_linears_squared(const std::array<LinearForm<T>, 4>& ls) {
  HomForm<T> q = mul_linears(ls);
  return q * q;
}

// Substitution x_i -> sum_j A[i][j] x_j, for linear forms and for expanded
// forms of small degree.  With det A = 1 these implement the SL3 action used
// in the equivariance tests.
template <class T>
LinearForm<T> transform(const LinearForm<T>& l, const std::array<std::array<T, 3>, 3>& A) {
  LinearForm<T> r;
  for (int j = 0; j < 3; ++j)
    r.c[static_cast<std::size_t>(j)] = l.c[0] * A[0][static_cast<std::size_t>(j)] +
                                       l.c[1] * A[1][static_cast<std::size_t>(j)] +
                                       l.c[2] * A[2][static_cast<std::size_t>(j)];
  return r;
}

template <class T>
HomForm<T> transform(const HomForm<T>& f, const std::array<std::array<T, 3>, 3>& A) {
  if (f.kind() != Coords::Monomial)
    throw std::invalid_argument("transform: expects monomial coordinates");
  std::array<HomForm<T>, 3> row;
  for (int i = 0; i < 3; ++i)
    row[static_cast<std::size_t>(i)] =
        as_form(LinearForm<T>{{A[static_cast<std::size_t>(i)][0], A[static_cast<std::size_t>(i)][1],
                               A[static_cast<std::size_t>(i)][2]}});
  HomForm<T> out(f.degree(), Coords::Monomial);
  for (const auto& [e, v] : f.terms()) {
    HomForm<T> term(0, Coords::Monomial);
    term.add(MultiIndex{{0, 0, 0}}, ring_one(v));
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * row[static_cast<std::size_t>(i)];
    out += term * v;
  }
  return out;
}

}  // namespace scorza
