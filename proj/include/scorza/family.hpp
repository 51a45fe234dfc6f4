#pragma once

// Interpolation-polynomial construction of x1-divisible elements written as
// sums of powers of linear forms, and the direct expansion of the covariant
// of (f(c) + g) as a polynomial in the auxiliary variable c.  The direct
// expansion carries c symbolically through the multilinear quadruple sum; it
// is exact and serves as the oracle for the closed-form coefficient engine.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scorza/covariants.hpp"
#include "scorza/forms.hpp"
#include "scorza/poly.hpp"
#include "scorza/scalars.hpp"

namespace scorza {

// Pairwise-distinct interpolation nodes b_1..b_K.
class InterpNodes {
 public:
  explicit InterpNodes(std::vector<Rat> nodes) : b_(std::move(nodes)) {
    for (std::size_t i = 0; i < b_.size(); ++i)
      for (std::size_t j = i + 1; j < b_.size(); ++j)
        if (b_[i] == b_[j]) throw std::invalid_argument("InterpNodes: duplicate nodes");
  }

  static InterpNodes consecutive(std::size_t count, long first = 0) {
    std::vector<Rat> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.emplace_back(first + static_cast<long>(i));
    return InterpNodes(std::move(v));
  }

  static InterpNodes geometric(std::size_t count, long first = 1, long ratio = 2) {
    std::vector<Rat> v;
    Rat x(first);
    for (std::size_t i = 0; i < count; ++i, x *= ratio) v.push_back(x);
    return InterpNodes(std::move(v));
  }

  std::size_t size() const { return b_.size(); }
  const Rat& node(std::size_t i) const { return b_.at(i); }
  const std::vector<Rat>& nodes() const { return b_; }

 private:
  std::vector<Rat> b_;
};

/// Lagrange basis polynomial p_i(c) = prod_{j != i} (c - b_j)/(b_i - b_j),
/// of degree K-1.  Index is 0-based.
inline Poly<Rat> interp_poly(const InterpNodes& b, std::size_t i) {
  if (i >= b.size()) throw std::out_of_range("interp_poly: index");
  Poly<Rat> num = Poly<Rat>::constant(Rat(1));
  Rat den(1);
  const Poly<Rat> c = Poly<Rat>::variable(Rat(1));
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (j == i) continue;
    num = num * (c - Poly<Rat>::constant(b.node(j)));
    den *= b.node(i) - b.node(j);
  }
  return num * Rat(Rat(1) / den);
}

// An element of the x1-divisible family at a concrete parameter value c:
// sum_i p_i(c) l_i^d - (c x + y)^d with l_i = b_i x + y, x = x1.  All forms
// lie in span{x1, y}, so the element is kept as (weight, beta) pairs with
// form = beta*x1 + y.
struct PowerSumBuild {
  int d = 0;
  LinearFormQ y;                          // lambda*x2 + mu*x3, nonzero
  std::vector<std::pair<Rat, Rat>> wb;    // (weight, beta)

  std::vector<WeightedPower<Rat>> terms() const {
    std::vector<WeightedPower<Rat>> out;
    out.reserve(wb.size());
    for (const auto& [w, beta] : wb)
      out.push_back(WeightedPower<Rat>{w, LinearFormQ{{beta, y.c[1], y.c[2]}}});
    return out;
  }

  /// Coefficients of x^A y^(d-A) for A = 0..d of the expanded element:
  /// coefficient = C(d,A) * sum_m w_m beta_m^A.
  std::vector<Rat> xy_coefficients() const {
    std::vector<Rat> out(static_cast<std::size_t>(d) + 1, Rat(0));
    for (int A = 0; A <= d; ++A) {
      Rat s(0);
      for (const auto& [w, beta] : wb) s += w * ring_pow(beta, static_cast<unsigned long>(A));
      out[static_cast<std::size_t>(A)] = Rat(binom_exact(static_cast<unsigned long>(d), A)) * s;
    }
    return out;
  }
};

inline void require_y_form(const LinearFormQ& y) {
  if (!is_zero(y.c[0]) || (is_zero(y.c[1]) && is_zero(y.c[2])))
    throw std::invalid_argument("y must be a nonzero combination of x2 and x3");
}

/// f(c) = p_1(c) l_1^d + ... + p_K(c) l_K^d - (c x + y)^d.  Requires d > K
/// and c distinct from every node; the result is nonzero and divisible by
/// x1^K (checked by tests via xy_coefficients).
inline PowerSumBuild build_f_c(const InterpNodes& b, const LinearFormQ& y, int d, const Rat& c) {
  require_y_form(y);
  const std::size_t K = b.size();
  if (K == 0) throw std::invalid_argument("build_f_c: empty node vector");
  if (d <= static_cast<int>(K)) throw std::invalid_argument("build_f_c: requires d > K");
  for (std::size_t i = 0; i < K; ++i)
    if (c == b.node(i)) throw std::invalid_argument("build_f_c: c collides with a node");

  PowerSumBuild out;
  out.d = d;
  out.y = y;
  out.wb.reserve(K + 1);
  for (std::size_t i = 0; i < K; ++i) out.wb.emplace_back(interp_poly(b, i).eval(c), b.node(i));
  out.wb.emplace_back(Rat(-1), c);
  return out;
}

// Covariant of (f(c) + g) expanded in powers of c; coefficient t is a form
// of the covariant's order.
class CPolyForm {
 public:
  CPolyForm(int order, std::vector<HomForm<Rat>> q) : order_(order), q_(std::move(q)) {
    while (!q_.empty() && q_.back().is_zero()) q_.pop_back();
  }

  int order() const { return order_; }
  long degree() const { return static_cast<long>(q_.size()) - 1; }

  const HomForm<Rat>& coeff(std::size_t t) const {
    static const HomForm<Rat> zero4(4, Coords::Monomial);
    static const HomForm<Rat> zero8(8, Coords::Monomial);
    if (t < q_.size()) return q_[t];
    return order_ == 4 ? zero4 : zero8;
  }

 private:
  int order_;
  std::vector<HomForm<Rat>> q_;
};

/// Direct expansion of S_d(f(c)+g) (or T_d for the octic case) with c
/// symbolic.  g is given as weighted d-th powers; the f(c) part contributes
/// the K interpolation weights p_i(c) and the (cx+y)^d term with weight -1.
/// Every quadruple of the multilinear sum is included.  Interpolation
/// weights are cleared of denominators up front so the whole sum runs over
/// integer-valued coefficients; the common scale is divided out at the end.
inline CPolyForm q_series_direct(const std::vector<WeightedPower<Rat>>& g_terms,
                                 const InterpNodes& b, const LinearFormQ& y, int n,
                                 CovariantKind kind = CovariantKind::S) {
  require_y_form(y);
  if (n < 1) throw std::invalid_argument("q_series_direct: n must be >= 1");
  const int d = kind == CovariantKind::S ? 3 * n + 1 : 3 * n + 2;
  const int K = kind == CovariantKind::S ? 2 * n + 3 : 2 * n + 5;
  if (b.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("q_series_direct: node count must be K = " + std::to_string(K));

  std::vector<Poly<Rat>> p(b.size());
  Int scale(1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    p[i] = interp_poly(b, i);
    for (const Rat& coeff : p[i].coeffs()) {
      Int den = coeff.get_den();
      Int g;
      mpz_lcm(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      scale = g;
    }
  }

  using PQ = Poly<Rat>;
  const Rat scale_q{scale};
  std::vector<WeightedPower<PQ>> terms;
  terms.reserve(b.size() + 1 + g_terms.size());
  auto const_form = [](const LinearFormQ& l) {
    return LinearForm<PQ>{{PQ::constant(l.c[0]), PQ::constant(l.c[1]), PQ::constant(l.c[2])}};
  };
  for (std::size_t i = 0; i < b.size(); ++i)
    terms.push_back(WeightedPower<PQ>{p[i] * scale_q,
                                      const_form(LinearFormQ{{b.node(i), y.c[1], y.c[2]}})});
  terms.push_back(WeightedPower<PQ>{PQ::constant(-scale_q),
                                    LinearForm<PQ>{{PQ::variable(Rat(1)), PQ::constant(y.c[1]),
                                                    PQ::constant(y.c[2])}}});
  for (const auto& t : g_terms)
    terms.push_back(WeightedPower<PQ>{PQ::constant(t.weight * scale_q), const_form(t.form)});

  HomForm<PQ> res = kind == CovariantKind::S ? eval_S(terms, d) : eval_T(terms, d);

  const Rat scale4 = ring_pow(scale_q, 4);
  const int order = kind == CovariantKind::S ? 4 : 8;
  std::vector<HomForm<Rat>> q;
  for (const auto& [idx, poly] : res.terms()) {
    for (long t = 0; t <= poly.degree(); ++t) {
      Rat v = poly.coeff(static_cast<std::size_t>(t)) / scale4;
      if (is_zero(v)) continue;
      if (static_cast<std::size_t>(t) >= q.size())
        q.resize(static_cast<std::size_t>(t) + 1, HomForm<Rat>(order, Coords::Monomial));
      q[static_cast<std::size_t>(t)].add(idx, v);
    }
  }
  CPolyForm out(order, std::move(q));
  if (out.degree() > d)
    throw std::logic_error("q_series_direct: degree in c exceeds d; quadruple bookkeeping bug");
  return out;
}

}  // namespace scorza
