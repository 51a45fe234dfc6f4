#pragma once

// The symbolic-method evaluators: bracket factor, Clebsch invariant I, the
// degree-4 covariants S_d (order 4) and T_d (order 8) on quadruples of
// linear forms and, by multilinearity, on sums of powers of linear forms.
//
// For small d the covariant is also expanded literally as a polynomial in
// the coefficients A_i (expand_S / expand_T); that expansion is the oracle
// against the multilinear path and the input to the base-locus structure
// check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "scorza/forms.hpp"
#include "scorza/scalars.hpp"

namespace scorza {

/// 3x3 determinant of the coefficient rows of three linear forms.
template <class T>
T bracket(const LinearForm<T>& u, const LinearForm<T>& v, const LinearForm<T>& w) {
  return u.c[0] * (v.c[1] * w.c[2] - v.c[2] * w.c[1]) -
         u.c[1] * (v.c[0] * w.c[2] - v.c[2] * w.c[0]) +
         u.c[2] * (v.c[0] * w.c[1] - v.c[1] * w.c[0]);
}

/// Clebsch invariant of four linear forms: (abc)(abd)(acd)(bcd).
template <class T>
T clebsch_I(const LinearForm<T>& a, const LinearForm<T>& b, const LinearForm<T>& c,
            const LinearForm<T>& d) {
  return bracket(a, b, c) * bracket(a, b, d) * bracket(a, c, d) * bracket(b, c, d);
}

/// I(l1..l4)^n times the expanded product l1 l2 l3 l4 (a quartic).
template <class T>
HomForm<T> S_quadruple(const std::array<LinearForm<T>, 4>& ls, int n) {
  if (n < 0) throw std::invalid_argument("S_quadruple: negative n");
  T scale = ring_pow(clebsch_I(ls[0], ls[1], ls[2], ls[3]), static_cast<unsigned long>(n));
  return mul_linears(ls) * scale;
}

/// I(l1..l4)^n times the expanded product (l1 l2 l3 l4)^2 (an octic).
template <class T>
HomForm<T> T_quadruple(const std::array<LinearForm<T>, 4>& ls, int n) {
  if (n < 0) throw std::invalid_argument("T_quadruple: negative n");
  T scale = ring_pow(clebsch_I(ls[0], ls[1], ls[2], ls[3]), static_cast<unsigned long>(n));
  return mul_linears_squared(ls) * scale;
}

template <class T>
struct WeightedPower {
  T weight;
  LinearForm<T> form;
};

namespace detail {

inline const std::vector<MultiIndex>& cached_basis(int d) {
  static const std::vector<std::vector<MultiIndex>> all = [] {
    std::vector<std::vector<MultiIndex>> v;
    for (int k = 0; k <= 16; ++k) v.push_back(basis(k));
    return v;
  }();
  return all.at(static_cast<std::size_t>(d));
}

template <class T>
std::vector<T> dense_mul(int da, const std::vector<T>& a, int db, const std::vector<T>& b) {
  const auto& BA = cached_basis(da);
  const auto& BB = cached_basis(db);
  std::vector<T> r(basis_size(da + db), T{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (is_zero(b[j])) continue;
      r[basis_index(da + db, BA[i] + BB[j])] += a[i] * b[j];
    }
  }
  return r;
}

// 24 * sum over quadruples i<j<k<p of w_i w_j w_k w_p I^n (l_i..l_p)^mult.
// Pair products and triple brackets are tabulated once; exact arithmetic
// makes the summation order irrelevant.
template <class T>
HomForm<T> quadruple_sum(std::span<const WeightedPower<T>> terms, int n, int mult) {
  const int order = 4 * mult;
  const std::size_t N = terms.size();
  std::vector<T> acc(basis_size(order), T{});

  if (N >= 4) {
    auto pair_idx = [](std::size_t a, std::size_t b) {  // a < b
      return b * (b - 1) / 2 + a;
    };
    auto triple_idx = [](std::size_t a, std::size_t b, std::size_t c) {  // a < b < c
      return c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a;
    };

    std::vector<std::vector<T>> pair_form(N * (N - 1) / 2);
    for (std::size_t b = 1; b < N; ++b)
      for (std::size_t a = 0; a < b; ++a) {
        std::vector<T> la{terms[a].form.c[0], terms[a].form.c[1], terms[a].form.c[2]};
        std::vector<T> lb{terms[b].form.c[0], terms[b].form.c[1], terms[b].form.c[2]};
        std::vector<T> q = dense_mul(1, la, 1, lb);
        pair_form[pair_idx(a, b)] = (mult == 1) ? std::move(q) : dense_mul(2, q, 2, q);
      }

    std::vector<T> tb(N * (N - 1) * (N - 2) / 6, T{});
    for (std::size_t c = 2; c < N; ++c)
      for (std::size_t b = 1; b < c; ++b)
        for (std::size_t a = 0; a < b; ++a)
          tb[triple_idx(a, b, c)] = bracket(terms[a].form, terms[b].form, terms[c].form);

    const int d2 = 2 * mult;
    for (std::size_t i = 0; i + 3 < N; ++i) {
      if (is_zero(terms[i].weight)) continue;
      for (std::size_t j = i + 1; j + 2 < N; ++j) {
        if (is_zero(terms[j].weight)) continue;
        const T wij = terms[i].weight * terms[j].weight;
        for (std::size_t k = j + 1; k + 1 < N; ++k) {
          if (is_zero(terms[k].weight)) continue;
          const T wijk = wij * terms[k].weight;
          const T& bijk = tb[triple_idx(i, j, k)];
          if (n > 0 && is_zero(bijk)) continue;
          for (std::size_t p = k + 1; p < N; ++p) {
            if (is_zero(terms[p].weight)) continue;
            const T& bijp = tb[triple_idx(i, j, p)];
            const T& bikp = tb[triple_idx(i, k, p)];
            const T& bjkp = tb[triple_idx(j, k, p)];
            if (n > 0 && (is_zero(bijp) || is_zero(bikp) || is_zero(bjkp))) continue;
            const T inv = bijk * bijp * bikp * bjkp;
            T scale = wijk * terms[p].weight * ring_pow(inv, static_cast<unsigned long>(n));
            if (is_zero(scale)) continue;
            std::vector<T> prod =
                dense_mul(d2, pair_form[pair_idx(i, j)], d2, pair_form[pair_idx(k, p)]);
            for (std::size_t m = 0; m < prod.size(); ++m)
              if (!is_zero(prod[m])) acc[m] += prod[m] * scale;
          }
        }
      }
    }
  }

  const T twentyfour = ring_from_int(24, T{});
  HomForm<T> out(order, Coords::Monomial);
  const auto& B = cached_basis(order);
  for (std::size_t m = 0; m < acc.size(); ++m)
    if (!is_zero(acc[m])) out.add(B[m], acc[m] * twentyfour);
  return out;
}

}  // namespace detail

/// S_d on a sum of d-th powers of linear forms, d = 3n+1.
template <class T>
HomForm<T> eval_S(const std::vector<WeightedPower<T>>& terms, int d) {
  if (d < 1 || d % 3 != 1)
    throw std::invalid_argument("eval_S: degree must satisfy d = 3n+1, got " + std::to_string(d));
  return detail::quadruple_sum<T>(terms, (d - 1) / 3, 1);
}

/// T_d on a sum of d-th powers of linear forms, d = 3n+2.
template <class T>
HomForm<T> eval_T(const std::vector<WeightedPower<T>>& terms, int d) {
  if (d < 2 || d % 3 != 2)
    throw std::invalid_argument("eval_T: degree must satisfy d = 3n+2, got " + std::to_string(d));
  return detail::quadruple_sum<T>(terms, (d - 2) / 3, 2);
}

// One monomial A_i A_j A_k A_l x^e of the expanded covariant.
struct QuadMonomial {
  MultiIndex i, j, k, l;
  MultiIndex e;
  Int coeff;
};

enum class CovariantKind { S, T };

namespace detail {

// Exponent vectors of the 12 symbol variables plus x1,x2,x3, packed into 15
// nibbles of a 64-bit key.  Keys add under monomial multiplication; all
// exponents stay below 16 for the degrees handled here.
using SymKey = std::uint64_t;
using SymPoly = std::unordered_map<SymKey, long long>;

inline SymKey sym_unit(int slot) { return SymKey{1} << (4 * slot); }
inline int sym_get(SymKey k, int slot) { return static_cast<int>((k >> (4 * slot)) & 0xF); }

// Bracket of three symbol letters (0=alpha..3=delta) as a 6-term SymPoly.
inline SymPoly sym_bracket(int la, int lb, int lc) {
  SymPoly out;
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
  const long long sign[6] = {1, 1, 1, -1, -1, -1};
  for (int t = 0; t < 6; ++t) {
    SymKey k = sym_unit(3 * la + perm[t][0]) + sym_unit(3 * lb + perm[t][1]) +
               sym_unit(3 * lc + perm[t][2]);
    out[k] += sign[t];
  }
  return out;
}

inline SymPoly sym_mul(const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  out.reserve(a.size() * 2);
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      auto& slot = out[ka + kb];
      slot += va * vb;
      if (slot == 0) out.erase(ka + kb);
    }
  return out;
}

// x-linear factor of one symbol letter: alpha_1 x_1 + alpha_2 x_2 + alpha_3 x_3.
inline SymPoly sym_x_factor(int letter) {
  SymPoly out;
  for (int t = 0; t < 3; ++t) out[sym_unit(3 * letter + t) + sym_unit(12 + t)] = 1;
  return out;
}

inline std::vector<QuadMonomial> expand_covariant(int n, int mult) {
  SymPoly I = sym_mul(sym_mul(sym_bracket(0, 1, 2), sym_bracket(0, 1, 3)),
                      sym_mul(sym_bracket(0, 2, 3), sym_bracket(1, 2, 3)));
  SymPoly acc = I;
  for (int rep = 1; rep < n; ++rep) acc = sym_mul(acc, I);
  for (int letter = 0; letter < 4; ++letter)
    for (int rep = 0; rep < mult; ++rep) acc = sym_mul(acc, sym_x_factor(letter));

  std::vector<QuadMonomial> out;
  out.reserve(acc.size());
  for (const auto& [key, coeff] : acc) {
    QuadMonomial qm;
    MultiIndex* dst[5] = {&qm.i, &qm.j, &qm.k, &qm.l, &qm.e};
    for (int part = 0; part < 5; ++part)
      for (int t = 0; t < 3; ++t) dst[part]->v[static_cast<std::size_t>(t)] = sym_get(key, 3 * part + t);
    qm.coeff = Int(static_cast<long>(coeff));
    out.push_back(qm);
  }
  auto key_of = [](const QuadMonomial& q) {
    return std::array<MultiIndex, 5>{q.i, q.j, q.k, q.l, q.e};
  };
  std::sort(out.begin(), out.end(),
            [&](const QuadMonomial& a, const QuadMonomial& b) { return key_of(a) < key_of(b); });
  return out;
}

}  // namespace detail

/// Full expansion of S_d as a linear combination of A_i A_j A_k A_l x^e.
/// Only d in {4, 7} is feasible; larger d grows combinatorially.
inline std::vector<QuadMonomial> expand_S(int d) {
  if (d != 4 && d != 7)
    throw std::invalid_argument("expand_S: full expansion supported for d in {4, 7} only");
  return detail::expand_covariant((d - 1) / 3, 1);
}

/// Full expansion of T_d; d in {5, 8} only.
inline std::vector<QuadMonomial> expand_T(int d) {
  if (d != 5 && d != 8)
    throw std::invalid_argument("expand_T: full expansion supported for d in {5, 8} only");
  return detail::expand_covariant((d - 2) / 3, 2);
}

/// Evaluate an expansion at a form given in A-coordinates: substitutes the
/// numeric A_i into every monomial and collects the resulting order-form.
inline HomForm<Rat> substitute_expansion(const std::vector<QuadMonomial>& expansion,
                                         const HomForm<Rat>& f) {
  if (f.kind() != Coords::A)
    throw std::invalid_argument("substitute_expansion: form must be in A-coordinates");
  int order = expansion.empty() ? 0 : expansion.front().e.total();
  HomForm<Rat> out(order, Coords::Monomial);
  for (const QuadMonomial& qm : expansion) {
    if (qm.i.total() != f.degree())
      throw std::invalid_argument("substitute_expansion: degree mismatch");
    Rat v = Rat(qm.coeff) * f.coeff(qm.i) * f.coeff(qm.j) * f.coeff(qm.k) * f.coeff(qm.l);
    if (!is_zero(v)) out.add(qm.e, v);
  }
  return out;
}

struct TripleStructureReport {
  int d = 0;
  int n = 0;
  int threshold = 0;
  std::size_t monomial_count = 0;
  std::size_t weight_violations = 0;
  std::size_t structure_violations = 0;
  std::vector<QuadMonomial> violators;  // first few offenders, if any

  bool passed() const { return weight_violations == 0 && structure_violations == 0; }
};

/// Checks, on the full expansion, that every monomial satisfies the three
/// weight equations i_t + j_t + k_t + l_t = 4n + e_t and that at most one of
/// the four first-slot exponents reaches the threshold (2n+3 for S, 2n+5 for
/// T).  The latter is what places the span of x1-divisible forms inside the
/// base locus with full triple structure.
inline TripleStructureReport check_triple_structure(CovariantKind kind, int d) {
  TripleStructureReport rep;
  rep.d = d;
  std::vector<QuadMonomial> expansion;
  if (kind == CovariantKind::S) {
    expansion = expand_S(d);
    rep.n = (d - 1) / 3;
    rep.threshold = 2 * rep.n + 3;
  } else {
    expansion = expand_T(d);
    rep.n = (d - 2) / 3;
    rep.threshold = 2 * rep.n + 5;
  }
  rep.monomial_count = expansion.size();
  for (const QuadMonomial& qm : expansion) {
    bool weight_ok = true;
    for (int t = 0; t < 3; ++t)
      if (qm.i[t] + qm.j[t] + qm.k[t] + qm.l[t] != 4 * rep.n + qm.e[t]) weight_ok = false;
    if (!weight_ok) ++rep.weight_violations;
    int high = (qm.i[0] >= rep.threshold) + (qm.j[0] >= rep.threshold) +
               (qm.k[0] >= rep.threshold) + (qm.l[0] >= rep.threshold);
    if (high >= 2) {
      ++rep.structure_violations;
      if (rep.violators.size() < 10) rep.violators.push_back(qm);
    }
  }
  return rep;
}

}  // namespace scorza
