#pragma once

// Closed-form computation of the c-power coefficients of I(cx+y, m_i, m_j,
// m_k)^n via the binomial triple sum, assembly of the window forms Q_t and
// their binomial-normalized companions R_t, and reduction into F_p.
//
// The path of record is exact big-integer arithmetic followed by reduction;
// the quasi-polynomial form over F_p (rho^n P(n) with deg P < p) is kept as
// an independent cross-check route.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scorza/covariants.hpp"
#include "scorza/forms.hpp"
#include "scorza/poly.hpp"
#include "scorza/scalars.hpp"

namespace scorza {

/// Thrown on divisor breakdowns that leave R_t undefined (a zero divisor).
/// Non-exactness of the integer division itself is not an error: R_t is a
/// rational form by construction and only p-integrality is load-bearing;
/// inexact-over-Z divisions are counted and surfaced in the certificate.
class DivisibilityError : public std::runtime_error {
 public:
  explicit DivisibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the quasi-polynomial route when some xi reduces to 0 mod p; the
/// route is invalid there and the caller falls back to the exact path.
class XiZeroModPError : public std::runtime_error {
 public:
  explicit XiZeroModPError(const std::string& what) : std::runtime_error(what) {}
};

enum class CaseTag { D1, D2 };  // d = 3n+1 (quartics) / d = 3n+2 (octics)

inline const char* to_string(CaseTag t) { return t == CaseTag::D1 ? "d1" : "d2"; }

// Sweep configuration: the nine integer linear forms of g, the precision
// prime, and the y-list.  Dimensions and validity thresholds derive from the
// case tag.
struct GConfig {
  CaseTag tag = CaseTag::D1;
  std::uint64_t prime = 11;
  std::array<LinearFormZ, 9> m{};
  std::vector<LinearFormZ> ys;

  int mult() const { return tag == CaseTag::D1 ? 1 : 2; }
  int order() const { return 4 * mult(); }
  int rows() const { return static_cast<int>(basis_size(order())); }  // 15 / 45
  int cols() const { return static_cast<int>(prime) * static_cast<int>(ys.size()); }
  int d(int n) const { return 3 * n + mult(); }
  int K(int n) const { return 2 * n + 2 * mult() + 1; }  // 2n+3 / 2n+5
  int n_min() const { return tag == CaseTag::D1 ? 12 : 21; }
  long period() const { return static_cast<long>(prime) * static_cast<long>(prime - 1); }

  /// The configuration used for the certified sweeps: g = m_1^d + ... +
  /// m_9^d with the fixed integer forms below, p = 11 with y in {x2, x3}
  /// for the quartic case, p = 19 with y in {x2, x3, x2+x3} for the octic
  /// case.
  static GConfig standard(CaseTag tag) {
    GConfig cfg;
    cfg.tag = tag;
    auto lf = [](long a, long b, long c) { return LinearFormZ{{Int(a), Int(b), Int(c)}}; };
    cfg.m = {lf(1, 3, 9),    lf(-10, 1, 4),  lf(8, 4, 6),
             lf(1, 6, -10),  lf(4, -8, -10), lf(-3, 7, -4),
             lf(0, -3, 2),   lf(8, -4, -4),  lf(-10, 4, 6)};
    if (tag == CaseTag::D1) {
      cfg.prime = 11;
      cfg.ys = {lf(0, 1, 0), lf(0, 0, 1)};
    } else {
      cfg.prime = 19;
      cfg.ys = {lf(0, 1, 0), lf(0, 0, 1), lf(0, 1, 1)};
    }
    return cfg;
  }

  std::vector<WeightedPower<Rat>> g_as_powers() const {
    std::vector<WeightedPower<Rat>> out;
    out.reserve(m.size());
    for (const LinearFormZ& mi : m)
      out.push_back(WeightedPower<Rat>{Rat(1), LinearFormQ{{Rat(mi.c[0]), Rat(mi.c[1]),
                                                            Rat(mi.c[2])}}});
    return out;
  }
};

// One additive term rho^n P(n) of a matrix entry over F_p; entries are sums
// of at most C(9,3) = 84 of these.
struct QuasiPolynomial {
  std::uint64_t p = 0;
  struct Term {
    FpElem rho;
    Poly<FpElem> P;
  };
  std::vector<Term> terms;

  FpElem eval(unsigned long n) const {
    FpElem acc{0, p};
    for (const Term& t : terms) {
      if (t.rho.is_zero()) continue;  // n >= 1 throughout
      FpElem rho_n = fp_pow(t.rho, n % (p - 1));
      acc += rho_n * t.P.eval(FpElem{n % p, p});
    }
    return acc;
  }
};

/// C(n, k) as a polynomial in n over F_p (k < p so k! is a unit).
inline Poly<FpElem> binom_poly(long k, const FpCtx& F) {
  if (k < 0) return Poly<FpElem>{};
  if (static_cast<std::uint64_t>(k) >= F.modulus())
    throw std::invalid_argument("binom_poly: k >= p");
  Poly<FpElem> num = Poly<FpElem>::constant(F.one());
  const Poly<FpElem> X = Poly<FpElem>::variable(F.one());
  FpElem fact = F.one();
  for (long i = 0; i < k; ++i) {
    num = num * (X - Poly<FpElem>::constant(F.from_int(i)));
    fact *= F.from_int(i + 1);
  }
  return num * fp_inv(fact);
}

class CoeffEngine {
 public:
  explicit CoeffEngine(GConfig cfg) : cfg_(std::move(cfg)), F_(cfg_.prime) {
    const int nm = static_cast<int>(cfg_.m.size());
    for (int i = 0; i < nm; ++i)
      for (int j = i + 1; j < nm; ++j)
        for (int k = j + 1; k < nm; ++k) triples_.push_back({i, j, k});

    const LinearFormZ x1{{Int(1), Int(0), Int(0)}};
    const int mult = cfg_.mult();
    data_.resize(triples_.size());
    for (std::size_t ti = 0; ti < triples_.size(); ++ti) {
      const auto [i, j, k] = triples_[ti];
      TripleData& td = data_[ti];
      td.bracket_m = bracket(cfg_.m[static_cast<std::size_t>(i)],
                             cfg_.m[static_cast<std::size_t>(j)],
                             cfg_.m[static_cast<std::size_t>(k)]);
      HomForm<Int> M = as_form(cfg_.m[static_cast<std::size_t>(i)]) *
                       as_form(cfg_.m[static_cast<std::size_t>(j)]) *
                       as_form(cfg_.m[static_cast<std::size_t>(k)]);
      if (mult == 2) M = M * M;
      td.per_y.resize(cfg_.ys.size());
      for (std::size_t yi = 0; yi < cfg_.ys.size(); ++yi) {
        PerY& py = td.per_y[yi];
        const LinearFormZ& y = cfg_.ys[yi];
        // Pair order (i,k), (i,j), (j,k); the product over the three pairs is
        // what enters I.
        const std::array<std::pair<int, int>, 3> pairs{{{i, k}, {i, j}, {j, k}}};
        for (int a = 0; a < 3; ++a) {
          const auto [u, v] = pairs[static_cast<std::size_t>(a)];
          py.xi[static_cast<std::size_t>(a)] =
              bracket(x1, cfg_.m[static_cast<std::size_t>(u)], cfg_.m[static_cast<std::size_t>(v)]);
          py.eta[static_cast<std::size_t>(a)] =
              bracket(y, cfg_.m[static_cast<std::size_t>(u)], cfg_.m[static_cast<std::size_t>(v)]);
        }
        // (cx+y)^mult M = sum_j C(mult,j) c^j x^j y^(mult-j) M; parts[j]
        // multiplies the coefficient of c^(t-j) of I^n.
        py.parts.resize(static_cast<std::size_t>(mult) + 1);
        for (int jj = 0; jj <= mult; ++jj) {
          HomForm<Int> f = M;
          for (int r = 0; r < jj; ++r) f = f * as_form(x1);
          for (int r = 0; r < mult - jj; ++r) f = f * as_form(y);
          py.parts[static_cast<std::size_t>(jj)] =
              f * binom_exact(static_cast<unsigned long>(mult), jj);
        }
        py.parts_dense.resize(py.parts.size());
        for (std::size_t jj = 0; jj < py.parts.size(); ++jj) {
          auto dense = py.parts[jj].dense();
          py.parts_dense[jj].reserve(dense.size());
          for (const Int& v : dense) py.parts_dense[jj].push_back(F_.from_int(v));
        }
      }
    }
  }

  const GConfig& config() const { return cfg_; }
  const FpCtx& field() const { return F_; }
  std::size_t triple_count() const { return triples_.size(); }
  const std::array<int, 3>& triple_at(std::size_t ti) const { return triples_.at(ti); }

  const Int& xi(std::size_t ti, std::size_t yi, int a) const {
    return data_[ti].per_y[yi].xi[static_cast<std::size_t>(a)];
  }
  const Int& eta(std::size_t ti, std::size_t yi, int a) const {
    return data_[ti].per_y[yi].eta[static_cast<std::size_t>(a)];
  }
  const Int& bracket_m(std::size_t ti) const { return data_[ti].bracket_m; }

  /// Exact coefficient of c^s in I(cx+y, m_i, m_j, m_k)^n:
  /// bracket^n * sum over p'+q'+r' = 3n-s (each <= n) of
  /// C(n,p')C(n,q')C(n,r') xi0^(n-p') xi1^(n-q') xi2^(n-r') eta0^p' eta1^q' eta2^r'.
  Int coeff_I_power(int s, int n, std::size_t ti, std::size_t yi) const {
    if (n < 0) throw std::invalid_argument("coeff_I_power: negative n");
    if (s < 0 || s > 3 * n) return Int(0);
    const PerY& py = data_[ti].per_y[yi];
    const long w = 3L * n - s;
    Int sum(0);
    for (long pp = 0; pp <= std::min<long>(w, n); ++pp)
      for (long qq = 0; qq <= std::min<long>(w - pp, n); ++qq) {
        const long rr = w - pp - qq;
        if (rr > n) continue;
        Int term = binom_exact(static_cast<unsigned long>(n), pp) *
                   binom_exact(static_cast<unsigned long>(n), qq) *
                   binom_exact(static_cast<unsigned long>(n), rr);
        term *= ring_pow(py.xi[0], static_cast<unsigned long>(n - pp)) *
                ring_pow(py.eta[0], static_cast<unsigned long>(pp));
        term *= ring_pow(py.xi[1], static_cast<unsigned long>(n - qq)) *
                ring_pow(py.eta[1], static_cast<unsigned long>(qq));
        term *= ring_pow(py.xi[2], static_cast<unsigned long>(n - rr)) *
                ring_pow(py.eta[2], static_cast<unsigned long>(rr));
        sum += term;
      }
    return ring_pow(data_[ti].bracket_m, static_cast<unsigned long>(n)) * sum;
  }

  /// All window coefficients at once: W[w] = coeff of c^(3n-w) for
  /// w = 0..p-1, with shared power tables.
  std::vector<Int> window_coeffs(int n, std::size_t ti, std::size_t yi) const {
    const PerY& py = data_[ti].per_y[yi];
    const long wmax = static_cast<long>(cfg_.prime) - 1;
    const long pmax = std::min<long>(wmax, n);

    // mix[a][p'] = xi_a^(n-p') * eta_a^(p')
    std::array<std::vector<Int>, 3> mix;
    for (int a = 0; a < 3; ++a) {
      mix[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(pmax) + 1, Int(0));
      const Int& xi = py.xi[static_cast<std::size_t>(a)];
      const Int& eta = py.eta[static_cast<std::size_t>(a)];
      std::vector<Int> xipow(static_cast<std::size_t>(pmax) + 1, Int(0));
      if (is_zero(xi)) {
        if (pmax == n) xipow[static_cast<std::size_t>(n)] = 1;  // xi^0
      } else {
        xipow[static_cast<std::size_t>(pmax)] =
            ring_pow(xi, static_cast<unsigned long>(n - pmax));
        for (long pp = pmax - 1; pp >= 0; --pp)
          xipow[static_cast<std::size_t>(pp)] = xipow[static_cast<std::size_t>(pp + 1)] * xi;
      }
      Int ep(1);
      for (long pp = 0; pp <= pmax; ++pp) {
        mix[static_cast<std::size_t>(a)][static_cast<std::size_t>(pp)] =
            xipow[static_cast<std::size_t>(pp)] * ep;
        ep *= eta;
      }
    }

    std::vector<Int> binoms(static_cast<std::size_t>(pmax) + 1);
    for (long kk = 0; kk <= pmax; ++kk)
      binoms[static_cast<std::size_t>(kk)] = binom_exact(static_cast<unsigned long>(n), kk);

    const Int bn = ring_pow(data_[ti].bracket_m, static_cast<unsigned long>(n));
    std::vector<Int> W(static_cast<std::size_t>(wmax) + 1, Int(0));
    for (long w = 0; w <= wmax; ++w) {
      if (w > 3L * n) break;
      Int sum(0);
      for (long pp = 0; pp <= std::min(w, pmax); ++pp)
        for (long qq = 0; qq <= std::min(w - pp, pmax); ++qq) {
          const long rr = w - pp - qq;
          if (rr > pmax) continue;
          Int term = binoms[static_cast<std::size_t>(pp)] * binoms[static_cast<std::size_t>(qq)];
          term *= binoms[static_cast<std::size_t>(rr)];
          term *= mix[0][static_cast<std::size_t>(pp)];
          term *= mix[1][static_cast<std::size_t>(qq)];
          term *= mix[2][static_cast<std::size_t>(rr)];
          sum += term;
        }
      W[static_cast<std::size_t>(w)] = bn * sum;
    }
    return W;
  }

  /// Quasi-polynomial form of the coefficient of c^(3n-w) of I^n mod p, for
  /// one triple: rho = bracket * xi0 xi1 xi2 reduced, P(n) the windowed
  /// binomial polynomial.  Invalid when some xi = 0 mod p.
  QuasiPolynomial quasi_poly(std::size_t ti, long w, std::size_t yi) const {
    if (w < 0 || w >= static_cast<long>(cfg_.prime))
      throw std::invalid_argument("quasi_poly: window offset out of range");
    const PerY& py = data_[ti].per_y[yi];
    std::array<FpElem, 3> xir, ratio;
    for (int a = 0; a < 3; ++a) {
      xir[static_cast<std::size_t>(a)] = F_.from_int(py.xi[static_cast<std::size_t>(a)]);
      if (xir[static_cast<std::size_t>(a)].is_zero())
        throw XiZeroModPError("quasi_poly: xi = 0 mod p for triple " + std::to_string(ti));
      ratio[static_cast<std::size_t>(a)] =
          F_.from_int(py.eta[static_cast<std::size_t>(a)]) / xir[static_cast<std::size_t>(a)];
    }
    QuasiPolynomial qp;
    qp.p = cfg_.prime;
    FpElem rho = F_.from_int(data_[ti].bracket_m) * xir[0] * xir[1] * xir[2];
    Poly<FpElem> P;
    for (long pp = 0; pp <= w; ++pp)
      for (long qq = 0; qq <= w - pp; ++qq) {
        const long rr = w - pp - qq;
        FpElem c = fp_pow(ratio[0], static_cast<std::uint64_t>(pp)) *
                   fp_pow(ratio[1], static_cast<std::uint64_t>(qq)) *
                   fp_pow(ratio[2], static_cast<std::uint64_t>(rr));
        P += binom_poly(pp, F_) * binom_poly(qq, F_) * binom_poly(rr, F_) * c;
      }
    qp.terms.push_back(QuasiPolynomial::Term{rho, P});
    return qp;
  }

  /// Q_t = -24 sum over triples of [coefficients of c^t in I^n (cx+y)^mult]
  /// times the corresponding x^j y^(mult-j) m-products; a form of the case's
  /// order over Z.  Valid for the window d-p+1 <= t <= d.
  HomForm<Int> q_t(int n, int t, std::size_t yi) const {
    require_window(n, t);
    const int mult = cfg_.mult();
    HomForm<Int> acc(cfg_.order(), Coords::Monomial);
    for (std::size_t ti = 0; ti < triples_.size(); ++ti) {
      for (int jj = 0; jj <= mult; ++jj) {
        Int cI = coeff_I_power(t - jj, n, ti, yi);
        if (is_zero(cI)) continue;
        acc += data_[ti].per_y[yi].parts[static_cast<std::size_t>(jj)] * cI;
      }
    }
    return acc * Int(-24);
  }

  /// All Q_t of the window [d-p+1, d] at once, indexed by u = d - t.
  std::vector<HomForm<Int>> q_window(int n, std::size_t yi) const {
    if (n < 1) throw std::invalid_argument("q_window: n must be >= 1");
    const int mult = cfg_.mult();
    const long p = static_cast<long>(cfg_.prime);
    std::vector<HomForm<Int>> out(static_cast<std::size_t>(p),
                                  HomForm<Int>(cfg_.order(), Coords::Monomial));
    for (std::size_t ti = 0; ti < triples_.size(); ++ti) {
      const std::vector<Int> W = window_coeffs(n, ti, yi);
      for (long u = 0; u < p; ++u)
        for (int jj = 0; jj <= mult; ++jj) {
          // t = d-u, s = t-jj, w = 3n-s = u - mult + jj
          const long w = u - mult + jj;
          if (w < 0 || w > 3L * n || w >= p) continue;
          const Int& cI = W[static_cast<std::size_t>(w)];
          if (is_zero(cI)) continue;
          out[static_cast<std::size_t>(u)] +=
              data_[ti].per_y[yi].parts[static_cast<std::size_t>(jj)] * cI;
        }
    }
    for (auto& f : out) f = f * Int(-24);
    return out;
  }

  static int divisor_index(int n, int t) { return n - (t + 2) / 3; }  // n - ceil(t/3)

  struct RtResult {
    int t = 0;
    int divisor_index = 0;      // m; divisor is C(n, m), taken as 1 for m <= 0
    Int divisor{1};
    HomForm<Rat> exact;         // Q_t / divisor
    std::vector<FpElem> reduced;  // dense over basis(order)
    bool exact_over_z = true;   // every coefficient division exact over Z
    std::string z_note;         // first inexact division, verbatim
  };

  /// R_t = Q_t / C(n, n - ceil(t/3)), with the divisor taken as 1 when the
  /// index is <= 0.  The quotient is exact rational arithmetic; whether it
  /// stayed integral is recorded.  Reduction throws NotPIntegralError on a
  /// p-divisible denominator, which the sweep treats as a hard failure.
  RtResult r_t(int n, int t, std::size_t yi) const {
    return normalize_q(q_t(n, t, yi), n, t, yi);
  }

  std::vector<RtResult> r_window(int n, std::size_t yi) const {
    std::vector<HomForm<Int>> qs = q_window(n, yi);
    std::vector<RtResult> out;
    out.reserve(qs.size());
    const int d = cfg_.d(n);
    for (std::size_t u = 0; u < qs.size(); ++u)
      out.push_back(normalize_q(qs[u], n, d - static_cast<int>(u), yi));
    return out;
  }

  /// Reduced coefficient (row ri) of R_t via the quasi-polynomial route:
  /// per-triple exact polynomial division of P by the binomial polynomial in
  /// F_p[n], then evaluation.  Triples with xi = 0 mod p fall back to the
  /// exact path (flagged via fallback_triples); there the p-valuation of the
  /// contribution exceeds the divisor's, so the rational reduction is still
  /// defined even when C(n, m) = 0 mod p.
  struct QpEntry {
    bool division_ok = true;  // polynomial divisibility held for every triple
    long fallback_triples = 0;
    FpElem value;
  };

  QpEntry r_coeff_via_qp(int n, int t, std::size_t yi, std::size_t ri) const {
    require_window(n, t);
    const int mult = cfg_.mult();
    const int m = divisor_index(n, t);
    const Poly<FpElem> Cm = m <= 0 ? Poly<FpElem>::constant(F_.one()) : binom_poly(m, F_);
    const Int divisor =
        m <= 0 ? Int(1) : binom_exact(static_cast<unsigned long>(n), m);

    QpEntry res;
    FpElem acc{0, cfg_.prime};
    for (std::size_t ti = 0; ti < triples_.size(); ++ti) {
      for (int jj = 0; jj <= mult; ++jj) {
        const int s = t - jj;
        const long w = 3L * n - s;
        if (s < 0 || w < 0 || w >= static_cast<long>(cfg_.prime)) continue;
        const FpElem fc = data_[ti].per_y[yi].parts_dense[static_cast<std::size_t>(jj)][ri];
        if (fc.is_zero()) continue;
        try {
          QuasiPolynomial qp = quasi_poly(ti, w, yi);
          auto [H, rem] = poly_divmod(qp.terms[0].P, Cm);
          if (!rem.is_zero()) {
            res.division_ok = false;
            return res;
          }
          const FpElem rho = qp.terms[0].rho;
          FpElem rho_n = rho.is_zero() ? FpElem{0, cfg_.prime}
                                       : fp_pow(rho, static_cast<std::uint64_t>(n) %
                                                         (cfg_.prime - 1));
          acc += rho_n * H.eval(F_.from_int(n)) * fc;
        } catch (const XiZeroModPError&) {
          ++res.fallback_triples;
          Rat v = Rat(coeff_I_power(s, n, ti, yi)) / Rat(divisor);
          acc += reduce_mod(v, F_) * fc;
        }
      }
    }
    res.value = acc * F_.from_int(-24);
    return res;
  }

 private:
  struct PerY {
    std::array<Int, 3> xi;   // pairs (i,k), (i,j), (j,k) against x = x1
    std::array<Int, 3> eta;  // same pairs against y
    std::vector<HomForm<Int>> parts;               // j = 0..mult
    std::vector<std::vector<FpElem>> parts_dense;  // reduced dense rows
  };
  struct TripleData {
    Int bracket_m;
    std::vector<PerY> per_y;
  };

  void require_window(int n, int t) const {
    if (n < 1) throw std::invalid_argument("engine: n must be >= 1");
    const int d = cfg_.d(n);
    if (t > d || t < d - static_cast<int>(cfg_.prime) + 1)
      throw std::invalid_argument("engine: t outside window [d-p+1, d]");
  }

  RtResult normalize_q(const HomForm<Int>& q, int n, int t, std::size_t yi) const {
    RtResult r;
    r.t = t;
    r.divisor_index = divisor_index(n, t);
    r.divisor = r.divisor_index <= 0
                    ? Int(1)
                    : binom_exact(static_cast<unsigned long>(n), r.divisor_index);
    if (is_zero(r.divisor))
      throw DivisibilityError("r_t: zero divisor at n=" + std::to_string(n) +
                              " t=" + std::to_string(t));
    r.exact = HomForm<Rat>(cfg_.order(), Coords::Monomial);
    for (const auto& [idx, v] : q.terms()) {
      Rat quotient = Rat(v) / Rat(r.divisor);
      if (!is_integer(quotient) && r.exact_over_z) {
        r.exact_over_z = false;
        r.z_note = "n=" + std::to_string(n) + " t=" + std::to_string(t) + " y=" +
                   std::to_string(yi) + " monomial=(" + std::to_string(idx[0]) + "," +
                   std::to_string(idx[1]) + "," + std::to_string(idx[2]) + ") divisor=C(" +
                   std::to_string(n) + "," + std::to_string(r.divisor_index) +
                   ")=" + r.divisor.get_str() + " denominator=" + quotient.get_den().get_str();
      }
      r.exact.set(idx, quotient);
    }
    r.reduced.assign(basis_size(cfg_.order()), F_.zero());
    for (const auto& [idx, v] : r.exact.terms())
      r.reduced[basis_index(cfg_.order(), idx)] = reduce_mod(v, F_);
    return r;
  }

  GConfig cfg_;
  FpCtx F_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<TripleData> data_;
};

}  // namespace scorza
