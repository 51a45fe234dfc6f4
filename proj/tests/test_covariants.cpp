#include "scorza/covariants.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "scorza/family.hpp"
#include "test_support.hpp"

namespace scorza {
namespace {

using testing::g_powers;
using testing::random_unimodular;
using testing::to_q;

const LinearFormQ kX1{{Rat(1), Rat(0), Rat(0)}};
const LinearFormQ kX2{{Rat(0), Rat(1), Rat(0)}};
const LinearFormQ kX3{{Rat(0), Rat(0), Rat(1)}};
const LinearFormQ kSum{{Rat(1), Rat(1), Rat(1)}};

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket(kX1, kX2, kX3), Rat(1));
  LinearFormQ u{{Rat(2), Rat(-1), Rat(5)}}, w{{Rat(3), Rat(3), Rat(3)}};
  EXPECT_EQ(bracket(u, u, w), Rat(0));
  LinearFormQ m1{{Rat(1), Rat(3), Rat(9)}}, m2{{Rat(-10), Rat(1), Rat(4)}},
      m3{{Rat(8), Rat(4), Rat(6)}};
  EXPECT_EQ(bracket(m1, m2, m3), Rat(-166));
}

TEST(Bracket, Alternating) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    LinearFormQ a{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}};
    LinearFormQ b{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}};
    LinearFormQ c{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}};
    Rat v = bracket(a, b, c);
    EXPECT_EQ(bracket(b, a, c), -v);
    EXPECT_EQ(bracket(a, c, b), -v);
    EXPECT_EQ(bracket(c, b, a), -v);
    EXPECT_EQ(bracket(b, c, a), v);
    EXPECT_EQ(bracket(a, a, c), Rat(0));
    EXPECT_EQ(bracket(a, b, b), Rat(0));
  }
}

TEST(ClebschI, Examples) {
  LinearFormQ a{{Rat(1), Rat(2), Rat(3)}};
  EXPECT_EQ(clebsch_I(a, a, kX2, kX3), Rat(0));
  EXPECT_EQ(clebsch_I(kX1, a, kX2, a), Rat(0));
  EXPECT_EQ(clebsch_I(kX1, kX2, kX3, kSum), Rat(-1));
}

TEST(ClebschI, SymmetricUnderAllPermutations) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-7, 7);
  std::array<LinearFormQ, 4> ls;
  for (auto& l : ls) l = LinearFormQ{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}};
  const Rat v = clebsch_I(ls[0], ls[1], ls[2], ls[3]);
  std::array<int, 4> idx{0, 1, 2, 3};
  do {
    EXPECT_EQ(clebsch_I(ls[static_cast<std::size_t>(idx[0])], ls[static_cast<std::size_t>(idx[1])],
                        ls[static_cast<std::size_t>(idx[2])], ls[static_cast<std::size_t>(idx[3])]),
              v);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST(ClebschI, UnimodularInvariance) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int trial = 0; trial < 5; ++trial) {
    auto A = random_unimodular(rng);
    ASSERT_EQ(testing::det3(A), Rat(1));
    std::array<LinearFormQ, 4> ls;
    for (auto& l : ls) l = LinearFormQ{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}};
    EXPECT_EQ(clebsch_I(transform(ls[0], A), transform(ls[1], A), transform(ls[2], A),
                        transform(ls[3], A)),
              clebsch_I(ls[0], ls[1], ls[2], ls[3]));
  }
}

TEST(Quadruples, Examples) {
  // I = 0 quadruple gives the zero quartic for n >= 1.
  LinearFormQ a{{Rat(1), Rat(2), Rat(3)}};
  EXPECT_TRUE(S_quadruple(std::array<LinearFormQ, 4>{a, a, kX2, kX3}, 1).is_zero());

  // n = 1 on (x1, x2, x3, x1+x2+x3): -x1 x2 x3 (x1+x2+x3).
  HomForm<Rat> s = S_quadruple(std::array<LinearFormQ, 4>{kX1, kX2, kX3, kSum}, 1);
  HomForm<Rat> expected = mul_linears(std::array<LinearFormQ, 4>{kX1, kX2, kX3, kSum}) * Rat(-1);
  EXPECT_EQ(s, expected);

  // n = 0: plain product.
  EXPECT_EQ(S_quadruple(std::array<LinearFormQ, 4>{a, a, kX2, kX3}, 0),
            mul_linears(std::array<LinearFormQ, 4>{a, a, kX2, kX3}));

  // T variant squares the product.
  HomForm<Rat> t = T_quadruple(std::array<LinearFormQ, 4>{kX1, kX2, kX3, kSum}, 2);
  HomForm<Rat> base = mul_linears_squared(std::array<LinearFormQ, 4>{kX1, kX2, kX3, kSum});
  EXPECT_EQ(t, base * Rat(1));  // I = -1, I^2 = 1
}

TEST(EvalS, RejectsWrongResidue) {
  std::vector<WeightedPower<Rat>> terms;
  EXPECT_THROW(eval_S(terms, 6), std::invalid_argument);
  EXPECT_THROW(eval_S(terms, 5), std::invalid_argument);
  EXPECT_THROW(eval_T(terms, 7), std::invalid_argument);
}

TEST(EvalS, FewerThanFourTermsIsZero) {
  std::vector<WeightedPower<Rat>> terms;
  terms.push_back({Rat(3), kX1});
  terms.push_back({Rat(-2), kX2});
  terms.push_back({Rat(5), kSum});
  EXPECT_TRUE(eval_S(terms, 4).is_zero());
  EXPECT_TRUE(eval_T(terms, 5).is_zero());
}

// f as a form in A-coordinates from a weighted power representation.
HomForm<Rat> a_coords_of(const std::vector<WeightedPower<Rat>>& terms, int d) {
  HomForm<Rat> f(d, Coords::A);
  for (const auto& t : terms) f += power_of_linear(t.form, d) * t.weight;
  return f;
}

std::vector<WeightedPower<Rat>> random_terms(std::mt19937_64& rng, std::size_t count,
                                             long lo = -5, long hi = 5) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<WeightedPower<Rat>> terms;
  for (std::size_t i = 0; i < count; ++i) {
    Rat w(d(rng));
    if (is_zero(w)) w = Rat(1);
    terms.push_back({w, LinearFormQ{{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}}});
  }
  return terms;
}

TEST(Expand, WeightEquationsAndScorzaNonzero) {
  auto e4 = expand_S(4);
  ASSERT_FALSE(e4.empty());  // S_4 is a nonzero covariant (the Scorza map)
  for (const QuadMonomial& qm : e4) {
    ASSERT_EQ(qm.i.total(), 4);
    ASSERT_EQ(qm.e.total(), 4);
    for (int t = 0; t < 3; ++t)
      ASSERT_EQ(qm.i[t] + qm.j[t] + qm.k[t] + qm.l[t], 4 + qm.e[t]);
  }
  EXPECT_THROW(expand_S(10), std::invalid_argument);
  EXPECT_THROW(expand_T(11), std::invalid_argument);
}

// The expansion substituted at the A-coordinates of f must agree with the
// multilinear evaluation; the global scalar relating the two routes is 1.
TEST(Expand, MatchesEvalAtD4) {
  std::mt19937_64 rng(404);
  auto e4 = expand_S(4);
  for (int trial = 0; trial < 4; ++trial) {
    auto terms = random_terms(rng, 6);
    HomForm<Rat> via_expand = substitute_expansion(e4, a_coords_of(terms, 4));
    HomForm<Rat> via_eval = eval_S(terms, 4);
    EXPECT_EQ(via_expand, via_eval);
  }
}

TEST(Expand, MatchesEvalAtD7) {
  std::mt19937_64 rng(707);
  auto e7 = expand_S(7);
  auto terms = random_terms(rng, 6, -3, 3);
  EXPECT_EQ(substitute_expansion(e7, a_coords_of(terms, 7)), eval_S(terms, 7));
}

TEST(Expand, MatchesEvalAtD5ForT) {
  std::mt19937_64 rng(505);
  auto e5 = expand_T(5);
  auto terms = random_terms(rng, 5, -3, 3);
  EXPECT_EQ(substitute_expansion(e5, a_coords_of(terms, 5)), eval_T(terms, 5));
}

TEST(TripleStructure, Reports) {
  TripleStructureReport s7 = check_triple_structure(CovariantKind::S, 7);
  EXPECT_EQ(s7.threshold, 7);  // 2n+3 at n=2
  EXPECT_EQ(s7.weight_violations, 0u);
  EXPECT_EQ(s7.structure_violations, 0u);
  EXPECT_TRUE(s7.passed());

  TripleStructureReport s4 = check_triple_structure(CovariantKind::S, 4);
  EXPECT_EQ(s4.threshold, 5);  // 2n+3 at n=1
  EXPECT_TRUE(s4.passed());

  TripleStructureReport t8 = check_triple_structure(CovariantKind::T, 8);
  EXPECT_EQ(t8.threshold, 9);  // 2n+5 at n=2
  EXPECT_TRUE(t8.passed());
}

TEST(EvalS, Equivariance) {
  std::mt19937_64 rng(1618);
  auto terms = random_terms(rng, 6);
  const int d = 7;
  HomForm<Rat> lhs = eval_S(terms, d);
  for (int trial = 0; trial < 5; ++trial) {
    auto A = random_unimodular(rng);
    ASSERT_EQ(testing::det3(A), Rat(1));
    std::vector<WeightedPower<Rat>> moved;
    for (const auto& t : terms) moved.push_back({t.weight, transform(t.form, A)});
    EXPECT_EQ(eval_S(moved, d), transform(lhs, A));
  }
}

TEST(EvalT, Equivariance) {
  std::mt19937_64 rng(2718);
  auto terms = random_terms(rng, 5);
  const int d = 8;
  HomForm<Rat> lhs = eval_T(terms, d);
  for (int trial = 0; trial < 5; ++trial) {
    auto A = random_unimodular(rng);
    std::vector<WeightedPower<Rat>> moved;
    for (const auto& t : terms) moved.push_back({t.weight, transform(t.form, A)});
    EXPECT_EQ(eval_T(moved, d), transform(lhs, A));
  }
}

// Order of terms cannot matter: the quadruple sum runs over all subsets.
TEST(EvalS, TermOrderIrrelevantAtD37) {
  const int d = 37;
  auto terms = g_powers();
  HomForm<Rat> base = eval_S(terms, d);
  EXPECT_FALSE(base.is_zero());

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    auto shuffled = terms;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(eval_S(shuffled, d), base);
  }
}

// Against an independent re-implementation of the multilinear sum: direct
// four-fold loop over S_quadruple, accumulated in a different order.
TEST(EvalS, MatchesNaiveQuadupleSumAtD37) {
  const int d = 37, n = 12;
  auto terms = g_powers();
  HomForm<Rat> expected(4, Coords::Monomial);
  const std::size_t N = terms.size();
  for (std::size_t p = 3; p < N; ++p)
    for (std::size_t k = 2; k < p; ++k)
      for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          HomForm<Rat> q = S_quadruple(
              std::array<LinearFormQ, 4>{terms[i].form, terms[j].form, terms[k].form,
                                         terms[p].form},
              n);
          expected += q * Rat(terms[i].weight * terms[j].weight * terms[k].weight *
                              terms[p].weight);
        }
  expected = expected * Rat(24);
  EXPECT_EQ(eval_S(terms, d), expected);
}

// Affine linearity along the x1-divisible family: with g fixed and h1, h2
// built by interpolation, the map (s,t) -> S_d(g + s h1 + t h2) has
// vanishing second differences.
TEST(EvalS, AffineOnFamilyDirectionsAtD37) {
  const int d = 37, K = 27;
  auto g = g_powers();

  auto scaled_build = [&](const InterpNodes& nodes, const Rat& c, const LinearFormQ& y) {
    PowerSumBuild b = build_f_c(nodes, y, d, c);
    Int scale(1);
    for (const auto& [w, beta] : b.wb) {
      Int den = w.get_den();
      Int l;
      mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      scale = l;
    }
    std::vector<WeightedPower<Rat>> out;
    for (const auto& t : b.terms()) out.push_back({Rat(t.weight * Rat(scale)), t.form});
    return out;
  };

  auto h1 = scaled_build(InterpNodes::consecutive(K), Rat(30), kX2);
  auto h2 = scaled_build(InterpNodes::consecutive(K, 1), Rat(-3), kX3);

  auto at = [&](long s, long t) {
    std::vector<WeightedPower<Rat>> terms = g;
    for (const auto& w : h1)
      if (s != 0) terms.push_back({Rat(w.weight * Rat(s)), w.form});
    for (const auto& w : h2)
      if (t != 0) terms.push_back({Rat(w.weight * Rat(t)), w.form});
    return eval_S(terms, d);
  };

  HomForm<Rat> e00 = at(0, 0), e10 = at(1, 0), e20 = at(2, 0);
  HomForm<Rat> e01 = at(0, 1), e02 = at(0, 2), e11 = at(1, 1);
  EXPECT_TRUE((e20 - e10 - e10 + e00).is_zero());  // second difference in s
  EXPECT_TRUE((e02 - e01 - e01 + e00).is_zero());  // second difference in t
  EXPECT_TRUE((e11 - e10 - e01 + e00).is_zero());  // mixed second difference
  EXPECT_FALSE((e10 - e00).is_zero());             // the direction is genuinely there
}

}  // namespace
}  // namespace scorza
