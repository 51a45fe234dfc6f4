#include "scorza/scalars.hpp"

#include <gtest/gtest.h>

#include <random>

namespace scorza {
namespace {

TEST(BinomExact, Conventions) {
  EXPECT_EQ(binom_exact(5, 0), Int(1));
  EXPECT_EQ(binom_exact(5, -1), Int(0));
  EXPECT_EQ(binom_exact(5, 6), Int(0));
  EXPECT_EQ(binom_exact(12, 3), Int(220));  // 12*11*10/6
  EXPECT_EQ(binom_exact(0, 0), Int(1));
}

TEST(BinomMod, MatchesExamples) {
  FpCtx F11(11);
  EXPECT_EQ(binom_mod(12, 3, F11).r, 0u);  // 220 = 20*11
  EXPECT_EQ(binom_mod(14, 3, F11).r, 1u);  // 364 = 33*11 + 1
  for (unsigned long n : {0ul, 7ul, 123ul, 400ul}) EXPECT_EQ(binom_mod(n, 0, F11).r, 1u);
}

TEST(BinomMod, RejectsKAtLeastP) {
  FpCtx F11(11);
  EXPECT_THROW(binom_mod(20, 11, F11), std::invalid_argument);
  EXPECT_THROW(binom_mod(20, 15, F11), std::invalid_argument);
}

TEST(BinomMod, AgreesWithExactReduction) {
  // binom_mod(n,k,p) == reduce_mod(binom_exact(n,k), p) for 0 <= k < p.
  for (std::uint64_t p : {11ull, 19ull, 5ull, 23ull}) {
    FpCtx F(p);
    for (unsigned long n = 0; n <= 500; n += 7)
      for (long k = 0; static_cast<std::uint64_t>(k) < p; ++k)
        ASSERT_EQ(binom_mod(n, k, F), reduce_mod(Rat(binom_exact(n, k)), F))
            << "n=" << n << " k=" << k << " p=" << p;
  }
}

TEST(ReduceMod, Examples) {
  FpCtx F11(11);
  EXPECT_EQ(reduce_mod(Rat(3, 4), F11).r, 9u);  // 4^{-1} = 3, 3*3 = 9
  EXPECT_EQ(reduce_mod(Rat(0, 1), F11).r, 0u);
  EXPECT_THROW(reduce_mod(Rat(1, 11), F11), NotPIntegralError);
  EXPECT_THROW(reduce_mod(Rat(5, 33), F11), NotPIntegralError);
  // Denominator divisible by p only after canonicalization is fine: 11/11 = 1.
  EXPECT_EQ(reduce_mod(Rat(11, 11), F11).r, 1u);
}

TEST(FpCtx, RejectsComposite) {
  EXPECT_THROW(FpCtx(1), std::invalid_argument);
  EXPECT_THROW(FpCtx(12), std::invalid_argument);
  EXPECT_NO_THROW(FpCtx(2));
  EXPECT_NO_THROW(FpCtx(19));
}

TEST(FpElem, FieldAxiomsSampled) {
  FpCtx F(19);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> dist(-100, 100);
  for (int trial = 0; trial < 200; ++trial) {
    FpElem a = F.from_int(dist(rng)), b = F.from_int(dist(rng)), c = F.from_int(dist(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + F.zero(), a);
    EXPECT_EQ(a * F.one(), a);
    EXPECT_EQ(a - a, F.zero());
    if (!a.is_zero()) EXPECT_EQ(a * fp_inv(a), F.one());
  }
}

TEST(FpElem, ZeroSentinelInteroperates) {
  FpCtx F(11);
  FpElem z;  // zero of unspecified modulus
  FpElem a = F.from_int(7);
  EXPECT_EQ(z + a, a);
  EXPECT_EQ(a * z, F.zero());
  EXPECT_EQ(z, F.zero());
}

TEST(FpElem, MixedModuliRejected) {
  FpCtx F11(11), F19(19);
  EXPECT_THROW(F11.from_int(3) + F19.from_int(3), std::logic_error);
}

TEST(RingPow, IntAndRat) {
  EXPECT_EQ(ring_pow(Int(3), 0), Int(1));
  EXPECT_EQ(ring_pow(Int(-2), 11), Int(-2048));
  EXPECT_EQ(ring_pow(Rat(2, 3), 3), Rat(8, 27));
}

TEST(DivExact, ExactAndNot) {
  EXPECT_EQ(div_exact(Int(220), Int(11)), Int(20));
  EXPECT_THROW(div_exact(Int(221), Int(11)), std::domain_error);
  EXPECT_THROW(div_exact(Int(1), Int(0)), std::domain_error);
}

}  // namespace
}  // namespace scorza
