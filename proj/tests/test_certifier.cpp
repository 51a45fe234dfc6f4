#include "scorza/certifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace scorza {
namespace {

TEST(Rank, KnownMatrices) {
  FpMatrix zero(15, 22, 11);
  EXPECT_EQ(rank_mod_p(zero), 0);

  FpMatrix id(15, 22, 11);
  for (int r = 0; r < 15; ++r) id.at(r, r) = 1;
  EXPECT_EQ(rank_mod_p(id), 15);

  // Duplicated row drops the rank by exactly one.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> d(0, 10);
  FpMatrix m(6, 9, 11);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 9; ++c) m.at(r, c) = d(rng);
  for (int c = 0; c < 9; ++c) m.at(5, c) = m.at(2, c);
  FpMatrix top(5, 9, 11);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 9; ++c) top.at(r, c) = m.at(r, c);
  EXPECT_EQ(rank_mod_p(m), rank_mod_p(top));
}

TEST(Rank, InvariantUnderPermutations) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> d(0, 18);
  for (int trial = 0; trial < 10; ++trial) {
    FpMatrix m(7, 10, 19);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 10; ++c) m.at(r, c) = d(rng);
    const int base = rank_mod_p(m);

    std::vector<int> rows(7), cols(10);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    FpMatrix perm(7, 10, 19);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 10; ++c)
        perm.at(r, c) = m.at(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    EXPECT_EQ(rank_mod_p(perm), base);
  }
}

TEST(BuildMatrix, DimensionsAndThreshold) {
  CoeffEngine d1(GConfig::standard(CaseTag::D1));
  FpMatrix M = build_matrix(d1, 12);
  EXPECT_EQ(M.rows, 15);
  EXPECT_EQ(M.cols, 22);
  EXPECT_EQ(M.p, 11u);
  EXPECT_THROW(build_matrix(d1, 11), std::invalid_argument);

  CoeffEngine d2(GConfig::standard(CaseTag::D2));
  FpMatrix M2 = build_matrix(d2, 21);
  EXPECT_EQ(M2.rows, 45);
  EXPECT_EQ(M2.cols, 57);
  EXPECT_THROW(build_matrix(d2, 20), std::invalid_argument);
}

TEST(BuildMatrix, PeriodicAtN12) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  EXPECT_EQ(build_matrix(eng, 12), build_matrix(eng, 122));
}

TEST(Sweep, SmokeSingleMatrix) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  SweepOptions opts;
  opts.count = 1;
  opts.oracle_crosscheck = 1;
  opts.periodicity_samples = {12};
  RankCertificate cert = sweep(eng, opts);
  ASSERT_EQ(cert.ranks.size(), 1u);
  EXPECT_EQ(cert.ranks[0], 15);
  EXPECT_TRUE(cert.all_full_rank);
  EXPECT_EQ(cert.status, "ok");
  EXPECT_EQ(cert.exit_code(), 0);
  EXPECT_EQ(cert.n_start, 12);
  EXPECT_EQ(cert.prime, 11u);
  ASSERT_EQ(cert.periodicity.size(), 1u);
  EXPECT_TRUE(cert.periodicity[0].equal);
  ASSERT_EQ(cert.crosschecks.size(), 1u);
  EXPECT_TRUE(cert.crosschecks[0].all_agree);
  EXPECT_GT(cert.crosschecks[0].compared, 0);
}

TEST(Sweep, ValidatesOptions) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  SweepOptions opts;
  opts.n_start = 5;  // below threshold
  opts.count = 1;
  EXPECT_THROW(sweep(eng, opts), std::invalid_argument);
  opts.n_start = 12;
  opts.count = 0;
  EXPECT_THROW(sweep(eng, opts), std::invalid_argument);
}

TEST(Sweep, DeterministicCertificate) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  SweepOptions opts;
  opts.count = 2;
  opts.oracle_crosscheck = 1;
  opts.periodicity_samples = {12};
  RankCertificate a = sweep(eng, opts);
  RankCertificate b = sweep(eng, opts);
  EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
}

TEST(Sweep, ExtraExtendsTheRange) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  SweepOptions opts;
  opts.count = 2;
  opts.extra = 3;
  opts.oracle_crosscheck = 0;
  opts.periodicity_samples = {12};
  RankCertificate cert = sweep(eng, opts);
  EXPECT_EQ(cert.ranks.size(), 5u);
  EXPECT_EQ(cert.count, 2);
  EXPECT_EQ(cert.extra, 3);
  for (int r : cert.ranks) EXPECT_EQ(r, 15);
}

TEST(Certificate, ExitCodeMapping) {
  RankCertificate cert;
  cert.status = "ok";
  EXPECT_EQ(cert.exit_code(), 0);
  cert.status = "rank_deficient";
  EXPECT_EQ(cert.exit_code(), 2);
  cert.status = "divisibility_failure";
  EXPECT_EQ(cert.exit_code(), 3);
  cert.status = "crosscheck_failure";
  EXPECT_EQ(cert.exit_code(), 3);
  cert.status = "periodicity_failure";
  EXPECT_EQ(cert.exit_code(), 3);
}

TEST(Sweep, ThreadedMatchesSerial) {
  CoeffEngine eng(GConfig::standard(CaseTag::D1));
  SweepOptions serial;
  serial.count = 4;
  serial.oracle_crosscheck = 0;
  serial.periodicity_samples = {12};
  SweepOptions threaded = serial;
  threaded.threads = 3;
  EXPECT_EQ(sweep(eng, serial).to_json(false).dump(), sweep(eng, threaded).to_json(false).dump());
}

}  // namespace
}  // namespace scorza
