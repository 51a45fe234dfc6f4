#pragma once

// Matrix assembly over F_p, rank computation across a full period of n, and
// the machine-readable rank certificate.  Row and column orders are frozen
// and recorded in the certificate header so that certificates are comparable
// across implementations.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "scorza/coeff_engine.hpp"

namespace scorza {

inline constexpr const char* kToolVersion = "1.0.0";

struct FpMatrix {
  int rows = 0;
  int cols = 0;
  std::uint64_t p = 0;
  std::vector<std::uint64_t> a;  // row-major residues

  FpMatrix() = default;
  FpMatrix(int r, int c, std::uint64_t prime)
      : rows(r), cols(c), p(prime), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

  std::uint64_t& at(int r, int c) {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
  std::uint64_t at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

/// Row rank by Gaussian elimination over F_p.
inline int rank_mod_p(FpMatrix M) {
  if (M.p < 2) throw std::invalid_argument("rank_mod_p: invalid modulus");
  auto mulmod = [&](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % M.p);
  };
  int rank = 0;
  for (int col = 0; col < M.cols && rank < M.rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < M.rows; ++r)
      if (M.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = col; c < M.cols; ++c) std::swap(M.at(pivot, c), M.at(rank, c));
    const std::uint64_t inv = fp_inv(FpElem{M.at(rank, col), M.p}).r;
    for (int r = rank + 1; r < M.rows; ++r) {
      if (M.at(r, col) == 0) continue;
      const std::uint64_t f = mulmod(M.at(r, col), inv);
      for (int c = col; c < M.cols; ++c) {
        std::uint64_t sub = mulmod(f, M.at(rank, c));
        M.at(r, c) = (M.at(r, c) + M.p - sub) % M.p;
      }
    }
    ++rank;
  }
  return rank;
}

struct MatrixBuild {
  FpMatrix matrix;
  long z_inexact = 0;                  // columns whose binomial division left Z
  std::vector<std::string> z_samples;  // first few, verbatim
};

/// M(n) with division statistics: rows indexed by basis(order) in the frozen
/// order, columns y-major with t = d, d-1, ..., d-p+1 inside each y block.
inline MatrixBuild build_matrix_stats(const CoeffEngine& engine, int n) {
  const GConfig& cfg = engine.config();
  if (n < cfg.n_min())
    throw std::invalid_argument("build_matrix: n below validity threshold " +
                                std::to_string(cfg.n_min()));
  MatrixBuild out;
  out.matrix = FpMatrix(cfg.rows(), cfg.cols(), cfg.prime);
  for (std::size_t yi = 0; yi < cfg.ys.size(); ++yi) {
    const auto block = engine.r_window(n, yi);
    for (std::size_t u = 0; u < block.size(); ++u) {
      const int c = static_cast<int>(yi) * static_cast<int>(cfg.prime) + static_cast<int>(u);
      for (int r = 0; r < cfg.rows(); ++r)
        out.matrix.at(r, c) = block[u].reduced[static_cast<std::size_t>(r)].r;
      if (!block[u].exact_over_z) {
        ++out.z_inexact;
        if (out.z_samples.size() < 2) out.z_samples.push_back(block[u].z_note);
      }
    }
  }
  return out;
}

inline FpMatrix build_matrix(const CoeffEngine& engine, int n) {
  return build_matrix_stats(engine, n).matrix;
}

struct PeriodicitySample {
  long n = 0;
  long n_shifted = 0;
  bool equal = false;
};

struct CrosscheckResult {
  long n = 0;
  long compared = 0;
  long fallback_triples = 0;  // xi = 0 mod p, exact path used for the triple
  bool division_ok = true;
  bool all_agree = true;
};

struct SweepOptions {
  long n_start = -1;  // default: case minimum
  long count = -1;    // default: one full period
  long extra = 0;     // additional n beyond the period window
  int threads = 1;    // 0 = hardware concurrency
  int oracle_crosscheck = 2;                // number of n values to cross-check
  std::vector<long> periodicity_samples;    // empty = default 5 samples
};

struct RankCertificate {
  std::string case_tag;
  std::uint64_t prime = 0;
  long period = 0;
  long n_start = 0;
  long count = 0;
  long extra = 0;
  int rows = 0;
  int cols = 0;
  std::string row_order;
  std::string column_order;
  std::vector<std::array<long, 3>> g;
  std::vector<std::array<long, 3>> y_values;
  std::vector<int> divisor_indices;  // m per window offset u
  std::vector<int> ranks;            // ordered by n
  bool all_full_rank = false;
  long forms_normalized = 0;
  long z_inexact_forms = 0;
  bool all_exact_over_z = false;
  bool all_p_integral = false;
  std::vector<std::string> z_inexact_samples;
  std::vector<std::string> failures;
  std::vector<CrosscheckResult> crosschecks;
  std::vector<PeriodicitySample> periodicity;
  std::string status;  // ok | rank_deficient | divisibility_failure | crosscheck_failure
  std::string tool_version = kToolVersion;
  double wall_time_seconds = 0.0;

  int exit_code() const {
    if (status == "ok") return 0;
    if (status == "rank_deficient") return 2;
    return 3;
  }

  nlohmann::ordered_json to_json(bool include_wall_time = true) const {
    nlohmann::ordered_json j;
    j["case"] = case_tag;
    j["prime"] = prime;
    j["period"] = period;
    j["n_start"] = n_start;
    j["count"] = count;
    j["extra"] = extra;
    j["rows"] = rows;
    j["cols"] = cols;
    j["row_order"] = row_order;
    j["column_order"] = column_order;
    j["g"] = g;
    j["y_values"] = y_values;
    j["divisor_indices"] = divisor_indices;
    j["ranks"] = ranks;
    j["all_full_rank"] = all_full_rank;
    j["divisibility"] = {{"forms_normalized", forms_normalized},
                         {"z_inexact_forms", z_inexact_forms},
                         {"all_exact_over_z", all_exact_over_z},
                         {"all_p_integral", all_p_integral},
                         {"z_inexact_samples", z_inexact_samples},
                         {"failures", failures}};
    nlohmann::ordered_json cc = nlohmann::ordered_json::array();
    for (const CrosscheckResult& c : crosschecks)
      cc.push_back({{"n", c.n},
                    {"entries_compared", c.compared},
                    {"exact_fallback_triples", c.fallback_triples},
                    {"division_ok", c.division_ok},
                    {"all_agree", c.all_agree}});
    j["oracle_crosscheck"] = cc;
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    for (const PeriodicitySample& s : periodicity)
      ps.push_back({{"n", s.n}, {"n_plus_period", s.n_shifted}, {"equal", s.equal}});
    j["periodicity_samples"] = ps;
    j["status"] = status;
    j["tool_version"] = tool_version;
    if (include_wall_time) j["wall_time_seconds"] = wall_time_seconds;
    return j;
  }
};

namespace detail {

inline CrosscheckResult crosscheck_at(const CoeffEngine& engine, int n) {
  const GConfig& cfg = engine.config();
  CrosscheckResult res;
  res.n = n;
  const FpMatrix M = build_matrix(engine, n);
  for (std::size_t yi = 0; yi < cfg.ys.size(); ++yi)
    for (long u = 0; u < static_cast<long>(cfg.prime); ++u) {
      const int t = cfg.d(n) - static_cast<int>(u);
      const int c = static_cast<int>(yi) * static_cast<int>(cfg.prime) + static_cast<int>(u);
      for (int r = 0; r < cfg.rows(); ++r) {
        CoeffEngine::QpEntry e = engine.r_coeff_via_qp(n, t, yi, static_cast<std::size_t>(r));
        if (!e.division_ok) {
          res.division_ok = false;
          return res;
        }
        ++res.compared;
        res.fallback_triples += e.fallback_triples;
        if (e.value.r != M.at(r, c)) res.all_agree = false;
      }
    }
  return res;
}

}  // namespace detail

/// Builds M(n) for n in [n_start, n_start + count + extra), computes all
/// ranks over F_p, runs the requested quasi-polynomial cross-checks and
/// periodicity samples, and assembles the certificate.  Per-n builds are
/// independent; with threads > 1 they run in a worker pool and the ranks are
/// still reported in n order.
inline RankCertificate sweep(const CoeffEngine& engine, SweepOptions opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const GConfig& cfg = engine.config();

  if (opts.n_start < 0) opts.n_start = cfg.n_min();
  if (opts.count < 0) opts.count = cfg.period();
  if (opts.count < 1) throw std::invalid_argument("sweep: count must be >= 1");
  if (opts.n_start < cfg.n_min())
    throw std::invalid_argument("sweep: n_start below validity threshold " +
                                std::to_string(cfg.n_min()));
  if (opts.extra < 0) throw std::invalid_argument("sweep: extra must be >= 0");
  if (opts.threads == 0)
    opts.threads = static_cast<int>(std::thread::hardware_concurrency());
  if (opts.threads < 1) opts.threads = 1;

  RankCertificate cert;
  cert.case_tag = to_string(cfg.tag);
  cert.prime = cfg.prime;
  cert.period = cfg.period();
  cert.n_start = opts.n_start;
  cert.count = opts.count;
  cert.extra = opts.extra;
  cert.rows = cfg.rows();
  cert.cols = cfg.cols();
  cert.row_order =
      "monomial coefficients over basis(" + std::to_string(cfg.order()) +
      "), multi-indices (i1,i2,i3) with |i| = " + std::to_string(cfg.order()) +
      ", descending in i1 then i2";
  cert.column_order = "y-major; within each y block t = d, d-1, ..., d-p+1";
  for (const LinearFormZ& mi : cfg.m)
    cert.g.push_back({mi.c[0].get_si(), mi.c[1].get_si(), mi.c[2].get_si()});
  for (const LinearFormZ& y : cfg.ys)
    cert.y_values.push_back({y.c[0].get_si(), y.c[1].get_si(), y.c[2].get_si()});
  for (long u = 0; u < static_cast<long>(cfg.prime); ++u)
    cert.divisor_indices.push_back(
        CoeffEngine::divisor_index(static_cast<int>(opts.n_start),
                                   cfg.d(static_cast<int>(opts.n_start)) - static_cast<int>(u)));

  const long total = opts.count + opts.extra;
  std::vector<int> ranks(static_cast<std::size_t>(total), -1);
  std::vector<long> z_counts(static_cast<std::size_t>(total), 0);
  std::vector<std::string> z_first_sample(static_cast<std::size_t>(total));
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::vector<std::string> failures;

  auto worker = [&]() {
    for (;;) {
      const long idx = next.fetch_add(1);
      if (idx >= total || failed.load()) return;
      const int n = static_cast<int>(opts.n_start + idx);
      try {
        MatrixBuild mb = build_matrix_stats(engine, n);
        ranks[static_cast<std::size_t>(idx)] = rank_mod_p(mb.matrix);
        z_counts[static_cast<std::size_t>(idx)] = mb.z_inexact;
        if (!mb.z_samples.empty()) z_first_sample[static_cast<std::size_t>(idx)] = mb.z_samples[0];
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back("n=" + std::to_string(n) + ": " + e.what());
        failed.store(true);
        return;
      }
    }
  };

  if (opts.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < opts.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  cert.failures = failures;
  if (failed.load()) {
    cert.status = "divisibility_failure";
    cert.all_exact_over_z = false;
    cert.all_p_integral = false;
    cert.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
  }

  cert.ranks = ranks;
  cert.all_full_rank = true;
  for (int r : ranks)
    if (r != cfg.rows()) cert.all_full_rank = false;
  // One normalized window form per (n, y, t); each carries rows() divisions.
  cert.forms_normalized = total * static_cast<long>(cfg.cols());
  for (long zc : z_counts) cert.z_inexact_forms += zc;
  for (const std::string& s : z_first_sample)
    if (!s.empty() && cert.z_inexact_samples.size() < 4) cert.z_inexact_samples.push_back(s);
  cert.all_exact_over_z = cert.z_inexact_forms == 0;
  cert.all_p_integral = true;  // a violation would have aborted the sweep

  // Quasi-polynomial cross-checks on a deterministic spread of n values.
  bool crosscheck_ok = true;
  if (opts.oracle_crosscheck > 0) {
    const long stride = std::max<long>(1, total / opts.oracle_crosscheck);
    for (long idx = 0; idx < total && static_cast<long>(cert.crosschecks.size()) <
                                          static_cast<long>(opts.oracle_crosscheck);
         idx += stride) {
      CrosscheckResult cc =
          detail::crosscheck_at(engine, static_cast<int>(opts.n_start + idx));
      crosscheck_ok = crosscheck_ok && cc.all_agree && cc.division_ok;
      cert.crosschecks.push_back(cc);
    }
  }

  // Periodicity samples: M(n) == M(n + period) entrywise.
  std::vector<long> samples = opts.periodicity_samples;
  if (samples.empty()) {
    samples = {opts.n_start, opts.n_start + 1, opts.n_start + 2, opts.n_start + opts.count / 2,
               opts.n_start + opts.count - 1};
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  }
  bool periodic_ok = true;
  for (long s : samples) {
    PeriodicitySample ps;
    ps.n = s;
    ps.n_shifted = s + cfg.period();
    ps.equal = build_matrix(engine, static_cast<int>(s)) ==
               build_matrix(engine, static_cast<int>(ps.n_shifted));
    periodic_ok = periodic_ok && ps.equal;
    cert.periodicity.push_back(ps);
  }

  if (!crosscheck_ok)
    cert.status = "crosscheck_failure";
  else if (!periodic_ok)
    cert.status = "periodicity_failure";
  else if (!cert.all_full_rank)
    cert.status = "rank_deficient";
  else
    cert.status = "ok";
  cert.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

}  // namespace scorza
