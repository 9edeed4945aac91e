#pragma once

// Timing of coset encoding/decoding over an (n, k) grid.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wiresafe/coset.hpp"

namespace wiresafe {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

/// Least squares y = slope * x + intercept.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

struct BenchPoint {
  std::size_t n = 0;
  std::size_t k = 0;
  double encode_ns = 0;  ///< median ns per encode
  double decode_ns = 0;  ///< median ns per decode
  std::uint64_t work() const noexcept { return static_cast<std::uint64_t>(k) * (n - k); }
};

struct BenchResult {
  int m = 0;
  double mul_ns = 0;
  std::vector<BenchPoint> points;
  LinearFit encode_fit;  ///< encode_ns against k (n - k)
  LinearFit decode_fit;
};

struct BenchConfig {
  std::vector<std::size_t> lengths{8, 16, 32};
  std::size_t iterations = 2000;  ///< operations per timed batch
  std::size_t batches = 15;       ///< the median batch is reported
  std::uint64_t seed = 1;
};

/// Scheme with H = [I P] and P drawn from `rng`; no code-theoretic structure,
/// used where only the cost of systematic encoding matters.
CosetScheme random_systematic_scheme(const FieldSpec& spec, std::size_t n, std::size_t k, Rng& rng);

/// k values benchmarked for length n: 1, n/4, n/2, 3n/4, n-1 (deduplicated).
std::vector<std::size_t> bench_k_values(std::size_t n);

BenchResult run_bench(const FieldSpec& spec, const BenchConfig& config);

}  // namespace wiresafe
