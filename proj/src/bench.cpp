#include "wiresafe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace wiresafe {

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("linear fit needs at least two paired samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

CosetScheme random_systematic_scheme(const FieldSpec& spec, std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw Error("k exceeds n");
  ExtMatrix h(spec, k, n);
  for (std::size_t i = 0; i < k; ++i) {
    h(i, i) = 1;
    for (std::size_t j = k; j < n; ++j) h(i, j) = draw_element(rng, spec);
  }
  return CosetScheme::from_parity_check(h);
}

std::vector<std::size_t> bench_k_values(std::size_t n) {
  std::set<std::size_t> ks{1, n / 4, n / 2, (3 * n) / 4, n - 1};
  ks.erase(0);
  ks.erase(n);
  return {ks.begin(), ks.end()};
}

namespace {

template <typename Op>
double median_ns_per_op(const BenchConfig& config, Op&& op) {
  using clock = std::chrono::steady_clock;
  std::vector<double> samples;
  op();  // warm-up
  for (std::size_t b = 0; b < config.batches; ++b) {
    const auto start = clock::now();
    for (std::size_t i = 0; i < config.iterations; ++i) op();
    const auto stop = clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(stop - start).count() /
                      static_cast<double>(config.iterations));
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

BenchResult run_bench(const FieldSpec& spec, const BenchConfig& config) {
  if (config.iterations == 0 || config.batches == 0) throw Error("bench needs positive iterations and batches");
  Rng rng(config.seed);
  BenchResult result;
  result.m = spec.m();
  volatile Word sink = 0;

  {
    const auto a = draw_vector(rng, spec, 64);
    const auto b = draw_vector(rng, spec, 64);
    std::size_t i = 0;
    result.mul_ns = median_ns_per_op(config, [&] {
      sink = sink ^ spec.mul(a[i & 63], b[(i * 7) & 63]);
      ++i;
    });
  }

  for (auto n : config.lengths) {
    for (auto k : bench_k_values(n)) {
      const CosetScheme scheme = random_systematic_scheme(spec, n, k, rng);
      const ExtVector message = draw_vector(rng, spec, k);
      const ExtVector codeword = scheme.encode(message, rng);
      BenchPoint p{.n = n, .k = k};
      p.encode_ns = median_ns_per_op(config, [&] { sink = sink ^ scheme.encode(message, rng)[0]; });
      p.decode_ns = median_ns_per_op(config, [&] { sink = sink ^ scheme.decode(codeword)[0]; });
      result.points.push_back(p);
    }
  }

  std::vector<double> work, enc, dec;
  for (const auto& p : result.points) {
    work.push_back(static_cast<double>(p.work()));
    enc.push_back(p.encode_ns);
    dec.push_back(p.decode_ns);
  }
  if (result.points.size() >= 2) {
    result.encode_fit = fit_linear(work, enc);
    result.decode_fit = fit_linear(work, dec);
  }
  return result;
}

}  // namespace wiresafe
