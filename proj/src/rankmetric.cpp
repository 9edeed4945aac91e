#include "wiresafe/rankmetric.hpp"

#include <algorithm>

namespace wiresafe {

std::size_t rank_distance(const ExtVector& x, const ExtVector& y) {
  if (x.size() != y.size()) throw Error("rank distance: length mismatch");
  return rank_base(add(x, y));
}

std::uint64_t singleton_bound(std::size_t n, std::size_t m, std::size_t d) {
  const std::size_t lo = std::min(n, m);
  if (d < 1 || d > lo) throw Error("singleton bound: d must lie in [1, min(n, m)]");
  return static_cast<std::uint64_t>(std::max(n, m)) * (lo - d + 1);
}

std::size_t singleton_d_bound(std::size_t n, std::size_t m, std::size_t dim) {
  if (n == 0 || dim > n) throw Error("singleton bound: need 0 <= dim <= n and n >= 1");
  if (m >= n) return n - dim + 1;
  return (m * (n - dim)) / n + 1;
}

ExtMatrix moore_matrix(const ExtVector& generators, std::size_t rows) {
  const FieldSpec& f = generators.spec();
  ExtMatrix h(f, rows, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    Word g = generators[j];
    for (std::size_t i = 0; i < rows; ++i) {
      h(i, j) = g;
      g = f.square(g);
    }
  }
  return h;
}

GabidulinCode build_gabidulin(const FieldSpec& spec, std::size_t n, std::size_t k,
                              std::optional<std::vector<Word>> generators) {
  if (n == 0) throw Error("code length must be positive");
  if (n > static_cast<std::size_t>(spec.m()))
    throw Error("Gabidulin codes need n <= m (n = " + std::to_string(n) + ", m = " + std::to_string(spec.m()) + ")");
  if (k > n) throw Error("number of parity checks k exceeds n");

  std::vector<Word> g;
  if (generators) {
    g = *generators;
    if (g.size() != n) throw Error("expected " + std::to_string(n) + " generators, got " + std::to_string(g.size()));
  } else {
    Word a = 1;
    for (std::size_t j = 0; j < n; ++j) {
      g.push_back(a);
      a = spec.mul(a, spec.alpha());
    }
  }
  ExtVector gens(spec, std::move(g));
  if (rank_base(gens) != n) throw Error("generators are linearly dependent over GF(2)");
  ExtMatrix h = moore_matrix(gens, k);
  return GabidulinCode(spec, n, k, std::move(gens), std::move(h));
}

std::size_t min_rank_distance_bruteforce(const ExtMatrix& h, std::uint64_t budget) {
  const FieldSpec& f = h.spec();
  const std::size_t n = h.cols();
  const ExtMatrix basis = kernel_basis(h);
  const std::size_t dim = basis.rows();
  require_budget("kernel enumeration", pow2_saturating(static_cast<std::uint64_t>(f.m()) * dim), budget);

  std::size_t best = n + 1;
  std::vector<Word> coeffs(dim, 0);
  ExtVector word(f, n);
  // odometer over all coefficient vectors in GF(2^m)^dim, skipping zero
  while (true) {
    std::size_t i = 0;
    while (i < dim && coeffs[i] == f.mask()) coeffs[i++] = 0;
    if (i == dim) break;
    ++coeffs[i];
    for (std::size_t j = 0; j < n; ++j) {
      Word acc = 0;
      for (std::size_t r = 0; r < dim; ++r) acc ^= f.mul(coeffs[r], basis(r, j));
      word[j] = acc;
    }
    best = std::min(best, rank_base(word));
    if (best == 1) break;
  }
  return best;
}

std::size_t min_rank_distance_bruteforce(const GabidulinCode& code, std::uint64_t budget) {
  return min_rank_distance_bruteforce(code.parity_check(), budget);
}

MinDistanceCheck verify_min_distance_conditions(const ExtMatrix& h, std::size_t d, std::uint64_t budget) {
  const std::size_t n = h.cols();
  if (d < 1 || d > n + 1) throw Error("distance d must lie in [1, n + 1]");

  MinDistanceCheck out;
  out.all_rank_condition = true;
  if (d > 1) {
    for_each_full_rank(d - 1, n, budget, [&](const BaseMatrix& rows) {
      if (rank_ext(multiply(h, rows.transpose())) != d - 1) {
        out.all_rank_condition = false;
        return false;
      }
      return true;
    });
  }
  if (d <= n) {
    for_each_full_rank(d, n, budget, [&](const BaseMatrix& rows) {
      const BaseMatrix t = rows.transpose();
      if (rank_ext(multiply(h, t)) < d) {
        out.witness_condition = true;
        out.witness = t;
        return false;
      }
      return true;
    });
  }
  out.holds = out.all_rank_condition && out.witness_condition;
  return out;
}

bool verify_mrd_condition(const ExtMatrix& h, std::uint64_t budget) {
  const std::size_t n = h.cols();
  const std::size_t k = h.rows();
  if (n > static_cast<std::size_t>(h.spec().m())) throw Error("MRD check requires n <= m");
  if (k > n) throw Error("parity-check matrix has more rows than columns");
  if (k == 0) return true;
  bool ok = true;
  for_each_full_rank(k, n, budget, [&](const BaseMatrix& rows) {
    ok = rank_ext(multiply(h, rows.transpose())) == k;
    return ok;
  });
  return ok;
}

}  // namespace wiresafe
