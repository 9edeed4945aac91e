#pragma once

// Rank distance, rank-metric Singleton bounds, Gabidulin codes and exhaustive
// checks of the parity-check characterisations of minimum rank distance.
//
// Convention: a code is held by its k x n parity-check matrix H, so k is the
// syndrome length and the code itself has dimension n - k.

#include <cstddef>
#include <optional>
#include <vector>

#include "wiresafe/gf.hpp"

namespace wiresafe {

std::size_t rank_distance(const ExtVector& x, const ExtVector& y);

/// Upper bound on log2 |C| for a rank-metric code in GF(2)^(n x m) with
/// minimum rank distance d: max(n,m) * (min(n,m) - d + 1).
std::uint64_t singleton_bound(std::size_t n, std::size_t m, std::size_t d);

/// Largest d allowed for a linear code of length n and dimension `dim` over
/// GF(2^m): floor(min(1, m/n) * (n - dim)) + 1.
std::size_t singleton_d_bound(std::size_t n, std::size_t m, std::size_t dim);

/// Gabidulin code held by its Moore parity-check matrix
/// H(i, j) = g_j^(2^i), i = 0..k-1.
class GabidulinCode {
 public:
  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t n() const noexcept { return n_; }
  /// Number of parity checks (rows of H).
  std::size_t k() const noexcept { return k_; }
  /// Code dimension n - k.
  std::size_t dimension() const noexcept { return n_ - k_; }
  /// Minimum rank distance achieved by the construction, k + 1.
  std::size_t designed_distance() const noexcept { return k_ + 1; }
  const ExtVector& generators() const noexcept { return generators_; }
  const ExtMatrix& parity_check() const noexcept { return h_; }

 private:
  friend GabidulinCode build_gabidulin(const FieldSpec&, std::size_t, std::size_t, std::optional<std::vector<Word>>);
  GabidulinCode(FieldSpec spec, std::size_t n, std::size_t k, ExtVector generators, ExtMatrix h)
      : spec_(spec), n_(n), k_(k), generators_(std::move(generators)), h_(std::move(h)) {}

  FieldSpec spec_;
  std::size_t n_;
  std::size_t k_;
  ExtVector generators_;
  ExtMatrix h_;
};

/// k x n matrix whose row i is the 2^i-th power of `generators`.
ExtMatrix moore_matrix(const ExtVector& generators, std::size_t rows);

/// Default generators are (1, a, ..., a^(n-1)). Throws when n > m, k > n or
/// the generators are dependent over GF(2).
GabidulinCode build_gabidulin(const FieldSpec& spec, std::size_t n, std::size_t k,
                              std::optional<std::vector<Word>> generators = std::nullopt);

/// Minimum rank over nonzero codewords of ker H, by enumerating the kernel.
/// Returns n + 1 when the code is {0} (no nonzero codeword).
std::size_t min_rank_distance_bruteforce(const ExtMatrix& h, std::uint64_t budget = Budget{}.enumeration);
std::size_t min_rank_distance_bruteforce(const GabidulinCode& code, std::uint64_t budget = Budget{}.enumeration);

struct MinDistanceCheck {
  bool holds = false;
  /// Every full-rank n x (d-1) binary T gives rank(HT) = d - 1.
  bool all_rank_condition = false;
  /// Some full-rank n x d binary T0 gives rank(HT0) < d.
  bool witness_condition = false;
  /// The T0 found, when one exists.
  std::optional<BaseMatrix> witness;
};

/// Checks both parity-check conditions characterising minimum rank distance d
/// by exhaustive search over binary T. For d = 1 the first condition is vacuous.
MinDistanceCheck verify_min_distance_conditions(const ExtMatrix& h, std::size_t d,
                                              std::uint64_t budget = Budget{}.enumeration);

/// True iff rank(H T) = k for every full-rank n x k binary T, where k = rows(H).
/// Vacuously true when H has no rows. Requires n <= m.
bool verify_mrd_condition(const ExtMatrix& h, std::uint64_t budget = Budget{}.enumeration);

inline MinDistanceCheck verify_min_distance_conditions(const GabidulinCode& c, std::size_t d,
                                                     std::uint64_t budget = Budget{}.enumeration) {
  return verify_min_distance_conditions(c.parity_check(), d, budget);
}
inline bool verify_mrd_condition(const GabidulinCode& c, std::uint64_t budget = Budget{}.enumeration) {
  return verify_mrd_condition(c.parity_check(), budget);
}

}  // namespace wiresafe
