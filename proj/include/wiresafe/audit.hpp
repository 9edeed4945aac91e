#pragma once

// Exact security audits of coset schemes against a linear wiretapper W = B X.
//
// Every audit enumerates all (message, randomness) pairs, so distributions are
// integer count tables and independence is an integer identity. Entropies are
// exact rationals whenever every probability is a power of 1/2 (always the case for
// the linear schemes here); otherwise they are flagged inexact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wiresafe/coset.hpp"
#include "wiresafe/gf.hpp"
#include "wiresafe/netsim.hpp"
#include "wiresafe/rankmetric.hpp"

namespace wiresafe {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

/// Entropy in bits.
struct Entropy {
  bool exact = true;
  Rational bits;       ///< meaningful when exact
  double approx = 0;   ///< always set

  friend bool operator==(const Entropy& a, const Entropy& b) {
    return a.exact == b.exact && (a.exact ? a.bits == b.bits : a.approx == b.approx);
  }
};

/// Entropy of the distribution proportional to `counts`. Exact when every
/// probability is a power of 1/2.
Entropy entropy_from_counts(const std::vector<std::uint64_t>& counts);
Entropy operator-(const Entropy& a, const Entropy& b);

/// Full table of N(S = s, W = w) over every message and every randomness draw.
struct JointDistribution {
  std::uint64_t total = 0;
  std::uint64_t message_count = 0;          ///< |S| = 2^(m k); s_id is the base-2^m index
  std::vector<std::vector<Word>> observations;  ///< distinct W values, w_id = position
  std::vector<std::uint64_t> s_marginal;    ///< indexed by s_id
  std::vector<std::uint64_t> w_marginal;    ///< indexed by w_id
  /// Nonzero entries (s_id, w_id, count), sorted.
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> entries;
  /// Count of each distinct X, and whether each X decodes to a single S.
  std::vector<std::uint64_t> x_counts;
  bool x_determines_s = true;

  std::uint64_t count(std::uint64_t s_id, std::uint64_t w_id) const;
  std::optional<std::uint64_t> observation_id(const std::vector<Word>& w) const;
};

/// Message with base-2^m index `id`, least significant symbol first.
ExtVector message_from_index(const FieldSpec& spec, std::size_t k, std::uint64_t id);

/// Requires 2^(m n) <= budget.
JointDistribution joint_distribution(const CosetScheme& scheme, const ExtMatrix& observation,
                                     std::uint64_t budget = Budget{}.joint);

/// One audited observation matrix.
struct SecrecyEntry {
  std::vector<int> edges;         ///< tapped edge ids (empty for a bare B)
  ExtMatrix b;                    ///< observation matrix as given
  ExtMatrix b_reduced;            ///< independent rows spanning b's row space
  std::size_t rank_b = 0;
  bool stack_nonsingular = false; ///< [H; b_reduced] has full row rank k + rank_b
  Entropy h_s{};
  Entropy h_s_given_w{};
  Entropy h_x{};
  Entropy h_s_given_x{};
  bool independent = false;       ///< N(s,w) N = N(s) N(w) for every pair
  std::uint64_t pairs = 0;        ///< (message, randomness) pairs enumerated
};

struct SecrecyReport {
  std::vector<SecrecyEntry> entries;
  std::size_t sets_audited = 0;
  bool secure = true;
  /// Indices into `entries` that leak.
  std::vector<std::size_t> failures;
  /// Entries whose [H; B] stack is singular.
  std::size_t singular_stacks = 0;
};

struct ReducedObservation {
  ExtMatrix b_full;
  std::size_t mu_eff;
};

/// Keeps a maximal set of independent rows, scanning in order.
ReducedObservation reduce_rank_deficient(const ExtMatrix& b);
BaseMatrix reduce_rank_deficient(const BaseMatrix& b);

/// [H; B] nonsingular over GF(2^m). Requires rows(H) + rows(B) = n.
bool check_stack_nonsingular(const ExtMatrix& h, const BaseMatrix& b);
inline bool check_stack_nonsingular(const GabidulinCode& code, const BaseMatrix& b) { return check_stack_nonsingular(code.parity_check(), b); }

/// Same stack condition for any parity check; B may be binary or live in H's field.
bool check_stack_condition(const ExtMatrix& h, const BaseMatrix& b);
bool check_stack_condition(const ExtMatrix& h, const ExtMatrix& b);

/// First full-rank binary (n - k) x n B, in enumeration order, with singular [H; B].
std::optional<BaseMatrix> find_singular_stack(const ExtMatrix& h, std::uint64_t budget = Budget{}.enumeration);
/// Same search over B with entries in H's own field (a network code over that field).
std::optional<ExtMatrix> find_singular_stack_over_field(const ExtMatrix& h,
                                                        std::uint64_t budget = Budget{}.enumeration);

SecrecyEntry exhaustive_secrecy(const CosetScheme& scheme, const ExtMatrix& b, std::uint64_t budget = Budget{}.joint);
SecrecyEntry exhaustive_secrecy(const CosetScheme& scheme, const BaseMatrix& b, std::uint64_t budget = Budget{}.joint);

/// Audits every full-rank binary mu x n observation matrix.
SecrecyReport audit_full_rank(const CosetScheme& scheme, std::size_t mu, const Budget& budget = {});

/// Audits every set of mu edges of the network under `code`.
SecrecyReport audit_network(const LinearNetworkCode& code, const CosetScheme& scheme, std::size_t mu,
                            const Budget& budget = {});

}  // namespace wiresafe
