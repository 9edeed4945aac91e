#pragma once

// Coset (syndrome) coding: the message S is a syndrome of a linear code and
// the transmitted word X is drawn uniformly from the coset {X : H X = S}.

#include <cstddef>
#include <vector>

#include "wiresafe/gf.hpp"
#include "wiresafe/random.hpp"
#include "wiresafe/rankmetric.hpp"

namespace wiresafe {

/// H with its rows recombined so that the columns perm[0..k) form an identity.
/// In permuted column order the matrix reads [I P].
struct SystematicForm {
  ExtMatrix parity_check;          ///< row-reduced H, original column order
  ExtMatrix p;                     ///< k x (n - k)
  std::vector<std::size_t> perm;   ///< pivot columns first, then the rest in order
};

/// Throws Error if H does not have full row rank.
SystematicForm systematize(const ExtMatrix& h);

class CosetScheme {
 public:
  /// Scheme over the code ker H. Syndromes are taken with respect to the
  /// systematic form of H, which spans the same row space.
  static CosetScheme from_parity_check(const ExtMatrix& h);
  explicit CosetScheme(const GabidulinCode& code) : CosetScheme(from_parity_check(code.parity_check())) {}

  const FieldSpec& spec() const noexcept { return form_.parity_check.spec(); }
  std::size_t n() const noexcept { return form_.parity_check.cols(); }
  /// Message length (syndrome symbols).
  std::size_t k() const noexcept { return form_.parity_check.rows(); }
  /// Random symbols per codeword, n - k.
  std::size_t mu() const noexcept { return n() - k(); }

  /// The parity-check matrix that defines syndromes for this scheme.
  const ExtMatrix& parity_check() const noexcept { return form_.parity_check; }
  const SystematicForm& systematic() const noexcept { return form_; }

  /// X_S = S - P X_R with X_R drawn uniformly from `rng`.
  ExtVector encode(const ExtVector& message, Rng& rng) const;
  /// Same, with the random part supplied explicitly (length mu).
  ExtVector encode_with(const ExtVector& message, const ExtVector& randomness) const;
  /// S = X_S + P X_R, O(k (n - k)) field operations.
  ExtVector decode(const ExtVector& codeword) const;
  /// S = H X computed directly from the full parity-check matrix.
  ExtVector syndrome(const ExtVector& codeword) const { return multiply(form_.parity_check, codeword); }

 private:
  explicit CosetScheme(SystematicForm form) : form_(std::move(form)) {}
  SystematicForm form_;
};

/// Scheme that sends the message in the clear on the first k packets: H = [I 0].
CosetScheme cleartext_scheme(const FieldSpec& spec, std::size_t n, std::size_t k);

/// Generalised Reed-Solomon parity check H(i, j) = a_j^(i+1) with distinct
/// nonzero points a_j. Needs n <= 2^m - 1 whenever k >= 1.
ExtMatrix mds_parity_check(const FieldSpec& spec, std::size_t n, std::size_t k);

/// True iff every k x k minor of H is nonsingular, checked exhaustively.
bool is_mds_parity_check(const ExtMatrix& h, std::uint64_t budget = Budget{}.enumeration);

/// Classical coset scheme over `field` with an MDS code of redundancy mu.
/// The MDS property is verified, not assumed.
CosetScheme build_mds_baseline(const FieldSpec& field, std::size_t n, std::size_t mu,
                               std::uint64_t budget = Budget{}.enumeration);

}  // namespace wiresafe
