#include "wiresafe/coset.hpp"

#include <algorithm>
#include <numeric>

namespace wiresafe {

SystematicForm systematize(const ExtMatrix& h) {
  auto ech = row_reduce(h);
  if (ech.pivots.size() != h.rows())
    throw Error("parity-check matrix is rank deficient (rank " + std::to_string(ech.pivots.size()) + " < " +
                std::to_string(h.rows()) + " rows)");
  std::vector<bool> is_pivot(h.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;

  std::vector<std::size_t> perm = ech.pivots;
  for (std::size_t c = 0; c < h.cols(); ++c)
    if (!is_pivot[c]) perm.push_back(c);

  const std::span<const std::size_t> rest(perm.data() + h.rows(), h.cols() - h.rows());
  ExtMatrix p = ech.reduced.select_columns(rest);
  return {std::move(ech.reduced), std::move(p), std::move(perm)};
}

CosetScheme CosetScheme::from_parity_check(const ExtMatrix& h) { return CosetScheme(systematize(h)); }

ExtVector CosetScheme::encode(const ExtVector& message, Rng& rng) const {
  return encode_with(message, draw_vector(rng, spec(), mu()));
}

ExtVector CosetScheme::encode_with(const ExtVector& message, const ExtVector& randomness) const {
  if (!(message.spec() == spec()) || !(randomness.spec() == spec())) throw Error("encode: field mismatch");
  if (message.size() != k()) throw Error("encode: message has " + std::to_string(message.size()) + " symbols, expected " + std::to_string(k()));
  if (randomness.size() != mu()) throw Error("encode: expected " + std::to_string(mu()) + " random symbols");

  const FieldSpec& f = spec();
  const auto& perm = form_.perm;
  ExtVector x(f, n());
  for (std::size_t j = 0; j < mu(); ++j) x[perm[k() + j]] = randomness[j];
  for (std::size_t i = 0; i < k(); ++i) {
    Word acc = message[i];
    for (std::size_t j = 0; j < mu(); ++j) acc ^= f.mul(form_.p(i, j), randomness[j]);
    x[perm[i]] = acc;
  }
  return x;
}

ExtVector CosetScheme::decode(const ExtVector& codeword) const {
  if (!(codeword.spec() == spec())) throw Error("decode: field mismatch");
  if (codeword.size() != n()) throw Error("decode: codeword has " + std::to_string(codeword.size()) + " symbols, expected " + std::to_string(n()));
  const FieldSpec& f = spec();
  const auto& perm = form_.perm;
  ExtVector s(f, k());
  for (std::size_t i = 0; i < k(); ++i) {
    Word acc = codeword[perm[i]];
    for (std::size_t j = 0; j < mu(); ++j) acc ^= f.mul(form_.p(i, j), codeword[perm[k() + j]]);
    s[i] = acc;
  }
  return s;
}

CosetScheme cleartext_scheme(const FieldSpec& spec, std::size_t n, std::size_t k) {
  if (k > n) throw Error("cleartext scheme: k exceeds n");
  ExtMatrix h(spec, k, n);
  for (std::size_t i = 0; i < k; ++i) h(i, i) = 1;
  return CosetScheme::from_parity_check(h);
}

ExtMatrix mds_parity_check(const FieldSpec& spec, std::size_t n, std::size_t k) {
  if (k > n) throw Error("MDS parity check: k exceeds n");
  if (k == 0) return ExtMatrix(spec, 0, n);
  if (n > spec.mask())
    throw Error("field GF(2^" + std::to_string(spec.m()) + ") is too small for an MDS code of length " +
                std::to_string(n) + " (needs at least n + 1 elements)");

  // distinct nonzero points: powers of a until they repeat, then the rest in order
  std::vector<Word> points;
  std::vector<bool> used(spec.order() <= (std::uint64_t{1} << 20) ? spec.order() : 0, false);
  auto seen = [&](Word w) {
    if (!used.empty()) return static_cast<bool>(used[w]);
    return std::find(points.begin(), points.end(), w) != points.end();
  };
  auto take = [&](Word w) {
    points.push_back(w);
    if (!used.empty()) used[w] = true;
  };
  for (Word a = 1; points.size() < n && !seen(a); a = spec.mul(a, spec.alpha())) take(a);
  for (Word a = 1; points.size() < n; ++a)
    if (!seen(a)) take(a);

  ExtMatrix h(spec, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Word v = points[j];
    for (std::size_t i = 0; i < k; ++i) {
      h(i, j) = v;
      v = spec.mul(v, points[j]);
    }
  }
  return h;
}

bool is_mds_parity_check(const ExtMatrix& h, std::uint64_t budget) {
  const std::size_t n = h.cols();
  const std::size_t k = h.rows();
  if (k > n) return false;
  // C(n, k), saturating
  std::uint64_t subsets = 1;
  for (std::size_t i = 0; i < k; ++i) {
    subsets = mul_saturating(subsets, n - i);
    if (subsets != UINT64_MAX) subsets /= (i + 1);
  }
  require_budget("MDS minor check", subsets, budget);

  std::vector<std::size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    if (rank_ext(h.select_columns(cols)) != k) return false;
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
}

CosetScheme build_mds_baseline(const FieldSpec& field, std::size_t n, std::size_t mu, std::uint64_t budget) {
  if (mu > n) throw Error("MDS baseline: mu exceeds n");
  ExtMatrix h = mds_parity_check(field, n, n - mu);
  if (!is_mds_parity_check(h, budget)) throw Error("MDS baseline: constructed parity check is not MDS");
  return CosetScheme::from_parity_check(h);
}

}  // namespace wiresafe
