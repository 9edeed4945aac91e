#include "wiresafe/gf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>

namespace wiresafe {

namespace {

// Low-weight irreducible polynomials, index = degree.
constexpr std::array<Word, kMaxTableDegree + 1> kModuli = {
    0,        0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,    0x11d,
    0x211,    0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b,
};

Word poly_mod(Word a, Word d) noexcept {
  const int dd = poly_degree(d);
  for (int da = poly_degree(a); da >= dd; da = poly_degree(a)) a ^= d << (da - dd);
  return a;
}

Word poly_gcd(Word a, Word b) noexcept {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// a*b mod f for a, b already reduced; f has degree m <= 63.
Word mulmod(Word a, Word b, Word f, int m) noexcept {
  const Word top = Word{1} << (m - 1);
  Word r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a <<= 1;
    if (carry) a ^= f;
  }
  return r;
}

// Ben-Or: f of degree m is irreducible iff gcd(x^(2^i) - x, f) = 1 for i <= m/2.
bool ben_or_irreducible(Word f, int m) {
  const Word x = m > 1 ? Word{2} : poly_mod(Word{2}, f);
  Word power = x;
  for (int i = 1; i <= m / 2; ++i) {
    power = mulmod(power, power, f, m);
    if (poly_gcd(f, power ^ x) != 1) return false;
  }
  return true;
}

bool trial_division_irreducible(Word f, int m) {
  for (int d = 1; d <= m / 2; ++d) {
    for (Word low = 0; low < (Word{1} << d); ++low) {
      if (poly_mod(f, (Word{1} << d) | low) == 0) return false;
    }
  }
  return true;
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) throw Error("operands belong to different fields");
}

}  // namespace

int poly_degree(Word poly) noexcept { return 63 - std::countl_zero(poly); }

bool is_irreducible(Word poly) {
  const int m = poly_degree(poly);
  if (m < 1) return false;
  if (m > kMaxDegree) return false;
  return m <= kMaxTableDegree ? trial_division_irreducible(poly, m) : ben_or_irreducible(poly, m);
}

FieldSpec::FieldSpec(int m, Word modulus) : m_(m), modulus_(modulus) {
  if (m < 1 || m > kMaxDegree) throw Error("extension degree must be in [1, 63], got " + std::to_string(m));
  if (poly_degree(modulus) != m) throw Error("modulus 0x" + to_hex(modulus) + " does not have degree " + std::to_string(m));
  if (!is_irreducible(modulus)) throw Error("modulus 0x" + to_hex(modulus) + " is reducible over GF(2)");
  mask_ = (Word{1} << m) - 1;
}

Word FieldSpec::default_modulus(int m) {
  if (m < 1 || m > kMaxTableDegree)
    throw Error("no built-in modulus for degree " + std::to_string(m) + "; supply one explicitly");
  return kModuli[static_cast<std::size_t>(m)];
}

FieldSpec FieldSpec::standard(int m) { return FieldSpec(m, default_modulus(m)); }

Word FieldSpec::alpha() const noexcept { return m_ > 1 ? Word{2} : poly_mod(Word{2}, modulus_); }

Word FieldSpec::mul(Word a, Word b) const noexcept { return mulmod(a, b, modulus_, m_); }

Word FieldSpec::pow(Word a, std::uint64_t e) const noexcept {
  Word r = 1;
  while (e != 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Word FieldSpec::inv(Word a) const {
  if (a == 0) throw Error("zero has no multiplicative inverse");
  // a^(2^m - 2) = prod_{i=1}^{m-1} a^(2^i)
  Word r = 1;
  Word s = a;
  for (int i = 1; i < m_; ++i) {
    s = square(s);
    r = mul(r, s);
  }
  return r;
}

Word FieldSpec::frobenius(Word a, std::uint64_t i) const noexcept {
  for (i %= static_cast<std::uint64_t>(m_); i != 0; --i) a = square(a);
  return a;
}

// -- FieldElement -------------------------------------------------------------

FieldElement::FieldElement(const FieldSpec& spec, Word bits) : spec_(spec), bits_(bits) {
  if (!spec.contains(bits)) throw Error("value 0x" + to_hex(bits) + " is not an element of GF(2^" + std::to_string(spec.m()) + ")");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.spec_, b.spec_);
  return FieldElement(a.spec_, a.bits_ ^ b.bits_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.spec_, b.spec_);
  return FieldElement(a.spec_, a.spec_.mul(a.bits_, b.bits_));
}

FieldElement FieldElement::inverse() const { return FieldElement(spec_, spec_.inv(bits_)); }

FieldElement FieldElement::frobenius(std::uint64_t i) const { return FieldElement(spec_, spec_.frobenius(bits_, i)); }

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inverse(); }
FieldElement frobenius(const FieldElement& a, std::uint64_t i) { return a.frobenius(i); }

std::string to_hex(Word w) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(w));
  return buf;
}

Word parse_hex(const std::string& text) {
  std::string_view s = text;
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty() || s.size() > 16) throw Error("invalid hex value '" + text + "'");
  Word v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw Error("invalid hex value '" + text + "'");
    v = (v << 4) | static_cast<Word>(d);
  }
  return v;
}

// -- ExtVector ------------------------------------------------------------------

ExtVector::ExtVector(const FieldSpec& spec, std::vector<Word> values) : spec_(spec), values_(std::move(values)) {
  for (Word w : values_)
    if (!spec_.contains(w)) throw Error("value 0x" + to_hex(w) + " is not a field element");
}

ExtVector add(const ExtVector& a, const ExtVector& b) {
  require_same_field(a.spec(), b.spec());
  if (a.size() != b.size()) throw Error("vector length mismatch");
  ExtVector r(a.spec(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
  return r;
}

// -- BaseMatrix -----------------------------------------------------------------

namespace {
void check_cols(std::size_t cols) {
  if (cols > 64) throw Error("binary matrices support at most 64 columns");
}
}  // namespace

BaseMatrix::BaseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, 0) { check_cols(cols); }

BaseMatrix::BaseMatrix(std::size_t cols, std::vector<std::uint64_t> rows) : cols_(cols), rows_(std::move(rows)) {
  check_cols(cols);
  for (auto r : rows_)
    if (r & ~col_mask()) throw Error("row has bits beyond column count");
}

BaseMatrix BaseMatrix::from_rows(const std::vector<std::vector<int>>& entries) {
  const std::size_t cols = entries.empty() ? 0 : entries.front().size();
  BaseMatrix b(entries.size(), cols);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != cols) throw Error("ragged binary matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (entries[r][c] != 0 && entries[r][c] != 1) throw Error("binary matrix entries must be 0 or 1");
      b.set(r, c, entries[r][c] != 0);
    }
  }
  return b;
}

BaseMatrix BaseMatrix::identity(std::size_t n) {
  BaseMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, i, true);
  return b;
}

void BaseMatrix::set(std::size_t r, std::size_t c, bool v) {
  if (c >= cols_) throw Error("column index out of range");
  auto& w = rows_.at(r);
  const std::uint64_t bit = std::uint64_t{1} << c;
  w = v ? (w | bit) : (w & ~bit);
}

void BaseMatrix::append_row(std::uint64_t bits) {
  if (bits & ~col_mask()) throw Error("row has bits beyond column count");
  rows_.push_back(bits);
}

std::uint64_t BaseMatrix::col_mask() const noexcept {
  return cols_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cols_) - 1);
}

BaseMatrix BaseMatrix::transpose() const {
  BaseMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

// -- ExtMatrix ------------------------------------------------------------------

ExtMatrix::ExtMatrix(const FieldSpec& spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ExtMatrix::ExtMatrix(const FieldSpec& spec, std::size_t rows, std::size_t cols, std::vector<Word> data)
    : spec_(spec), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error("matrix data size does not match dimensions");
  for (Word w : data_)
    if (!spec_.contains(w)) throw Error("value 0x" + to_hex(w) + " is not a field element");
}

ExtMatrix ExtMatrix::from_rows(const FieldSpec& spec, const std::vector<std::vector<Word>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Word> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error("ragged matrix");
    data.insert(data.end(), r.begin(), r.end());
  }
  return ExtMatrix(spec, rows.size(), cols, std::move(data));
}

ExtMatrix ExtMatrix::identity(const FieldSpec& spec, std::size_t n) {
  ExtMatrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExtMatrix ExtMatrix::embed(const FieldSpec& spec, const BaseMatrix& b) {
  ExtMatrix m(spec, b.rows(), b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) = b.get(r, c) ? 1 : 0;
  return m;
}

ExtMatrix ExtMatrix::select_columns(std::span<const std::size_t> cols) const {
  ExtMatrix out(spec_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  return out;
}

// -- expand / rank ---------------------------------------------------------------

BaseMatrix expand(const ExtVector& v) {
  const auto m = static_cast<std::size_t>(v.spec().m());
  std::vector<std::uint64_t> rows(v.values().begin(), v.values().end());
  return BaseMatrix(m, std::move(rows));
}

ExtVector flatten(const BaseMatrix& m, const FieldSpec& spec) {
  if (m.cols() != static_cast<std::size_t>(spec.m())) throw Error("flatten: column count must equal the extension degree");
  return ExtVector(spec, std::vector<Word>(m.row_words().begin(), m.row_words().end()));
}

std::size_t rank_base_matrix(const BaseMatrix& m) { return row_reduce(m).pivots.size(); }

std::size_t rank_base(const ExtVector& v) { return rank_base_matrix(expand(v)); }

std::size_t rank_ext(const ExtMatrix& m) { return row_reduce(m).pivots.size(); }

// -- elimination ---------------------------------------------------------------

ExtEchelon row_reduce(const ExtMatrix& input) {
  ExtMatrix a = input;
  const FieldSpec& f = a.spec();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Word scale = f.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Word factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) ^= f.mul(factor, a(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

BaseEchelon row_reduce(const BaseMatrix& input) {
  std::vector<std::uint64_t> rows(input.row_words().begin(), input.row_words().end());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < input.cols() && r < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t p = r;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  return {BaseMatrix(input.cols(), std::move(rows)), std::move(pivots)};
}

ExtMatrix invert(const ExtMatrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("cannot invert a non-square matrix");
  const std::size_t n = m.rows();
  ExtMatrix aug(m.spec(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto ech = row_reduce(aug);
  if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) throw SingularMatrix("matrix is singular");
  ExtMatrix out(m.spec(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  return out;
}

BaseMatrix invert(const BaseMatrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("cannot invert a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::uint64_t> a(m.row_words().begin(), m.row_words().end());
  std::vector<std::uint64_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = std::uint64_t{1} << i;
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t p = c;
    while (p < n && !(a[p] & bit)) ++p;
    if (p == n) throw SingularMatrix("binary matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != c && (a[i] & bit)) {
        a[i] ^= a[c];
        inv[i] ^= inv[c];
      }
    }
  }
  return BaseMatrix(n, std::move(inv));
}

ExtVector solve(const ExtMatrix& a, const ExtVector& b) {
  require_same_field(a.spec(), b.spec());
  if (a.rows() != b.size()) throw Error("solve: right-hand side length mismatch");
  return multiply(invert(a), b);
}

ExtMatrix kernel_basis(const ExtMatrix& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  const std::size_t dim = m.cols() - ech.pivots.size();
  ExtMatrix basis(m.spec(), dim, m.cols());
  std::size_t row = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(row, free) = 1;
    // characteristic 2: -x = x
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) basis(row, ech.pivots[i]) = ech.reduced(i, free);
    ++row;
  }
  return basis;
}

// -- products ------------------------------------------------------------------

ExtMatrix multiply(const ExtMatrix& a, const ExtMatrix& b) {
  require_same_field(a.spec(), b.spec());
  if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
  const FieldSpec& f = a.spec();
  ExtMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Word x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) ^= f.mul(x, b(l, j));
    }
  return out;
}

ExtVector multiply(const ExtMatrix& a, const ExtVector& x) {
  require_same_field(a.spec(), x.spec());
  if (a.cols() != x.size()) throw Error("matrix-vector dimension mismatch");
  const FieldSpec& f = a.spec();
  ExtVector out(f, a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc ^= f.mul(a(i, j), x[j]);
    out[i] = acc;
  }
  return out;
}

ExtMatrix multiply(const ExtMatrix& a, const BaseMatrix& t) {
  if (a.cols() != t.rows()) throw Error("matrix product dimension mismatch");
  ExtMatrix out(a.spec(), a.rows(), t.cols());
  for (std::size_t l = 0; l < t.rows(); ++l) {
    const std::uint64_t row = t.row(l);
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!((row >> j) & 1U)) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) ^= a(i, l);
    }
  }
  return out;
}

ExtVector multiply(const BaseMatrix& b, const ExtVector& x) {
  if (b.cols() != x.size()) throw Error("matrix-vector dimension mismatch");
  ExtVector out(x.spec(), b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Word acc = 0;
    for (std::uint64_t row = b.row(i); row != 0; row &= row - 1) acc ^= x[static_cast<std::size_t>(std::countr_zero(row))];
    out[i] = acc;
  }
  return out;
}

BaseMatrix multiply(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
  std::vector<std::uint64_t> rows(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::uint64_t r = a.row(i); r != 0; r &= r - 1) rows[i] ^= b.row(static_cast<std::size_t>(std::countr_zero(r)));
  return BaseMatrix(b.cols(), std::move(rows));
}

ExtMatrix stack(const ExtMatrix& top, const ExtMatrix& bottom) {
  require_same_field(top.spec(), bottom.spec());
  if (top.cols() != bottom.cols()) throw Error("stack: column count mismatch");
  std::vector<Word> data(top.data().begin(), top.data().end());
  data.insert(data.end(), bottom.data().begin(), bottom.data().end());
  return ExtMatrix(top.spec(), top.rows() + bottom.rows(), top.cols(), std::move(data));
}

// -- enumeration ---------------------------------------------------------------

std::uint64_t count_full_rank(std::size_t rows, std::size_t cols) {
  if (rows > cols) return 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint64_t all = pow2_saturating(cols);
    if (all == UINT64_MAX) return UINT64_MAX;
    total = mul_saturating(total, all - (std::uint64_t{1} << i));
  }
  return total;
}

void for_each_full_rank(std::size_t rows, std::size_t cols, std::uint64_t budget,
                        const std::function<bool(const BaseMatrix&)>& visit) {
  if (rows > cols) throw Error("full-rank enumeration requires rows <= cols");
  check_cols(cols);
  require_budget("full-rank matrix enumeration", pow2_saturating(rows * cols), budget);

  const std::uint64_t limit = pow2_saturating(cols);
  std::vector<std::uint64_t> chosen(rows, 0);
  BaseMatrix current(rows, cols);

  // basis words kept with distinct leading bits, sorted by leading bit descending
  auto reduce = [](std::uint64_t v, const std::vector<std::uint64_t>& basis) {
    for (auto b : basis) {
      const auto lead = std::uint64_t{1} << (63 - std::countl_zero(b));
      if (v & lead) v ^= b;
    }
    return v;
  };

  std::function<bool(std::size_t, const std::vector<std::uint64_t>&)> recurse =
      [&](std::size_t depth, const std::vector<std::uint64_t>& basis) -> bool {
    if (depth == rows) return visit(BaseMatrix(cols, chosen));
    for (std::uint64_t v = 1; v < limit; ++v) {
      const std::uint64_t residue = reduce(v, basis);
      if (residue == 0) continue;
      chosen[depth] = v;
      auto next = basis;
      next.push_back(residue);
      std::sort(next.begin(), next.end(), [](auto a, auto b) { return std::countl_zero(a) < std::countl_zero(b); });
      if (!recurse(depth + 1, next)) return false;
    }
    return true;
  };
  recurse(0, {});
}

std::vector<BaseMatrix> enumerate_full_rank(std::size_t rows, std::size_t cols, std::uint64_t budget) {
  std::vector<BaseMatrix> out;
  for_each_full_rank(rows, cols, budget, [&](const BaseMatrix& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

}  // namespace wiresafe
