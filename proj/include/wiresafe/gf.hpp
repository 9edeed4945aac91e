#pragma once

// Arithmetic in GF(2) and GF(2^m), dense matrices over both, and the
// correspondence between vectors over GF(2^m) and binary matrices.
//
// Elements of GF(2^m) are bit-packed in the polynomial basis {1, a, ..., a^(m-1)}:
// bit i of a Word is the coefficient of a^i, where a is a root of the modulus.
// Only q = 2 is supported as the base field.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "wiresafe/error.hpp"

namespace wiresafe {

using Word = std::uint64_t;

/// Largest supported extension degree; one element must fit in a Word.
inline constexpr int kMaxDegree = 63;
/// Largest degree with a built-in modulus (and trial-division irreducibility check).
inline constexpr int kMaxTableDegree = 16;

/// GF(2^m) defined by an irreducible modulus. Also carries the raw-word
/// arithmetic used by every hot loop in the library.
class FieldSpec {
 public:
  /// Validates that `modulus` has degree exactly m and is irreducible.
  FieldSpec(int m, Word modulus);

  /// Field with the built-in modulus for degree m (m <= 16).
  static FieldSpec standard(int m);

  /// Built-in modulus for degree m, e.g. 0xb = x^3 + x + 1 for m = 3.
  static Word default_modulus(int m);

  int m() const noexcept { return m_; }
  Word modulus() const noexcept { return modulus_; }
  Word mask() const noexcept { return mask_; }
  /// Number of field elements, 2^m.
  std::uint64_t order() const noexcept { return mask_ + 1; }

  bool contains(Word a) const noexcept { return (a & ~mask_) == 0; }

  /// The class generator a (the residue of x modulo the modulus).
  Word alpha() const noexcept;

  Word add(Word a, Word b) const noexcept { return a ^ b; }
  Word mul(Word a, Word b) const noexcept;
  Word square(Word a) const noexcept { return mul(a, a); }
  Word pow(Word a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws Error on zero.
  Word inv(Word a) const;
  /// a^(2^i).
  Word frobenius(Word a, std::uint64_t i) const noexcept;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  int m_;
  Word modulus_;
  Word mask_;
};

/// True iff `poly` (bit i = coefficient of x^i) is irreducible over GF(2).
bool is_irreducible(Word poly);

/// Degree of a nonzero binary polynomial; -1 for zero.
int poly_degree(Word poly) noexcept;

/// Checked single element. Convenient at API boundaries; matrices hold raw Words.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, Word bits);

  const FieldSpec& spec() const noexcept { return spec_; }
  Word bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  FieldElement inverse() const;
  FieldElement frobenius(std::uint64_t i) const;

 private:
  FieldSpec spec_;
  Word bits_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement frobenius(const FieldElement& a, std::uint64_t i);

/// Lowercase hex without prefix; zero is "0".
std::string to_hex(Word w);
/// Parses lowercase or uppercase hex, optional "0x" prefix.
Word parse_hex(const std::string& text);

/// Vector over GF(2^m).
class ExtVector {
 public:
  explicit ExtVector(const FieldSpec& spec, std::size_t n = 0) : spec_(spec), values_(n, 0) {}
  ExtVector(const FieldSpec& spec, std::vector<Word> values);
  /// Braced lists are always element values: ExtVector(f, {5}) holds the single element 5.
  ExtVector(const FieldSpec& spec, std::initializer_list<Word> values) : ExtVector(spec, std::vector<Word>(values)) {}

  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return values_.size(); }
  Word operator[](std::size_t i) const { return values_[i]; }
  Word& operator[](std::size_t i) { return values_[i]; }
  std::span<const Word> values() const noexcept { return values_; }
  std::span<Word> values() noexcept { return values_; }
  FieldElement at(std::size_t i) const { return FieldElement(spec_, values_.at(i)); }

  friend bool operator==(const ExtVector&, const ExtVector&) = default;

 private:
  FieldSpec spec_;
  std::vector<Word> values_;
};

/// Binary matrix with bit-packed rows; bit j of a row word is column j.
/// At most 64 columns.
class BaseMatrix {
 public:
  BaseMatrix() = default;
  BaseMatrix(std::size_t rows, std::size_t cols);
  /// Rows given as bit masks.
  BaseMatrix(std::size_t cols, std::vector<std::uint64_t> rows);
  /// Rows given as 0/1 entries.
  static BaseMatrix from_rows(const std::vector<std::vector<int>>& entries);
  static BaseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (rows_.at(r) >> c) & 1U; }
  void set(std::size_t r, std::size_t c, bool v);
  std::uint64_t row(std::size_t r) const { return rows_.at(r); }
  std::span<const std::uint64_t> row_words() const noexcept { return rows_; }
  void append_row(std::uint64_t bits);

  BaseMatrix transpose() const;
  std::uint64_t col_mask() const noexcept;

  friend bool operator==(const BaseMatrix&, const BaseMatrix&) = default;
  friend auto operator<=>(const BaseMatrix&, const BaseMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Dense row-major matrix over GF(2^m).
class ExtMatrix {
 public:
  ExtMatrix(const FieldSpec& spec, std::size_t rows, std::size_t cols);
  ExtMatrix(const FieldSpec& spec, std::size_t rows, std::size_t cols, std::vector<Word> data);
  static ExtMatrix from_rows(const FieldSpec& spec, const std::vector<std::vector<Word>>& rows);
  static ExtMatrix identity(const FieldSpec& spec, std::size_t n);
  /// Embeds a binary matrix through GF(2) inside GF(2^m).
  static ExtMatrix embed(const FieldSpec& spec, const BaseMatrix& b);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Word operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Word& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Word> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Word> data() const noexcept { return data_; }

  ExtMatrix select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const ExtMatrix&, const ExtMatrix&) = default;

 private:
  FieldSpec spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Word> data_;
};

// -- vector <-> binary matrix ------------------------------------------------

/// Row i holds the polynomial-basis coordinates of v[i]; the result is n x m.
BaseMatrix expand(const ExtVector& v);
/// Inverse of expand; `m.cols()` must equal spec.m().
ExtVector flatten(const BaseMatrix& m, const FieldSpec& spec);

/// Rank of v viewed as an n x m binary matrix.
std::size_t rank_base(const ExtVector& v);
std::size_t rank_base_matrix(const BaseMatrix& m);
/// Rank over GF(2^m).
std::size_t rank_ext(const ExtMatrix& m);

// -- elimination -------------------------------------------------------------

struct ExtEchelon {
  ExtMatrix reduced;                 ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

struct BaseEchelon {
  BaseMatrix reduced;
  std::vector<std::size_t> pivots;
};

ExtEchelon row_reduce(const ExtMatrix& m);
BaseEchelon row_reduce(const BaseMatrix& m);

/// Throws SingularMatrix when m is not square and nonsingular.
ExtMatrix invert(const ExtMatrix& m);
BaseMatrix invert(const BaseMatrix& m);

/// Solves a x = b for square nonsingular a.
ExtVector solve(const ExtMatrix& a, const ExtVector& b);

/// Basis of {x : m x = 0}, one row per basis vector.
ExtMatrix kernel_basis(const ExtMatrix& m);

// -- products ----------------------------------------------------------------

ExtMatrix multiply(const ExtMatrix& a, const ExtMatrix& b);
ExtVector multiply(const ExtMatrix& a, const ExtVector& x);
/// H T with T binary: each output entry is an XOR of selected H entries.
ExtMatrix multiply(const ExtMatrix& a, const BaseMatrix& t);
/// B X with B binary, applied to packets over GF(2^m).
ExtVector multiply(const BaseMatrix& b, const ExtVector& x);
BaseMatrix multiply(const BaseMatrix& a, const BaseMatrix& b);

/// [top; bottom].
ExtMatrix stack(const ExtMatrix& top, const ExtMatrix& bottom);

ExtVector add(const ExtVector& a, const ExtVector& b);

// -- enumeration -------------------------------------------------------------

/// prod_{i<rows} (2^cols - 2^i), saturating.
std::uint64_t count_full_rank(std::size_t rows, std::size_t cols);

/// Calls `visit` on every full-rank rows x cols binary matrix exactly once,
/// in lexicographic order of the row words. Requires rows <= cols and
/// 2^(rows*cols) <= budget. Returning false from `visit` stops early.
void for_each_full_rank(std::size_t rows, std::size_t cols, std::uint64_t budget,
                        const std::function<bool(const BaseMatrix&)>& visit);

std::vector<BaseMatrix> enumerate_full_rank(std::size_t rows, std::size_t cols,
                                            std::uint64_t budget = Budget{}.enumeration);

}  // namespace wiresafe
