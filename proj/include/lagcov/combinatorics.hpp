#pragma once

// Characteristic sequences and the pillar counts f_m(k), g_m(k).
//
// A characteristic sequence is a word of length 4k over {-1, 0, +1}; odd
// (1-based) positions carry down edges and hold 0 or -1, even positions carry
// up edges and hold 0 or +1. f_m(k) counts valid sequences ending in a zero
// with m entries equal to +1; g_m(k) counts those ending in three zeros.
// Three independent routes produce these counts: exhaustive enumeration
// (small k), the coupled scalar recursions, and (for f only) the closed form
// (1/k) C(2k,m) C(k,m+1).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lagcov/exact.hpp"

namespace lagcov {

enum class SequenceVariant { kEndOneZero, kEndThreeZeros };

class CharacteristicSequence {
 public:
  // Throws std::invalid_argument unless every entry is in {-1,0,1} and the
  // length is a positive multiple of 4.
  explicit CharacteristicSequence(std::vector<int> entries);

  std::size_t length() const { return entries_.size(); }
  int quarter_length() const { return static_cast<int>(entries_.size() / 4); }

  // 1-based access, matching the position conventions used throughout.
  int at(std::size_t position) const { return entries_.at(position - 1); }
  std::span<const std::int8_t> entries() const { return entries_; }

  // Odd positions in {0,-1}, even positions in {0,+1}.
  bool respects_parity() const;

  // S_1..S_n.
  std::vector<int> partial_sums() const;

  int up_count() const;

 private:
  std::vector<std::int8_t> entries_;
};

struct MatchedPair {
  std::size_t up;    // position of the +1
  std::size_t down;  // position of the -1

  std::size_t window() const { return down - up + 1; }
  bool operator==(const MatchedPair&) const = default;
};

// Pairs each -1 with the nearest preceding unmatched +1. Pairs are listed in
// the order their -1 is read.
// Throws PrefixViolationError when a -1 has no open +1 and
// UnbalancedSequenceError when +1s remain open at the end.
std::vector<MatchedPair> canonical_matching(const CharacteristicSequence& seq);

bool validate_sequence(const CharacteristicSequence& seq, SequenceVariant variant);

inline constexpr int kEnumerationCutoff = 4;

// Exhaustive count of valid sequences of length 4k by number of +1 entries.
// Index m of the result holds the count for m; size is k + 1.
// Throws CutoffExceededError for k > kEnumerationCutoff, DomainError for k < 1.
std::vector<Integer> enumerate_pillar_counts(int k, SequenceVariant variant);

// (1/k) C(2k, m) C(k, m+1); throws DomainError unless 0 <= m <= k and k >= 1.
Integer f_closed_form(int m, int k);

enum class TableSource { kClosedForm, kRecursion, kEnumeration };

class PillarCountTable {
 public:
  PillarCountTable(int max_k, TableSource source);

  int max_k() const { return max_k_; }
  TableSource source() const { return source_; }

  // 0 <= m <= k, 1 <= k <= max_k; throws TableTooSmallError otherwise.
  const Integer& f(int m, int k) const;
  const Integer& g(int m, int k) const;
  Integer& f(int m, int k);
  Integer& g(int m, int k);

  // Writes the `k,m,f,g` table, rows sorted by (k, m).
  void write_csv(std::ostream& out) const;

 private:
  std::size_t index(int m, int k) const;

  int max_k_;
  TableSource source_;
  // Dense (k, m) storage, row k holds m = 0..max_k.
  std::vector<Integer> f_;
  std::vector<Integer> g_;
};

// Fills f and g from the coupled first-return recursions with
// f_0(k) = g_0(k) = 1 and f_k(k) = g_k(k) = 0.
PillarCountTable build_tables_by_recursion(int max_k);

// Enumeration-backed table for max_k <= kEnumerationCutoff.
PillarCountTable build_tables_by_enumeration(int max_k);

// f from the closed form; g is left zero except g_0(k) = 1 (g has no closed
// form).
PillarCountTable build_f_table_closed_form(int max_k);

// Polynomials with exact integer coefficients, coefficient i multiplying z^i.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);

  static IntPolynomial one() { return IntPolynomial({Integer(1)}); }

  const std::vector<Integer>& coefficients() const { return coeffs_; }
  // Coefficient of z^i, zero past the stored degree.
  Integer operator[](std::size_t i) const;
  // -1 for the zero polynomial.
  int degree() const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

  // z * p
  IntPolynomial shifted() const;

  bool operator==(const IntPolynomial& other) const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

struct IndexPolynomial {
  int k = 0;
  IntPolynomial poly;
};

struct IndexPolynomials {
  std::vector<IndexPolynomial> F;  // F[k-1] = F_k
  std::vector<IndexPolynomial> G;  // G[k-1] = G_k
};

// F_k(z), G_k(z) for k = 1..max_k from the two polynomial recursions.
IndexPolynomials index_polynomials(int max_k);

// z * sum_{j=2..k} G_{j-1} F_{k-j+1}, given F_1..F_k and G_1..G_k (1-based by
// vector index + 1).
IntPolynomial first_recursion_rhs(std::span<const IntPolynomial> F,
                                  std::span<const IntPolynomial> G, int k);

}  // namespace lagcov
