#include "lagcov/combinatorics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lagcov/errors.hpp"

namespace lagcov {

CharacteristicSequence::CharacteristicSequence(std::vector<int> entries) {
  if (entries.empty() || entries.size() % 4 != 0) {
    throw std::invalid_argument("characteristic sequence length must be a positive multiple of 4, got " +
                                std::to_string(entries.size()));
  }
  entries_.reserve(entries.size());
  for (int v : entries) {
    if (v < -1 || v > 1) {
      throw std::invalid_argument("characteristic sequence entries must be in {-1,0,1}");
    }
    entries_.push_back(static_cast<std::int8_t>(v));
  }
}

bool CharacteristicSequence::respects_parity() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const bool odd_position = (i % 2 == 0);
    if (odd_position && entries_[i] == 1) return false;
    if (!odd_position && entries_[i] == -1) return false;
  }
  return true;
}

std::vector<int> CharacteristicSequence::partial_sums() const {
  std::vector<int> sums;
  sums.reserve(entries_.size());
  int running = 0;
  for (auto v : entries_) {
    running += v;
    sums.push_back(running);
  }
  return sums;
}

int CharacteristicSequence::up_count() const {
  return static_cast<int>(std::count(entries_.begin(), entries_.end(), std::int8_t{1}));
}

namespace {

enum class MatchStatus { kOk, kPrefixViolation, kUnbalanced };

MatchStatus match_into(std::span<const std::int8_t> entries, std::vector<MatchedPair>& pairs) {
  pairs.clear();
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] == 1) {
      open.push_back(i + 1);
    } else if (entries[i] == -1) {
      if (open.empty()) return MatchStatus::kPrefixViolation;
      pairs.push_back({open.back(), i + 1});
      open.pop_back();
    }
  }
  return open.empty() ? MatchStatus::kOk : MatchStatus::kUnbalanced;
}

bool tail_is_zero(std::span<const std::int8_t> entries, std::size_t count) {
  return std::all_of(entries.end() - static_cast<std::ptrdiff_t>(count), entries.end(),
                     [](std::int8_t v) { return v == 0; });
}

}  // namespace

std::vector<MatchedPair> canonical_matching(const CharacteristicSequence& seq) {
  std::vector<MatchedPair> pairs;
  switch (match_into(seq.entries(), pairs)) {
    case MatchStatus::kPrefixViolation:
      throw PrefixViolationError("a -1 appears with no open +1 before it");
    case MatchStatus::kUnbalanced:
      throw UnbalancedSequenceError("number of +1 entries differs from number of -1 entries");
    case MatchStatus::kOk:
      break;
  }
  return pairs;
}

bool validate_sequence(const CharacteristicSequence& seq, SequenceVariant variant) {
  const auto entries = seq.entries();
  if (entries.front() != 0) return false;
  const std::size_t trailing = variant == SequenceVariant::kEndOneZero ? 1 : 3;
  if (!tail_is_zero(entries, trailing)) return false;
  if (!seq.respects_parity()) return false;
  std::vector<MatchedPair> pairs;
  if (match_into(entries, pairs) != MatchStatus::kOk) return false;
  return std::all_of(pairs.begin(), pairs.end(),
                     [](const MatchedPair& p) { return p.window() % 4 == 0; });
}

std::vector<Integer> enumerate_pillar_counts(int k, SequenceVariant variant) {
  if (k < 1) throw DomainError("enumeration needs k >= 1");
  if (k > kEnumerationCutoff) {
    throw CutoffExceededError("enumeration cutoff is k <= " + std::to_string(kEnumerationCutoff) +
                              ", got " + std::to_string(k));
  }
  const int length = 4 * k;
  // Bit i of the mask marks a nonzero entry at position i + 1; parity fixes its sign.
  std::vector<unsigned long> counts(static_cast<std::size_t>(k) + 1, 0);
  std::vector<int> entries(static_cast<std::size_t>(length));
  const unsigned long candidates = 1ul << length;
  for (unsigned long mask = 0; mask < candidates; ++mask) {
    for (int i = 0; i < length; ++i) {
      const bool set = (mask >> i) & 1ul;
      entries[static_cast<std::size_t>(i)] = set ? (i % 2 == 0 ? -1 : 1) : 0;
    }
    const CharacteristicSequence seq(entries);
    if (validate_sequence(seq, variant)) {
      ++counts[static_cast<std::size_t>(seq.up_count())];
    }
  }
  return {counts.begin(), counts.end()};
}

Integer f_closed_form(int m, int k) {
  if (k < 1) throw DomainError("f_closed_form needs k >= 1");
  if (m < 0 || m > k) throw DomainError("f_closed_form needs 0 <= m <= k");
  const auto uk = static_cast<unsigned long>(k);
  const auto um = static_cast<unsigned long>(m);
  Integer numerator = binomial(2 * uk, um) * binomial(uk, um + 1);
  if (mpz_divisible_ui_p(numerator.get_mpz_t(), uk) == 0) {
    throw std::logic_error("C(2k,m) C(k,m+1) not divisible by k for m=" + std::to_string(m) +
                           ", k=" + std::to_string(k));
  }
  Integer out;
  mpz_divexact_ui(out.get_mpz_t(), numerator.get_mpz_t(), uk);
  return out;
}

PillarCountTable::PillarCountTable(int max_k, TableSource source) : max_k_(max_k), source_(source) {
  if (max_k < 1) throw DomainError("pillar table needs max_k >= 1");
  const auto cells = static_cast<std::size_t>(max_k + 1) * static_cast<std::size_t>(max_k + 1);
  f_.assign(cells, Integer(0));
  g_.assign(cells, Integer(0));
  for (int k = 1; k <= max_k; ++k) {
    f(0, k) = 1;
    g(0, k) = 1;
  }
}

std::size_t PillarCountTable::index(int m, int k) const {
  if (k < 1 || k > max_k_ || m < 0 || m > k) {
    throw TableTooSmallError("pillar table has no entry (m=" + std::to_string(m) + ", k=" +
                             std::to_string(k) + "), max_k=" + std::to_string(max_k_));
  }
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(max_k_ + 1) +
         static_cast<std::size_t>(m);
}

const Integer& PillarCountTable::f(int m, int k) const { return f_[index(m, k)]; }
const Integer& PillarCountTable::g(int m, int k) const { return g_[index(m, k)]; }
Integer& PillarCountTable::f(int m, int k) { return f_[index(m, k)]; }
Integer& PillarCountTable::g(int m, int k) { return g_[index(m, k)]; }

void PillarCountTable::write_csv(std::ostream& out) const {
  out << "k,m,f,g\n";
  for (int k = 1; k <= max_k_; ++k) {
    for (int m = 0; m <= k; ++m) {
      out << k << ',' << m << ',' << f(m, k).get_str() << ',' << g(m, k).get_str() << '\n';
    }
  }
}

PillarCountTable build_tables_by_recursion(int max_k) {
  PillarCountTable table(max_k, TableSource::kRecursion);
  const Integer zero(0);
  // Counts with m > k vanish; the recursions index past the diagonal freely.
  auto f = [&](int m, int k) -> const Integer& { return m > k ? zero : table.f(m, k); };
  auto g = [&](int m, int k) -> const Integer& { return m > k ? zero : table.g(m, k); };

  for (int k = 2; k <= max_k; ++k) {
    for (int m = 1; m < k; ++m) {
      Integer g_mk = 0;
      Integer f_minus_g = 0;
      for (int s = 1; s <= m; ++s) {
        for (int j = 3; j <= k; ++j) {
          Integer inner = 0;
          for (int l = 2; l <= j - 1; ++l) inner += g(s - 1, j - l);
          if (inner != 0) g_mk += inner * (f(m - s, k - j + 1) + g(m - s, k - j + 1));
        }
        for (int j = 2; j <= k; ++j) {
          const Integer& head = g(s - 1, j - 1);
          if (head == 0) continue;
          g_mk += head * g(m - s, k - j + 1);
          f_minus_g += head * f(m - s, k - j + 1);
        }
      }
      table.g(m, k) = g_mk;
      table.f(m, k) = g_mk + f_minus_g;
    }
  }
  return table;
}

PillarCountTable build_tables_by_enumeration(int max_k) {
  PillarCountTable table(max_k, TableSource::kEnumeration);
  for (int k = 1; k <= max_k; ++k) {
    const auto f = enumerate_pillar_counts(k, SequenceVariant::kEndOneZero);
    const auto g = enumerate_pillar_counts(k, SequenceVariant::kEndThreeZeros);
    for (int m = 0; m <= k; ++m) {
      table.f(m, k) = f[static_cast<std::size_t>(m)];
      table.g(m, k) = g[static_cast<std::size_t>(m)];
    }
  }
  return table;
}

PillarCountTable build_f_table_closed_form(int max_k) {
  PillarCountTable table(max_k, TableSource::kClosedForm);
  for (int k = 1; k <= max_k; ++k) {
    for (int m = 0; m < k; ++m) table.f(m, k) = f_closed_form(m, k);
  }
  return table;
}

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::operator[](std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Integer(0);
}

int IntPolynomial::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shifted() const {
  if (coeffs_.empty()) return {};
  std::vector<Integer> out;
  out.reserve(coeffs_.size() + 1);
  out.emplace_back(0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(out));
}

bool IntPolynomial::operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }

IntPolynomial first_recursion_rhs(std::span<const IntPolynomial> F, std::span<const IntPolynomial> G,
                                  int k) {
  if (k < 1 || static_cast<std::size_t>(k) > F.size() || static_cast<std::size_t>(k) > G.size()) {
    throw DomainError("first_recursion_rhs needs F_1..F_k and G_1..G_k");
  }
  // F_i lives at index i - 1.
  auto Fk = [&](int i) -> const IntPolynomial& { return F[static_cast<std::size_t>(i - 1)]; };
  auto Gk = [&](int i) -> const IntPolynomial& { return G[static_cast<std::size_t>(i - 1)]; };
  IntPolynomial sum;
  for (int j = 2; j <= k; ++j) sum += Gk(j - 1) * Fk(k - j + 1);
  return sum.shifted();
}

IndexPolynomials index_polynomials(int max_k) {
  if (max_k < 1) throw DomainError("index_polynomials needs max_k >= 1");
  std::vector<IntPolynomial> F;
  std::vector<IntPolynomial> G;
  F.reserve(static_cast<std::size_t>(max_k));
  G.reserve(static_cast<std::size_t>(max_k));
  auto Fk = [&](int i) -> const IntPolynomial& { return F[static_cast<std::size_t>(i - 1)]; };
  auto Gk = [&](int i) -> const IntPolynomial& { return G[static_cast<std::size_t>(i - 1)]; };

  for (int k = 1; k <= max_k; ++k) {
    IntPolynomial nested;
    for (int j = 3; j <= k; ++j) {
      const IntPolynomial tail = Fk(k - j + 1) + Gk(k - j + 1);
      for (int l = 2; l <= j - 1; ++l) nested += Gk(j - l) * tail;
    }
    IntPolynomial direct;
    for (int j = 2; j <= k; ++j) direct += Gk(j - 1) * Gk(k - j + 1);
    G.push_back(IntPolynomial::one() + nested.shifted() + direct.shifted());
    IntPolynomial coupling;
    for (int j = 2; j <= k; ++j) coupling += Gk(j - 1) * Fk(k - j + 1);
    F.push_back(G.back() + coupling.shifted());
  }

  IndexPolynomials out;
  for (int k = 1; k <= max_k; ++k) {
    out.F.push_back({k, Fk(k)});
    out.G.push_back({k, Gk(k)});
  }
  return out;
}

}  // namespace lagcov
