#include <doctest.h>

#include <sstream>
#include <vector>

#include "lagcov/combinatorics.hpp"
#include "lagcov/errors.hpp"

using namespace lagcov;

namespace {

// Independent brute force: walk all parity-respecting words of length 4k and
// apply the validity rules directly with an explicit stack.
bool oracle_valid(const std::vector<int>& w, bool three_zero_tail) {
  const std::size_t n = w.size();
  if (w[0] != 0 || w[n - 1] != 0) return false;
  if (three_zero_tail && (w[n - 2] != 0 || w[n - 3] != 0)) return false;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 1) open.push_back(i);
    if (w[i] == -1) {
      if (open.empty()) return false;
      const std::size_t up = open.back();
      open.pop_back();
      if ((i - up + 1) % 4 != 0) return false;
    }
  }
  return open.empty();
}

std::vector<long> oracle_counts(int k, bool three_zero_tail) {
  const std::size_t n = 4 * static_cast<std::size_t>(k);
  std::vector<long> counts(static_cast<std::size_t>(k) + 1, 0);
  std::vector<int> w(n, 0);
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    int ups = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool set = (mask >> i) & 1UL;
      // Position i+1 (1-based): odd -> down edge, even -> up edge.
      w[i] = set ? ((i + 1) % 2 == 1 ? -1 : 1) : 0;
      if (w[i] == 1) ++ups;
    }
    if (oracle_valid(w, three_zero_tail)) ++counts[static_cast<std::size_t>(ups)];
  }
  return counts;
}

CharacteristicSequence seq(std::vector<int> v) { return CharacteristicSequence(std::move(v)); }

}  // namespace

TEST_CASE("sequence construction checks alphabet and length") {
  CHECK_THROWS_AS(seq({0, 2, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(seq({0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(seq({}), std::invalid_argument);
  const auto s = seq({0, 1, 0, 0, 0, 0, -1, 0});
  CHECK(s.quarter_length() == 2);
  CHECK(s.at(2) == 1);
  CHECK(s.respects_parity());
  CHECK_FALSE(seq({1, 0, 0, 0}).respects_parity());
  CHECK(s.partial_sums() == std::vector<int>{0, 1, 1, 1, 1, 1, 0, 0});
  CHECK(s.up_count() == 1);
}

TEST_CASE("canonical matching") {
  const auto pairs = canonical_matching(seq({0, 1, 0, 1, 0, 0, -1, 0, -1, 0, 0, 0}));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == MatchedPair{4, 7});
  CHECK(pairs[1] == MatchedPair{2, 9});
  CHECK(pairs[0].window() == 4);
  CHECK(pairs[1].window() == 8);

  CHECK(canonical_matching(seq(std::vector<int>(8, 0))).empty());
  CHECK_THROWS_AS(canonical_matching(seq({0, 0, -1, 0, 0, 0, 0, 0})), PrefixViolationError);
  CHECK_THROWS_AS(canonical_matching(seq({0, 1, 0, 0, 0, 0, 0, 0})), UnbalancedSequenceError);
  CHECK_THROWS_AS(canonical_matching(seq({0, 1, 0, 0, 0, 0, 0, 0})), SequenceError);
}

TEST_CASE("matched pairs are nested, up on even and down on odd positions") {
  // Every parity-respecting balanced word of length 12.
  for (unsigned long mask = 0; mask < (1UL << 12); ++mask) {
    std::vector<int> w(12, 0);
    for (std::size_t i = 0; i < 12; ++i) {
      if ((mask >> i) & 1UL) w[i] = (i + 1) % 2 == 1 ? -1 : 1;
    }
    const CharacteristicSequence s(w);
    std::vector<MatchedPair> pairs;
    try {
      pairs = canonical_matching(s);
    } catch (const SequenceError&) {
      continue;
    }
    for (const auto& p : pairs) {
      CHECK(p.up < p.down);
      CHECK(p.up % 2 == 0);
      CHECK(p.down % 2 == 1);
    }
    for (const auto& p : pairs) {
      for (const auto& q : pairs) {
        const bool crossing = p.up < q.up && q.up < p.down && p.down < q.down;
        CHECK_FALSE(crossing);
      }
    }
  }
}

TEST_CASE("sequence validity") {
  CHECK(validate_sequence(seq({0, 1, 0, 1, 0, 0, -1, 0, -1, 0, 0, 0}), SequenceVariant::kEndOneZero));
  CHECK_FALSE(validate_sequence(seq({0, 1, 0, 0, 0, 0, 0, 1, -1, 0, -1, 0, 0, 0, 0, 0}),
                                SequenceVariant::kEndOneZero));
  for (int k = 1; k <= 4; ++k) {
    const auto zeros = seq(std::vector<int>(4 * static_cast<std::size_t>(k), 0));
    CHECK(validate_sequence(zeros, SequenceVariant::kEndOneZero));
    CHECK(validate_sequence(zeros, SequenceVariant::kEndThreeZeros));
  }
  // Ends in one zero but not three.
  const auto tail = seq({0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0});
  CHECK(validate_sequence(tail, SequenceVariant::kEndOneZero));
  CHECK_FALSE(validate_sequence(tail, SequenceVariant::kEndThreeZeros));
  // Parity violation and a crossing-free but window-2 pair.
  CHECK_FALSE(validate_sequence(seq({0, 0, 1, 0}), SequenceVariant::kEndOneZero));
  CHECK_FALSE(validate_sequence(seq({0, 1, -1, 0}), SequenceVariant::kEndOneZero));
}

TEST_CASE("enumeration matches the independent brute force") {
  for (int k = 1; k <= kEnumerationCutoff; ++k) {
    for (const bool tail : {false, true}) {
      const auto lib = enumerate_pillar_counts(k, tail ? SequenceVariant::kEndThreeZeros : SequenceVariant::kEndOneZero);
      const auto ref = oracle_counts(k, tail);
      REQUIRE(lib.size() == ref.size());
      for (std::size_t m = 0; m < ref.size(); ++m) CHECK(lib[m] == ref[m]);
    }
  }
  CHECK(enumerate_pillar_counts(2, SequenceVariant::kEndOneZero) == std::vector<Integer>{1, 2, 0});
  CHECK(enumerate_pillar_counts(2, SequenceVariant::kEndThreeZeros) == std::vector<Integer>{1, 1, 0});
  CHECK(enumerate_pillar_counts(1, SequenceVariant::kEndOneZero) == std::vector<Integer>{1, 0});
  CHECK_THROWS_AS(enumerate_pillar_counts(5, SequenceVariant::kEndOneZero), CutoffExceededError);
  CHECK_THROWS_AS(enumerate_pillar_counts(0, SequenceVariant::kEndOneZero), DomainError);
}

TEST_CASE("closed form values") {
  for (int k = 1; k <= 12; ++k) CHECK(f_closed_form(0, k) == 1);
  CHECK(f_closed_form(1, 2) == 2);
  CHECK(f_closed_form(2, 3) == 5);
  CHECK(f_closed_form(3, 3) == 0);
  CHECK_THROWS_AS(f_closed_form(4, 3), DomainError);
  CHECK_THROWS_AS(f_closed_form(-1, 3), DomainError);
  CHECK_THROWS_AS(f_closed_form(0, 0), DomainError);
  // k | C(2k,m) C(k,m+1).
  for (int k = 1; k <= 40; ++k) {
    for (int m = 0; m <= k; ++m) {
      const Integer prod = binomial(2 * k, m) * binomial(k, m + 1);
      CHECK(prod % k == 0);
    }
  }
}

TEST_CASE("recursion tables") {
  const PillarCountTable t = build_tables_by_recursion(12);
  CHECK(t.f(1, 3) == 6);
  CHECK(t.g(1, 3) == 4);
  CHECK(t.g(1, 2) == 1);
  CHECK_THROWS_AS(t.f(1, 13), TableTooSmallError);
  CHECK_THROWS_AS(t.g(4, 3), TableTooSmallError);
  for (int k = 1; k <= 12; ++k) {
    Integer row = 0;
    for (int m = 0; m <= k; ++m) {
      CHECK(t.f(m, k) == f_closed_form(m, k));
      row += t.f(m, k);
    }
    CHECK(row >= 1);
  }
  // g at k = 5 against the brute force (beyond the library's enumeration cutoff).
  const auto g5 = oracle_counts(5, true);
  for (int m = 0; m <= 5; ++m) CHECK(t.g(m, 5) == g5[static_cast<std::size_t>(m)]);
  const auto f5 = oracle_counts(5, false);
  for (int m = 0; m <= 5; ++m) CHECK(t.f(m, 5) == f5[static_cast<std::size_t>(m)]);

  const PillarCountTable e = build_tables_by_enumeration(4);
  for (int k = 1; k <= 4; ++k) {
    for (int m = 0; m <= k; ++m) {
      CHECK(e.f(m, k) == t.f(m, k));
      CHECK(e.g(m, k) == t.g(m, k));
    }
  }
}

TEST_CASE("index polynomials") {
  const IndexPolynomials p = index_polynomials(15);
  CHECK(p.F[1].poly == IntPolynomial({1, 2}));
  CHECK(p.G[1].poly == IntPolynomial({1, 1}));
  CHECK(p.G[2].poly == IntPolynomial({1, 4, 2}));
  CHECK(p.F[2].poly - p.G[2].poly == IntPolynomial({0, 2, 3}));
  std::vector<IntPolynomial> F;
  std::vector<IntPolynomial> G;
  for (const auto& f : p.F) F.push_back(f.poly);
  for (const auto& g : p.G) G.push_back(g.poly);
  for (int k = 2; k <= 15; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    CHECK(F[i] - G[i] == first_recursion_rhs(F, G, k));
  }
  const PillarCountTable t = build_tables_by_recursion(15);
  for (int k = 1; k <= 15; ++k) {
    for (int m = 0; m <= k; ++m) {
      CHECK(p.F[static_cast<std::size_t>(k - 1)].poly[static_cast<std::size_t>(m)] == t.f(m, k));
      CHECK(p.G[static_cast<std::size_t>(k - 1)].poly[static_cast<std::size_t>(m)] == t.g(m, k));
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial a({1, 1});
  CHECK(a * a == IntPolynomial({1, 2, 1}));
  CHECK((a - a).degree() == -1);
  CHECK(a.shifted() == IntPolynomial({0, 1, 1}));
  CHECK(a[5] == 0);
}

TEST_CASE("table csv dump") {
  std::ostringstream out;
  build_tables_by_recursion(2).write_csv(out);
  CHECK(out.str() == "k,m,f,g\n1,0,1,1\n1,1,0,0\n2,0,1,1\n2,1,2,1\n2,2,0,0\n");
}
