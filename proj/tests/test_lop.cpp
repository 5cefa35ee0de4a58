#include <doctest.h>

#include <random>

#include "linord/generators.hpp"
#include "linord/lop.hpp"
#include "oracle.hpp"

using namespace linord;

namespace {

DominanceMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rational(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return make_dominance(std::move(m));
}

DominanceMatrix perfect(int n) {
  return generate({.kind = GenKind::dominance_plus_noise, .n = n, .percent = 0.0, .seed = 0});
}

DominanceMatrix empty(int n) { return generate({.kind = GenKind::empty, .n = n}); }

bool same_sets(const std::vector<Ranking>& a, const std::vector<Ranking>& b) { return a == b; }

}  // namespace

TEST_CASE("lop_problem copies the dominance matrix and maximizes") {
  const CostProblem p0 = lop_problem(empty(3));
  CHECK(p0.sense == Sense::maximize);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p0.cost(i, j) == Rational(0));

  const CostProblem p1 = lop_problem(perfect(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(p1.cost(i, j) == Rational(i < j ? 1 : 0));

  const CostProblem p2 = lop_problem(from_rows({{0, 2}, {1, 0}}));
  CHECK(p2.cost(0, 1) == Rational(2));
  CHECK(p2.cost(1, 0) == Rational(1));
}

TEST_CASE("hillside transform counts strict row and column inequalities") {
  // Perfect dominance: the identity ranking has objective 0, and brute force
  // over all 6 rankings confirms 0 is minimal.
  const CostProblem p = hillside_problem(perfect(3));
  CHECK(p.sense == Sense::minimize);
  CHECK(objective_value(p, Ranking::identity(3)) == Rational(0));
  const auto exhaustive = oracle::solve_exhaustive(p);
  CHECK(exhaustive.objective == Rational(0));

  // Empty matrix: no strict inequalities anywhere.
  const CostProblem p0 = hillside_problem(empty(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(p0.cost(i, j) == Rational(0));

  // 2x2 weighted case, evaluated from the counting formula: both orientations
  // pick up one row and one column violation through the diagonal cells.
  const CostProblem p2 = hillside_problem(from_rows({{0, 2}, {1, 0}}));
  CHECK(p2.cost(0, 1) == Rational(2));
  CHECK(p2.cost(1, 0) == Rational(2));
}

TEST_CASE("hillside objective equals reordered-matrix shape violations") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const bool binary = trial % 2 == 0;
    const DominanceMatrix d =
        make_dominance(oracle::random_matrix(rng, n, 0, 3, binary));
    const CostProblem p = hillside_problem(d);
    for (int k = 0; k < 4; ++k) {
      const Ranking r = oracle::random_ranking(rng, n);
      CHECK(objective_value(p, r) == Rational(oracle::hillside_violations(d.entries, r)));
    }
  }
}

TEST_CASE("k transform: perfect matrix is already rankable") {
  const OptimalSet s = solve_enumerate(k_problem(perfect(4)), 100);
  CHECK(s.objective == Rational(0));
  CHECK(s.rankings == std::vector<Ranking>{Ranking::identity(4)});
  CHECK(s.complete);
}

TEST_CASE("k transform: 3-cycle needs 2 flips, 3 optimal rankings") {
  const DominanceMatrix d = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const CostProblem p = k_problem(d);
  const auto exhaustive = oracle::solve_exhaustive(p);
  CHECK(exhaustive.objective == Rational(2));
  const OptimalSet s = solve_enumerate(p, 100);
  CHECK(s.objective == Rational(2));
  CHECK(s.rankings == std::vector<Ranking>{Ranking{{0, 1, 2}}, Ranking{{1, 2, 0}}, Ranking{{2, 0, 1}}});
  CHECK(same_sets(s.rankings, exhaustive.rankings));
}

TEST_CASE("k transform: empty matrix needs one flip per pair") {
  const auto exhaustive = oracle::solve_exhaustive(k_problem(empty(3)));
  CHECK(exhaustive.objective == Rational(3));
  const OptimalSet s = solve_enumerate(k_problem(empty(3)), 100);
  CHECK(s.objective == Rational(3));
  CHECK(s.rankings.size() == 6);
}

TEST_CASE("k transform rejects weighted matrices") {
  CHECK_THROWS_AS(k_problem(from_rows({{0, 2}, {1, 0}})), std::invalid_argument);
}

TEST_CASE("k objective is bounded by the pair count, zero iff permuted perfect") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const DominanceMatrix d = make_dominance(oracle::random_matrix(rng, n, 0, 1, true));
    const OptimalSet s = solve_enumerate(k_problem(d), 1000);
    CHECK(Rational(0) <= s.objective);
    CHECK(s.objective <= Rational(n * (n - 1) / 2));
    if (s.objective == Rational(0)) {
      // Zero flips: the optimal ranking must reorder D into perfect dominance.
      const Ranking& r = s.rankings.front();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(d.entries(r.order[i], r.order[j]) == Rational(i < j ? 1 : 0));
    }
  }
  // A permuted perfect dominance matrix has k == 0.
  std::mt19937_64 rng2(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng2() % 4);
    const Ranking r = oracle::random_ranking(rng2, n);
    RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m(r.order[i], r.order[j]) = Rational(1);
    CHECK(optimal_value(k_problem(make_dominance(m))) == Rational(0));
  }
}

TEST_CASE("solve_enumerate: empty 3x3 ties all 6 permutations at 0") {
  const OptimalSet s = solve_enumerate(lop_problem(empty(3)), 100);
  CHECK(s.objective == Rational(0));
  CHECK(s.rankings.size() == 6);
  CHECK(s.complete);
  CHECK(std::is_sorted(s.rankings.begin(), s.rankings.end()));
}

TEST_CASE("solve_enumerate: perfect dominance 4x4 has the unique identity optimum") {
  const OptimalSet s = solve_enumerate(lop_problem(perfect(4)), 100);
  CHECK(s.objective == Rational(6));
  CHECK(s.rankings == std::vector<Ranking>{Ranking::identity(4)});
  CHECK(s.complete);
}

TEST_CASE("solve_enumerate: ambiguous block of five yields 5! = 120 optima") {
  const DominanceMatrix d =
      generate({.kind = GenKind::special, .n = 10, .block_begin = 6, .block_end = 10});
  const OptimalSet s = solve_enumerate(lop_problem(d), 10000);
  CHECK(s.rankings.size() == 120);
  CHECK(s.complete);
}

TEST_CASE("solve_enumerate matches exhaustive evaluation on random instances") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);  // n in 3..6
    const bool binary = trial % 2 == 0;
    const DominanceMatrix d = make_dominance(oracle::random_matrix(rng, n, 0, 9, binary));
    for (Method m : {Method::lop, Method::hillside}) {
      const CostProblem p = m == Method::lop ? lop_problem(d) : hillside_problem(d);
      const auto expect = oracle::solve_exhaustive(p);
      const OptimalSet got = solve_enumerate(p, 100000);
      CHECK(got.objective == expect.objective);
      CHECK(got.complete);
      CHECK(same_sets(got.rankings, expect.rankings));
      // Objective consistency: every reported ranking evaluates to the optimum.
      for (const Ranking& r : got.rankings) CHECK(objective_value(p, r) == got.objective);
    }
  }
}

TEST_CASE("a 6x6 random integer matrix matches the full 720-permutation scan") {
  std::mt19937_64 rng(606);
  const DominanceMatrix d = make_dominance(oracle::random_matrix(rng, 6, 0, 9, false));
  const CostProblem p = lop_problem(d);
  const auto expect = oracle::solve_exhaustive(p);
  const OptimalSet got = solve_enumerate(p, 10000);
  CHECK(got.objective == expect.objective);
  CHECK(same_sets(got.rankings, expect.rankings));
}

TEST_CASE("sense duality: minimizing C equals maximizing M - C off-diagonal") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    CostProblem minp;
    minp.cost = oracle::random_matrix(rng, n, 0, 7, false);
    minp.sense = Sense::minimize;
    CostProblem maxp;
    maxp.cost = RationalMatrix::Constant(n, n, Rational(0));
    const Rational big(20);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) maxp.cost(i, j) = big - minp.cost(i, j);
    maxp.sense = Sense::maximize;
    const OptimalSet a = solve_enumerate(minp, 100000);
    const OptimalSet b = solve_enumerate(maxp, 100000);
    CHECK(same_sets(a.rankings, b.rankings));
  }
}

TEST_CASE("cap truncates to the lexicographically first optima and clears complete") {
  // Empty 4x4: all 24 permutations are optimal.
  const CostProblem p = lop_problem(empty(4));
  const auto expect = oracle::solve_exhaustive(p);
  const OptimalSet s = solve_enumerate(p, 10);
  CHECK_FALSE(s.complete);
  CHECK(s.rankings.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(s.rankings[i] == expect.rankings[i]);

  // Exactly at the boundary the set is still complete.
  const OptimalSet exact = solve_enumerate(p, 24);
  CHECK(exact.complete);
  CHECK(exact.rankings.size() == 24);

  CHECK_THROWS_AS(solve_enumerate(p, 0), std::invalid_argument);
}

TEST_CASE("thread count never changes the result") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 3);
    const DominanceMatrix d = make_dominance(oracle::random_matrix(rng, n, 0, 4, trial % 2 == 0));
    const CostProblem p = trial % 2 == 0 ? lop_problem(d) : hillside_problem(d);
    const OptimalSet s1 = solve_enumerate(p, SolveOptions{1000, 1});
    const OptimalSet s4 = solve_enumerate(p, SolveOptions{1000, 4});
    CHECK(s1.objective == s4.objective);
    CHECK(s1.complete == s4.complete);
    CHECK(same_sets(s1.rankings, s4.rankings));
  }
}

TEST_CASE("n = 1 solves trivially") {
  const OptimalSet s = solve_enumerate(lop_problem(empty(1)), 10);
  CHECK(s.objective == Rational(0));
  CHECK(s.rankings == std::vector<Ranking>{Ranking{{0}}});
}
