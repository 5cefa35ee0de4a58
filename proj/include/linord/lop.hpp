#pragma once

#include <cstdint>
#include <string_view>

#include "linord/types.hpp"

namespace linord {

/// Linear ordering cost problem over item pairs:
///   objective(r) = sum over positions i < j of cost(r.order[i], r.order[j]).
/// The LOP, hillside, and k objectives are all cost-matrix transforms of a
/// dominance matrix solved by the same enumerator.
struct CostProblem {
  RationalMatrix cost;
  Sense sense = Sense::minimize;

  int n() const { return static_cast<int>(cost.rows()); }
};

enum class Method { lop, hillside, k };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

/// cost = D, maximize: reward dominance placed above the diagonal.
CostProblem lop_problem(const DominanceMatrix& d);

/// cost(i,j) = #{k: D(i,k) < D(j,k)} + #{k: D(k,j) < D(k,i)}, minimize.
/// Summed over a permutation this counts every violation of hillside shape
/// (rows ascending left-to-right, columns descending top-to-bottom) in the
/// reordered matrix.
CostProblem hillside_problem(const DominanceMatrix& d);

/// cost(i,j) = [D(i,j)==0] + [D(j,i)==1], minimize. Optimal value equals the
/// minimum number of 0/1 entry flips turning D into a perfect dominance
/// matrix consistent with some ranking. Binary matrices only; throws
/// std::invalid_argument for weighted input (binarize first via unweighted()).
CostProblem k_problem(const DominanceMatrix& d);

Rational objective_value(const CostProblem& p, const Ranking& r);

struct SolveOptions {
  std::uint64_t cap = 10000;
  int threads = 1;
};

/// Exact optimal value plus every optimal permutation (up to cap), found by
/// depth-first branch and bound over prefix assignments with an admissible
/// pair-minimum bound. Output is lexicographically sorted and is a pure
/// function of (problem, cap) — thread count never changes a byte.
OptimalSet solve_enumerate(const CostProblem& p, const SolveOptions& opts = {});
OptimalSet solve_enumerate(const CostProblem& p, std::uint64_t cap);

/// Optimal value only (no enumeration pass).
Rational optimal_value(const CostProblem& p, int threads = 1);

}  // namespace linord
