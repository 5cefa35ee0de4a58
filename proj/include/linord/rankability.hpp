#pragma once

#include <optional>
#include <utility>

#include "linord/lop.hpp"
#include "linord/types.hpp"

namespace linord {

/// Pairwise consensus over an optimal set, in reference-reordered coordinates:
/// values(i,j) for positions i<j is the fraction of optimal rankings placing
/// the item at reference position i above the item at reference position j.
/// Antisymmetric complement: values(i,j) + values(j,i) = 1 off the diagonal.
/// Fractional entries mark where the optima disagree.
struct XStar {
  RationalMatrix values;
  Ranking reference;

  int n() const { return static_cast<int>(values.rows()); }
};

struct SetGeometry {
  int diameter = 0;
  std::pair<Ranking, Ranking> farthest_pair;
  std::optional<std::pair<Ranking, Ranking>> closest_pair;  // distinct rankings; |P| >= 2 only
  Ranking centroid_closest;
  Ranking centroid_farthest;
};

/// Exhaustive pairwise scan over P: Kendall-tau diameter with the farthest
/// and closest pairs, plus the rankings nearest/farthest from the centroid
/// (mean rank vector, squared-distance metric). All ties break to the
/// lexicographically smaller ranking (or pair). The scan splits across
/// threads with a deterministic merge; the result never depends on the
/// thread count.
SetGeometry set_geometry(const OptimalSet& p, int threads = 1);

XStar xstar(const OptimalSet& p, const Ranking& reference);

/// Location-of-indecision measure in [0, 1], lower is better. Each entry's
/// indecision f = 2*min(x, 1-x) is weighted by w(i,j) = (j-i)*(n-i) for
/// 0-based positions i<j: heavier further from the diagonal and nearer the
/// top of the ranking, so top-located ambiguity scores worse than the same
/// ambiguity at the bottom.
Rational beta(const XStar& x);

/// Everything the card pipeline needs from one dominance matrix and method.
struct Analysis {
  Method method = Method::lop;
  OptimalSet optima;
  SetGeometry geometry;
  XStar consensus;
  Measures measures;
};

Analysis analyze(const DominanceMatrix& d, Method method, const SolveOptions& opts = {});

/// Indices of `rankings` ordered by squared distance from the centroid rank
/// vector, nearest first, ties by lexicographic rank order.
std::vector<std::size_t> centroid_order(const std::vector<Ranking>& rankings);

/// Rankability quadruple (k, p, tau, beta). k comes from the k objective and
/// is absent for weighted matrices; p, tau, beta come from the chosen
/// method's optimal set.
Measures measures(const DominanceMatrix& d, Method method, const SolveOptions& opts = {});

}  // namespace linord
