#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "linord/types.hpp"

namespace linord {

struct GameRecord {
  int team_a = 0;
  long long score_a = 0;
  int team_b = 0;
  long long score_b = 0;
};

/// Ratings plus derived artifacts. Solves are exact rational Gaussian
/// elimination when they fit in 64-bit rationals (always, at desk scale);
/// otherwise an Eigen double solve with a 1e-9 residual check. `exact`
/// records which path ran; the *_exact members are empty on the float path.
struct RatingResult {
  Eigen::VectorXd ratings;
  std::vector<Rational> ratings_exact;
  bool exact = false;
  Ranking ranking;  // by descending rating, ties broken by item index
  Eigen::MatrixXd ystar;
  RationalMatrix ystar_exact;
  std::vector<Ranking> pseudo_optimal;
};

/// Massey: M r = p with M(i,i) = games played, M(i,j) = -(games between i,j),
/// p(i) = total point differential; last row replaced by ones with rhs 0, so
/// ratings sum to 0. Requires n >= 2 and a connected game graph.
RatingResult massey(const std::vector<GameRecord>& games, int n, std::uint64_t cap = 10000);

/// Colley: C r = b with C(i,i) = 2 + games played, C(i,j) = -(games between
/// i,j), b(i) = 1 + (wins - losses)/2. Ratings sum to n/2; margins never
/// matter, only win/loss. Requires n >= 2.
RatingResult colley(const std::vector<GameRecord>& games, int n, std::uint64_t cap = 10000);

/// Y*(i,j) = 1/2 + (r_i - r_j) / (2 (max - min)), clipped to [0,1]; all 1/2
/// when the ratings are flat; zero diagonal.
Eigen::MatrixXd ystar_from_ratings(const Eigen::VectorXd& ratings);
RationalMatrix ystar_from_ratings(const std::vector<Rational>& ratings);

/// Rankings compatible with the ratings up to epsilon: items whose ratings
/// chain within epsilon form tie blocks (transitive closure) and every
/// within-block order is emitted, lexicographically sorted, capped.
std::vector<Ranking> pseudo_optimal_set(const std::vector<Rational>& ratings,
                                        const Rational& epsilon, std::uint64_t cap = 10000);
std::vector<Ranking> pseudo_optimal_set(const Eigen::VectorXd& ratings, double epsilon,
                                        std::uint64_t cap = 10000);

}  // namespace linord
