#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "linord/rational.hpp"

namespace linord {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

enum class Sense { maximize, minimize };

std::string_view to_string(Sense s);
Sense sense_from_string(std::string_view s);

/// Permutation of item indices, best item first.
struct Ranking {
  std::vector<int> order;

  Ranking() = default;
  explicit Ranking(std::vector<int> o) : order(std::move(o)) {}

  int size() const { return static_cast<int>(order.size()); }
  bool is_valid() const;
  static Ranking identity(int n);

  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking& a, const Ranking& b) { return a.order <=> b.order; }
};

/// Number of item pairs the two rankings order oppositely. O(n log n).
int kendall_tau(const Ranking& a, const Ranking& b);

/// v[item] = 1-based rank position of item (inverse permutation, 1-indexed).
std::vector<int> rank_vector(const Ranking& r);

/// Inverse of rank_vector; throws std::invalid_argument on a non-permutation.
Ranking from_rank_vector(const std::vector<int>& v);

/// Square nonnegative matrix; entry (i,j) is the strength of "i dominates j"
/// evidence. `weighted` is derived: false exactly when all entries are 0/1.
struct DominanceMatrix {
  RationalMatrix entries;
  std::optional<std::vector<std::string>> item_names;
  bool weighted = false;

  int n() const { return static_cast<int>(entries.rows()); }
};

/// Validates (square, n >= 1, zero diagonal, nonnegative entries, name count)
/// and derives the weighted flag. Throws std::invalid_argument.
DominanceMatrix make_dominance(RationalMatrix entries,
                               std::optional<std::vector<std::string>> item_names = {});

/// Enumerated optimal rankings, lexicographically sorted. `complete` is false
/// only when enumeration stopped at `cap`.
struct OptimalSet {
  Rational objective;
  Sense sense = Sense::minimize;
  std::vector<Ranking> rankings;
  bool complete = true;
  std::uint64_t cap = 0;
};

/// Rankability quadruple. k is absent for weighted matrices (no flip-distance
/// semantics there); r = f(k, p, tau, beta) itself is deliberately not
/// scalarized.
struct Measures {
  std::optional<Rational> k;
  std::uint64_t p = 1;
  int tau = 0;
  Rational beta;
};

}  // namespace linord
