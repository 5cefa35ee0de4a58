#include "linord/ratings.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace linord {

namespace {

void validate_games(const std::vector<GameRecord>& games, int n) {
  if (n < 2) throw std::invalid_argument("rating systems need n >= 2");
  for (std::size_t g = 0; g < games.size(); ++g) {
    const GameRecord& game = games[g];
    if (game.team_a < 0 || game.team_a >= n || game.team_b < 0 || game.team_b >= n)
      throw std::invalid_argument("game " + std::to_string(g) + " references an unknown team");
    if (game.team_a == game.team_b)
      throw std::invalid_argument("game " + std::to_string(g) + " has a team playing itself");
    if (game.score_a < 0 || game.score_b < 0)
      throw std::invalid_argument("game " + std::to_string(g) + " has a negative score");
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool connected(const std::vector<GameRecord>& games, int n) {
  UnionFind uf(n);
  for (const auto& g : games) uf.unite(g.team_a, g.team_b);
  const int root = uf.find(0);
  for (int i = 1; i < n; ++i)
    if (uf.find(i) != root) return false;
  return true;
}

std::vector<Rational> solve_exact(RationalMatrix a, RationalVector b) {
  const int n = static_cast<int>(a.rows());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero() && (piv < 0 || abs(a(piv, col)) < abs(a(r, col)))) piv = r;
    if (piv < 0) throw std::runtime_error("singular linear system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(b(col), b(piv));
    }
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      b(r) -= factor * b(col);
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    Rational acc = b(r);
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = acc / a(r, r);
  }
  return x;
}

Eigen::VectorXd solve_float(const RationalMatrix& a, const RationalVector& b) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd ad(n, n);
  Eigen::VectorXd bd(n);
  for (int i = 0; i < n; ++i) {
    bd(i) = b(i).to_double();
    for (int j = 0; j < n; ++j) ad(i, j) = a(i, j).to_double();
  }
  Eigen::VectorXd x = ad.partialPivLu().solve(bd);
  const double residual = (ad * x - bd).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9)) throw std::runtime_error("linear solve residual exceeds 1e-9");
  return x;
}

constexpr int kExactSolveLimit = 128;

Ranking ranking_from_exact(const std::vector<Rational>& ratings) {
  Ranking r = Ranking::identity(static_cast<int>(ratings.size()));
  std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    return ratings[static_cast<std::size_t>(b)] < ratings[static_cast<std::size_t>(a)];
  });
  return r;
}

Ranking ranking_from_double(const Eigen::VectorXd& ratings) {
  Ranking r = Ranking::identity(static_cast<int>(ratings.size()));
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](int a, int b) { return ratings(b) < ratings(a); });
  return r;
}

RatingResult finish(RationalMatrix a, RationalVector b, std::uint64_t cap) {
  const int n = static_cast<int>(a.rows());
  RatingResult res;
  if (n <= kExactSolveLimit) {
    try {
      res.ratings_exact = solve_exact(a, b);
      res.exact = true;
    } catch (const std::overflow_error&) {
      res.exact = false;  // fall through to the float path
    }
  }
  if (res.exact) {
    res.ratings.resize(n);
    for (int i = 0; i < n; ++i) res.ratings(i) = res.ratings_exact[static_cast<std::size_t>(i)].to_double();
    res.ranking = ranking_from_exact(res.ratings_exact);
    res.ystar_exact = ystar_from_ratings(res.ratings_exact);
    res.ystar.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) res.ystar(i, j) = res.ystar_exact(i, j).to_double();
    res.pseudo_optimal = pseudo_optimal_set(res.ratings_exact, Rational(0), cap);
  } else {
    res.ratings = solve_float(a, b);
    res.ranking = ranking_from_double(res.ratings);
    res.ystar = ystar_from_ratings(res.ratings);
    res.pseudo_optimal = pseudo_optimal_set(res.ratings, 1e-9, cap);
  }
  return res;
}

// Tie blocks by chaining: items sorted by descending rating; a gap <= epsilon
// joins the block (transitive closure on the line).
template <typename Value, typename Less>
std::vector<std::vector<int>> tie_blocks(const std::vector<int>& sorted, const Value* ratings,
                                         const Value& epsilon, Less less) {
  std::vector<std::vector<int>> blocks;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const int item = sorted[i];
    if (i == 0) {
      blocks.push_back({item});
      continue;
    }
    const Value gap = ratings[sorted[i - 1]] - ratings[item];
    if (less(epsilon, gap)) {
      blocks.push_back({item});
    } else {
      blocks.back().push_back(item);
    }
  }
  return blocks;
}

std::vector<Ranking> expand_blocks(std::vector<std::vector<int>> blocks, int n, std::uint64_t cap) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::vector<Ranking> out;
  // Odometer over within-block permutations, last block fastest, so the
  // emitted sequence is in ascending lexicographic order.
  while (out.size() < cap) {
    Ranking r;
    r.order.reserve(static_cast<std::size_t>(n));
    for (const auto& b : blocks) r.order.insert(r.order.end(), b.begin(), b.end());
    out.push_back(std::move(r));
    int i = static_cast<int>(blocks.size()) - 1;
    while (i >= 0 && !std::next_permutation(blocks[static_cast<std::size_t>(i)].begin(),
                                            blocks[static_cast<std::size_t>(i)].end()))
      --i;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

RatingResult massey(const std::vector<GameRecord>& games, int n, std::uint64_t cap) {
  validate_games(games, n);
  if (!connected(games, n))
    throw std::invalid_argument("massey requires a connected game schedule");

  RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
  RationalVector p = RationalVector::Constant(n, Rational(0));
  for (const auto& g : games) {
    m(g.team_a, g.team_a) += 1;
    m(g.team_b, g.team_b) += 1;
    m(g.team_a, g.team_b) -= 1;
    m(g.team_b, g.team_a) -= 1;
    const Rational diff(g.score_a - g.score_b);
    p(g.team_a) += diff;
    p(g.team_b) -= diff;
  }
  // Standard full-rank fix: replace the last equation by sum(r) = 0.
  for (int j = 0; j < n; ++j) m(n - 1, j) = Rational(1);
  p(n - 1) = Rational(0);
  return finish(std::move(m), std::move(p), cap);
}

RatingResult colley(const std::vector<GameRecord>& games, int n, std::uint64_t cap) {
  validate_games(games, n);
  RationalMatrix c = RationalMatrix::Constant(n, n, Rational(0));
  RationalVector b = RationalVector::Constant(n, Rational(1));
  for (int i = 0; i < n; ++i) c(i, i) = Rational(2);
  const Rational half(1, 2);
  for (const auto& g : games) {
    c(g.team_a, g.team_a) += 1;
    c(g.team_b, g.team_b) += 1;
    c(g.team_a, g.team_b) -= 1;
    c(g.team_b, g.team_a) -= 1;
    if (g.score_a > g.score_b) {
      b(g.team_a) += half;
      b(g.team_b) -= half;
    } else if (g.score_b > g.score_a) {
      b(g.team_b) += half;
      b(g.team_a) -= half;
    }
    // Drawn games count as played but move no wins.
  }
  return finish(std::move(c), std::move(b), cap);
}

RationalMatrix ystar_from_ratings(const std::vector<Rational>& ratings) {
  const int n = static_cast<int>(ratings.size());
  if (n < 2) throw std::invalid_argument("ystar needs n >= 2");
  RationalMatrix y = RationalMatrix::Constant(n, n, Rational(0));
  const Rational lo = *std::min_element(ratings.begin(), ratings.end());
  const Rational hi = *std::max_element(ratings.begin(), ratings.end());
  const Rational half(1, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (hi == lo) {
        y(i, j) = half;
        continue;
      }
      Rational v = half + (ratings[static_cast<std::size_t>(i)] -
                           ratings[static_cast<std::size_t>(j)]) /
                              (Rational(2) * (hi - lo));
      if (v < Rational(0)) v = Rational(0);
      if (Rational(1) < v) v = Rational(1);
      y(i, j) = v;
    }
  }
  return y;
}

Eigen::MatrixXd ystar_from_ratings(const Eigen::VectorXd& ratings) {
  const int n = static_cast<int>(ratings.size());
  if (n < 2) throw std::invalid_argument("ystar needs n >= 2");
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  const double lo = ratings.minCoeff();
  const double hi = ratings.maxCoeff();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (hi == lo) {
        y(i, j) = 0.5;
        continue;
      }
      y(i, j) = std::clamp(0.5 + (ratings(i) - ratings(j)) / (2.0 * (hi - lo)), 0.0, 1.0);
    }
  }
  return y;
}

std::vector<Ranking> pseudo_optimal_set(const std::vector<Rational>& ratings,
                                        const Rational& epsilon, std::uint64_t cap) {
  if (epsilon < Rational(0)) throw std::invalid_argument("epsilon must be >= 0");
  const Ranking sorted = ranking_from_exact(ratings);
  auto blocks = tie_blocks(sorted.order, ratings.data(), epsilon,
                           [](const Rational& a, const Rational& b) { return a < b; });
  return expand_blocks(std::move(blocks), static_cast<int>(ratings.size()), cap);
}

std::vector<Ranking> pseudo_optimal_set(const Eigen::VectorXd& ratings, double epsilon,
                                        std::uint64_t cap) {
  if (!(epsilon >= 0)) throw std::invalid_argument("epsilon must be >= 0");
  const Ranking sorted = ranking_from_double(ratings);
  auto blocks = tie_blocks(sorted.order, ratings.data(), epsilon,
                           [](double a, double b) { return a < b; });
  return expand_blocks(std::move(blocks), static_cast<int>(ratings.size()), cap);
}

}  // namespace linord
