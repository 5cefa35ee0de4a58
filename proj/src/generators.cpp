#include "linord/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linord/rng.hpp"

namespace linord {

namespace {

// Stream tag namespaces (see rng.hpp for the derivation contract).
constexpr std::uint64_t kTagSelect = 1;  // cell-selection shuffles
constexpr std::uint64_t kTagValue = 2;   // per-cell noise values
constexpr std::uint64_t kTagGames = 3;   // per-pair game simulation
constexpr std::uint64_t kTagRemove = 4;  // perturb: removal shuffle
constexpr std::uint64_t kTagAdd = 5;     // perturb: addition shuffle

std::uint64_t cell_tag(std::uint64_t ns, std::uint64_t index) { return (ns << 48) | index; }

std::size_t round_half_up(double percent, std::size_t cells) {
  return static_cast<std::size_t>(std::floor(percent * static_cast<double>(cells) / 100.0 + 0.5));
}

std::vector<std::pair<int, int>> off_diagonal_cells(int n) {
  std::vector<std::pair<int, int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  return cells;
}

// First round(percent% of cells) cells of a seeded Fisher-Yates shuffle.
std::vector<std::pair<int, int>> pick_cells(std::vector<std::pair<int, int>> cells, double percent,
                                            std::uint64_t seed, std::uint64_t tag) {
  const std::size_t take = round_half_up(percent, cells.size());
  SplitMix64 g = stream(seed, tag);
  fisher_yates(g, cells);
  cells.resize(take);
  return cells;
}

long long cell_value(const GenSpec& spec, int i, int j) {
  SplitMix64 g = stream(spec.seed, cell_tag(kTagValue, static_cast<std::uint64_t>(i) *
                                                           static_cast<std::uint64_t>(spec.n) +
                                                       static_cast<std::uint64_t>(j)));
  return uniform_int(g, spec.lo, spec.hi);
}

RationalMatrix zeros(int n) { return RationalMatrix::Constant(n, n, Rational(0)); }

RationalMatrix perfect_dominance(int n) {
  RationalMatrix m = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = Rational(1);
  return m;
}

void validate(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generator needs n >= 1");
  switch (spec.kind) {
    case GenKind::empty_plus_noise:
    case GenKind::connected_minus_noise:
    case GenKind::dominance_plus_noise:
    case GenKind::hillside_plus_noise:
      if (!(spec.percent >= 0.0 && spec.percent <= 100.0))
        throw std::invalid_argument("percent must be in [0, 100]");
      break;
    default: break;
  }
  switch (spec.kind) {
    case GenKind::empty_plus_noise:
    case GenKind::hillside_plus_noise:
      if (spec.lo > spec.hi) throw std::invalid_argument("noise bounds need lo <= hi");
      if (spec.lo < 0) throw std::invalid_argument("noise bounds must be nonnegative");
      break;
    case GenKind::special:
      if (spec.block_begin < 1 || spec.block_begin > spec.block_end || spec.block_end > spec.n)
        throw std::invalid_argument("special needs 1 <= block_begin <= block_end <= n");
      break;
    case GenKind::simulate_games:
      if (!(spec.p_upset >= 0.0 && spec.p_upset <= 1.0))
        throw std::invalid_argument("p_upset must be in [0, 1]");
      if (spec.games_per_pair < 1) throw std::invalid_argument("games_per_pair must be >= 1");
      break;
    default: break;
  }
}

}  // namespace

std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::empty: return "empty";
    case GenKind::empty_plus_noise: return "empty_plus_noise";
    case GenKind::connected: return "connected";
    case GenKind::connected_minus_noise: return "connected_minus_noise";
    case GenKind::dominance_plus_noise: return "dominance_plus_noise";
    case GenKind::hillside_plus_noise: return "hillside_plus_noise";
    case GenKind::cyclic: return "cyclic";
    case GenKind::special: return "special";
    case GenKind::simulate_games: return "simulate_games";
  }
  throw std::logic_error("bad generator kind");
}

GenKind genkind_from_string(std::string_view s) {
  for (GenKind k : {GenKind::empty, GenKind::empty_plus_noise, GenKind::connected,
                    GenKind::connected_minus_noise, GenKind::dominance_plus_noise,
                    GenKind::hillside_plus_noise, GenKind::cyclic, GenKind::special,
                    GenKind::simulate_games})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

bool kind_is_stochastic(GenKind k) {
  switch (k) {
    case GenKind::empty_plus_noise:
    case GenKind::connected_minus_noise:
    case GenKind::dominance_plus_noise:
    case GenKind::hillside_plus_noise:
    case GenKind::simulate_games:
      return true;
    default:
      return false;
  }
}

DominanceMatrix generate(const GenSpec& spec) {
  validate(spec);
  const int n = spec.n;
  RationalMatrix m;

  switch (spec.kind) {
    case GenKind::empty:
      m = zeros(n);
      break;

    case GenKind::connected:
      m = zeros(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) m(i, j) = Rational(1);
      break;

    case GenKind::empty_plus_noise: {
      m = zeros(n);
      for (auto [i, j] : pick_cells(off_diagonal_cells(n), spec.percent, spec.seed, kTagSelect))
        m(i, j) = Rational(cell_value(spec, i, j));
      break;
    }

    case GenKind::connected_minus_noise: {
      m = zeros(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) m(i, j) = Rational(1);
      for (auto [i, j] : pick_cells(off_diagonal_cells(n), spec.percent, spec.seed, kTagSelect))
        m(i, j) = Rational(0);
      break;
    }

    case GenKind::dominance_plus_noise: {
      m = perfect_dominance(n);
      for (auto [i, j] : pick_cells(off_diagonal_cells(n), spec.percent, spec.seed, kTagSelect))
        m(i, j) = m(i, j).is_zero() ? Rational(1) : Rational(0);  // flip
      break;
    }

    case GenKind::hillside_plus_noise: {
      m = zeros(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = Rational(j - i);
      for (auto [i, j] : pick_cells(off_diagonal_cells(n), spec.percent, spec.seed, kTagSelect))
        m(i, j) = Rational(cell_value(spec, i, j));
      break;
    }

    case GenKind::cyclic:
      m = zeros(n);
      if (n > 1)
        for (int i = 0; i < n; ++i) m(i, (i + 1) % n) = Rational(1);
      break;

    case GenKind::special: {
      // Perfect dominance with the block rows/columns made mutually blank, so
      // every within-block order is optimal: (block size)! optima in total.
      m = perfect_dominance(n);
      const int b = spec.block_begin - 1;
      const int e = spec.block_end - 1;
      for (int i = b; i <= e; ++i)
        for (int j = b; j <= e; ++j)
          if (i != j) m(i, j) = Rational(0);
      break;
    }

    case GenKind::simulate_games: {
      m = zeros(n);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          SplitMix64 g = stream(spec.seed,
                                cell_tag(kTagGames, static_cast<std::uint64_t>(i) *
                                                        static_cast<std::uint64_t>(n) +
                                                    static_cast<std::uint64_t>(j)));
          long long wins_i = 0, wins_j = 0;
          for (int game = 0; game < spec.games_per_pair; ++game) {
            // Ground truth 0 > 1 > ... > n-1: i is the better team here.
            if (uniform01(g) < spec.p_upset) ++wins_j;
            else ++wins_i;
          }
          m(i, j) = Rational(wins_i);
          m(j, i) = Rational(wins_j);
        }
      }
      break;
    }
  }

  return make_dominance(std::move(m));
}

DominanceMatrix unweighted(const DominanceMatrix& d) {
  const int n = d.n();
  RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && d.entries(j, i) < d.entries(i, j)) m(i, j) = Rational(1);
  return make_dominance(std::move(m), d.item_names);
}

DominanceMatrix perturb(const DominanceMatrix& d, double add_percent, double remove_percent,
                        std::uint64_t seed) {
  if (!(add_percent >= 0.0 && add_percent <= 100.0) ||
      !(remove_percent >= 0.0 && remove_percent <= 100.0))
    throw std::invalid_argument("perturb percentages must be in [0, 100]");
  const int n = d.n();
  RationalMatrix m = d.entries;

  std::vector<std::pair<int, int>> nonzero, zero;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      (m(i, j).is_zero() ? zero : nonzero).emplace_back(i, j);
    }
  }
  for (auto [i, j] : pick_cells(std::move(nonzero), remove_percent, seed, kTagRemove))
    m(i, j) = Rational(0);
  for (auto [i, j] : pick_cells(std::move(zero), add_percent, seed, kTagAdd))
    m(i, j) = Rational(1);
  return make_dominance(std::move(m), d.item_names);
}

}  // namespace linord
