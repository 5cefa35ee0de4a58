#pragma once

#include <cstdint>
#include <string_view>

#include "linord/types.hpp"

namespace linord {

enum class GenKind {
  empty,
  empty_plus_noise,
  connected,
  connected_minus_noise,
  dominance_plus_noise,
  hillside_plus_noise,
  cyclic,
  special,
  simulate_games,
};

std::string_view to_string(GenKind k);
GenKind genkind_from_string(std::string_view s);
bool kind_is_stochastic(GenKind k);

/// Parameters for one artificial instance. Everything, including the seed, is
/// part of the instance identity: equal specs produce bit-identical matrices
/// on every platform and thread count.
struct GenSpec {
  GenKind kind = GenKind::empty;
  int n = 0;
  double percent = 0.0;       // noise percentage of off-diagonal cells, [0,100]
  long long lo = 0;           // noise value bounds, inclusive
  long long hi = 0;
  int block_begin = 0;        // special: ambiguous block, 1-based inclusive
  int block_end = 0;
  double p_upset = 0.0;       // simulate_games
  int games_per_pair = 1;     // simulate_games
  std::uint64_t seed = 0;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

DominanceMatrix generate(const GenSpec& spec);

/// D'(i,j) = 1 iff D(i,j) > D(j,i). Idempotent on its own output.
DominanceMatrix unweighted(const DominanceMatrix& d);

/// Removes round(remove_percent% of nnz) nonzero cells and adds
/// round(add_percent% of zero off-diagonal cells) new unit entries, both
/// sampled without replacement from the input matrix's cells.
DominanceMatrix perturb(const DominanceMatrix& d, double add_percent, double remove_percent,
                        std::uint64_t seed);

}  // namespace linord
