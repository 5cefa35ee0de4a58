#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linord/ratings.hpp"
#include "linord/types.hpp"

namespace linord {

/// One game between named teams, as it appears in the unprocessed data.
struct GameRow {
  std::string team_a;
  long long score_a = 0;
  std::string team_b;
  long long score_b = 0;
};

/// Game CSV: `team_a,score_a,team_b,score_b`, optional leading date column
/// (auto-detected on 5-field rows), optional header row (detected by
/// non-numeric score fields), '#' comment lines. Errors carry row numbers.
std::vector<GameRow> parse_games_csv(std::string_view text);

/// Dominance counts from games: items are the distinct team names in
/// alphabetical order, D(i,j) = number of games i beat j. Draws touch
/// neither cell. Empty input is an error.
DominanceMatrix ingest_games(const std::vector<GameRow>& rows);

/// Index the named rows against the alphabetical team list, for the rating
/// systems. Returns (records, team names).
std::pair<std::vector<GameRecord>, std::vector<std::string>> index_games(
    const std::vector<GameRow>& rows);

/// Feature table: items x features of exact rational values.
struct FeatureTable {
  std::vector<std::string> items;
  std::vector<std::string> feature_names;
  RationalMatrix values;  // rows = items, cols = features
};

/// Feature CSV: header row `name,f1,f2,...`, then one row per item. Ragged
/// rows are an error.
FeatureTable parse_features_csv(std::string_view text);

/// D(i,j) = number of features where i strictly outperforms j, honoring each
/// feature's direction. Items are sorted alphabetically; ties on a feature
/// count for neither side.
DominanceMatrix ingest_features(const FeatureTable& table,
                                const std::vector<bool>& higher_is_better);

/// House matrix format: '#' comment lines, integer n, then n rows of n
/// whitespace-separated rationals. A `# names:<TAB>a<TAB>b...` comment carries
/// optional item labels. Nonzero diagonal entries are forced to 0 with a
/// warning appended to *warnings.
DominanceMatrix parse_matrix(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical serialization of the house format; parse_matrix(write_matrix(d))
/// reproduces d and re-serializes byte-identically.
std::string write_matrix(const DominanceMatrix& d);

}  // namespace linord
