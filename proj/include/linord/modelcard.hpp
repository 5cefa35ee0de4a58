#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linord/generators.hpp"
#include "linord/rankability.hpp"
#include "linord/types.hpp"

namespace linord {

/// At most this many rankings are stored in a card; larger sets keep the
/// centroid-nearest ones and record the full count in num_optimal_rankings.
inline constexpr std::uint64_t kCardRankingCap = 1000;

struct XStarCard {
  std::vector<int> reference;  // 1-based rank vector of the reference ranking
  bool estimated = false;      // true when the optimal set enumeration was capped
  RationalMatrix values;
};

struct CardMeasures {
  std::optional<Rational> k;
  std::uint64_t p = 1;
  int tau = 0;
  Rational beta;
};

/// Canonical JSON record of an instance plus all computed outputs. Every
/// ranking is stored as a 1-based rank vector (entry i = rank position of
/// item i). `complete` refers to the stored list: true exactly when
/// optimal_rankings holds the entire optimal set.
struct ModelCard {
  int schema_version = 1;
  long long dataset_id = 0;
  std::string source;
  int n = 0;
  std::optional<std::vector<std::string>> item_names;
  RationalMatrix D;
  bool weighted = false;  // derived from D, never serialized
  Method method = Method::lop;
  Sense sense = Sense::maximize;
  Rational optimal_objective;
  std::uint64_t num_optimal_rankings = 1;
  bool complete = true;
  std::vector<std::vector<int>> optimal_rankings;
  int diameter = 0;
  std::pair<std::vector<int>, std::vector<int>> farthest_pair;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> closest_pair;
  std::vector<int> centroid_solution;
  std::vector<int> centroid_farthest;
  CardMeasures measures;
  std::optional<XStarCard> xstar;
  std::optional<GenSpec> genspec;
};

bool operator==(const XStarCard& a, const XStarCard& b);
bool operator==(const CardMeasures& a, const CardMeasures& b);
bool operator==(const ModelCard& a, const ModelCard& b);

/// Canonical JSON text: fixed key order, 2-space indent, integers as JSON
/// integers, non-integer rationals as exact "p/q" strings, trailing newline.
/// Identical cards serialize to identical bytes on every platform.
std::string emit(const ModelCard& card);

/// Strict parse: schema violations and unknown fields raise std::runtime_error
/// naming the offending JSON path (e.g. "$.measures.p").
ModelCard parse(std::string_view text);

struct Catalog {
  std::vector<ModelCard> cards;       // sorted by dataset_id
  std::vector<std::string> warnings;  // one per unparseable file
};

/// Loads every *.json card in the directory. Parse failures become warnings,
/// not errors; an unreadable directory throws.
Catalog load_catalog(const std::filesystem::path& dir);

/// Assembles a card from an analyzed instance, applying the storage cap.
ModelCard build_card(const DominanceMatrix& d, const Analysis& analysis, long long dataset_id,
                     const std::string& source, const std::optional<GenSpec>& provenance = {});

}  // namespace linord
