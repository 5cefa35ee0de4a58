#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "linord/modelcard.hpp"

namespace linord {

/// Pixel plot of the card's reordered X* matrix as standalone SVG 1.1: an
/// n-by-n grid, cell darkness proportional to the X* value; fractional cells
/// (strictly between 0 and 1) are tinted and tagged data-frac="1" so
/// disagreement locations stand out. Requires card.xstar.
std::string pixel_plot_svg(const ModelCard& card);

/// Spaghetti plot comparing two rankings: item labels in two columns, one
/// line per item connecting its positions. Equal positions draw horizontal
/// lines.
std::string spaghetti_svg(const ModelCard& card, const Ranking& left, const Ranking& right);

/// Resolves a --pair selector against the card: "farthest" (default),
/// "closest", or "A,B" indices into optimal_rankings.
std::pair<Ranking, Ranking> select_pair(const ModelCard& card, std::string_view selector);

}  // namespace linord
