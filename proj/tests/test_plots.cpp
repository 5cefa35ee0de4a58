#include <doctest.h>

#include <random>

#include "linord/generators.hpp"
#include "linord/plots.hpp"
#include "oracle.hpp"

using namespace linord;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++count;
  return count;
}

ModelCard card_for(const DominanceMatrix& d, Method m = Method::lop) {
  return build_card(d, analyze(d, m), 1, "test");
}

}  // namespace

TEST_CASE("pixel plot of a unique optimum has a saturated upper triangle") {
  const DominanceMatrix d =
      generate({.kind = GenKind::dominance_plus_noise, .n = 4, .percent = 0.0, .seed = 0});
  const ModelCard card = card_for(d);
  REQUIRE(card.num_optimal_rankings == 1);
  const std::string svg = pixel_plot_svg(card);
  CHECK(svg.find("<svg") == 0);
  CHECK(count_occurrences(svg, "<rect") == 16 + 1);  // n^2 cells plus background
  CHECK(count_occurrences(svg, "data-frac") == 0);
  // 6 above-diagonal cells fully saturated black.
  CHECK(count_occurrences(svg, "rgb(0,0,0)") == 6);
}

TEST_CASE("pixel plot marks fractional consensus cells") {
  const DominanceMatrix d =
      generate({.kind = GenKind::special, .n = 6, .block_begin = 4, .block_end = 6});
  const ModelCard card = card_for(d);
  REQUIRE(card.num_optimal_rankings == 6);
  const std::string svg = pixel_plot_svg(card);
  // The 3-item block contributes 3 fractional pairs, i.e. 6 off-diagonal cells.
  CHECK(count_occurrences(svg, "data-frac=\"1\"") == 6);
}

TEST_CASE("pixel plot requires xstar") {
  ModelCard card = card_for(generate({.kind = GenKind::empty, .n = 3}));
  card.xstar.reset();
  CHECK_THROWS(pixel_plot_svg(card));
}

TEST_CASE("spaghetti of a ranking against itself is all horizontal") {
  const ModelCard card = card_for(generate({.kind = GenKind::empty, .n = 4}));
  const Ranking r = Ranking::identity(4);
  const std::string svg = spaghetti_svg(card, r, r);
  CHECK(count_occurrences(svg, "<line") == 4);
  // Every line's y1 equals its y2.
  std::size_t at = 0;
  while ((at = svg.find("y1=\"", at)) != std::string::npos) {
    const std::size_t end1 = svg.find('"', at + 4);
    const std::string y1 = svg.substr(at + 4, end1 - at - 4);
    const std::size_t y2at = svg.find("y2=\"", end1);
    const std::size_t end2 = svg.find('"', y2at + 4);
    CHECK(svg.substr(y2at + 4, end2 - y2at - 4) == y1);
    at = end1;
  }
}

TEST_CASE("spaghetti of the farthest pair crosses only inside the ambiguous block") {
  const DominanceMatrix d =
      generate({.kind = GenKind::special, .n = 10, .block_begin = 6, .block_end = 10});
  const ModelCard card = card_for(d);
  const auto [left, right] = select_pair(card, "farthest");
  CHECK(kendall_tau(left, right) == card.diameter);
  const std::vector<int> pl = rank_vector(left);
  const std::vector<int> pr = rank_vector(right);
  for (int item = 0; item < 5; ++item) CHECK(pl[item] == pr[item]);  // outside the block
  int moved = 0;
  for (int item = 5; item < 10; ++item)
    if (pl[item] != pr[item]) ++moved;
  CHECK(moved > 0);
  const std::string svg = spaghetti_svg(card, left, right);
  CHECK(count_occurrences(svg, "<line") == 10);
}

TEST_CASE("item names appear escaped in spaghetti labels") {
  RationalMatrix m = RationalMatrix::Constant(2, 2, Rational(0));
  m(0, 1) = Rational(1);
  const DominanceMatrix d = make_dominance(m, std::vector<std::string>{"A&M", "B<C>"});
  const ModelCard card = card_for(d);
  const auto [left, right] = select_pair(card, "");
  const std::string svg = spaghetti_svg(card, left, right);
  CHECK(svg.find("A&amp;M") != std::string::npos);
  CHECK(svg.find("B&lt;C&gt;") != std::string::npos);
  CHECK(svg.find("A&M") == std::string::npos);
}

TEST_CASE("pair selectors resolve against the card") {
  const ModelCard card = card_for(generate({.kind = GenKind::empty, .n = 3}));
  REQUIRE(card.optimal_rankings.size() == 6);

  const auto far = select_pair(card, "farthest");
  CHECK(kendall_tau(far.first, far.second) == 3);

  const auto close = select_pair(card, "closest");
  CHECK(kendall_tau(close.first, close.second) == 1);

  const auto manual = select_pair(card, "0,0");
  CHECK(manual.first == manual.second);

  CHECK_THROWS(select_pair(card, "0,99"));
  CHECK_THROWS(select_pair(card, "nonsense"));
  CHECK_THROWS(select_pair(card, "1,x"));

  ModelCard singleton = card_for(generate(
      {.kind = GenKind::dominance_plus_noise, .n = 3, .percent = 0.0, .seed = 0}));
  CHECK_THROWS(select_pair(singleton, "closest"));
}
