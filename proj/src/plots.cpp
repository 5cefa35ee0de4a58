#include "linord/plots.hpp"

#include <stdexcept>

namespace linord {

namespace {

constexpr int kCell = 14;    // pixel-plot cell size, including a 1px gutter
constexpr int kRow = 22;     // spaghetti row height
constexpr int kLabelW = 140; // spaghetti label column width
constexpr int kSpan = 260;   // spaghetti line span

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// round(255 * v) with exact rational arithmetic.
int shade255(const Rational& v) {
  const __int128 scaled = static_cast<__int128>(v.num()) * 255 * 2 + v.den();
  return static_cast<int>(scaled / (static_cast<__int128>(v.den()) * 2));
}

std::string item_label(const ModelCard& card, int item) {
  if (card.item_names) return (*card.item_names)[static_cast<std::size_t>(item)];
  return "item " + std::to_string(item);
}

std::string svg_open(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
}

}  // namespace

std::string pixel_plot_svg(const ModelCard& card) {
  if (!card.xstar) throw std::runtime_error("card has no xstar matrix to plot");
  const int n = card.n;
  const int size = n * kCell + 1;
  std::string svg = svg_open(size, size);
  svg += "<rect width=\"" + std::to_string(size) + "\" height=\"" + std::to_string(size) +
         "\" fill=\"#ffffff\"/>\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& v = card.xstar->values(i, j);
      const bool fractional = !v.is_zero() && v < Rational(1);
      std::string fill;
      if (fractional) {
        // Tint disagreements: interpolate white -> crimson by the value.
        const int s = shade255(v);
        fill = "rgb(255," + std::to_string(255 - s * 235 / 255) + "," +
               std::to_string(255 - s * 195 / 255) + ")";
      } else {
        const int s = 255 - shade255(v);  // 1 -> black, 0 -> white
        fill = "rgb(" + std::to_string(s) + "," + std::to_string(s) + "," + std::to_string(s) + ")";
      }
      svg += "<rect x=\"" + std::to_string(j * kCell + 1) + "\" y=\"" +
             std::to_string(i * kCell + 1) + "\" width=\"" + std::to_string(kCell - 1) +
             "\" height=\"" + std::to_string(kCell - 1) + "\" fill=\"" + fill + "\"";
      if (fractional) svg += " data-frac=\"1\"";
      svg += "/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

std::string spaghetti_svg(const ModelCard& card, const Ranking& left, const Ranking& right) {
  const int n = card.n;
  if (left.size() != n || right.size() != n)
    throw std::runtime_error("spaghetti rankings must match the card's n");
  const int width = 2 * kLabelW + kSpan;
  const int height = n * kRow + kRow;
  const std::vector<int> pos_left = rank_vector(left);
  const std::vector<int> pos_right = rank_vector(right);

  std::string svg = svg_open(width, height);
  svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"#ffffff\"/>\n";
  const int x1 = kLabelW;
  const int x2 = kLabelW + kSpan;
  for (int item = 0; item < n; ++item) {
    const int y1 = pos_left[static_cast<std::size_t>(item)] * kRow;
    const int y2 = pos_right[static_cast<std::size_t>(item)] * kRow;
    svg += "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(y1) + "\" x2=\"" +
           std::to_string(x2) + "\" y2=\"" + std::to_string(y2) +
           "\" stroke=\"#555555\" stroke-width=\"2\"/>\n";
  }
  for (int p = 0; p < n; ++p) {
    const int y = (p + 1) * kRow;
    svg += "<text x=\"" + std::to_string(kLabelW - 6) + "\" y=\"" + std::to_string(y + 5) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(item_label(card, left.order[static_cast<std::size_t>(p)])) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kLabelW + kSpan + 6) + "\" y=\"" + std::to_string(y + 5) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(item_label(card, right.order[static_cast<std::size_t>(p)])) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::pair<Ranking, Ranking> select_pair(const ModelCard& card, std::string_view selector) {
  if (selector.empty() || selector == "farthest")
    return {from_rank_vector(card.farthest_pair.first),
            from_rank_vector(card.farthest_pair.second)};
  if (selector == "closest") {
    if (!card.closest_pair)
      throw std::runtime_error("card has no closest pair (only one optimal ranking)");
    return {from_rank_vector(card.closest_pair->first),
            from_rank_vector(card.closest_pair->second)};
  }
  const auto comma = selector.find(',');
  if (comma == std::string_view::npos)
    throw std::runtime_error("pair selector must be 'farthest', 'closest', or 'A,B' indices");
  int a = 0, b = 0;
  try {
    a = std::stoi(std::string(selector.substr(0, comma)));
    b = std::stoi(std::string(selector.substr(comma + 1)));
  } catch (const std::exception&) {
    throw std::runtime_error("pair selector indices must be integers");
  }
  const int count = static_cast<int>(card.optimal_rankings.size());
  if (a < 0 || a >= count || b < 0 || b >= count)
    throw std::runtime_error("pair selector index out of range (stored rankings: " +
                             std::to_string(count) + ")");
  return {from_rank_vector(card.optimal_rankings[static_cast<std::size_t>(a)]),
          from_rank_vector(card.optimal_rankings[static_cast<std::size_t>(b)])};
}

}  // namespace linord
