#include "linord/ingest.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace linord {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool parse_score(const std::string& field, long long* out) {
  if (field.empty()) return false;
  std::size_t i = 0;
  long long v = 0;
  for (; i < field.size(); ++i) {
    char c = field[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v < 0) return false;
  }
  *out = v;
  return true;
}

std::vector<int> alphabetical_index(const std::vector<std::string>& names) {
  std::vector<int> idx(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return names[a] < names[b]; });
  return idx;
}

}  // namespace

std::vector<GameRow> parse_games_csv(std::string_view text) {
  std::vector<GameRow> rows;
  bool first_data_row = true;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> fields = split_csv(stripped);
    if (fields.size() == 5) fields.erase(fields.begin());  // leading date column
    if (fields.size() != 4)
      throw std::runtime_error("games row " + std::to_string(line_no) + ": expected 4 fields (" +
                               "team_a,score_a,team_b,score_b), got " +
                               std::to_string(fields.size()));
    GameRow row;
    row.team_a = fields[0];
    row.team_b = fields[2];
    const bool scores_ok =
        parse_score(fields[1], &row.score_a) && parse_score(fields[3], &row.score_b);
    if (!scores_ok) {
      if (first_data_row) {
        first_data_row = false;  // header row
        continue;
      }
      throw std::runtime_error("games row " + std::to_string(line_no) +
                               ": scores must be nonnegative integers");
    }
    if (row.team_a.empty() || row.team_b.empty())
      throw std::runtime_error("games row " + std::to_string(line_no) + ": empty team name");
    if (row.team_a == row.team_b)
      throw std::runtime_error("games row " + std::to_string(line_no) +
                               ": a team cannot play itself");
    first_data_row = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::vector<GameRecord>, std::vector<std::string>> index_games(
    const std::vector<GameRow>& rows) {
  std::map<std::string, int> index;
  for (const auto& r : rows) {
    index.emplace(r.team_a, 0);
    index.emplace(r.team_b, 0);
  }
  std::vector<std::string> names;
  names.reserve(index.size());
  for (auto& [name, slot] : index) {
    slot = static_cast<int>(names.size());
    names.push_back(name);
  }
  std::vector<GameRecord> records;
  records.reserve(rows.size());
  for (const auto& r : rows)
    records.push_back({index.at(r.team_a), r.score_a, index.at(r.team_b), r.score_b});
  return {std::move(records), std::move(names)};
}

DominanceMatrix ingest_games(const std::vector<GameRow>& rows) {
  if (rows.empty()) throw std::runtime_error("no games to ingest");
  auto [records, names] = index_games(rows);
  const int n = static_cast<int>(names.size());
  RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
  for (const auto& g : records) {
    if (g.score_a > g.score_b) m(g.team_a, g.team_b) += 1;
    else if (g.score_b > g.score_a) m(g.team_b, g.team_a) += 1;
  }
  return make_dominance(std::move(m), std::move(names));
}

FeatureTable parse_features_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  int line_no = 0;
  std::vector<int> row_lines;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    rows.push_back(split_csv(stripped));
    row_lines.push_back(line_no);
  }
  if (rows.size() < 2)
    throw std::runtime_error("feature table needs a header row and at least one item row");
  const std::size_t cols = rows.front().size();
  if (cols < 2) throw std::runtime_error("feature table needs at least one feature column");

  FeatureTable t;
  t.feature_names.assign(rows.front().begin() + 1, rows.front().end());
  const std::size_t n_items = rows.size() - 1;
  t.values = RationalMatrix::Constant(static_cast<Eigen::Index>(n_items),
                                      static_cast<Eigen::Index>(cols - 1), Rational(0));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::runtime_error("feature row " + std::to_string(row_lines[r]) + ": expected " +
                               std::to_string(cols) + " fields, got " +
                               std::to_string(rows[r].size()));
    t.items.push_back(rows[r][0]);
    for (std::size_t c = 1; c < cols; ++c) {
      try {
        t.values(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1)) =
            Rational::parse(rows[r][c]);
      } catch (const std::exception& e) {
        throw std::runtime_error("feature row " + std::to_string(row_lines[r]) + ", column " +
                                 std::to_string(c + 1) + ": " + e.what());
      }
    }
  }
  return t;
}

DominanceMatrix ingest_features(const FeatureTable& table,
                                const std::vector<bool>& higher_is_better) {
  const int n = static_cast<int>(table.items.size());
  const int f = static_cast<int>(table.values.cols());
  if (n < 1) throw std::runtime_error("feature table has no items");
  if (f < 1) throw std::runtime_error("feature table has no features");
  if (static_cast<int>(higher_is_better.size()) != f)
    throw std::invalid_argument("need one direction flag per feature");

  const std::vector<int> order = alphabetical_index(table.items);
  std::vector<std::string> names;
  names.reserve(table.items.size());
  for (int idx : order) names.push_back(table.items[static_cast<std::size_t>(idx)]);
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1])
      throw std::runtime_error("duplicate item name '" + names[i] + "' in feature table");

  RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long wins = 0;
      for (int c = 0; c < f; ++c) {
        const Rational& vi = table.values(order[static_cast<std::size_t>(i)], c);
        const Rational& vj = table.values(order[static_cast<std::size_t>(j)], c);
        const bool outperforms = higher_is_better[static_cast<std::size_t>(c)] ? vj < vi : vi < vj;
        if (outperforms) ++wins;
      }
      m(i, j) = Rational(wins);
    }
  }
  return make_dominance(std::move(m), std::move(names));
}

DominanceMatrix parse_matrix(std::string_view text, std::vector<std::string>* warnings) {
  std::optional<std::vector<std::string>> names;
  std::vector<std::pair<int, std::string>> data_lines;  // (line number, content)
  int line_no = 0;
  constexpr std::string_view kNamesPrefix = "# names:";
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') {
      if (line.substr(0, kNamesPrefix.size()) == kNamesPrefix) {
        std::vector<std::string> parsed;
        std::string_view rest = line.substr(kNamesPrefix.size());
        while (!rest.empty() && rest[0] == '\t') {
          rest.remove_prefix(1);
          const std::size_t tab = rest.find('\t');
          parsed.push_back(trim(rest.substr(0, tab)));
          rest = tab == std::string_view::npos ? std::string_view{} : rest.substr(tab);
        }
        if (!parsed.empty()) names = std::move(parsed);
      }
      continue;
    }
    const std::string stripped = trim(line);
    if (!stripped.empty()) data_lines.emplace_back(line_no, stripped);
  }
  if (data_lines.empty()) throw std::runtime_error("matrix text has no data");

  long long n_val = 0;
  if (!parse_score(data_lines.front().second, &n_val) || n_val < 1)
    throw std::runtime_error("line " + std::to_string(data_lines.front().first) +
                             ": expected the item count n");
  const int n = static_cast<int>(n_val);
  if (static_cast<int>(data_lines.size()) != n + 1)
    throw std::runtime_error("expected " + std::to_string(n) + " matrix rows, got " +
                             std::to_string(data_lines.size() - 1));

  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& [row_line, content] = data_lines[static_cast<std::size_t>(r) + 1];
    std::istringstream in(content);
    std::string token;
    int c = 0;
    while (in >> token) {
      if (c >= n)
        throw std::runtime_error("line " + std::to_string(row_line) + ": row has more than " +
                                 std::to_string(n) + " values");
      Rational v;
      try {
        v = Rational::parse(token);
      } catch (const std::exception& e) {
        throw std::runtime_error("line " + std::to_string(row_line) + ", value " +
                                 std::to_string(c + 1) + ": " + e.what());
      }
      if (v.sign() < 0)
        throw std::runtime_error("line " + std::to_string(row_line) + ", value " +
                                 std::to_string(c + 1) + ": entries must be nonnegative");
      if (r == c && !v.is_zero()) {
        if (warnings)
          warnings->push_back("line " + std::to_string(row_line) +
                              ": nonzero diagonal entry forced to 0");
        v = Rational(0);
      }
      m(r, c) = v;
      ++c;
    }
    if (c != n)
      throw std::runtime_error("line " + std::to_string(row_line) + ": row has " +
                               std::to_string(c) + " values, expected " + std::to_string(n));
  }
  if (names && static_cast<int>(names->size()) != n)
    throw std::runtime_error("names comment lists " + std::to_string(names->size()) +
                             " labels for n = " + std::to_string(n));
  return make_dominance(std::move(m), std::move(names));
}

std::string write_matrix(const DominanceMatrix& d) {
  std::string out;
  if (d.item_names) {
    out += "# names:";
    for (const auto& name : *d.item_names) {
      out += '\t';
      out += name;
    }
    out += '\n';
  }
  out += std::to_string(d.n());
  out += '\n';
  for (int i = 0; i < d.n(); ++i) {
    for (int j = 0; j < d.n(); ++j) {
      if (j > 0) out += ' ';
      out += d.entries(i, j).to_string();
    }
    out += '\n';
  }
  return out;
}

}  // namespace linord
