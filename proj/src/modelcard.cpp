#include "linord/modelcard.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace linord {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::runtime_error(path + ": " + msg);
}

// ---- emit helpers ----------------------------------------------------------

ojson rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

ojson matrix_json(const RationalMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson genspec_json(const GenSpec& g) {
  ojson j;
  j["kind"] = std::string(to_string(g.kind));
  j["n"] = g.n;
  switch (g.kind) {
    case GenKind::empty_plus_noise:
    case GenKind::hillside_plus_noise:
      j["percent"] = g.percent;
      j["lo"] = g.lo;
      j["hi"] = g.hi;
      break;
    case GenKind::connected_minus_noise:
    case GenKind::dominance_plus_noise:
      j["percent"] = g.percent;
      break;
    case GenKind::special:
      j["block_begin"] = g.block_begin;
      j["block_end"] = g.block_end;
      break;
    case GenKind::simulate_games:
      j["p_upset"] = g.p_upset;
      j["games_per_pair"] = g.games_per_pair;
      break;
    default:
      break;
  }
  j["seed"] = g.seed;
  return j;
}

// ---- parse helpers ---------------------------------------------------------

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown field");
}

const json& require(const json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

long long get_int(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(path, "integer out of range");
    return static_cast<long long>(u);
  }
  if (v.is_number_integer()) return v.get<long long>();
  fail(path, "expected an integer");
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  const long long i = get_int(v, path);
  if (i < 0) fail(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(i);
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

Rational get_rational(const json& v, const std::string& path) {
  if (v.is_number_unsigned() || v.is_number_integer()) return Rational(get_int(v, path));
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an exact rational (integer or \"p/q\" string)");
}

std::vector<int> get_rank_vector(const json& v, const std::string& path, int n) {
  if (!v.is_array()) fail(path, "expected an array");
  if (static_cast<int>(v.size()) != n)
    fail(path, "expected " + std::to_string(n) + " rank positions");
  std::vector<int> rv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    rv[i] = static_cast<int>(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  try {
    from_rank_vector(rv);
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return rv;
}

std::pair<std::vector<int>, std::vector<int>> get_pair(const json& v, const std::string& path,
                                                       int n) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a pair of rankings");
  return {get_rank_vector(v[0], path + "[0]", n), get_rank_vector(v[1], path + "[1]", n)};
}

GenSpec parse_genspec(const json& j, const std::string& path, int card_n) {
  if (!j.is_object()) fail(path, "expected an object");
  GenSpec g;
  g.kind = [&] {
    try {
      return genkind_from_string(get_string(require(j, path, "kind"), path + ".kind"));
    } catch (const std::invalid_argument& e) {
      fail(path + ".kind", e.what());
    }
  }();
  std::set<std::string> allowed = {"kind", "n", "seed"};
  switch (g.kind) {
    case GenKind::empty_plus_noise:
    case GenKind::hillside_plus_noise:
      allowed.insert({"percent", "lo", "hi"});
      break;
    case GenKind::connected_minus_noise:
    case GenKind::dominance_plus_noise:
      allowed.insert("percent");
      break;
    case GenKind::special:
      allowed.insert({"block_begin", "block_end"});
      break;
    case GenKind::simulate_games:
      allowed.insert({"p_upset", "games_per_pair"});
      break;
    default:
      break;
  }
  expect_keys(j, path, allowed);
  g.n = static_cast<int>(get_int(require(j, path, "n"), path + ".n"));
  if (g.n != card_n) fail(path + ".n", "does not match the card's n");
  if (j.contains("percent")) g.percent = get_number(j["percent"], path + ".percent");
  if (j.contains("lo")) g.lo = get_int(j["lo"], path + ".lo");
  if (j.contains("hi")) g.hi = get_int(j["hi"], path + ".hi");
  if (j.contains("block_begin"))
    g.block_begin = static_cast<int>(get_int(j["block_begin"], path + ".block_begin"));
  if (j.contains("block_end"))
    g.block_end = static_cast<int>(get_int(j["block_end"], path + ".block_end"));
  if (j.contains("p_upset")) g.p_upset = get_number(j["p_upset"], path + ".p_upset");
  if (j.contains("games_per_pair"))
    g.games_per_pair = static_cast<int>(get_int(j["games_per_pair"], path + ".games_per_pair"));
  const json& seed = require(j, path, "seed");
  if (seed.is_number_unsigned()) {
    g.seed = seed.get<std::uint64_t>();
  } else {
    const long long s = get_int(seed, path + ".seed");
    if (s < 0) fail(path + ".seed", "expected a nonnegative integer");
    g.seed = static_cast<std::uint64_t>(s);
  }
  return g;
}

bool matrix_equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

}  // namespace

bool operator==(const XStarCard& a, const XStarCard& b) {
  return a.reference == b.reference && a.estimated == b.estimated &&
         matrix_equal(a.values, b.values);
}

bool operator==(const CardMeasures& a, const CardMeasures& b) {
  return a.k == b.k && a.p == b.p && a.tau == b.tau && a.beta == b.beta;
}

bool operator==(const ModelCard& a, const ModelCard& b) {
  return a.schema_version == b.schema_version && a.dataset_id == b.dataset_id &&
         a.source == b.source && a.n == b.n && a.item_names == b.item_names &&
         matrix_equal(a.D, b.D) && a.weighted == b.weighted && a.method == b.method &&
         a.sense == b.sense && a.optimal_objective == b.optimal_objective &&
         a.num_optimal_rankings == b.num_optimal_rankings && a.complete == b.complete &&
         a.optimal_rankings == b.optimal_rankings && a.diameter == b.diameter &&
         a.farthest_pair == b.farthest_pair && a.closest_pair == b.closest_pair &&
         a.centroid_solution == b.centroid_solution && a.centroid_farthest == b.centroid_farthest &&
         a.measures == b.measures && a.xstar == b.xstar && a.genspec == b.genspec;
}

std::string emit(const ModelCard& card) {
  ojson j;
  j["schema_version"] = card.schema_version;
  j["dataset_id"] = card.dataset_id;
  j["source"] = card.source;
  j["n"] = card.n;
  if (card.item_names) j["item_names"] = *card.item_names;
  j["D"] = matrix_json(card.D);
  j["method"] = std::string(to_string(card.method));
  j["sense"] = std::string(to_string(card.sense));
  j["optimal_objective"] = rational_json(card.optimal_objective);
  j["num_optimal_rankings"] = card.num_optimal_rankings;
  j["complete"] = card.complete;
  j["optimal_rankings"] = card.optimal_rankings;
  j["diameter"] = card.diameter;
  j["farthest_pair"] = ojson::array({card.farthest_pair.first, card.farthest_pair.second});
  if (card.closest_pair)
    j["closest_pair"] = ojson::array({card.closest_pair->first, card.closest_pair->second});
  else
    j["closest_pair"] = nullptr;
  j["centroid_solution"] = card.centroid_solution;
  j["centroid_farthest"] = card.centroid_farthest;
  ojson m;
  if (card.measures.k) m["k"] = rational_json(*card.measures.k);
  m["p"] = card.measures.p;
  m["tau"] = card.measures.tau;
  m["beta"] = rational_json(card.measures.beta);
  j["measures"] = std::move(m);
  if (card.xstar) {
    ojson x;
    x["reference"] = card.xstar->reference;
    x["estimated"] = card.xstar->estimated;
    x["values"] = matrix_json(card.xstar->values);
    j["xstar"] = std::move(x);
  }
  if (card.genspec) j["genspec"] = genspec_json(*card.genspec);
  return j.dump(2) + "\n";
}

ModelCard parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "expected a JSON object");

  const std::set<std::string> allowed = {
      "schema_version",  "dataset_id",      "source",        "n",
      "item_names",      "D",               "method",        "sense",
      "optimal_objective", "num_optimal_rankings", "complete", "optimal_rankings",
      "diameter",        "farthest_pair",   "closest_pair",  "centroid_solution",
      "centroid_farthest", "measures",      "xstar",         "genspec"};
  expect_keys(j, "$", allowed);

  ModelCard card;
  card.schema_version =
      static_cast<int>(get_int(require(j, "$", "schema_version"), "$.schema_version"));
  if (card.schema_version != 1) fail("$.schema_version", "unsupported schema version");
  card.dataset_id = get_int(require(j, "$", "dataset_id"), "$.dataset_id");
  card.source = get_string(require(j, "$", "source"), "$.source");
  card.n = static_cast<int>(get_int(require(j, "$", "n"), "$.n"));
  if (card.n < 1) fail("$.n", "must be >= 1");
  const int n = card.n;

  if (j.contains("item_names")) {
    const json& names = j["item_names"];
    if (!names.is_array() || static_cast<int>(names.size()) != n)
      fail("$.item_names", "expected an array of n strings");
    std::vector<std::string> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
      out.push_back(get_string(names[i], "$.item_names[" + std::to_string(i) + "]"));
    card.item_names = std::move(out);
  }

  {
    const json& d = require(j, "$", "D");
    if (!d.is_array() || static_cast<int>(d.size()) != n)
      fail("$.D", "expected an array of n rows");
    RationalMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = d[static_cast<std::size_t>(r)];
      const std::string row_path = "$.D[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        fail(row_path, "expected a row of n entries");
      for (int c = 0; c < n; ++c)
        m(r, c) = get_rational(row[static_cast<std::size_t>(c)],
                               row_path + "[" + std::to_string(c) + "]");
    }
    try {
      DominanceMatrix dm = make_dominance(std::move(m));
      card.D = std::move(dm.entries);
      card.weighted = dm.weighted;
    } catch (const std::invalid_argument& e) {
      fail("$.D", e.what());
    }
  }

  try {
    card.method = method_from_string(get_string(require(j, "$", "method"), "$.method"));
  } catch (const std::invalid_argument& e) {
    fail("$.method", e.what());
  }
  try {
    card.sense = sense_from_string(get_string(require(j, "$", "sense"), "$.sense"));
  } catch (const std::invalid_argument& e) {
    fail("$.sense", e.what());
  }

  card.optimal_objective =
      get_rational(require(j, "$", "optimal_objective"), "$.optimal_objective");
  card.num_optimal_rankings =
      get_uint(require(j, "$", "num_optimal_rankings"), "$.num_optimal_rankings");
  if (card.num_optimal_rankings < 1) fail("$.num_optimal_rankings", "must be >= 1");
  card.complete = get_bool(require(j, "$", "complete"), "$.complete");

  {
    const json& list = require(j, "$", "optimal_rankings");
    if (!list.is_array()) fail("$.optimal_rankings", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      card.optimal_rankings.push_back(
          get_rank_vector(list[i], "$.optimal_rankings[" + std::to_string(i) + "]", n));
    if (card.num_optimal_rankings < card.optimal_rankings.size())
      fail("$.num_optimal_rankings", "fewer than the stored rankings");
    const bool stored_all = card.num_optimal_rankings == card.optimal_rankings.size();
    if (stored_all != card.complete)
      fail("$.complete", "inconsistent with num_optimal_rankings and the stored list");
  }

  card.diameter = static_cast<int>(get_int(require(j, "$", "diameter"), "$.diameter"));
  if (card.diameter < 0) fail("$.diameter", "must be >= 0");
  card.farthest_pair = get_pair(require(j, "$", "farthest_pair"), "$.farthest_pair", n);
  {
    const json& cp = require(j, "$", "closest_pair");
    if (!cp.is_null()) card.closest_pair = get_pair(cp, "$.closest_pair", n);
  }
  card.centroid_solution =
      get_rank_vector(require(j, "$", "centroid_solution"), "$.centroid_solution", n);
  card.centroid_farthest =
      get_rank_vector(require(j, "$", "centroid_farthest"), "$.centroid_farthest", n);

  {
    const json& m = require(j, "$", "measures");
    if (!m.is_object()) fail("$.measures", "expected an object");
    expect_keys(m, "$.measures", {"k", "p", "tau", "beta"});
    if (m.contains("k")) {
      card.measures.k = get_rational(m["k"], "$.measures.k");
      if (card.measures.k->sign() < 0) fail("$.measures.k", "must be >= 0");
    }
    card.measures.p = get_uint(require(m, "$.measures", "p"), "$.measures.p");
    if (card.measures.p != card.num_optimal_rankings)
      fail("$.measures.p", "must equal num_optimal_rankings");
    card.measures.tau = static_cast<int>(get_int(require(m, "$.measures", "tau"), "$.measures.tau"));
    if (card.measures.tau != card.diameter) fail("$.measures.tau", "must equal diameter");
    card.measures.beta = get_rational(require(m, "$.measures", "beta"), "$.measures.beta");
    if (card.measures.beta.sign() < 0 || Rational(1) < card.measures.beta)
      fail("$.measures.beta", "must lie in [0, 1]");
  }

  if (j.contains("xstar")) {
    const json& x = j["xstar"];
    if (!x.is_object()) fail("$.xstar", "expected an object");
    expect_keys(x, "$.xstar", {"reference", "estimated", "values"});
    XStarCard xc;
    xc.reference = get_rank_vector(require(x, "$.xstar", "reference"), "$.xstar.reference", n);
    xc.estimated = get_bool(require(x, "$.xstar", "estimated"), "$.xstar.estimated");
    const json& vals = require(x, "$.xstar", "values");
    if (!vals.is_array() || static_cast<int>(vals.size()) != n)
      fail("$.xstar.values", "expected an array of n rows");
    xc.values = RationalMatrix(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = vals[static_cast<std::size_t>(r)];
      const std::string row_path = "$.xstar.values[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        fail(row_path, "expected a row of n entries");
      for (int c = 0; c < n; ++c) {
        const std::string cell_path = row_path + "[" + std::to_string(c) + "]";
        const Rational v = get_rational(row[static_cast<std::size_t>(c)], cell_path);
        if (v.sign() < 0 || Rational(1) < v) fail(cell_path, "must lie in [0, 1]");
        xc.values(r, c) = v;
      }
    }
    for (int r = 0; r < n; ++r) {
      if (!xc.values(r, r).is_zero()) fail("$.xstar.values", "diagonal must be zero");
      for (int c = r + 1; c < n; ++c)
        if (!(xc.values(r, c) + xc.values(c, r) == Rational(1)))
          fail("$.xstar.values", "entries (i,j) and (j,i) must sum to 1");
    }
    card.xstar = std::move(xc);
  }

  if (j.contains("genspec")) card.genspec = parse_genspec(j["genspec"], "$.genspec", n);
  return card;
}

Catalog load_catalog(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw std::runtime_error("catalog directory not readable: " + dir.string());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  Catalog catalog;
  for (const auto& file : files) {
    std::ifstream in(file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      catalog.cards.push_back(parse(buffer.str()));
    } catch (const std::exception& e) {
      catalog.warnings.push_back(file.filename().string() + ": " + e.what());
    }
  }
  std::stable_sort(catalog.cards.begin(), catalog.cards.end(),
                   [](const ModelCard& a, const ModelCard& b) { return a.dataset_id < b.dataset_id; });
  return catalog;
}

ModelCard build_card(const DominanceMatrix& d, const Analysis& analysis, long long dataset_id,
                     const std::string& source, const std::optional<GenSpec>& provenance) {
  const OptimalSet& set = analysis.optima;
  ModelCard card;
  card.dataset_id = dataset_id;
  card.source = source;
  card.n = d.n();
  card.item_names = d.item_names;
  card.D = d.entries;
  card.weighted = d.weighted;
  card.method = analysis.method;
  card.sense = set.sense;
  card.optimal_objective = set.objective;
  card.num_optimal_rankings = set.rankings.size();

  // Storage cap: a complete small set is stored whole (in lex order); a
  // larger complete set keeps the centroid-nearest kCardRankingCap, nearest
  // first; a capped enumeration stores a strict prefix so `complete` stays
  // honest about the stored list.
  if (set.complete && set.rankings.size() <= kCardRankingCap) {
    card.complete = true;
    for (const Ranking& r : set.rankings) card.optimal_rankings.push_back(rank_vector(r));
  } else {
    card.complete = false;
    std::size_t keep;
    if (set.complete) {
      keep = static_cast<std::size_t>(kCardRankingCap);
      const auto order = centroid_order(set.rankings);
      for (std::size_t i = 0; i < keep; ++i)
        card.optimal_rankings.push_back(rank_vector(set.rankings[order[i]]));
    } else {
      keep = std::min<std::size_t>(static_cast<std::size_t>(kCardRankingCap),
                                   set.rankings.empty() ? 0 : set.rankings.size() - 1);
      for (std::size_t i = 0; i < keep; ++i)
        card.optimal_rankings.push_back(rank_vector(set.rankings[i]));
    }
  }

  card.diameter = analysis.geometry.diameter;
  card.farthest_pair = {rank_vector(analysis.geometry.farthest_pair.first),
                        rank_vector(analysis.geometry.farthest_pair.second)};
  if (analysis.geometry.closest_pair)
    card.closest_pair = {rank_vector(analysis.geometry.closest_pair->first),
                         rank_vector(analysis.geometry.closest_pair->second)};
  card.centroid_solution = rank_vector(analysis.geometry.centroid_closest);
  card.centroid_farthest = rank_vector(analysis.geometry.centroid_farthest);

  card.measures.k = analysis.measures.k;
  card.measures.p = analysis.measures.p;
  card.measures.tau = analysis.measures.tau;
  card.measures.beta = analysis.measures.beta;

  XStarCard x;
  x.reference = rank_vector(analysis.consensus.reference);
  x.estimated = !set.complete;
  x.values = analysis.consensus.values;
  card.xstar = std::move(x);

  card.genspec = provenance;
  return card;
}

}  // namespace linord
