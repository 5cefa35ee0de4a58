// linord — linear ordering and rankability toolkit.
//
// Subcommands: generate, ingest, solve, rank, measures, card, filter, plot.
// Exit codes: 0 success, 1 data/solver error, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linord/filter.hpp"
#include "linord/generators.hpp"
#include "linord/ingest.hpp"
#include "linord/modelcard.hpp"
#include "linord/plots.hpp"
#include "linord/rankability.hpp"
#include "linord/ratings.hpp"

namespace {

using namespace linord;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

nlohmann::ordered_json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

struct GenerateArgs {
  std::string kind;
  int n = 0;
  double percent = 0.0;
  long long lo = 0, hi = 0;
  int block_begin = 0, block_end = 0;
  double p_upset = 0.0;
  int games_per_pair = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
};

struct IngestArgs {
  std::string format = "matrix";
  std::string in;
  std::string lower_is_better;  // comma-separated feature names or indices
  std::string out;
};

struct SolveArgs {
  std::string in;
  std::string method = "lop";
  std::uint64_t cap = 10000;
  int threads = 1;
  long long dataset_id = 0;
  std::string source = "user";
  std::string out;
};

struct RankArgs {
  std::string in;
  std::string method = "colley";
  int n = 0;
  std::string epsilon;
  std::uint64_t cap = 10000;
  std::string out;
};

struct MeasuresArgs {
  std::string in;
  std::string method = "lop";
  std::uint64_t cap = 10000;
  int threads = 1;
  std::string out;
};

struct CardArgs {
  std::string in;
  std::string out;
};

struct FilterArgs {
  std::string catalog;
  std::string query;
  std::string out;
};

struct PlotArgs {
  std::string card;
  std::string kind = "pixel";
  std::string pair = "farthest";
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  GenSpec spec;
  spec.kind = genkind_from_string(a.kind);
  spec.n = a.n;
  spec.percent = a.percent;
  spec.lo = a.lo;
  spec.hi = a.hi;
  spec.block_begin = a.block_begin;
  spec.block_end = a.block_end;
  spec.p_upset = a.p_upset;
  spec.games_per_pair = a.games_per_pair;
  spec.seed = a.seed;
  if (kind_is_stochastic(spec.kind) && !a.seed_given) {
    std::cerr << "generate: --seed is required for stochastic kind '" << a.kind << "'\n";
    return 2;
  }
  write_output(a.out, write_matrix(generate(spec)));
  return 0;
}

std::vector<bool> feature_directions(const FeatureTable& table, const std::string& lower_list) {
  std::vector<bool> higher(table.feature_names.size(), true);
  std::stringstream ss(lower_list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    bool found = false;
    for (std::size_t f = 0; f < table.feature_names.size(); ++f) {
      if (table.feature_names[f] == token) {
        higher[f] = false;
        found = true;
      }
    }
    if (!found) {
      try {
        const std::size_t idx = static_cast<std::size_t>(std::stoul(token));
        if (idx < higher.size()) {
          higher[idx] = false;
          found = true;
        }
      } catch (const std::exception&) {
      }
    }
    if (!found)
      throw std::runtime_error("--lower-is-better: no feature named or indexed '" + token + "'");
  }
  return higher;
}

int run_ingest(const IngestArgs& a) {
  const std::string text = read_input(a.in);
  DominanceMatrix d;
  if (a.format == "games") {
    d = ingest_games(parse_games_csv(text));
  } else if (a.format == "features") {
    const FeatureTable table = parse_features_csv(text);
    d = ingest_features(table, feature_directions(table, a.lower_is_better));
  } else if (a.format == "matrix") {
    std::vector<std::string> warnings;
    d = parse_matrix(text, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    std::cerr << "ingest: unknown format '" << a.format << "'\n";
    return 2;
  }
  write_output(a.out, write_matrix(d));
  return 0;
}

int run_solve(const SolveArgs& a) {
  std::vector<std::string> warnings;
  const DominanceMatrix d = parse_matrix(read_input(a.in), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const Analysis analysis =
      analyze(d, method_from_string(a.method), SolveOptions{a.cap, a.threads});
  const ModelCard card = build_card(d, analysis, a.dataset_id, a.source);
  write_output(a.out, emit(card));
  return 0;
}

int run_rank(const RankArgs& a) {
  std::vector<GameRecord> records;
  std::optional<std::vector<std::string>> names;
  int n = a.n;
  const std::string text = a.in.empty() ? std::string() : read_input(a.in);
  const auto rows = parse_games_csv(text);
  if (!rows.empty()) {
    auto [recs, team_names] = index_games(rows);
    records = std::move(recs);
    if (n == 0) n = static_cast<int>(team_names.size());
    else if (n < static_cast<int>(team_names.size()))
      throw std::runtime_error("--n is smaller than the number of teams in the file");
    names = std::move(team_names);
  }
  if (n == 0) throw std::runtime_error("no games given; pass --n to size the schedule");

  RatingResult r;
  if (a.method == "massey") r = massey(records, n, a.cap);
  else if (a.method == "colley") r = colley(records, n, a.cap);
  else {
    std::cerr << "rank: unknown method '" << a.method << "'\n";
    return 2;
  }
  if (!a.epsilon.empty()) {
    if (r.exact) r.pseudo_optimal = pseudo_optimal_set(r.ratings_exact, Rational::parse(a.epsilon), a.cap);
    else r.pseudo_optimal = pseudo_optimal_set(r.ratings, std::stod(a.epsilon), a.cap);
  }

  nlohmann::ordered_json j;
  j["method"] = a.method;
  j["n"] = n;
  if (names) j["item_names"] = *names;
  j["exact"] = r.exact;
  auto ratings = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    if (r.exact) ratings.push_back(to_decimal_string(r.ratings_exact[static_cast<std::size_t>(i)]));
    else ratings.push_back(r.ratings(i));
  }
  j["ratings"] = std::move(ratings);
  j["ranking"] = rank_vector(r.ranking);
  auto ystar = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < n; ++c) {
      if (r.exact) row.push_back(rational_json(r.ystar_exact(i, c)));
      else row.push_back(r.ystar(i, c));
    }
    ystar.push_back(std::move(row));
  }
  j["ystar"] = std::move(ystar);
  auto pseudo = nlohmann::ordered_json::array();
  for (const Ranking& rk : r.pseudo_optimal) pseudo.push_back(rank_vector(rk));
  j["pseudo_optimal"] = std::move(pseudo);
  write_output(a.out, j.dump(2) + "\n");
  return 0;
}

int run_measures(const MeasuresArgs& a) {
  std::vector<std::string> warnings;
  const DominanceMatrix d = parse_matrix(read_input(a.in), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const Method method = method_from_string(a.method);
  if (method == Method::k) throw std::runtime_error("measures expects --method lop or hillside");
  const Measures m = measures(d, method, SolveOptions{a.cap, a.threads});
  std::string line = "k=";
  line += m.k ? m.k->to_string() : "na";
  line += " p=" + std::to_string(m.p);
  line += " tau=" + std::to_string(m.tau);
  line += " beta=" + m.beta.to_string();
  line += "\n";
  write_output(a.out, line);
  return 0;
}

int run_card(const CardArgs& a) {
  const ModelCard card = parse(read_input(a.in));
  write_output(a.out, emit(card));
  return 0;
}

int run_filter(const FilterArgs& a) {
  const Catalog catalog = load_catalog(a.catalog);
  for (const auto& w : catalog.warnings) std::cerr << "warning: " << w << "\n";
  const auto ids = filter_ids(catalog.cards, a.query);
  std::string out;
  for (long long id : ids) out += std::to_string(id) + "\n";
  write_output(a.out, out);
  return 0;
}

int run_plot(const PlotArgs& a) {
  const ModelCard card = parse(read_input(a.card));
  std::string svg;
  if (a.kind == "pixel") {
    svg = pixel_plot_svg(card);
  } else if (a.kind == "spaghetti") {
    const auto [left, right] = select_pair(card, a.pair);
    svg = spaghetti_svg(card, left, right);
  } else {
    std::cerr << "plot: unknown kind '" << a.kind << "'\n";
    return 2;
  }
  write_output(a.out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linord: dominance matrices, exact linear ordering with full alternate-optima "
               "enumeration, rankability measures, Massey/Colley ratings, generators, model "
               "cards, and SVG plots"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Generate an artificial dominance matrix");
  cmd_gen->add_option("--kind", gen.kind,
                      "empty|empty_plus_noise|connected|connected_minus_noise|"
                      "dominance_plus_noise|hillside_plus_noise|cyclic|special|simulate_games")
      ->required();
  cmd_gen->add_option("--n", gen.n, "item count")->required();
  cmd_gen->add_option("--percent", gen.percent, "noise percentage [0,100]");
  cmd_gen->add_option("--lo", gen.lo, "noise lower bound");
  cmd_gen->add_option("--hi", gen.hi, "noise upper bound");
  cmd_gen->add_option("--block-begin", gen.block_begin, "special: block start (1-based)");
  cmd_gen->add_option("--block-end", gen.block_end, "special: block end (1-based)");
  cmd_gen->add_option("--p-upset", gen.p_upset, "simulate_games: upset probability");
  cmd_gen->add_option("--games-per-pair", gen.games_per_pair, "simulate_games: games per pair");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed (required for stochastic kinds)")
      ->each([&gen](const std::string&) { gen.seed_given = true; });
  cmd_gen->add_option("--out", gen.out, "output file (default stdout)");

  IngestArgs ing;
  auto* cmd_ing = app.add_subcommand("ingest", "Convert games/features/matrix text to a matrix");
  cmd_ing->add_option("--format", ing.format, "games|features|matrix")->required();
  cmd_ing->add_option("--in", ing.in, "input file ('-' for stdin)")->required();
  cmd_ing->add_option("--lower-is-better", ing.lower_is_better,
                      "features: comma-separated names/indices where lower wins");
  cmd_ing->add_option("--out", ing.out, "output file (default stdout)");

  SolveArgs sol;
  auto* cmd_sol = app.add_subcommand("solve", "Solve a matrix and emit its model card");
  cmd_sol->add_option("--in", sol.in, "input matrix file ('-' for stdin)")->required();
  cmd_sol->add_option("--method", sol.method, "lop|hillside|k");
  cmd_sol->add_option("--cap", sol.cap, "enumeration cap (default 10000)");
  cmd_sol->add_option("--threads", sol.threads, "solver worker threads");
  cmd_sol->add_option("--dataset-id", sol.dataset_id, "dataset id for the card");
  cmd_sol->add_option("--source", sol.source, "source tag for the card");
  cmd_sol->add_option("--out", sol.out, "output file (default stdout)");

  RankArgs rnk;
  auto* cmd_rnk = app.add_subcommand("rank", "Massey/Colley ratings from a games CSV");
  cmd_rnk->add_option("--in", rnk.in, "games CSV ('-' for stdin)");
  cmd_rnk->add_option("--method", rnk.method, "massey|colley");
  cmd_rnk->add_option("--n", rnk.n, "team count (needed when the file has no games)");
  cmd_rnk->add_option("--epsilon", rnk.epsilon, "tie tolerance for the pseudo-optimal set");
  cmd_rnk->add_option("--cap", rnk.cap, "pseudo-optimal enumeration cap");
  cmd_rnk->add_option("--out", rnk.out, "output file (default stdout)");

  MeasuresArgs mea;
  auto* cmd_mea = app.add_subcommand("measures", "Rankability quadruple (k, p, tau, beta)");
  cmd_mea->add_option("--in", mea.in, "input matrix file ('-' for stdin)")->required();
  cmd_mea->add_option("--method", mea.method, "lop|hillside");
  cmd_mea->add_option("--cap", mea.cap, "enumeration cap");
  cmd_mea->add_option("--threads", mea.threads, "solver worker threads");
  cmd_mea->add_option("--out", mea.out, "output file (default stdout)");

  CardArgs card;
  auto* cmd_card = app.add_subcommand("card", "Validate and canonically reformat a model card");
  cmd_card->add_option("--in", card.in, "card JSON file ('-' for stdin)")->required();
  cmd_card->add_option("--out", card.out, "output file (default stdout)");

  FilterArgs fil;
  auto* cmd_fil = app.add_subcommand("filter", "Query a catalog of model cards");
  cmd_fil->add_option("--catalog", fil.catalog, "directory of *.json cards")->required();
  cmd_fil->add_option("--query", fil.query,
                      "conjunctive query, e.g. \"source==LOLIB && n>30 && n<35\"")
      ->required();
  cmd_fil->add_option("--out", fil.out, "output file (default stdout)");

  PlotArgs plt;
  auto* cmd_plt = app.add_subcommand("plot", "Render SVG figures from a model card");
  cmd_plt->add_option("--card", plt.card, "card JSON file ('-' for stdin)")->required();
  cmd_plt->add_option("--kind", plt.kind, "pixel|spaghetti");
  cmd_plt->add_option("--pair", plt.pair, "spaghetti pair: farthest|closest|A,B");
  cmd_plt->add_option("--out", plt.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_ing->parsed()) return run_ingest(ing);
    if (cmd_sol->parsed()) return run_solve(sol);
    if (cmd_rnk->parsed()) return run_rank(rnk);
    if (cmd_mea->parsed()) return run_measures(mea);
    if (cmd_card->parsed()) return run_card(card);
    if (cmd_fil->parsed()) return run_filter(fil);
    if (cmd_plt->parsed()) return run_plot(plt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
