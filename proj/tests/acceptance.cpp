// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exits 0 only when every criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linord/filter.hpp"
#include "linord/generators.hpp"
#include "linord/ingest.hpp"
#include "linord/modelcard.hpp"
#include "linord/rankability.hpp"
#include "linord/ratings.hpp"
#include "oracle.hpp"

using namespace linord;

namespace {

std::string g_detail;

bool fail(const std::string& why) {
  g_detail = why;
  return false;
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence on 200 random instances, n in 3..8, all objectives.

bool criterion_oracle_equivalence() {
  const auto started = std::chrono::steady_clock::now();
  std::mt19937_64 rng(0xACCE97);
  int instances = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 6;
    const bool binary = rng() % 2 == 0;
    const DominanceMatrix d =
        make_dominance(oracle::random_matrix(rng, n, 0, 9, binary));
    std::vector<Method> methods = {Method::lop, Method::hillside};
    if (binary) methods.push_back(Method::k);
    for (Method method : methods) {
      CostProblem p;
      switch (method) {
        case Method::lop: p = lop_problem(d); break;
        case Method::hillside: p = hillside_problem(d); break;
        case Method::k: p = k_problem(d); break;
      }
      const auto expect = oracle::solve_exhaustive(p);
      const OptimalSet got = solve_enumerate(p, 100000);
      if (!(got.objective == expect.objective))
        return fail("objective mismatch on instance " + std::to_string(i) + " method " +
                    std::string(to_string(method)) + ": got " + got.objective.to_string() +
                    ", oracle " + expect.objective.to_string());
      if (!got.complete)
        return fail("enumeration unexpectedly capped on instance " + std::to_string(i));
      if (got.rankings != expect.rankings)
        return fail("optimal set mismatch on instance " + std::to_string(i) + " method " +
                    std::string(to_string(method)) + ": got " +
                    std::to_string(got.rankings.size()) + " rankings, oracle " +
                    std::to_string(expect.rankings.size()));
    }
    ++instances;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (seconds >= 300.0)
    return fail("exceeded the 5-minute budget: " + std::to_string(seconds) + "s");
  g_detail = std::to_string(instances) + " instances, " + std::to_string(seconds) + "s";
  return true;
}

// ---------------------------------------------------------------------------
// 2. Special-class factorial counts.

long long factorial(int c) {
  long long f = 1;
  for (int i = 2; i <= c; ++i) f *= i;
  return f;
}

bool criterion_special_counts() {
  const DominanceMatrix headline =
      generate({.kind = GenKind::special, .n = 10, .block_begin = 6, .block_end = 10});
  const OptimalSet s = solve_enumerate(lop_problem(headline), 10000);
  if (s.rankings.size() != 120 || !s.complete)
    return fail("block 6..10 of n=10: expected exactly 120 complete optima, got " +
                std::to_string(s.rankings.size()) + (s.complete ? "" : " (incomplete)"));

  const int n = 10;
  for (int c = 2; c <= 5; ++c) {
    const std::vector<std::pair<int, int>> placements = {
        {1, c}, {(n - c) / 2 + 1, (n - c) / 2 + c}, {n - c + 1, n}};
    for (auto [b, e] : placements) {
      const DominanceMatrix d =
          generate({.kind = GenKind::special, .n = n, .block_begin = b, .block_end = e});
      const OptimalSet set = solve_enumerate(lop_problem(d), 10000);
      if (!set.complete || set.rankings.size() != static_cast<std::size_t>(factorial(c)))
        return fail("block " + std::to_string(b) + ".." + std::to_string(e) + ": expected " +
                    std::to_string(factorial(c)) + " optima, got " +
                    std::to_string(set.rankings.size()));
    }
  }
  g_detail = "5! = 120 at block 6..10; sizes 2..5 at top/middle/bottom all factorial";
  return true;
}

// ---------------------------------------------------------------------------
// 3. Beta orders same-shape ambiguity by location, with k, p, tau equal.

bool criterion_beta_location() {
  const int n = 10, c = 4;
  const Measures top = measures(
      generate({.kind = GenKind::special, .n = n, .block_begin = 1, .block_end = c}), Method::lop);
  const Measures middle = measures(
      generate({.kind = GenKind::special, .n = n, .block_begin = 4, .block_end = 3 + c}),
      Method::lop);
  const Measures bottom = measures(
      generate({.kind = GenKind::special, .n = n, .block_begin = n - c + 1, .block_end = n}),
      Method::lop);

  if (!(top.k && middle.k && bottom.k && *top.k == *middle.k && *middle.k == *bottom.k))
    return fail("k differs across block placements");
  if (!(top.p == middle.p && middle.p == bottom.p)) return fail("p differs across placements");
  if (!(top.tau == middle.tau && middle.tau == bottom.tau))
    return fail("tau differs across placements");
  if (!(bottom.beta < middle.beta && middle.beta < top.beta))
    return fail("beta not strictly decreasing top->middle->bottom: " + top.beta.to_string() +
                ", " + middle.beta.to_string() + ", " + bottom.beta.to_string());
  g_detail = "k=" + top.k->to_string() + " p=" + std::to_string(top.p) +
             " tau=" + std::to_string(top.tau) + "; beta " + top.beta.to_string() + " > " +
             middle.beta.to_string() + " > " + bottom.beta.to_string();
  return true;
}

// ---------------------------------------------------------------------------
// 4. Trivial extremes.

bool criterion_trivial_extremes() {
  const Measures perfect = measures(
      generate({.kind = GenKind::dominance_plus_noise, .n = 6, .percent = 0.0, .seed = 0}),
      Method::lop);
  if (!(perfect.k && *perfect.k == Rational(0) && perfect.p == 1 && perfect.tau == 0 &&
        perfect.beta == Rational(0)))
    return fail("perfect dominance n=6: expected (0, 1, 0, 0)");

  const Measures empty = measures(generate({.kind = GenKind::empty, .n = 5}), Method::lop);
  if (empty.p != 120) return fail("empty n=5: expected p = 5! = 120, got " + std::to_string(empty.p));
  if (empty.tau != 10) return fail("empty n=5: expected tau = 10, got " + std::to_string(empty.tau));
  g_detail = "perfect n=6 -> (0,1,0,0); empty n=5 -> p=120, tau=10";
  return true;
}

// ---------------------------------------------------------------------------
// 5. Rating identities on 100 random schedules.

std::vector<GameRecord> random_schedule(std::mt19937_64& rng, int n, int extra) {
  std::vector<GameRecord> games;
  std::uniform_int_distribution<long long> score(0, 60);
  for (int i = 1; i < n; ++i) games.push_back({i - 1, score(rng), i, score(rng)});
  std::uniform_int_distribution<int> team(0, n - 1);
  for (int g = 0; g < extra; ++g) {
    int a = team(rng), b = team(rng);
    if (a == b) b = (b + 1) % n;
    games.push_back({a, score(rng), b, score(rng)});
  }
  return games;
}

bool criterion_rating_identities() {
  std::mt19937_64 rng(0xC0117EE);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 19;  // n <= 20
    const auto games = random_schedule(rng, n, static_cast<int>(rng() % (2 * n)));

    const RatingResult m = massey(games, n);
    if (std::abs(m.ratings.sum()) > 1e-9)
      return fail("massey ratings sum off zero on trial " + std::to_string(trial));

    const RatingResult c = colley(games, n);
    if (std::abs(c.ratings.sum() - n / 2.0) > 1e-9)
      return fail("colley ratings sum off n/2 on trial " + std::to_string(trial));

    std::vector<GameRecord> scaled = games;
    for (auto& g : scaled) {
      g.score_a *= 7;
      g.score_b *= 7;
    }
    const RatingResult c2 = colley(scaled, n);
    for (int i = 0; i < n; ++i)
      if (c.ratings(i) != c2.ratings(i))
        return fail("colley ratings moved under score scaling on trial " + std::to_string(trial));
  }
  g_detail = "100 schedules, n <= 20: massey sum 0, colley sum n/2, scale-invariant";
  return true;
}

// ---------------------------------------------------------------------------
// 6. Ingestion fidelity.

bool criterion_ingestion() {
  const DominanceMatrix games = ingest_games(parse_games_csv("Arizona,71,Maryland,67\n"));
  const auto& names = *games.item_names;
  const int az = names[0] == "Arizona" ? 0 : 1;
  const int md = 1 - az;
  if (!(games.entries(az, md) == Rational(1) && games.entries(md, az) == Rational(0)))
    return fail("single game row did not produce D(winner,loser)=1, D(loser,winner)=0");

  const FeatureTable t = parse_features_csv(
      "name,f1,f2,f3,f4,f5,f6\n"
      "Amherst,9,8,9,7,9,9\n"
      "Bowdoin,5,4,3,2,1,0\n"
      "Colby,9,4,9,2,1,9\n");
  const DominanceMatrix f = ingest_features(t, std::vector<bool>(6, true));
  const int a = 0, b = 1;  // alphabetical: Amherst, Bowdoin, Colby
  if (!(f.entries(a, b) == Rational(6) && f.entries(b, a) == Rational(0)))
    return fail("strict 6-feature dominator did not score D(A,B)=6");
  for (int i = 0; i < f.n(); ++i)
    for (int j = 0; j < f.n(); ++j)
      if (Rational(6) < f.entries(i, j)) return fail("feature count exceeded 6");
  g_detail = "game row -> one win cell; 6-feature dominator -> D(A,B)=6, entries <= 6";
  return true;
}

// ---------------------------------------------------------------------------
// 7. Model-card canonicality: 100 generated cards round trip byte-identically.

ModelCard random_card(std::mt19937_64& rng) {
  const int n = 2 + static_cast<int>(rng() % 5);
  const bool binary = rng() % 2 == 0;
  DominanceMatrix d = make_dominance(oracle::random_matrix(rng, n, 0, 4, binary));
  if (rng() % 2 == 0) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("item " + std::to_string(i));
    d = make_dominance(d.entries, names);
  }
  const Method method = rng() % 2 == 0 ? Method::lop : Method::hillside;
  const Analysis a = analyze(d, method, SolveOptions{500, 1});
  std::optional<GenSpec> prov;
  if (rng() % 3 == 0)
    prov = GenSpec{.kind = GenKind::simulate_games, .n = n, .p_upset = 0.25, .games_per_pair = 3,
                   .seed = rng()};
  return build_card(d, a, static_cast<long long>(rng() % 100000),
                    rng() % 2 ? "artificial" : "user", prov);
}

bool criterion_card_canonicality() {
  std::mt19937_64 rng(0xCA9D);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelCard card = random_card(rng);
    const std::string text = emit(card);
    ModelCard back;
    try {
      back = parse(text);
    } catch (const std::exception& e) {
      return fail("emitted card failed to parse on trial " + std::to_string(trial) + ": " +
                  e.what());
    }
    if (!(back == card)) return fail("parse(emit(card)) != card on trial " + std::to_string(trial));
    if (emit(back) != text) return fail("re-emit changed bytes on trial " + std::to_string(trial));
  }

  const char* fixture_dir = std::getenv("LINORD_FIXTURES");
  const std::filesystem::path golden_path =
      std::filesystem::path(fixture_dir ? fixture_dir : "tests/fixtures") / "minimal_card.json";
  std::ifstream in(golden_path, std::ios::binary);
  if (!in) return fail("golden fixture missing: " + golden_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  RationalMatrix m = RationalMatrix::Constant(2, 2, Rational(0));
  m(0, 1) = Rational(1);
  const DominanceMatrix d = make_dominance(m);
  const ModelCard golden = build_card(d, analyze(d, Method::lop), 1, "golden");
  if (emit(golden) != buffer.str()) return fail("golden card bytes changed");
  if (!(parse(buffer.str()) == golden)) return fail("golden card no longer parses to itself");
  g_detail = "100 cards round-tripped byte-identically; golden file stable";
  return true;
}

// ---------------------------------------------------------------------------
// 8. Filter semantics on planted catalog fixtures.

ModelCard planted_card(long long id, const std::string& source, int n,
                       std::uint64_t num_optima) {
  ModelCard c;
  c.dataset_id = id;
  c.source = source;
  c.n = n;
  c.D = RationalMatrix::Constant(n, n, Rational(0));
  c.method = Method::lop;
  c.sense = Sense::maximize;
  c.optimal_objective = Rational(0);
  c.num_optimal_rankings = num_optima;
  c.measures.p = num_optima;
  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> swapped = identity;
  std::swap(swapped[0], swapped[1]);
  if (num_optima == 1) {
    c.complete = true;
    c.optimal_rankings = {identity};
    c.diameter = 0;
    c.measures.tau = 0;
    c.farthest_pair = {identity, identity};
  } else {
    c.complete = num_optima == 2;
    c.optimal_rankings = {identity, swapped};
    c.diameter = 1;
    c.measures.tau = 1;
    c.farthest_pair = {identity, swapped};
    c.closest_pair = {{identity, swapped}};
  }
  c.centroid_solution = identity;
  c.centroid_farthest = c.optimal_rankings.back();
  c.measures.beta = Rational(0);
  c.measures.k = Rational(0);
  return c;
}

bool criterion_filter_semantics() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "linord_acceptance_catalog";
  fs::remove_all(dir);
  fs::create_directories(dir);

  struct Plant {
    long long id;
    std::string source;
    int n;
    std::uint64_t optima;
  };
  const std::vector<Plant> plants = {
      {101, "LOLIB", 28, 1},         {102, "LOLIB", 31, 4},    {103, "LOLIB", 33, 2},
      {104, "LOLIB", 34, 1},         {105, "LOLIB", 35, 6},    {106, "LOLIB", 44, 3},
      {201, "MarchMadness", 65, 1095}, {202, "MarchMadness", 65, 840},
      {203, "MarchMadness", 64, 2048}, {204, "MarchMadness", 63, 1000},
      {301, "artificial", 32, 5000}};
  for (const Plant& p : plants) {
    const ModelCard card = planted_card(p.id, p.source, p.n, p.optima);
    std::ofstream(dir / (std::to_string(p.id) + ".json")) << emit(card);
  }

  const Catalog catalog = load_catalog(dir);
  if (!catalog.warnings.empty()) return fail("fixture cards failed to parse: " + catalog.warnings[0]);
  if (catalog.cards.size() != plants.size()) return fail("fixture catalog incomplete");

  const auto lolib = filter_ids(catalog.cards, "source==LOLIB && n>30 && n<35");
  if (lolib != std::vector<long long>{102, 103, 104})
    return fail("LOLIB 30<n<35 query returned the wrong ids");

  const auto madness =
      filter_ids(catalog.cards, "source==MarchMadness && num_optimal_rankings>1000");
  if (madness != std::vector<long long>{201, 203})
    return fail("MarchMadness >1000 optima query returned the wrong ids");

  if (!filter_ids({}, "n>0").empty()) return fail("empty catalog matched something");
  fs::remove_all(dir);
  g_detail = "both figure queries returned exactly the planted ids";
  return true;
}

// ---------------------------------------------------------------------------
// 9. Determinism across runs and worker counts, library and CLI.

std::string run_cli(const std::string& command, int* exit_code) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char chunk[4096];
  std::size_t got;
  while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0) out.append(chunk, got);
  *exit_code = pclose(pipe);
  return out;
}

bool criterion_determinism() {
  // Seeded generators: identical spec, identical bytes.
  const GenSpec spec{.kind = GenKind::empty_plus_noise, .n = 8, .percent = 35.0, .lo = 1,
                     .hi = 6, .seed = 424242};
  if (write_matrix(generate(spec)) != write_matrix(generate(spec)))
    return fail("generator produced different bytes across runs");

  // Solver: emitted cards identical for 1 vs 4 workers.
  std::mt19937_64 rng(0xDE7E12);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 3);
    const DominanceMatrix d =
        make_dominance(oracle::random_matrix(rng, n, 0, 3, trial % 2 == 0));
    const Method method = trial % 2 == 0 ? Method::lop : Method::hillside;
    const std::string one =
        emit(build_card(d, analyze(d, method, SolveOptions{200, 1}), 1, "det"));
    const std::string four =
        emit(build_card(d, analyze(d, method, SolveOptions{200, 4}), 1, "det"));
    if (one != four) return fail("solver output changed with worker count");
  }

  // End to end through the binary, when available.
  const char* bin = std::getenv("LINORD_BIN");
  if (bin && *bin) {
    const std::string gen_cmd = std::string(bin) +
        " generate --kind empty_plus_noise --n 5 --percent 20 --lo 2 --hi 4 --seed 7";
    int rc1 = 0, rc2 = 0;
    const std::string first = run_cli(gen_cmd, &rc1);
    const std::string second = run_cli(gen_cmd, &rc2);
    if (rc1 != 0 || rc2 != 0 || first.empty() || first != second)
      return fail("CLI generate runs disagreed");

    namespace fs = std::filesystem;
    const fs::path matrix_path = fs::temp_directory_path() / "linord_det.txt";
    std::ofstream(matrix_path) << write_matrix(generate(
        {.kind = GenKind::hillside_plus_noise, .n = 7, .percent = 30.0, .lo = 0, .hi = 4,
         .seed = 99}));
    const std::string solve_base = std::string(bin) + " solve --in " + matrix_path.string() +
                                   " --method hillside --dataset-id 9 --source det";
    int rc3 = 0, rc4 = 0;
    const std::string t1 = run_cli(solve_base + " --threads 1", &rc3);
    const std::string t4 = run_cli(solve_base + " --threads 4", &rc4);
    fs::remove(matrix_path);
    if (rc3 != 0 || rc4 != 0 || t1.empty() || t1 != t4)
      return fail("CLI solve output changed with --threads");
    g_detail = "library + CLI byte-identical across runs and worker counts";
  } else {
    g_detail = "library byte-identical across runs and worker counts (CLI env not set)";
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence (200 random instances, lop/hillside/k)", criterion_oracle_equivalence},
      {2, "special-class factorial optimal counts", criterion_special_counts},
      {3, "beta orders ambiguity location, k/p/tau constant", criterion_beta_location},
      {4, "trivial extremes: perfect and empty matrices", criterion_trivial_extremes},
      {5, "rating identities: massey sum 0, colley sum n/2, scale-invariant", criterion_rating_identities},
      {6, "ingestion fidelity: games and 6-feature pipelines", criterion_ingestion},
      {7, "model-card canonicality and golden-file stability", criterion_card_canonicality},
      {8, "filter semantics on planted catalog fixtures", criterion_filter_semantics},
      {9, "determinism across seeds and worker counts", criterion_determinism},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    g_detail.clear();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      g_detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title;
    if (!g_detail.empty()) std::cout << " — " << g_detail;
    std::cout << "\n";
    all_ok = all_ok && ok;
  }
  std::cout << (all_ok ? "acceptance: all criteria passed\n" : "acceptance: FAILURES above\n");
  return all_ok ? 0 : 1;
}
