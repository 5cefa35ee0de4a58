#include "linord/lop.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace linord {

namespace {

// Internal minimize-only view; a maximize problem is solved as its negation.
struct MinForm {
  int n = 0;
  std::vector<Rational> cost;     // row-major
  std::vector<Rational> pairmin;  // pm(i,j) = min(cost(i,j), cost(j,i))

  const Rational& c(int i, int j) const { return cost[static_cast<std::size_t>(i) * n + j]; }
  const Rational& pm(int i, int j) const { return pairmin[static_cast<std::size_t>(i) * n + j]; }
};

MinForm to_min_form(const CostProblem& p) {
  const int n = p.n();
  if (n < 1) throw std::invalid_argument("cost problem must have n >= 1");
  if (p.cost.cols() != p.cost.rows()) throw std::invalid_argument("cost matrix must be square");
  MinForm f;
  f.n = n;
  f.cost.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& c = p.cost(i, j);
      if (i == j && !c.is_zero()) throw std::invalid_argument("cost diagonal must be zero");
      f.cost[static_cast<std::size_t>(i) * n + j] = p.sense == Sense::maximize ? -c : c;
    }
  }
  f.pairmin.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational& m = std::min(f.c(i, j), f.c(j, i));
      f.pairmin[static_cast<std::size_t>(i) * n + j] = m;
      f.pairmin[static_cast<std::size_t>(j) * n + i] = m;
    }
  }
  return f;
}

// Prefix-assignment search state. Placing item x appends it to the ordering,
// ahead of everything unassigned. Invariant: bound() = g + crosssum + pm where
//   g        = cost of pairs fully inside the prefix,
//   crosssum = cost of (prefix item, unassigned item) pairs — already decided,
//   pm       = sum over unassigned pairs of the cheaper orientation.
// bound() never overstates the best completion, and equals the objective at a
// leaf, so pruning on it is exact.
class Walker {
 public:
  explicit Walker(const MinForm& f)
      : f_(f), n_(f.n), used_(static_cast<std::size_t>(f.n), 0),
        cross_(static_cast<std::size_t>(f.n), Rational(0)),
        delta_(static_cast<std::size_t>(f.n), Rational(0)) {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) pm_ += f_.pm(i, j);
    // delta_[x] = what placing x next locks in beyond the pair-minimum
    // estimate over the currently unassigned items; kept incrementally.
    for (int x = 0; x < n_; ++x)
      for (int u = 0; u < n_; ++u)
        if (u != x) delta_[x] += f_.c(x, u) - f_.pm(x, u);
    prefix_.reserve(static_cast<std::size_t>(n_));
  }

  int n() const { return n_; }
  int depth() const { return static_cast<int>(prefix_.size()); }
  bool used(int x) const { return used_[static_cast<std::size_t>(x)] != 0; }
  const std::vector<int>& prefix() const { return prefix_; }
  const Rational& leaf_value() const { return g_; }

  Rational bound() const { return g_ + crosssum_ + pm_; }

  // bound() of the child reached by placing x next; never below bound().
  Rational child_bound(int x) const { return bound() + delta_[x]; }

  void push(int x) {
    g_ += cross_[x];
    crosssum_ -= cross_[x];
    for (int u = 0; u < n_; ++u) {
      if (used_[u] || u == x) continue;
      const Rational& cxu = f_.c(x, u);
      cross_[u] += cxu;
      crosssum_ += cxu;
      pm_ -= f_.pm(x, u);
      delta_[u] -= f_.c(u, x) - f_.pm(u, x);
    }
    used_[x] = 1;
    prefix_.push_back(x);
  }

  void pop() {
    const int x = prefix_.back();
    prefix_.pop_back();
    used_[x] = 0;
    for (int u = 0; u < n_; ++u) {
      if (used_[u] || u == x) continue;
      const Rational& cxu = f_.c(x, u);
      cross_[u] -= cxu;
      crosssum_ -= cxu;
      pm_ += f_.pm(x, u);
      delta_[u] += f_.c(u, x) - f_.pm(u, x);
    }
    crosssum_ += cross_[x];
    g_ -= cross_[x];
  }

 private:
  const MinForm& f_;
  int n_;
  std::vector<char> used_;
  std::vector<Rational> cross_;
  std::vector<Rational> delta_;
  std::vector<int> prefix_;
  Rational g_;
  Rational crosssum_;
  Rational pm_;
};

// Monotone shared incumbent: only improvements are accepted.
struct Incumbent {
  std::mutex mu;
  std::optional<Rational> best;

  void offer(const Rational& v) {
    std::lock_guard<std::mutex> lock(mu);
    if (!best || v < *best) best = v;
  }
  std::optional<Rational> snapshot() {
    std::lock_guard<std::mutex> lock(mu);
    return best;
  }
};

void run_jobs(int threads, std::size_t job_count, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || job_count <= 1) {
    for (std::size_t i = 0; i < job_count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < job_count; i = next.fetch_add(1)) fn(i);
  };
  const int t = std::min<int>(threads, static_cast<int>(job_count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Phase 1: exact optimal value. Children are expanded cheapest bound first so
// the first dive doubles as a greedy start; a child whose bound reaches the
// incumbent can be cut along with everything after it in the sorted list.
void search_value(Walker& w, Incumbent& inc) {
  if (w.depth() == w.n()) {
    inc.offer(w.leaf_value());
    return;
  }
  struct Child {
    Rational bound;
    int x;
  };
  std::vector<Child> kids;
  for (int x = 0; x < w.n(); ++x)
    if (!w.used(x)) kids.push_back({w.child_bound(x), x});
  std::sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.x < b.x;
  });
  for (const Child& k : kids) {
    auto best = inc.snapshot();
    if (best && k.bound >= *best) break;
    w.push(k.x);
    search_value(w, inc);
    w.pop();
  }
}

Rational phase1_optimum(const MinForm& f, int threads) {
  Incumbent inc;
  if (f.n == 1 || threads <= 1) {
    Walker w(f);
    search_value(w, inc);
  } else {
    Walker root(f);
    struct Job {
      Rational bound;
      int x;
    };
    std::vector<Job> jobs;
    for (int x = 0; x < f.n; ++x) jobs.push_back({root.child_bound(x), x});
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.x < b.x;
    });
    run_jobs(threads, jobs.size(), [&](std::size_t i) {
      auto best = inc.snapshot();
      if (best && jobs[i].bound >= *best) return;
      Walker w(f);
      w.push(jobs[i].x);
      search_value(w, inc);
    });
  }
  return *inc.snapshot();
}

struct BranchResult {
  std::vector<Ranking> found;
  bool saw_more = false;
};

// Phase 2: lexicographic DFS keeping every branch whose bound still allows
// the known optimum. Stops once `budget` optima are stored and one further
// optimum is witnessed (saw_more), so completeness is decided honestly.
bool enumerate_rec(Walker& w, const Rational& optimum, std::uint64_t budget, BranchResult& out) {
  if (w.depth() == w.n()) {
    if (w.leaf_value() == optimum) {
      if (out.found.size() < budget) {
        out.found.emplace_back(Ranking{w.prefix()});
        return true;
      }
      out.saw_more = true;
      return false;
    }
    return true;
  }
  for (int x = 0; x < w.n(); ++x) {
    if (w.used(x)) continue;
    if (w.child_bound(x) > optimum) continue;
    w.push(x);
    const bool keep_going = enumerate_rec(w, optimum, budget, out);
    w.pop();
    if (!keep_going) return false;
  }
  return true;
}

BranchResult phase2_enumerate(const MinForm& f, const Rational& optimum, std::uint64_t cap,
                              int threads) {
  if (threads <= 1 || f.n == 1) {
    Walker w(f);
    BranchResult out;
    enumerate_rec(w, optimum, cap, out);
    return out;
  }
  // One job per first-position item; each subtree is enumerated in lex order,
  // so concatenation in item order and truncation at cap reproduce the
  // single-threaded answer byte for byte.
  std::vector<BranchResult> parts(static_cast<std::size_t>(f.n));
  run_jobs(threads, static_cast<std::size_t>(f.n), [&](std::size_t i) {
    Walker w(f);
    const int x = static_cast<int>(i);
    if (w.child_bound(x) > optimum) return;
    w.push(x);
    enumerate_rec(w, optimum, cap, parts[i]);
  });
  BranchResult merged;
  for (auto& part : parts) {
    merged.saw_more = merged.saw_more || part.saw_more;
    for (auto& r : part.found) merged.found.push_back(std::move(r));
  }
  if (merged.found.size() > cap) {
    merged.found.resize(cap);
    merged.saw_more = true;
  }
  return merged;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::lop: return "lop";
    case Method::hillside: return "hillside";
    case Method::k: return "k";
  }
  throw std::logic_error("bad method");
}

Method method_from_string(std::string_view s) {
  if (s == "lop") return Method::lop;
  if (s == "hillside") return Method::hillside;
  if (s == "k") return Method::k;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

CostProblem lop_problem(const DominanceMatrix& d) {
  CostProblem p;
  p.cost = d.entries;
  p.sense = Sense::maximize;
  return p;
}

CostProblem hillside_problem(const DominanceMatrix& d) {
  const int n = d.n();
  CostProblem p;
  p.cost = RationalMatrix::Constant(n, n, Rational(0));
  p.sense = Sense::minimize;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long count = 0;
      for (int k = 0; k < n; ++k) {
        if (d.entries(i, k) < d.entries(j, k)) ++count;  // column-descent violations
        if (d.entries(k, j) < d.entries(k, i)) ++count;  // row-ascent violations
      }
      p.cost(i, j) = Rational(count);
    }
  }
  return p;
}

CostProblem k_problem(const DominanceMatrix& d) {
  if (d.weighted)
    throw std::invalid_argument(
        "k objective requires a binary dominance matrix; binarize with unweighted() first");
  const int n = d.n();
  CostProblem p;
  p.cost = RationalMatrix::Constant(n, n, Rational(0));
  p.sense = Sense::minimize;
  const Rational one(1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long flips = 0;
      if (d.entries(i, j).is_zero()) ++flips;  // missing win above the diagonal
      if (d.entries(j, i) == one) ++flips;     // stray win below it
      p.cost(i, j) = Rational(flips);
    }
  }
  return p;
}

Rational objective_value(const CostProblem& p, const Ranking& r) {
  if (r.size() != p.n()) throw std::invalid_argument("ranking size does not match problem");
  Rational total;
  for (int i = 0; i < r.size(); ++i)
    for (int j = i + 1; j < r.size(); ++j) total += p.cost(r.order[i], r.order[j]);
  return total;
}

OptimalSet solve_enumerate(const CostProblem& p, const SolveOptions& opts) {
  if (opts.cap < 1) throw std::invalid_argument("cap must be >= 1");
  const MinForm f = to_min_form(p);
  const int threads = std::max(1, opts.threads);
  const Rational optimum = phase1_optimum(f, threads);
  BranchResult res = phase2_enumerate(f, optimum, opts.cap, threads);

  OptimalSet set;
  set.objective = p.sense == Sense::maximize ? -optimum : optimum;
  set.sense = p.sense;
  set.rankings = std::move(res.found);
  set.complete = !res.saw_more;
  set.cap = opts.cap;
  return set;
}

OptimalSet solve_enumerate(const CostProblem& p, std::uint64_t cap) {
  return solve_enumerate(p, SolveOptions{cap, 1});
}

Rational optimal_value(const CostProblem& p, int threads) {
  const MinForm f = to_min_form(p);
  const Rational optimum = phase1_optimum(f, std::max(1, threads));
  return p.sense == Sense::maximize ? -optimum : optimum;
}

}  // namespace linord
