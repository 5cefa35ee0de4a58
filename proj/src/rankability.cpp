#include "linord/rankability.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

namespace linord {

namespace {

// Discordant pairs from precomputed 0-based position vectors.
int kendall_from_positions(const std::vector<int>& pa, const std::vector<int>& pb) {
  const int n = static_cast<int>(pa.size());
  int discordant = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool a_ij = pa[i] < pa[j];
      const bool b_ij = pb[i] < pb[j];
      if (a_ij != b_ij) ++discordant;
    }
  return discordant;
}

long long merge_count(std::vector<int>& seq, std::vector<int>& buf, int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const int mid = lo + (hi - lo) / 2;
  long long inv = merge_count(seq, buf, lo, mid) + merge_count(seq, buf, mid, hi);
  int i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (seq[i] <= seq[j]) buf[k++] = seq[i++];
    else {
      inv += mid - i;
      buf[k++] = seq[j++];
    }
  }
  while (i < mid) buf[k++] = seq[i++];
  while (j < hi) buf[k++] = seq[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, seq.begin() + lo);
  return inv;
}

// Discordant pairs as inversions of b's positions read in a's order; the
// scratch buffers amortize allocations across a whole pairwise scan.
int kendall_ranked(const std::vector<int>& order_a, const std::vector<int>& pos_b,
                   std::vector<int>& seq, std::vector<int>& buf) {
  const int n = static_cast<int>(order_a.size());
  for (int q = 0; q < n; ++q) seq[q] = pos_b[static_cast<std::size_t>(order_a[q])];
  return static_cast<int>(merge_count(seq, buf, 0, n));
}

int popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  int count = 0;
  for (std::size_t w = 0; w < words; ++w) count += __builtin_popcountll(a[w] ^ b[w]);
  return count;
}

}  // namespace

SetGeometry set_geometry(const OptimalSet& p, int threads) {
  const std::size_t m = p.rankings.size();
  if (m == 0) throw std::invalid_argument("set_geometry: empty optimal set");
  const int n = p.rankings.front().size();

  std::vector<std::vector<int>> pos(m, std::vector<int>(n));
  for (std::size_t r = 0; r < m; ++r)
    for (int q = 0; q < n; ++q) pos[r][p.rankings[r].order[q]] = q;

  SetGeometry geo;
  geo.farthest_pair = {p.rankings.front(), p.rankings.front()};

  // Pairwise scan. P is lex-sorted, so the smallest index pair achieving an
  // extremum is also the lexicographically first one; workers take
  // interleaved rows and the merge below re-applies the same tie-break,
  // keeping the result independent of the thread count.
  struct Extremes {
    int far = -1;
    std::size_t far_i = 0, far_j = 0;
    int close = -1;
    std::size_t close_i = 0, close_j = 0;
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(m)));
  std::vector<Extremes> partial(static_cast<std::size_t>(workers));

  // Per-pair distance strategy, cheapest first. Kendall tau between two
  // rankings is the Hamming distance of their pair-orientation bitsets, so
  // for big sets the scan runs on xor+popcount; otherwise an O(n log n)
  // inversion count or the plain quadratic scan for short rankings.
  const std::size_t pair_count = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t words = (pair_count + 63) / 64;
  const bool use_bits = m >= 16 && words * m <= (std::size_t{1} << 23);  // cap at 64 MiB
  const bool use_merge_count = n >= 32;
  std::vector<std::uint64_t> bits;
  if (use_bits) {
    bits.assign(words * m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      std::size_t bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (pos[r][i] < pos[r][j]) bits[r * words + bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
  auto scan = [&](int w) {
    Extremes& e = partial[static_cast<std::size_t>(w)];
    std::vector<int> seq(static_cast<std::size_t>(n)), buf(static_cast<std::size_t>(n));
    for (std::size_t i = static_cast<std::size_t>(w); i < m; i += static_cast<std::size_t>(workers)) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const int d = use_bits ? popcount_xor(&bits[i * words], &bits[j * words], words)
                      : use_merge_count
                          ? kendall_ranked(p.rankings[i].order, pos[j], seq, buf)
                          : kendall_from_positions(pos[i], pos[j]);
        if (d > e.far || (d == e.far && (i < e.far_i || (i == e.far_i && j < e.far_j)))) {
          e.far = d;
          e.far_i = i;
          e.far_j = j;
        }
        if (d >= 1 && (e.close == -1 || d < e.close ||
                       (d == e.close && (i < e.close_i || (i == e.close_i && j < e.close_j))))) {
          e.close = d;
          e.close_i = i;
          e.close_j = j;
        }
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }

  Extremes best;
  for (const Extremes& e : partial) {
    if (e.far > best.far ||
        (e.far == best.far && (e.far_i < best.far_i ||
                               (e.far_i == best.far_i && e.far_j < best.far_j)))) {
      best.far = e.far;
      best.far_i = e.far_i;
      best.far_j = e.far_j;
    }
    if (e.close != -1 &&
        (best.close == -1 || e.close < best.close ||
         (e.close == best.close && (e.close_i < best.close_i ||
                                    (e.close_i == best.close_i && e.close_j < best.close_j))))) {
      best.close = e.close;
      best.close_i = e.close_i;
      best.close_j = e.close_j;
    }
  }
  if (best.far >= 0) geo.farthest_pair = {p.rankings[best.far_i], p.rankings[best.far_j]};
  if (best.close >= 1) geo.closest_pair = {p.rankings[best.close_i], p.rankings[best.close_j]};
  geo.diameter = std::max(best.far, 0);

  // Centroid distances compared exactly: with s[item] = sum of 1-based ranks
  // over P, m^2 * dist^2(r) = sum_item (m*rank_r[item] - s[item])^2.
  std::vector<long long> s(static_cast<std::size_t>(n), 0);
  for (std::size_t r = 0; r < m; ++r)
    for (int item = 0; item < n; ++item) s[static_cast<std::size_t>(item)] += pos[r][item] + 1;

  __int128 best_near_d2 = -1, best_far_d2 = -1;
  std::size_t near_idx = 0, far_idx = 0;
  for (std::size_t r = 0; r < m; ++r) {
    __int128 d2 = 0;
    for (int item = 0; item < n; ++item) {
      const __int128 diff =
          static_cast<__int128>(m) * (pos[r][item] + 1) - s[static_cast<std::size_t>(item)];
      d2 += diff * diff;
    }
    if (best_near_d2 < 0 || d2 < best_near_d2) {
      best_near_d2 = d2;
      near_idx = r;
    }
    if (d2 > best_far_d2) {
      best_far_d2 = d2;
      far_idx = r;
    }
  }
  geo.centroid_closest = p.rankings[near_idx];
  geo.centroid_farthest = p.rankings[far_idx];
  return geo;
}

XStar xstar(const OptimalSet& p, const Ranking& reference) {
  const std::size_t m = p.rankings.size();
  if (m == 0) throw std::invalid_argument("xstar: empty optimal set");
  const int n = reference.size();
  if (p.rankings.front().size() != n)
    throw std::invalid_argument("xstar: reference size does not match optimal set");
  if (!reference.is_valid()) throw std::invalid_argument("xstar: invalid reference ranking");

  std::vector<long long> above(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (const Ranking& r : p.rankings) {
    for (int q = 0; q < n; ++q) pos[static_cast<std::size_t>(r.order[q])] = q;
    for (int i = 0; i < n; ++i) {
      const int item_i = reference.order[i];
      for (int j = i + 1; j < n; ++j) {
        const int item_j = reference.order[j];
        if (pos[item_i] < pos[item_j]) ++above[static_cast<std::size_t>(i) * n + j];
      }
    }
  }

  XStar x;
  x.reference = reference;
  x.values = RationalMatrix::Constant(n, n, Rational(0));
  const long long count = static_cast<long long>(m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational v(above[static_cast<std::size_t>(i) * n + j], count);
      x.values(i, j) = v;
      x.values(j, i) = Rational(1) - v;
    }
  }
  return x;
}

Rational beta(const XStar& x) {
  const int n = x.n();
  Rational weighted_indecision;
  Rational total_weight;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational w(static_cast<long long>(j - i) * (n - i));
      const Rational& v = x.values(i, j);
      const Rational f = Rational(2) * std::min(v, Rational(1) - v);
      weighted_indecision += w * f;
      total_weight += w;
    }
  }
  if (total_weight.is_zero()) return Rational(0);  // n == 1
  return weighted_indecision / total_weight;
}

std::vector<std::size_t> centroid_order(const std::vector<Ranking>& rankings) {
  const std::size_t m = rankings.size();
  if (m == 0) return {};
  const int n = rankings.front().size();
  std::vector<long long> s(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> rv(m);
  for (std::size_t r = 0; r < m; ++r) {
    rv[r] = rank_vector(rankings[r]);
    for (int item = 0; item < n; ++item) s[static_cast<std::size_t>(item)] += rv[r][item];
  }
  std::vector<__int128> d2(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (int item = 0; item < n; ++item) {
      const __int128 diff =
          static_cast<__int128>(m) * rv[r][item] - s[static_cast<std::size_t>(item)];
      d2[r] += diff * diff;
    }
  }
  std::vector<std::size_t> idx(m);
  for (std::size_t r = 0; r < m; ++r) idx[r] = r;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (d2[a] != d2[b]) return d2[a] < d2[b];
    return rankings[a] < rankings[b];
  });
  return idx;
}

Analysis analyze(const DominanceMatrix& d, Method method, const SolveOptions& opts) {
  CostProblem problem;
  switch (method) {
    case Method::lop: problem = lop_problem(d); break;
    case Method::hillside: problem = hillside_problem(d); break;
    case Method::k: problem = k_problem(d); break;
  }

  Analysis a;
  a.method = method;
  a.optima = solve_enumerate(problem, opts);
  a.geometry = set_geometry(a.optima, opts.threads);
  a.consensus = xstar(a.optima, a.geometry.centroid_closest);

  a.measures.p = a.optima.rankings.size();
  a.measures.tau = a.geometry.diameter;
  a.measures.beta = beta(a.consensus);
  if (method == Method::k) {
    a.measures.k = a.optima.objective;
  } else if (!d.weighted) {
    a.measures.k = optimal_value(k_problem(d), opts.threads);
  }
  return a;
}

Measures measures(const DominanceMatrix& d, Method method, const SolveOptions& opts) {
  return analyze(d, method, opts).measures;
}

}  // namespace linord
