#include "linord/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace linord {

namespace {

bool mul_overflow(long long a, long long b, long long* out) {
  return __builtin_mul_overflow(a, b, out);
}

long long checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<long long>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Counts inversions of seq in place. Classic merge-sort count.
long long count_inversions(std::vector<int>& seq, std::vector<int>& buf, int lo, int hi) {
  if (hi - lo <= 1) return 0;
  int mid = lo + (hi - lo) / 2;
  long long inv = count_inversions(seq, buf, lo, mid) + count_inversions(seq, buf, mid, hi);
  int i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (seq[i] <= seq[j]) {
      buf[k++] = seq[i++];
    } else {
      inv += mid - i;
      buf[k++] = seq[j++];
    }
  }
  while (i < mid) buf[k++] = seq[i++];
  while (j < hi) buf[k++] = seq[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, seq.begin() + lo);
  return inv;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw std::overflow_error("rational overflow");
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::from_int128(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = checked_narrow(num);
  r.den_ = checked_narrow(den);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    long long s;
    if (!__builtin_add_overflow(num_, o.num_, &s)) {
      num_ = s;
      return *this;
    }
  }
  *this = from_int128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    long long p;
    if (!mul_overflow(num_, o.num_, &p)) {
      num_ = p;
      return *this;
    }
  }
  *this = from_int128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  *this = from_int128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::string Rational::to_string() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");

  auto digits_to_i128 = [&](std::string_view d) -> __int128 {
    __int128 v = 0;
    for (char c : d) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
      if (v > static_cast<__int128>(INT64_MAX) * 1000000)
        throw std::overflow_error("rational literal too large");
    }
    return v;
  };

  __int128 num = 0, den = 1;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    if (dot != std::string_view::npos || slash == 0 || slash + 1 == s.size())
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    num = digits_to_i128(s.substr(0, slash));
    den = digits_to_i128(s.substr(slash + 1));
  } else if (dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    num = whole.empty() ? 0 : digits_to_i128(whole);
    for (char c : frac) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
      num = num * 10 + (c - '0');
      den *= 10;
      if (den > static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("rational literal too precise");
    }
  } else {
    num = digits_to_i128(s);
  }
  if (neg) num = -num;
  return from_int128(num, den);
}

std::string to_decimal_string(const Rational& r) {
  if (r.is_integer()) return std::to_string(r.num());
  long long d = r.den();
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return r.to_string();  // non-terminating decimal
  int digits = std::max(twos, fives);
  __int128 scaled = r.num();
  for (int i = 0; i < digits; ++i) scaled *= 10;
  scaled /= r.den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string ds;
  for (__int128 v = scaled; v > 0 || ds.empty(); v /= 10) ds.insert(ds.begin(), char('0' + int(v % 10)));
  while (static_cast<int>(ds.size()) <= digits) ds.insert(ds.begin(), '0');
  ds.insert(ds.size() - digits, ".");
  while (ds.back() == '0') ds.pop_back();
  if (ds.back() == '.') ds.pop_back();
  return neg ? "-" + ds : ds;
}

std::string_view to_string(Sense s) { return s == Sense::maximize ? "maximize" : "minimize"; }

Sense sense_from_string(std::string_view s) {
  if (s == "maximize") return Sense::maximize;
  if (s == "minimize") return Sense::minimize;
  throw std::invalid_argument("unknown sense '" + std::string(s) + "'");
}

bool Ranking::is_valid() const {
  const int n = size();
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return n > 0;
}

Ranking Ranking::identity(int n) {
  Ranking r;
  r.order.resize(n);
  for (int i = 0; i < n; ++i) r.order[i] = i;
  return r;
}

int kendall_tau(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const int n = a.size();
  std::vector<int> pos_b(n);
  for (int p = 0; p < n; ++p) pos_b[b.order[p]] = p;
  // Discordant pairs == inversions of b's positions read in a's order.
  std::vector<int> seq(n);
  for (int p = 0; p < n; ++p) seq[p] = pos_b[a.order[p]];
  std::vector<int> buf(n);
  return static_cast<int>(count_inversions(seq, buf, 0, n));
}

std::vector<int> rank_vector(const Ranking& r) {
  std::vector<int> v(r.size());
  for (int p = 0; p < r.size(); ++p) v[r.order[p]] = p + 1;
  return v;
}

Ranking from_rank_vector(const std::vector<int>& v) {
  const int n = static_cast<int>(v.size());
  Ranking r;
  r.order.assign(n, -1);
  for (int item = 0; item < n; ++item) {
    int pos = v[item];
    if (pos < 1 || pos > n || r.order[pos - 1] != -1)
      throw std::invalid_argument("rank vector is not a permutation of 1..n");
    r.order[pos - 1] = item;
  }
  return r;
}

DominanceMatrix make_dominance(RationalMatrix entries,
                               std::optional<std::vector<std::string>> item_names) {
  const auto rows = entries.rows();
  if (rows < 1 || entries.cols() != rows)
    throw std::invalid_argument("dominance matrix must be square with n >= 1");
  bool weighted = false;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) {
      const Rational& e = entries(i, j);
      if (i == j && !e.is_zero())
        throw std::invalid_argument("dominance matrix diagonal must be zero");
      if (e.sign() < 0) throw std::invalid_argument("dominance matrix entries must be nonnegative");
      if (!(e == Rational(0) || e == Rational(1))) weighted = true;
    }
  }
  if (item_names && static_cast<Eigen::Index>(item_names->size()) != rows)
    throw std::invalid_argument("item_names size must match matrix size");
  DominanceMatrix d;
  d.entries = std::move(entries);
  d.item_names = std::move(item_names);
  d.weighted = weighted;
  return d;
}

}  // namespace linord
