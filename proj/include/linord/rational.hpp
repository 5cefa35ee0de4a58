#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace linord {

/// Exact rational scalar: reduced num/den pair with den > 0. All arithmetic
/// and comparisons are exact; intermediates go through 128-bit integers and
/// std::overflow_error is thrown if a reduced result leaves the 64-bit range.
/// Usable as an Eigen matrix scalar (NumTraits specialization below).
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  constexpr Rational(int value) : num_(value) {}        // NOLINT
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Canonical text form: "7", "-3/4". Integers never carry a denominator.
  std::string to_string() const;

  /// Accepts "7", "-3/4", "2.5", ".5", "+1e2" is NOT accepted (no exponents).
  static Rational parse(std::string_view text);

 private:
  static Rational from_int128(__int128 num, __int128 den);

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// "0.5" for terminating decimals, to_string() fallback otherwise. Display
/// helper only; canonical serialization uses to_string().
std::string to_decimal_string(const Rational& r);

}  // namespace linord

namespace Eigen {
template <>
struct NumTraits<linord::Rational> : GenericNumTraits<linord::Rational> {
  typedef linord::Rational Real;
  typedef linord::Rational NonInteger;
  typedef linord::Rational Nested;
  typedef linord::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
