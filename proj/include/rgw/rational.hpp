#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rgw {

class ExactOverflow : public std::overflow_error {
public:
  ExactOverflow() : std::overflow_error("exact rational arithmetic overflow") {}
};

/// Exact rational scalar on a 64-bit numerator/denominator pair, reduced
/// eagerly. Intermediates run in 128 bits; a reduced result that does not
/// fit 64 bits throws ExactOverflow rather than silently losing exactness.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) { *this = make(n, d); }

  /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  using i128 = __int128;

  static i128 iabs(i128 x) { return x < 0 ? -x : x; }

  static i128 gcd128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    i128 g = gcd128(n, d);
    n /= g;
    d /= g;
    constexpr i128 lo = -i128(INT64_MAX), hi = i128(INT64_MAX);
    if (n < lo || n > hi || d > hi) throw ExactOverflow();
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational Rational::parse(const std::string& text) {
  size_t b = text.find_first_not_of(" \t");
  size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
  std::string s = text.substr(b, e - b + 1);
  size_t slash = s.find('/');
  auto to_ll = [](const std::string& part) {
    size_t pos = 0;
    long long v = std::stoll(part, &pos);
    if (pos != part.size()) throw std::invalid_argument("malformed rational literal: " + part);
    return v;
  };
  if (slash == std::string::npos) return Rational(to_ll(s));
  return Rational(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

}  // namespace rgw
