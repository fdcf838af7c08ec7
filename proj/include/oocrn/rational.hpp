#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "oocrn/error.hpp"

namespace oocrn {

// Exact rational on int64, kept in lowest terms with a positive denominator.
// All spec evaluation goes through this type; no floating point anywhere.
class rational {
public:
  constexpr rational() = default;
  rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_nonnegative() const noexcept { return num_ >= 0; }

  // Throws errc::integrality when the value is not an integer.
  std::int64_t as_integer(const std::string& what = "value") const {
    if (!is_integer()) fail(errc::integrality, what + " is not an integer: " + str());
    return num_;
  }

  rational operator-() const { return raw(-num_, den_); }

  friend rational operator+(const rational& a, const rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    return rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
  }
  friend rational operator-(const rational& a, const rational& b) { return a + (-b); }
  friend rational operator*(const rational& a, const rational& b) {
    const std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
    const std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
    return raw((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
  }
  friend rational operator*(const rational& a, std::int64_t k) { return a * rational(k); }

  friend bool operator==(const rational& a, const rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const rational& a, const rational& b) {
    // Denominators are positive, so cross-multiplication preserves order.
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const rational& a, const rational& b) { return a == b || a < b; }
  friend bool operator>(const rational& a, const rational& b) { return b < a; }
  friend bool operator>=(const rational& a, const rational& b) { return b <= a; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "n" or "n/d" with optional leading minus on the numerator.
  static rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const std::int64_t n = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return rational(n);
      }
      const std::int64_t n = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      const std::int64_t d = std::stoll(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1) throw std::invalid_argument(text);
      if (d == 0) fail(errc::parse, "malformed rational (zero denominator): " + text);
      return rational(n, d);
    } catch (const std::invalid_argument&) {
      fail(errc::parse, "malformed rational: " + text);
    } catch (const std::out_of_range&) {
      fail(errc::parse, "rational out of range: " + text);
    }
  }

private:
  static rational raw(std::int64_t n, std::int64_t d) {
    rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ == 0) fail(errc::domain, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace oocrn
