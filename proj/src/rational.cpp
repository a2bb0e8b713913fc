#include "scpir/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace scpir {
namespace {

using Wide = __int128;

constexpr Wide kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr Wide kInt64Max = std::numeric_limits<std::int64_t>::max();

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Parts {
  std::int64_t num;
  std::int64_t den;
};

Parts reduce(Wide num, Wide den) {
  if (den == 0) {
    throw std::domain_error("rational: division by zero");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(wide_abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) {
    den = 1;
  }
  if (num < kInt64Min || num > kInt64Max || den > kInt64Max) {
    throw std::overflow_error("rational: value outside 64-bit range");
  }
  return Parts{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

}  // namespace

Rational Rational::already_reduced(std::int64_t numerator, std::int64_t denominator) {
  Rational r;
  r.num_ = numerator;
  r.den_ = denominator;
  return r;
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  Parts p = reduce(Wide(numerator), Wide(denominator));
  num_ = p.num;
  den_ = p.den;
}

Rational Rational::operator-() const {
  Parts p = reduce(-Wide(num_), Wide(den_));
  return already_reduced(p.num, p.den);
}

Rational Rational::operator+(const Rational& other) const {
  Parts p = reduce(Wide(num_) * other.den_ + Wide(other.num_) * den_,
                   Wide(den_) * other.den_);
  return already_reduced(p.num, p.den);
}

Rational Rational::operator-(const Rational& other) const {
  Parts p = reduce(Wide(num_) * other.den_ - Wide(other.num_) * den_,
                   Wide(den_) * other.den_);
  return already_reduced(p.num, p.den);
}

Rational Rational::operator*(const Rational& other) const {
  Parts p = reduce(Wide(num_) * other.num_, Wide(den_) * other.den_);
  return already_reduced(p.num, p.den);
}

Rational Rational::operator/(const Rational& other) const {
  if (other.num_ == 0) {
    throw std::domain_error("rational: division by zero");
  }
  Parts p = reduce(Wide(num_) * other.den_, Wide(den_) * other.num_);
  return already_reduced(p.num, p.den);
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  // Denominators are positive, so cross multiplication preserves order.
  Wide lhs = Wide(num_) * other.den_;
  Wide rhs = Wide(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [](std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'");
    }
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_int(text));
  }
  std::int64_t num = parse_int(std::string_view(text).substr(0, slash));
  std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) {
    throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  }
  return Rational(num, den);
}

}  // namespace scpir
