#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace scpir {

// Exact rational on 64-bit integers: always lowest terms, denominator > 0.
// Every operation detects overflow and throws std::overflow_error instead of
// wrapping. Download costs, storage fractions and mixing weights are compared
// through this type only; floating point is a display convenience.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;

  bool operator==(const Rational& other) const = default;
  std::strong_ordering operator<=>(const Rational& other) const;

  double to_double() const;
  std::string str() const;  // "p" when integral, else "p/q"

 private:
  static Rational already_reduced(std::int64_t numerator, std::int64_t denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace scpir
