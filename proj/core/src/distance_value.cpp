#include "stereo/distance_value.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stereo {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("distance value out of 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

DistanceValue reduced(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return DistanceValue(narrow(num), narrow(den));
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') return std::nullopt;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) return std::nullopt;
  return v;
}

}  // namespace

DistanceValue::DistanceValue(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  i128 num = numerator;
  i128 den = denominator;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = narrow(num);
  den_ = narrow(den);
}

std::optional<DistanceValue> DistanceValue::parse(std::string_view text) {
  if (text == "inf") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (auto v = parse_int(text)) return DistanceValue(*v);
    return std::nullopt;
  }
  const auto num = parse_int(text.substr(0, slash));
  const auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  try {
    return DistanceValue(*num, *den);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

std::string DistanceValue::to_string() const {
  if (infinite_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

DistanceValue operator+(const DistanceValue& a, const DistanceValue& b) {
  if (a.infinite_ || b.infinite_) return DistanceValue::infinity();
  return reduced(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

DistanceValue operator-(const DistanceValue& a, const DistanceValue& b) {
  if (b.infinite_) throw std::domain_error("subtracting infinity");
  if (a.infinite_) return DistanceValue::infinity();
  return reduced(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const DistanceValue& a, const DistanceValue& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const i128 lhs = i128(a.num_) * b.den_;
  const i128 rhs = i128(b.num_) * a.den_;
  return lhs < rhs ? std::strong_ordering::less
                   : lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace stereo
