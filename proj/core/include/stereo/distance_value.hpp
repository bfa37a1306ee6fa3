#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stereo {

/// An exact rational stored in lowest terms, or +infinity.
///
/// Values are totally ordered: finite values by rational value, infinity above all of
/// them. Comparison is exact for every representable value (cross products are taken in
/// 128 bits); arithmetic throws std::overflow_error if a result leaves 64 bits.
class DistanceValue {
 public:
  constexpr DistanceValue() = default;
  constexpr DistanceValue(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)
  /// Throws std::invalid_argument if `denominator` is zero.
  DistanceValue(std::int64_t numerator, std::int64_t denominator);

  static constexpr DistanceValue infinity() {
    DistanceValue v;
    v.infinite_ = true;
    return v;
  }

  /// Accepts "inf", an integer "n", or "p/q" (q nonzero); nullopt otherwise.
  static std::optional<DistanceValue> parse(std::string_view text);

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  /// "inf", "n" when integral, otherwise "p/q".
  std::string to_string() const;

  friend DistanceValue operator+(const DistanceValue& a, const DistanceValue& b);
  friend DistanceValue operator-(const DistanceValue& a, const DistanceValue& b);

  friend bool operator==(const DistanceValue&, const DistanceValue&) = default;
  friend std::strong_ordering operator<=>(const DistanceValue& a, const DistanceValue& b);

 private:
  bool infinite_ = false;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace stereo
