#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace stereo {

/// Maximum number of worlds a space may declare; an InfoSet is one machine word.
inline constexpr std::size_t kMaxWorlds = 64;

/// A set of worlds, as a bit-mask over world indices of one WorldSpace.
class InfoSet {
 public:
  constexpr InfoSet() = default;
  constexpr explicit InfoSet(std::uint64_t bits) : bits_(bits) {}

  /// All worlds of a space with `count` worlds.
  static constexpr InfoSet full(std::size_t count) {
    return InfoSet(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
  }
  static constexpr InfoSet singleton(std::size_t world) {
    return InfoSet(std::uint64_t{1} << world);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t world) const { return (bits_ >> world) & 1U; }
  constexpr bool subset_of(InfoSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(InfoSet other) const { return (bits_ & other.bits_) != 0; }

  /// Index of the lowest world in the set; the set must be nonempty.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  constexpr InfoSet operator|(InfoSet o) const { return InfoSet(bits_ | o.bits_); }
  constexpr InfoSet operator&(InfoSet o) const { return InfoSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr InfoSet operator-(InfoSet o) const { return InfoSet(bits_ & ~o.bits_); }
  constexpr InfoSet& operator|=(InfoSet o) { bits_ |= o.bits_; return *this; }
  constexpr InfoSet& operator&=(InfoSet o) { bits_ &= o.bits_; return *this; }

  constexpr friend bool operator==(InfoSet, InfoSet) = default;
  constexpr friend auto operator<=>(InfoSet, InfoSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace stereo
