#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pamc {

class Rng;

using Spin = std::int8_t;

/// A sequence of Ising spins, each exactly -1 or +1.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  /// n spins, all -1.
  explicit SpinConfiguration(std::size_t n) : spins_(n, Spin{-1}) {}
  /// Throws std::invalid_argument if any value is not -1 or +1.
  explicit SpinConfiguration(std::vector<Spin> spins);
  SpinConfiguration(std::initializer_list<int> spins);

  std::size_t size() const noexcept { return spins_.size(); }
  Spin operator[](std::size_t i) const noexcept { return spins_[i]; }
  Spin at(std::size_t i) const;

  void flip(std::size_t i) noexcept { spins_[i] = static_cast<Spin>(-spins_[i]); }
  void set(std::size_t i, bool up) noexcept { spins_[i] = up ? Spin{1} : Spin{-1}; }

  std::span<const Spin> spins() const noexcept { return spins_; }

  /// Every spin negated.
  SpinConfiguration flipped() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::vector<Spin> spins_;
};

SpinConfiguration flipped_at(const SpinConfiguration& s, std::size_t i);

class HexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of hex digits needed for n spins.
constexpr std::size_t hex_length(std::size_t n) noexcept { return (n + 3) / 4; }

/// Expands each hex digit into 4 bits, most significant bit first, assigning
/// bits to variables 0..n-1 in order; bit 1 is spin +1 and bit 0 is spin -1.
/// Upper- and lowercase digits are accepted. Bits past n must be zero.
SpinConfiguration decode_hex(std::string_view hex, std::size_t n);

/// Inverse of decode_hex. Emits lowercase and pads the last digit with zeros.
std::string encode_hex(const SpinConfiguration& s);

/// Reads all of `in`, dropping whitespace, and returns the remaining token.
std::string read_hex_token(std::istream& in);

/// Each spin independently +1 or -1 with probability 1/2.
SpinConfiguration random_config(std::size_t n, Rng& rng);

// One spin per line, written as "1" or "-1"; "+1" is accepted on input.
void write_spin_lines(std::ostream& out, const SpinConfiguration& s);
SpinConfiguration read_spin_lines(std::istream& in);

}  // namespace pamc
