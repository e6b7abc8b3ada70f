#include <cctype>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "pamc/rng.hpp"
#include "pamc/spins.hpp"

namespace pamc {

SpinConfiguration::SpinConfiguration(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      throw std::invalid_argument("spin " + std::to_string(i) + " is " +
                                  std::to_string(int{spins_[i]}) + ", expected -1 or +1");
    }
  }
}

namespace {

std::vector<Spin> narrow_spins(std::initializer_list<int> spins) {
  std::vector<Spin> out;
  out.reserve(spins.size());
  for (int v : spins) {
    if (v != 1 && v != -1) throw std::invalid_argument("spin values must be -1 or +1");
    out.push_back(static_cast<Spin>(v));
  }
  return out;
}

}  // namespace

SpinConfiguration::SpinConfiguration(std::initializer_list<int> spins)
    : spins_(narrow_spins(spins)) {}

Spin SpinConfiguration::at(std::size_t i) const {
  if (i >= spins_.size()) throw std::out_of_range("spin index " + std::to_string(i));
  return spins_[i];
}

SpinConfiguration SpinConfiguration::flipped() const {
  SpinConfiguration out = *this;
  for (auto& s : out.spins_) s = static_cast<Spin>(-s);
  return out;
}

SpinConfiguration flipped_at(const SpinConfiguration& s, std::size_t i) {
  SpinConfiguration out = s;
  out.at(i);
  out.flip(i);
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

SpinConfiguration decode_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != hex_length(n)) {
    throw HexFormatError("hex string has " + std::to_string(hex.size()) +
                         " characters, expected " + std::to_string(hex_length(n)) + " for " +
                         std::to_string(n) + " variables");
  }
  SpinConfiguration s(n);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int value = hex_value(hex[d]);
    if (value < 0) {
      throw HexFormatError("invalid hex character '" + std::string(1, hex[d]) +
                           "' at position " + std::to_string(d));
    }
    for (int bit = 0; bit < 4; ++bit) {
      const bool one = (value >> (3 - bit)) & 1;
      const std::size_t var = d * 4 + bit;
      if (var < n) {
        s.set(var, one);
      } else if (one) {
        throw HexFormatError("nonzero padding bit after variable " + std::to_string(n));
      }
    }
  }
  return s;
}

std::string encode_hex(const SpinConfiguration& s) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex(hex_length(s.size()), '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    int value = 0;
    for (int bit = 0; bit < 4; ++bit) {
      const std::size_t var = d * 4 + bit;
      if (var < s.size() && s[var] == 1) value |= 1 << (3 - bit);
    }
    hex[d] = digits[value];
  }
  return hex;
}

std::string read_hex_token(std::istream& in) {
  std::string token;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    if (!std::isspace(static_cast<unsigned char>(*it))) token.push_back(*it);
  }
  return token;
}

SpinConfiguration random_config(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_config requires n >= 1");
  SpinConfiguration s(n);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) bits = rng();
    s.set(i, (bits >> (i % 64)) & 1);
  }
  return s;
}

void write_spin_lines(std::ostream& out, const SpinConfiguration& s) {
  for (Spin v : s.spins()) out << (v == 1 ? "1\n" : "-1\n");
}

SpinConfiguration read_spin_lines(std::istream& in) {
  std::vector<Spin> spins;
  std::string token;
  while (in >> token) {
    if (token == "1" || token == "+1") {
      spins.push_back(1);
    } else if (token == "-1") {
      spins.push_back(-1);
    } else {
      throw std::invalid_argument("invalid spin value '" + token + "' at position " +
                                  std::to_string(spins.size() + 1));
    }
  }
  return SpinConfiguration(std::move(spins));
}

}  // namespace pamc
