#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logcount/nat.hpp"

namespace logcount {

// A finite set of natural-number positions, read as a bit string.
// |X| is one past the largest set position (0 when empty), and X(i) is a
// total membership query. Values are immutable after construction.
class BitString {
 public:
  BitString() = default;

  static BitString from_positions(std::vector<Nat> positions) {
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()),
                    positions.end());
    BitString s;
    s.bits_ = std::move(positions);
    return s;
  }

  // Parses the text form: ASCII '0'/'1', position 0 first. "" is the empty
  // string.
  static BitString from_text(std::string_view text) {
    std::vector<Nat> pos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1')
        pos.push_back(nat_from_u64(i));
      else if (text[i] != '0')
        throw BadInput("bit literal may contain only '0' and '1'");
    }
    return from_positions(std::move(pos));
  }

  bool empty() const { return bits_.empty(); }

  std::size_t popcount() const { return bits_.size(); }

  // |X|: one past the largest set position, 0 for the empty string.
  Nat length() const { return bits_.empty() ? Nat(0) : Nat(bits_.back() + 1); }

  bool test(const Nat& i) const {
    return std::binary_search(bits_.begin(), bits_.end(), i);
  }

  bool operator()(const Nat& i) const { return test(i); }

  const std::vector<Nat>& positions() const { return bits_; }

  BitString flipped(const Nat& i) const {
    std::vector<Nat> pos = bits_;
    auto it = std::lower_bound(pos.begin(), pos.end(), i);
    if (it != pos.end() && *it == i)
      pos.erase(it);
    else
      pos.insert(it, i);
    BitString s;
    s.bits_ = std::move(pos);
    return s;
  }

  std::string to_text() const {
    if (bits_.empty()) return "";
    if (bits_.back() > kTextCap)
      throw BadInput("bit string too long for text form");
    std::size_t len = static_cast<std::size_t>(bits_.back().get_ui()) + 1;
    std::string out(len, '0');
    for (const Nat& b : bits_) out[b.get_ui()] = '1';
    return out;
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) {
    return !(a == b);
  }

 private:
  static constexpr unsigned long kTextCap = 1u << 22;

  std::vector<Nat> bits_;  // sorted, unique
};

// Mutable accumulator for building a BitString position by position.
class BitStringBuilder {
 public:
  void set(Nat position) { positions_.push_back(std::move(position)); }

  BitString finish() {
    return BitString::from_positions(std::move(positions_));
  }

 private:
  std::vector<Nat> positions_;
};

}  // namespace logcount
