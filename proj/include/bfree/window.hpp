#pragma once

// A Window is the restriction of a point of {0,1}^{O_K} to a box, as a bit
// array in the box's fixed point order. Sieve- and phi-generated windows
// carry the stamp (hash + truncation) of the generating configuration.

#include <optional>
#include <string>
#include <vector>

#include "bfree/box.hpp"
#include "bfree/errors.hpp"

namespace bfree {

struct WindowStamp {
  std::string hash_hex;  // 256-bit generator stamp, lowercase hex
  u64 truncation = 0;    // L used to generate the window
};

class Window {
 public:
  Window(Box box, bool fill, u64 budget = Box::kDefaultPointBudget)
      : box_(std::move(box)), count_(box_.point_count(budget)), bits_((count_ + 63) / 64, fill ? ~u64(0) : 0) {
    trim_tail();
  }

  Window(Box box, std::vector<u64> words, u64 bit_count) : box_(std::move(box)), count_(bit_count), bits_(std::move(words)) {
    require(count_ == box_.point_count(), errc::invalid_argument, "bit count does not match box");
    require(bits_.size() == (count_ + 63) / 64, errc::invalid_argument, "word count does not match box");
    trim_tail();
  }

  const Box& box() const { return box_; }
  u64 size() const { return count_; }
  const std::vector<u64>& words() const { return bits_; }

  bool bit(u64 i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void set_bit(u64 i) { bits_[i >> 6] |= u64(1) << (i & 63); }
  void clear_bit(u64 i) { bits_[i >> 6] &= ~(u64(1) << (i & 63)); }

  u64 popcount() const {
    u64 n = 0;
    for (u64 w : bits_) n += static_cast<u64>(__builtin_popcountll(w));
    return n;
  }

  const std::optional<WindowStamp>& stamp() const { return stamp_; }
  void set_stamp(WindowStamp s) { stamp_ = std::move(s); }

  friend bool operator==(const Window& a, const Window& b) {
    return a.box_ == b.box_ && a.bits_ == b.bits_;
  }

 private:
  void trim_tail() {
    u64 rem = count_ & 63;
    if (rem && !bits_.empty()) bits_.back() &= (u64(1) << rem) - 1;
  }

  Box box_;
  u64 count_;
  std::vector<u64> bits_;
  std::optional<WindowStamp> stamp_;
};

}  // namespace bfree
