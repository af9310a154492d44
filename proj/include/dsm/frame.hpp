#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dsm/error.hpp"

namespace dsm {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxFrameSize = 64;

/// Mask with the lowest `n` bits set; valid for n in [0, 64].
constexpr Mask low_bits(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

enum class Axis { First, Second };

/// Finite universal set. Each label owns the bit position equal to its index.
///
/// A frame built by `Frame::product` remembers its two factors; element
/// (i, j) of X x Y lives at bit i * |Y| + j and is labelled "x_i|y_j".
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    check_labels();
  }

  /// Frame {x1, ..., xn}.
  static Frame of_size(std::size_t n) {
    if (n > kMaxFrameSize) {
      throw Error(Errc::FrameTooLarge, "frame of " + std::to_string(n) + " elements exceeds 64");
    }
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return Frame(std::move(labels));
  }

  static Frame product(const Frame& x, const Frame& y) {
    const std::size_t total = x.size() * y.size();
    if (total > kMaxFrameSize) {
      throw Error(Errc::FrameTooLarge, "product frame of " + std::to_string(x.size()) + "x" +
                                           std::to_string(y.size()) + " elements exceeds 64");
    }
    std::vector<std::string> labels;
    labels.reserve(total);
    for (const auto& a : x.labels())
      for (const auto& b : y.labels()) labels.push_back(a + "|" + b);
    Frame out(std::move(labels));
    out.factors_ = std::make_shared<const std::array<Frame, 2>>(std::array<Frame, 2>{x, y});
    return out;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  Mask full_mask() const noexcept { return low_bits(size()); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  bool is_product() const noexcept { return factors_ != nullptr; }

  const Frame& factor(Axis axis) const {
    if (!factors_) throw Error(Errc::NotAProductFrame, "frame carries no product structure");
    return (*factors_)[axis == Axis::First ? 0 : 1];
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    if (a.labels_ != b.labels_ || a.is_product() != b.is_product()) return false;
    if (!a.is_product()) return true;
    return a.factor(Axis::First) == b.factor(Axis::First) &&
           a.factor(Axis::Second) == b.factor(Axis::Second);
  }

 private:
  void check_labels() const {
    if (labels_.empty()) throw Error(Errc::InvalidFrame, "frame needs at least one element");
    if (labels_.size() > kMaxFrameSize) {
      throw Error(Errc::FrameTooLarge,
                  "frame of " + std::to_string(labels_.size()) + " elements exceeds 64");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw Error(Errc::InvalidFrame, "empty element label");
      if (!seen.insert(l).second) throw Error(Errc::InvalidFrame, "duplicate element label '" + l + "'");
    }
  }

  std::vector<std::string> labels_;
  std::shared_ptr<const std::array<Frame, 2>> factors_;
};

/// Nonempty subset of a frame, stored as a bitmask.
class FocalSet {
 public:
  explicit constexpr FocalSet(Mask bits) : bits_(bits) {
    if (bits == 0) throw Error(Errc::EmptyFocalSet, "focal sets must be nonempty");
  }

  constexpr Mask bits() const noexcept { return bits_; }
  constexpr int cardinality() const noexcept { return std::popcount(bits_); }
  constexpr bool contains(std::size_t i) const noexcept { return i < 64 && ((bits_ >> i) & 1U); }
  constexpr bool is_singleton() const noexcept { return std::has_single_bit(bits_); }
  constexpr bool subset_of(FocalSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  friend constexpr auto operator<=>(FocalSet, FocalSet) = default;

 private:
  Mask bits_;
};

/// |A ∩ B|
constexpr int intersection_size(FocalSet a, FocalSet b) noexcept {
  return std::popcount(a.bits() & b.bits());
}

/// |A − B|
constexpr int difference_size(FocalSet a, FocalSet b) noexcept {
  return std::popcount(a.bits() & ~b.bits());
}

}  // namespace dsm
