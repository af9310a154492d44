#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsm/error.hpp"
#include "dsm/frame.hpp"

namespace dsm {

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kNegligibleMass = 1e-15;

/// One unvalidated (subset, mass) entry as read from input.
struct RawAssignment {
  Mask bits;
  double mass;
};

struct Assignment {
  FocalSet set;
  double mass;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct ValidateOptions {
  // Opt-in: rescale masses to sum to one instead of rejecting.
  bool renormalize = false;
};

/// A body of evidence (F, m): distinct focal sets with positive masses
/// summing to one. Entries are kept sorted by bitmask value.
class BodyOfEvidence {
 public:
  /// Normalizes raw input: masses below 1e-15 are dropped, duplicate subsets
  /// are merged by summing, and entries are ordered by bitmask.
  static BodyOfEvidence validate(Frame frame, const std::vector<RawAssignment>& raw,
                                 ValidateOptions options = {}) {
    const Mask full = frame.full_mask();
    std::map<Mask, double> merged;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto& entry = raw[i];
      const std::string where = "entry " + std::to_string(i);
      if (entry.bits == 0) throw Error(Errc::EmptyFocalSet, where + " has an empty subset");
      if ((entry.bits & ~full) != 0) {
        throw Error(Errc::SetOutsideFrame, where + " uses elements outside the frame");
      }
      if (!std::isfinite(entry.mass) || entry.mass < 0.0) {
        throw Error(Errc::MassOutOfRange, where + " has mass " + std::to_string(entry.mass));
      }
      if (entry.mass < kNegligibleMass) continue;
      merged[entry.bits] += entry.mass;
    }

    double total = 0.0;
    for (const auto& [bits, mass] : merged) total += mass;

    if (options.renormalize) {
      if (merged.empty() || !(total > 0.0)) {
        throw Error(Errc::NotNormalized, "no positive mass to renormalize");
      }
      for (auto& [bits, mass] : merged) mass /= total;
    } else {
      for (const auto& [bits, mass] : merged) {
        if (mass > 1.0 + kNormalizationTolerance) {
          throw Error(Errc::MassOutOfRange,
                      "merged mass " + std::to_string(mass) + " exceeds 1 for subset mask " +
                          std::to_string(bits));
        }
      }
      if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw Error(Errc::NotNormalized, "masses sum to " + std::to_string(total));
      }
    }

    std::vector<Assignment> entries;
    entries.reserve(merged.size());
    for (const auto& [bits, mass] : merged) entries.push_back({FocalSet(bits), mass});
    return BodyOfEvidence(std::move(frame), std::move(entries));
  }

  /// Body with m(X) = 1.
  static BodyOfEvidence vacuous(Frame frame) {
    const Mask full = frame.full_mask();
    return validate(std::move(frame), {{full, 1.0}});
  }

  /// Body with m({x_i}) = 1.
  static BodyOfEvidence certainty(Frame frame, std::size_t element) {
    return validate(std::move(frame), {{Mask{1} << element, 1.0}});
  }

  /// Uniform probability over the singletons.
  static BodyOfEvidence uniform_bayesian(Frame frame) {
    std::vector<RawAssignment> raw;
    const double m = 1.0 / static_cast<double>(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) raw.push_back({Mask{1} << i, m});
    return validate(std::move(frame), raw);
  }

  const Frame& frame() const noexcept { return frame_; }
  const std::vector<Assignment>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::optional<double> mass_of(FocalSet set) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), set,
                               [](const Assignment& a, FocalSet s) { return a.set < s; });
    if (it == entries_.end() || it->set != set) return std::nullopt;
    return it->mass;
  }

  bool is_focal(FocalSet set) const { return mass_of(set).has_value(); }

  bool is_bayesian() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Assignment& a) { return a.set.is_singleton(); });
  }

  /// Focal sets form a chain under inclusion.
  bool is_consonant() const noexcept {
    std::vector<FocalSet> sets;
    for (const auto& a : entries_) sets.push_back(a.set);
    std::sort(sets.begin(), sets.end(),
              [](FocalSet a, FocalSet b) { return a.cardinality() < b.cardinality(); });
    for (std::size_t i = 1; i < sets.size(); ++i)
      if (!sets[i - 1].subset_of(sets[i])) return false;
    return true;
  }

  friend bool operator==(const BodyOfEvidence&, const BodyOfEvidence&) = default;

 private:
  BodyOfEvidence(Frame frame, std::vector<Assignment> entries)
      : frame_(std::move(frame)), entries_(std::move(entries)) {}

  Frame frame_;
  std::vector<Assignment> entries_;
};

inline BodyOfEvidence validate_body(Frame frame, const std::vector<RawAssignment>& raw,
                                    ValidateOptions options = {}) {
  return BodyOfEvidence::validate(std::move(frame), raw, options);
}

}  // namespace dsm
