#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dsm/body.hpp"
#include "dsm/measures.hpp"
#include "dsm/possibility.hpp"
#include "dsm/product.hpp"
#include "dsm/random.hpp"

namespace dsm {

/// Masses drawn uniformly from the simplex (normalized exponentials).
inline std::vector<double> random_simplex_point(Rng& rng, std::size_t count) {
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  for (auto& x : w) x /= total;
  return w;
}

/// `focal_count` distinct nonempty subsets drawn uniformly by rejection,
/// with simplex-uniform masses.
inline BodyOfEvidence random_body(const Frame& frame, std::size_t focal_count, Rng& rng) {
  const Mask full = frame.full_mask();
  // 2^n − 1 candidate subsets; full == 2^n − 1 for n < 64.
  if (focal_count < 1 || focal_count > full) {
    throw Error(Errc::TooManyFocalSets, std::to_string(focal_count) + " focal sets requested on " +
                                            std::to_string(frame.size()) + " elements");
  }
  std::set<Mask> chosen;
  std::vector<Mask> order;
  while (chosen.size() < focal_count) {
    const Mask bits = rng.next() & full;
    if (bits != 0 && chosen.insert(bits).second) order.push_back(bits);
  }
  const auto masses = random_simplex_point(rng, focal_count);
  std::vector<RawAssignment> raw;
  for (std::size_t i = 0; i < focal_count; ++i) raw.push_back({order[i], masses[i]});
  return validate_body(frame, raw);
}

inline BodyOfEvidence random_body(const Frame& frame, std::size_t focal_count,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return random_body(frame, focal_count, rng);
}

/// Random probability distribution on a random nonempty set of singletons.
inline BodyOfEvidence random_bayesian_body(const Frame& frame, Rng& rng) {
  const std::size_t count = 1 + rng.below(frame.size());
  std::vector<std::size_t> elements(frame.size());
  for (std::size_t i = 0; i < elements.size(); ++i) elements[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(elements[i], elements[i + rng.below(elements.size() - i)]);
  }
  const auto masses = random_simplex_point(rng, count);
  std::vector<RawAssignment> raw;
  for (std::size_t i = 0; i < count; ++i) raw.push_back({Mask{1} << elements[i], masses[i]});
  return validate_body(frame, raw);
}

/// Random ordered possibility distribution of length n: sorted uniforms
/// behind r1 = 1, with occasional ties to exercise dropped levels.
inline PossibilityDistribution random_distribution(std::size_t n, Rng& rng) {
  std::vector<double> r(n);
  r[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) r[i] = rng.uniform();
  std::sort(r.begin() + 1, r.end(), std::greater<>());
  for (std::size_t i = 1; i < n; ++i)
    if (rng.below(8) == 0) r[i] = r[i - 1];
  return PossibilityDistribution(std::move(r));
}

// ---------------------------------------------------------------------------
// Subadditivity search.

enum class Measure { N, D, S, T, NS };

constexpr std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::N: return "N";
    case Measure::D: return "D";
    case Measure::S: return "S";
    case Measure::T: return "T";
    case Measure::NS: return "NS";
  }
  return "?";
}

inline std::optional<Measure> measure_from_string(std::string_view name) {
  for (Measure m : {Measure::N, Measure::D, Measure::S, Measure::T, Measure::NS})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

inline double evaluate(Measure m, const BodyOfEvidence& body) {
  switch (m) {
    case Measure::N: return nonspecificity(body);
    case Measure::D: return discord(body);
    case Measure::S: return strife(body);
    case Measure::T: return total_T(body);
    case Measure::NS: return nonspecificity(body) + strife(body);
  }
  return 0.0;
}

inline constexpr double kViolationThreshold = 1e-9;
inline constexpr double kRelativeEpsilon = 1e-12;

struct ViolationRecord {
  BodyOfEvidence joint;
  Measure measure;
  double joint_value;
  double marginal_sum;
  double violation;           // joint_value − marginal_sum
  double relative_violation;  // violation / max(joint_value, 1e-12)
  std::uint64_t seed;
  std::size_t trial;
};

struct SearchConfig {
  std::size_t x_size = 2;
  std::size_t y_size = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  Measure measure = Measure::S;
  std::size_t max_focal = 8;
};

struct SearchReport {
  SearchConfig config;
  std::size_t trials_run = 0;
  std::vector<ViolationRecord> records;  // sorted by violation, descending
};

inline constexpr std::size_t kMaxSearchJoint = 16;

inline Frame search_frame(std::size_t x_size, std::size_t y_size) {
  if (x_size < 1 || y_size < 1) throw Error(Errc::SizeOutOfRange, "factor frames need >= 1 element");
  if (x_size * y_size > kMaxSearchJoint) {
    throw Error(Errc::FrameTooLarge, "search joint of " + std::to_string(x_size * y_size) +
                                         " elements exceeds 16");
  }
  std::vector<std::string> xs, ys;
  for (std::size_t i = 1; i <= x_size; ++i) xs.push_back("a" + std::to_string(i));
  for (std::size_t j = 1; j <= y_size; ++j) ys.push_back("b" + std::to_string(j));
  return Frame::product(Frame(xs), Frame(ys));
}

/// m(X × Y) = 0.5, m({(x1, y1), (x2, y2)}) = 0.5 on a 2 × 2 frame.
inline BodyOfEvidence canonical_counterexample(const Frame& joint) {
  // bit index of (i, j) is 2i + j
  const Mask diagonal = (Mask{1} << 0) | (Mask{1} << 3);
  return validate_body(joint, {{joint.full_mask(), 0.5}, {diagonal, 0.5}});
}

/// Joint body examined at `trial`; a pure function of (config, trial).
inline BodyOfEvidence search_joint(const SearchConfig& config, std::size_t trial) {
  const Frame joint = search_frame(config.x_size, config.y_size);
  if (trial == 0 && config.measure == Measure::S && config.x_size == 2 && config.y_size == 2) {
    return canonical_counterexample(joint);
  }
  Rng rng(derive_seed(config.seed, trial));
  const std::size_t max_focal =
      std::min<std::size_t>(std::max<std::size_t>(config.max_focal, 1), joint.full_mask());
  const std::size_t focal_count = 1 + rng.below(max_focal);
  return random_body(joint, focal_count, rng);
}

/// Checks measure(joint) <= measure(m_x) + measure(m_y) on random joints
/// built directly on X × Y and records each excess beyond 1e-9.
inline SearchReport search_subadditivity_violations(const SearchConfig& config) {
  search_frame(config.x_size, config.y_size);
  if (config.trials < 1) throw Error(Errc::SizeOutOfRange, "at least one trial is required");

  SearchReport report;
  report.config = config;
  for (std::size_t t = 0; t < config.trials; ++t) {
    BodyOfEvidence joint = search_joint(config, t);
    const double joint_value = evaluate(config.measure, joint);
    const double marginal_sum = evaluate(config.measure, marginalize(joint, Axis::First)) +
                                evaluate(config.measure, marginalize(joint, Axis::Second));
    const double violation = joint_value - marginal_sum;
    if (violation > kViolationThreshold) {
      const double rel = violation / std::max(joint_value, kRelativeEpsilon);
      report.records.push_back(
          {std::move(joint), config.measure, joint_value, marginal_sum, violation, rel,
           config.seed, t});
    }
    ++report.trials_run;
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const ViolationRecord& a, const ViolationRecord& b) {
                     return a.violation > b.violation;
                   });
  return report;
}

}  // namespace dsm
