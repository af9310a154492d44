#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsm/body.hpp"
#include "dsm/measures.hpp"
#include "dsm/random.hpp"

namespace dsm {

/// Ordered possibility distribution 1 = r1 >= r2 >= ... >= rn >= 0.
/// r_{n+1} is taken to be 0.
class PossibilityDistribution {
 public:
  explicit PossibilityDistribution(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(Errc::InvalidDistribution, "distribution is empty");
    if (values_.size() > kMaxFrameSize) {
      throw Error(Errc::FrameTooLarge, "distribution longer than 64 elements");
    }
    if (values_.front() != 1.0) throw Error(Errc::InvalidDistribution, "r1 must be exactly 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double r = values_[i];
      if (!std::isfinite(r) || r < 0.0) {
        throw Error(Errc::InvalidDistribution,
                    "r" + std::to_string(i + 1) + " = " + std::to_string(r) + " is negative");
      }
      if (i > 0 && r > values_[i - 1]) {
        throw Error(Errc::InvalidDistribution,
                    "r" + std::to_string(i + 1) + " exceeds r" + std::to_string(i));
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// r_i for 1-based i, with r_{n+1} = 0.
  double r(std::size_t i) const { return i == values_.size() + 1 ? 0.0 : values_.at(i - 1); }

  friend bool operator==(const PossibilityDistribution&, const PossibilityDistribution&) = default;

 private:
  std::vector<double> values_;
};

/// Nested body with A_i = {x1..xi} and m(A_i) = r_i − r_{i+1}; zero-mass
/// levels are dropped.
inline BodyOfEvidence to_consonant_body(const PossibilityDistribution& dist, Frame frame) {
  if (frame.size() != dist.size()) {
    throw Error(Errc::SizeMismatch, "distribution has " + std::to_string(dist.size()) +
                                        " values but frame has " + std::to_string(frame.size()));
  }
  std::vector<RawAssignment> raw;
  for (std::size_t i = 1; i <= dist.size(); ++i) {
    const double m = dist.r(i) - dist.r(i + 1);
    if (m > 0.0) raw.push_back({low_bits(i), m});
  }
  return validate_body(std::move(frame), raw);
}

inline BodyOfEvidence to_consonant_body(const PossibilityDistribution& dist) {
  return to_consonant_body(dist, Frame::of_size(dist.size()));
}

namespace detail {

inline double possibilistic_n(std::span<const double> r) {
  const std::size_t n = r.size();
  double total = 0.0;
  for (std::size_t i = 2; i <= n; ++i) {
    const double next = i < n ? r[i] : 0.0;
    total += (r[i - 1] - next) * std::log2(static_cast<double>(i));
  }
  return total;
}

// Σ_{i=2}^{n} (r_i − r_{i+1}) log2 Σ_{j<=i} r_j
inline double possibilistic_k(std::span<const double> r) {
  const std::size_t n = r.size();
  double total = 0.0;
  double prefix = r[0];
  for (std::size_t i = 2; i <= n; ++i) {
    prefix += r[i - 1];
    const double next = i < n ? r[i] : 0.0;
    total += (r[i - 1] - next) * std::log2(prefix);
  }
  return total;
}

inline double possibilistic_s(std::span<const double> r) {
  return possibilistic_n(r) - possibilistic_k(r);
}

// Discord of the induced nested body, using |A_i ∩ A_j| = min(i, j).
inline double consonant_discord(std::span<const double> r) {
  const std::size_t n = r.size();
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = r[i] - (i + 1 < n ? r[i + 1] : 0.0);
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (!(m[i - 1] > 0.0)) continue;
    double inner = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      inner += m[j - 1] * static_cast<double>(std::min(i, j)) / static_cast<double>(j);
    total -= m[i - 1] * std::log2(inner);
  }
  return total;
}

}  // namespace detail

inline double possibilistic_nonspecificity(const PossibilityDistribution& dist) {
  return detail::possibilistic_n(dist.values());
}

inline double possibilistic_strife(const PossibilityDistribution& dist) {
  return detail::possibilistic_s(dist.values());
}

inline double possibilistic_total_NS(const PossibilityDistribution& dist) {
  return 2.0 * detail::possibilistic_n(dist.values()) - detail::possibilistic_k(dist.values());
}

/// Discord of the consonant body induced by `dist`.
inline double possibilistic_discord(const PossibilityDistribution& dist) {
  return detail::consonant_discord(dist.values());
}

// ---------------------------------------------------------------------------
// Maximization over the ordered simplex.

enum class Objective { Strife, Discord };

constexpr std::string_view to_string(Objective o) noexcept {
  return o == Objective::Strife ? "strife" : "discord";
}

inline constexpr std::size_t kMaxSearchSize = 24;
inline constexpr double kDefaultResolution = 1e-4;

struct PossibilisticMaximum {
  std::size_t n = 0;
  Objective objective = Objective::Strife;
  double max_value = 0.0;
  PossibilityDistribution argmax{std::vector<double>{1.0}};
  double grid_resolution = 0.0;
};

namespace detail {

inline double objective_value(Objective objective, std::span<const double> r) {
  return objective == Objective::Strife ? possibilistic_s(r) : consonant_discord(r);
}

inline void check_search_args(std::size_t n, double resolution) {
  if (n < 2 || n > kMaxSearchSize) {
    throw Error(Errc::SizeOutOfRange, "n = " + std::to_string(n) + " outside [2, 24]");
  }
  if (!(resolution > 0.0) || resolution > 0.01) {
    throw Error(Errc::BadResolution,
                "resolution " + std::to_string(resolution) + " outside (0, 0.01]");
  }
}

// Candidate values for a coordinate currently at x within [lo, hi]: the
// whole grid lo, lo + step, ..., hi on a full scan, otherwise x ± k·step for
// k = 1..10 clamped to the interval.
inline std::vector<double> candidates(double x, double lo, double hi, double step, bool full) {
  std::vector<double> out;
  if (full) {
    for (int k = 0;; ++k) {
      const double c = lo + k * step;
      if (c >= hi) break;
      out.push_back(c);
    }
    out.push_back(hi);
    return out;
  }
  for (int k = -10; k <= 10; ++k) {
    const double c = std::clamp(x + k * step, lo, hi);
    if (out.empty() || c > out.back()) out.push_back(c);
  }
  return out;
}

// Tries to move r[first..last] jointly to one of the candidate values.
// Ties go to the smaller value, which keeps the walk lexicographically
// decreasing whenever the objective does not change.
inline bool try_block(std::vector<double>& r, double& value, std::size_t first, std::size_t last,
                      Objective objective, double step, bool full) {
  const double lo = last + 1 < r.size() ? r[last + 1] : 0.0;
  const double hi = r[first - 1];
  const double x = r[first];
  double best_x = x;
  double best_f = value;
  for (double c : candidates(x, lo, hi, step, full)) {
    if (c == x) continue;
    std::fill(r.begin() + first, r.begin() + last + 1, c);
    const double f = objective_value(objective, r);
    if (f > best_f || (f == best_f && c < best_x)) {
      best_f = f;
      best_x = c;
    }
  }
  std::fill(r.begin() + first, r.begin() + last + 1, best_x);
  if (best_x == x) return false;
  value = best_f;
  return true;
}

inline bool sweep(std::vector<double>& r, double& value, Objective objective, double step,
                  bool full) {
  bool moved = false;
  for (std::size_t i = 1; i < r.size(); ++i) {
    moved |= try_block(r, value, i, i, objective, step, full);
    std::size_t last = i;
    while (last + 1 < r.size() && r[last + 1] == r[i]) ++last;
    if (last > i) moved |= try_block(r, value, i, last, objective, step, full);
  }
  return moved;
}

}  // namespace detail

/// Deterministic coordinate ascent over (r2..rn) with the ordering
/// constraints, started from r_i = 1 − (i−1)/n. Each grid level sweeps single
/// coordinates and runs of tied coordinates until no move helps, then the
/// step shrinks tenfold (0.1, 0.01, ...) down to `resolution`.
inline PossibilisticMaximum maximize(std::size_t n, double resolution, Objective objective) {
  detail::check_search_args(n, resolution);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = 1.0 - static_cast<double>(i) / static_cast<double>(n);
  double value = detail::objective_value(objective, r);

  constexpr int kMaxSweeps = 100000;
  double step = 0.1;
  bool full = true;
  for (;;) {
    for (int s = 0; s < kMaxSweeps && detail::sweep(r, value, objective, step, full); ++s) {
    }
    if (step <= resolution) break;
    step = std::max(step / 10.0, resolution);
    full = false;
  }

  PossibilisticMaximum out;
  out.n = n;
  out.objective = objective;
  out.max_value = value;
  out.argmax = PossibilityDistribution(std::move(r));
  out.grid_resolution = resolution;
  return out;
}

inline PossibilisticMaximum maximize_strife(std::size_t n, double resolution = kDefaultResolution) {
  return maximize(n, resolution, Objective::Strife);
}

inline PossibilisticMaximum maximize_discord(std::size_t n,
                                             double resolution = kDefaultResolution) {
  return maximize(n, resolution, Objective::Discord);
}

/// Independent check on `maximize`: random sorted starting points refined by
/// shrinking random perturbations (re-sorted to stay feasible).
inline PossibilisticMaximum random_restart_maximum(std::size_t n, Objective objective,
                                                   std::uint64_t seed, int restarts = 32,
                                                   int iterations = 4000) {
  detail::check_search_args(n, 0.01);
  Rng rng(seed);
  std::vector<double> best_r;
  double best_f = -1.0;
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<double> r(n);
    r[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) r[i] = rng.uniform();
    std::sort(r.begin() + 1, r.end(), std::greater<>());
    double f = detail::objective_value(objective, r);
    double scale = 0.25;
    for (int it = 0; it < iterations; ++it) {
      std::vector<double> trial = r;
      const std::size_t i = 1 + rng.below(n - 1);
      trial[i] = std::clamp(trial[i] + scale * (2.0 * rng.uniform() - 1.0), 0.0, 1.0);
      std::sort(trial.begin() + 1, trial.end(), std::greater<>());
      const double g = detail::objective_value(objective, trial);
      if (g > f) {
        f = g;
        r = std::move(trial);
      }
      if ((it + 1) % 500 == 0) scale *= 0.5;
    }
    if (f > best_f) {
      best_f = f;
      best_r = r;
    }
  }
  PossibilisticMaximum out;
  out.n = n;
  out.objective = objective;
  out.max_value = best_f;
  out.argmax = PossibilityDistribution(std::move(best_r));
  out.grid_resolution = 0.0;
  return out;
}

}  // namespace dsm
