#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <vector>

#include "dsm/body.hpp"

// All measures are in bits. Every sum is evaluated over its terms sorted by
// value, so the result depends only on the multiset of terms: relabelling the
// frame permutes the terms but leaves each one (and hence the sum) unchanged.

namespace dsm {

namespace detail {

inline double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

template <class Term>
double sum_over(const BodyOfEvidence& body, Term&& term) {
  std::vector<double> terms;
  terms.reserve(body.size());
  for (const auto& b : body) terms.push_back(term(b));
  return ordered_sum(terms);
}

inline void require_focal(const BodyOfEvidence& body, FocalSet a) {
  if (!body.is_focal(a)) throw Error(Errc::NotAFocalSet, "set is not focal in this body");
}

}  // namespace detail

/// Generalized Hartley measure: Σ m(A) log2 |A|.
inline double nonspecificity(const BodyOfEvidence& body) {
  return detail::sum_over(body, [](const Assignment& a) {
    return a.mass * std::log2(static_cast<double>(a.set.cardinality()));
  });
}

/// Con(A) = Σ m(B) |B − A| / |B|. Counts B ⊃ A as conflicting with A.
inline double discord_conflict(const BodyOfEvidence& body, FocalSet a) {
  detail::require_focal(body, a);
  return detail::sum_over(body, [a](const Assignment& b) {
    return b.mass * difference_size(b.set, a) / b.set.cardinality();
  });
}

/// CON(A) = Σ m(B) |A − B| / |A|. Zero whenever A is inside every focal set.
inline double strife_conflict(const BodyOfEvidence& body, FocalSet a) {
  detail::require_focal(body, a);
  return detail::sum_over(body, [a](const Assignment& b) {
    return b.mass * difference_size(a, b.set) / a.cardinality();
  });
}

/// Discord, via the intersection form −Σ m(A) log2 Σ m(B) |A∩B| / |B|.
inline double discord(const BodyOfEvidence& body) {
  return detail::sum_over(body, [&body](const Assignment& a) {
    const double inner = detail::sum_over(body, [&a](const Assignment& b) {
      return b.mass * intersection_size(a.set, b.set) / b.set.cardinality();
    });
    return -a.mass * std::log2(inner);
  });
}

/// Discord via the conflict form −Σ m(A) log2 [1 − Con(A)].
inline double discord_conflict_form(const BodyOfEvidence& body) {
  return detail::sum_over(body, [&body](const Assignment& a) {
    return -a.mass * std::log2(1.0 - discord_conflict(body, a.set));
  });
}

/// Strife, via the subsethood form −Σ m(A) log2 Σ m(B) |A∩B| / |A|.
inline double strife(const BodyOfEvidence& body) {
  return detail::sum_over(body, [&body](const Assignment& a) {
    const double inner = detail::sum_over(body, [&a](const Assignment& b) {
      return b.mass * intersection_size(a.set, b.set) / a.set.cardinality();
    });
    return -a.mass * std::log2(inner);
  });
}

/// Strife via the conflict form −Σ m(A) log2 [1 − CON(A)].
inline double strife_conflict_form(const BodyOfEvidence& body) {
  return detail::sum_over(body, [&body](const Assignment& a) {
    return -a.mass * std::log2(1.0 - strife_conflict(body, a.set));
  });
}

/// K = Σ m(A) log2 Σ m(B) |A∩B|, so that S = N − K.
inline double k_term(const BodyOfEvidence& body) {
  return detail::sum_over(body, [&body](const Assignment& a) {
    const double inner = detail::sum_over(body, [&a](const Assignment& b) {
      return b.mass * intersection_size(a.set, b.set);
    });
    return a.mass * std::log2(inner);
  });
}

/// T = N + D.
inline double total_T(const BodyOfEvidence& body) { return nonspecificity(body) + discord(body); }

/// Whether `value` lies in [0, log2 |X|] up to `tol`.
inline bool within_frame_range(double value, const Frame& frame, double tol) {
  return value >= -tol && value <= std::log2(static_cast<double>(frame.size())) + tol;
}

/// NS = N + S. The range [0, log2 |X|] is only conjectured, so an excursion
/// is reported on std::clog rather than rejected.
inline double total_NS(const BodyOfEvidence& body) {
  const double ns = nonspecificity(body) + strife(body);
  if (!within_frame_range(ns, body.frame(), 1e-9)) {
    std::clog << "dsm: NS = " << ns << " outside [0, log2 " << body.frame().size() << "]\n";
  }
  return ns;
}

/// Shannon entropy of the body when every focal set is a singleton.
inline std::optional<double> shannon_if_bayesian(const BodyOfEvidence& body) {
  if (!body.is_bayesian()) return std::nullopt;
  return detail::sum_over(body, [](const Assignment& a) { return -a.mass * std::log2(a.mass); });
}

struct MeasureReport {
  double nonspecificity = 0.0;
  double discord = 0.0;
  double strife = 0.0;
  double k_term = 0.0;
  double total_T = 0.0;
  double total_NS = 0.0;
  bool is_bayesian = false;
  std::optional<double> shannon;
};

inline MeasureReport measure_report(const BodyOfEvidence& body) {
  MeasureReport r;
  r.nonspecificity = nonspecificity(body);
  r.discord = discord(body);
  r.strife = strife(body);
  r.k_term = k_term(body);
  r.total_T = r.nonspecificity + r.discord;
  r.total_NS = total_NS(body);
  r.is_bayesian = body.is_bayesian();
  r.shannon = shannon_if_bayesian(body);
  return r;
}

}  // namespace dsm
