#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsm/body.hpp"

namespace dsm {

enum class FamilyKind {
  EqualPartition,       // blocks of size c
  AllKSubsets,          // every k-subset of X
  ChainK,               // the n cyclic windows of length k
  PartitionAllSubsets,  // every k-subset of each c-block
  PartitionChainK,      // the cyclic k-windows of each c-block
};

inline constexpr FamilyKind kAllFamilyKinds[] = {
    FamilyKind::EqualPartition, FamilyKind::AllKSubsets, FamilyKind::ChainK,
    FamilyKind::PartitionAllSubsets, FamilyKind::PartitionChainK};

constexpr std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::EqualPartition: return "equal-partition";
    case FamilyKind::AllKSubsets: return "all-k-subsets";
    case FamilyKind::ChainK: return "chain-k";
    case FamilyKind::PartitionAllSubsets: return "partition-all-subsets";
    case FamilyKind::PartitionChainK: return "partition-chain-k";
  }
  return "unknown";
}

inline std::optional<FamilyKind> family_kind_from_string(std::string_view name) {
  for (FamilyKind k : kAllFamilyKinds)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

constexpr bool uses_block_size(FamilyKind kind) noexcept {
  return kind == FamilyKind::EqualPartition || kind == FamilyKind::PartitionAllSubsets ||
         kind == FamilyKind::PartitionChainK;
}

constexpr bool uses_cardinality(FamilyKind kind) noexcept {
  return kind != FamilyKind::EqualPartition;
}

struct SymmetricFamilySpec {
  FamilyKind kind = FamilyKind::EqualPartition;
  std::size_t n = 1;
  std::size_t block_size = 0;   // c, partition kinds only
  std::size_t cardinality = 0;  // k, all kinds except equal-partition
};

inline void check_spec(const SymmetricFamilySpec& spec) {
  if (spec.n < 1) throw Error(Errc::SizeOutOfRange, "family frame needs n >= 1");
  if (spec.n > kMaxFrameSize) {
    throw Error(Errc::FrameTooLarge, "family frame size " + std::to_string(spec.n));
  }
  std::size_t k_bound = spec.n;
  if (uses_block_size(spec.kind)) {
    const std::size_t c = spec.block_size;
    if (c < 1 || c > spec.n || spec.n % c != 0) {
      throw Error(Errc::BadDivisibility,
                  "block size " + std::to_string(c) + " does not divide n = " + std::to_string(spec.n));
    }
    k_bound = c;
  }
  if (uses_cardinality(spec.kind) && (spec.cardinality < 1 || spec.cardinality > k_bound)) {
    throw Error(Errc::BadCardinality, "k = " + std::to_string(spec.cardinality) +
                                          " outside [1, " + std::to_string(k_bound) + "]");
  }
}

namespace detail {

inline constexpr std::size_t kMaxFamilySize = std::size_t{1} << 20;

// All k-subsets of the positions [offset, offset + width), by Gosper's hack.
inline void append_k_subsets(std::vector<Mask>& out, std::size_t offset, std::size_t width,
                             std::size_t k) {
  const Mask limit = width >= 64 ? 0 : Mask{1} << width;
  Mask s = low_bits(k);
  for (;;) {
    if (out.size() >= kMaxFamilySize) {
      throw Error(Errc::TooManyFocalSets, "family exceeds 2^20 subsets");
    }
    out.push_back(s << offset);
    const Mask c = s & (~s + 1);
    const Mask r = s + c;
    if (r == 0) break;  // wrapped past bit 63
    s = (((r ^ s) >> 2) / c) | r;
    if (limit != 0 && s >= limit) break;
  }
}

// Windows {x_{1+j}, ..., x_{k+j}} (indices mod width) for j = 0..width−1.
inline void append_chain(std::vector<Mask>& out, std::size_t offset, std::size_t width,
                         std::size_t k) {
  for (std::size_t j = 0; j < width; ++j) {
    Mask s = 0;
    for (std::size_t t = 0; t < k; ++t) s |= Mask{1} << ((j + t) % width);
    out.push_back(s << offset);
  }
}

}  // namespace detail

/// The focal family described by `spec`, sorted by bitmask with coincident
/// sets (e.g. every window of a chain with k = n) collapsed.
inline std::vector<FocalSet> generate_family(const SymmetricFamilySpec& spec, const Frame& frame) {
  check_spec(spec);
  if (frame.size() != spec.n) {
    throw Error(Errc::SizeMismatch, "family spec is for n = " + std::to_string(spec.n) +
                                        " but frame has " + std::to_string(frame.size()));
  }
  std::vector<Mask> bits;
  const std::size_t n = spec.n;
  const std::size_t c = spec.block_size;
  const std::size_t k = spec.cardinality;
  switch (spec.kind) {
    case FamilyKind::EqualPartition:
      for (std::size_t b = 0; b < n; b += c) bits.push_back(low_bits(c) << b);
      break;
    case FamilyKind::AllKSubsets:
      detail::append_k_subsets(bits, 0, n, k);
      break;
    case FamilyKind::ChainK:
      detail::append_chain(bits, 0, n, k);
      break;
    case FamilyKind::PartitionAllSubsets:
      for (std::size_t b = 0; b < n; b += c) detail::append_k_subsets(bits, b, c, k);
      break;
    case FamilyKind::PartitionChainK:
      for (std::size_t b = 0; b < n; b += c) detail::append_chain(bits, b, c, k);
      break;
  }
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  std::vector<FocalSet> family;
  family.reserve(bits.size());
  for (Mask m : bits) family.emplace_back(m);
  return family;
}

/// Every admissible parameterization of every kind for a frame of size n.
inline std::vector<SymmetricFamilySpec> admissible_specs(std::size_t n) {
  std::vector<SymmetricFamilySpec> out;
  for (FamilyKind kind : kAllFamilyKinds) {
    if (uses_block_size(kind)) {
      for (std::size_t c = 1; c <= n; ++c) {
        if (n % c != 0) continue;
        if (!uses_cardinality(kind)) {
          out.push_back({kind, n, c, 0});
          continue;
        }
        for (std::size_t k = 1; k <= c; ++k) out.push_back({kind, n, c, k});
      }
    } else {
      for (std::size_t k = 1; k <= n; ++k) out.push_back({kind, n, 0, k});
    }
  }
  return out;
}

struct SymmetryReport {
  bool symmetric = false;
  std::map<int, std::size_t> cardinality_counts;  // |A| -> number of focal sets
  std::vector<std::size_t> membership;             // per element: focal sets containing it
};

/// Strong symmetry: all sets share one cardinality and every element lies
/// in the same number of sets.
inline SymmetryReport verify_strong_symmetry(const std::vector<FocalSet>& family,
                                             const Frame& frame) {
  SymmetryReport report;
  report.membership.assign(frame.size(), 0);
  for (FocalSet s : family) {
    ++report.cardinality_counts[s.cardinality()];
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (s.contains(i)) ++report.membership[i];
  }
  const bool one_cardinality = report.cardinality_counts.size() == 1;
  const bool even_membership =
      std::adjacent_find(report.membership.begin(), report.membership.end(),
                         std::not_equal_to<>()) == report.membership.end();
  report.symmetric = !family.empty() && one_cardinality && even_membership;
  return report;
}

/// Mass 1/|family| on each member.
inline BodyOfEvidence uniform_body(const std::vector<FocalSet>& family, const Frame& frame) {
  if (family.empty()) throw Error(Errc::NotNormalized, "empty family");
  std::vector<Mask> bits;
  for (FocalSet s : family) bits.push_back(s.bits());
  std::sort(bits.begin(), bits.end());
  if (std::adjacent_find(bits.begin(), bits.end()) != bits.end()) {
    throw Error(Errc::DuplicateFocalSet, "family lists a focal set twice");
  }
  const double m = 1.0 / static_cast<double>(family.size());
  std::vector<RawAssignment> raw;
  for (Mask b : bits) raw.push_back({b, m});
  return validate_body(frame, raw);
}

}  // namespace dsm
