#pragma once

#include <vector>

#include "dsm/body.hpp"

namespace dsm {

/// Noninteractive joint: focal sets A × B with mass m_x(A) · m_y(B).
inline BodyOfEvidence product_join(const BodyOfEvidence& x_body, const BodyOfEvidence& y_body) {
  Frame joint = Frame::product(x_body.frame(), y_body.frame());
  const std::size_t ny = y_body.frame().size();
  std::vector<RawAssignment> raw;
  raw.reserve(x_body.size() * y_body.size());
  for (const auto& a : x_body) {
    for (const auto& b : y_body) {
      Mask bits = 0;
      for (std::size_t i = 0; i < x_body.frame().size(); ++i)
        if (a.set.contains(i)) bits |= b.set.bits() << (i * ny);
      raw.push_back({bits, a.mass * b.mass});
    }
  }
  return validate_body(std::move(joint), raw);
}

/// Projection of a subset of X × Y onto one factor.
inline Mask project(Mask bits, const Frame& joint, Axis axis) {
  const std::size_t nx = joint.factor(Axis::First).size();
  const std::size_t ny = joint.factor(Axis::Second).size();
  Mask out = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    const Mask row = (bits >> (i * ny)) & low_bits(ny);
    if (axis == Axis::First) {
      if (row != 0) out |= Mask{1} << i;
    } else {
      out |= row;
    }
  }
  return out;
}

/// Marginal body on one factor: m_x(A) sums m over joint focal sets whose
/// projection is A.
inline BodyOfEvidence marginalize(const BodyOfEvidence& joint, Axis axis) {
  const Frame& factor = joint.frame().factor(axis);
  std::vector<RawAssignment> raw;
  raw.reserve(joint.size());
  for (const auto& e : joint) raw.push_back({project(e.set.bits(), joint.frame(), axis), e.mass});
  return validate_body(factor, raw);
}

}  // namespace dsm
