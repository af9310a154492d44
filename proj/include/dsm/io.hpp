#pragma once

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dsm/body.hpp"
#include "dsm/possibility.hpp"

// Body-of-evidence text format (JSON):
//
//   {
//     "universe": ["a", "b"],
//     "masses": [
//       {"set": ["a"], "mass": 0.25},
//       {"set": ["a", "b"], "mass": 0.75}
//     ]
//   }
//
// A product frame lists its elements as "x|y" labels in row-major order and
// adds "product_of": [[x labels], [y labels]] between the two fields above.
// Unknown keys and wrongly typed values are rejected.

namespace dsm {

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

inline std::vector<std::string> string_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) parse_fail(where + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline void only_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                      const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok |= key == a;
    if (!ok) parse_fail("unknown field '" + key + "' in " + where);
  }
}

inline std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

/// Shortest decimal that reads back to the same double.
inline std::string shortest_decimal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string label_list(const std::vector<std::string>& labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + quoted(labels[i]);
  return out + "]";
}

}  // namespace detail

inline BodyOfEvidence parse_body(std::string_view text, ValidateOptions options = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    detail::parse_fail(e.what());
  }
  if (!doc.is_object()) detail::parse_fail("body document must be an object");
  detail::only_keys(doc, {"universe", "masses", "product_of"}, "body");
  if (!doc.contains("universe")) detail::parse_fail("missing field 'universe'");
  if (!doc.contains("masses")) detail::parse_fail("missing field 'masses'");

  const auto labels = detail::string_list(doc["universe"], "'universe'");
  Frame frame(labels);
  if (doc.contains("product_of")) {
    const auto& p = doc["product_of"];
    if (!p.is_array() || p.size() != 2) detail::parse_fail("'product_of' must hold two universes");
    Frame product = Frame::product(Frame(detail::string_list(p[0], "'product_of'[0]")),
                                   Frame(detail::string_list(p[1], "'product_of'[1]")));
    if (product.labels() != labels) {
      detail::parse_fail("'universe' does not list the x|y pairs of 'product_of' in row-major order");
    }
    frame = std::move(product);
  }

  const auto& masses = doc["masses"];
  if (!masses.is_array()) detail::parse_fail("'masses' must be a list");
  std::vector<RawAssignment> raw;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const auto& rec = masses[i];
    const std::string where = "masses[" + std::to_string(i) + "]";
    if (!rec.is_object()) detail::parse_fail(where + " must be an object");
    detail::only_keys(rec, {"set", "mass"}, where);
    if (!rec.contains("set") || !rec.contains("mass")) {
      detail::parse_fail(where + " needs both 'set' and 'mass'");
    }
    if (!rec["mass"].is_number()) detail::parse_fail(where + ".mass must be a number");
    Mask bits = 0;
    for (const auto& name : detail::string_list(rec["set"], where + ".set")) {
      const auto idx = frame.index_of(name);
      if (!idx) {
        throw Error(Errc::SetOutsideFrame, where + " names unknown element '" + name + "'");
      }
      bits |= Mask{1} << *idx;
    }
    raw.push_back({bits, rec["mass"].get<double>()});
  }
  return validate_body(std::move(frame), raw, options);
}

/// Canonical serialization; parse_body(serialize_body(b)) == b and the text
/// is byte-stable.
inline std::string serialize_body(const BodyOfEvidence& body) {
  const Frame& frame = body.frame();
  std::string out = "{\n  \"universe\": " + detail::label_list(frame.labels()) + ",\n";
  if (frame.is_product()) {
    out += "  \"product_of\": [" + detail::label_list(frame.factor(Axis::First).labels()) + ", " +
           detail::label_list(frame.factor(Axis::Second).labels()) + "],\n";
  }
  out += "  \"masses\": [\n";
  for (std::size_t e = 0; e < body.size(); ++e) {
    const auto& a = body.entries()[e];
    std::vector<std::string> names;
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (a.set.contains(i)) names.push_back(frame.label(i));
    out += "    {\"set\": " + detail::label_list(names) +
           ", \"mass\": " + detail::shortest_decimal(a.mass) + "}";
    out += e + 1 < body.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

/// Whitespace-separated decimals (spaces or one per line).
inline PossibilityDistribution parse_distribution(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
    if (ec != std::errc() || ptr != text.data() + end) {
      detail::parse_fail("'" + std::string(text.substr(pos, end - pos)) + "' is not a decimal");
    }
    values.push_back(v);
    pos = end;
  }
  if (values.empty()) throw Error(Errc::InvalidDistribution, "no values given");
  return PossibilityDistribution(std::move(values));
}

}  // namespace dsm
