#pragma once

// Subcommand implementations for the `dsm` tool. Kept in a header so the
// test suite can drive the CLI in-process.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsm/dsm.hpp"

namespace dsm::cli {

enum ExitCode { kOk = 0, kValidation = 1, kUsage = 2 };

enum class Format { Table, Tsv, Json };

struct OutputOptions {
  Format format = Format::Table;
  int precision = 6;
};

inline std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s(buf);
  // A tiny negative rounds to "-0.000"; print it unsigned.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

/// Key/value rendering shared by the single-record commands.
struct Fields {
  std::vector<std::pair<std::string, std::string>> rows;
  // Keys whose value is already JSON (numbers, bools, null, nested objects).
  void add(std::string key, std::string value) { rows.emplace_back(std::move(key), std::move(value)); }

  void render(std::ostream& out, Format format) const {
    switch (format) {
      case Format::Table: {
        std::size_t width = 0;
        for (const auto& [k, v] : rows) width = std::max(width, k.size());
        for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
        break;
      }
      case Format::Tsv:
        for (const auto& [k, v] : rows) out << k << '\t' << v << '\n';
        break;
      case Format::Json:
        out << "{";
        for (std::size_t i = 0; i < rows.size(); ++i)
          out << (i ? ", " : "") << json_string(rows[i].first) << ": " << rows[i].second;
        out << "}\n";
        break;
    }
  }
};

/// Column output: padded for tables, tab-separated for tsv.
inline void render_grid(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows, Format format) {
  if (format == Format::Tsv) {
    const auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
      out << '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  const auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      line += cells[i];
      if (i + 1 < cells.size()) line += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << line << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
}

/// Reads a path, or standard input when the path is empty or "-".
inline std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

inline std::string distribution_text(const PossibilityDistribution& d, int precision) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? " " : "") + fixed(d.values()[i], precision);
  return out;
}

inline std::string distribution_json(const PossibilityDistribution& d, int precision) {
  std::string out = "[";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? ", " : "") + fixed(d.values()[i], precision);
  return out + "]";
}

// ---------------------------------------------------------------------------

inline void render_report(const MeasureReport& r, const OutputOptions& o, std::ostream& out) {
  const int p = o.precision;
  Fields f;
  f.add("nonspecificity", fixed(r.nonspecificity, p));
  f.add("discord", fixed(r.discord, p));
  f.add("strife", fixed(r.strife, p));
  f.add("k_term", fixed(r.k_term, p));
  f.add("total_T", fixed(r.total_T, p));
  f.add("total_NS", fixed(r.total_NS, p));
  f.add("is_bayesian", r.is_bayesian ? "true" : "false");
  f.add("shannon", r.shannon ? fixed(*r.shannon, p) : (o.format == Format::Json ? "null" : "-"));
  f.render(out, o.format);
}

inline int cmd_measure(const std::string& path, bool renormalize, const OutputOptions& o,
                       std::istream& in, std::ostream& out) {
  const BodyOfEvidence body = parse_body(read_input(path, in), {renormalize});
  render_report(measure_report(body), o, out);
  return kOk;
}

inline int cmd_possibility(const std::vector<std::string>& values, const std::string& file,
                           const OutputOptions& o, std::istream& in, std::ostream& out) {
  std::string text;
  if (!file.empty()) {
    text = read_input(file, in);
  } else {
    for (const auto& v : values) text += v + " ";
  }
  const PossibilityDistribution dist = parse_distribution(text);
  const BodyOfEvidence body = to_consonant_body(dist);
  const double n = possibilistic_nonspecificity(dist);
  const double s = possibilistic_strife(dist);
  const double ns = possibilistic_total_NS(dist);
  const int p = o.precision;
  Fields f;
  f.add("nonspecificity", fixed(n, p));
  f.add("strife", fixed(s, p));
  f.add("total_NS", fixed(ns, p));
  f.add("delta_nonspecificity", scientific(std::abs(n - nonspecificity(body))));
  f.add("delta_strife", scientific(std::abs(s - strife(body))));
  f.add("delta_total_NS", scientific(std::abs(ns - (nonspecificity(body) + strife(body)))));
  f.render(out, o.format);
  return kOk;
}

inline int cmd_maximize(std::size_t n_min, std::size_t n_max, const std::string& objective,
                        double resolution, const OutputOptions& o, std::ostream& out) {
  if (n_min > n_max) throw Error(Errc::SizeOutOfRange, "empty n range");
  const bool want_s = objective == "strife" || objective == "both";
  const bool want_d = objective == "discord" || objective == "both";
  const int p = o.precision;

  struct Row {
    std::size_t n;
    std::optional<PossibilisticMaximum> s, d;
    bool nondecreasing;
    bool argmax_differs;
  };
  std::vector<Row> rows;
  bool series_ok = true;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    Row row{n, std::nullopt, std::nullopt, true, false};
    if (want_s) row.s = maximize(n, resolution, Objective::Strife);
    if (want_d) row.d = maximize(n, resolution, Objective::Discord);
    if (!rows.empty()) {
      const Row& prev = rows.back();
      if (row.s && row.s->max_value < prev.s->max_value) row.nondecreasing = false;
      if (row.d && row.d->max_value < prev.d->max_value) row.nondecreasing = false;
    }
    if (row.s && row.d) {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(row.s->argmax.values()[i] - row.d->argmax.values()[i]) > resolution)
          row.argmax_differs = true;
      }
    }
    series_ok &= row.nondecreasing;
    rows.push_back(std::move(row));
  }

  const char* yes_no[] = {"no", "yes"};
  switch (o.format) {
    case Format::Table:
    case Format::Tsv: {
      std::vector<std::string> header{"n"};
      if (want_s) header.push_back("max_strife");
      if (want_d) header.push_back("max_discord");
      header.push_back("nondecreasing");
      if (want_s && want_d) header.push_back("argmax_differs");
      if (want_s) header.push_back("argmax_strife");
      if (want_d) header.push_back("argmax_discord");
      std::vector<std::vector<std::string>> grid;
      for (const auto& r : rows) {
        std::vector<std::string> line{std::to_string(r.n)};
        if (want_s) line.push_back(fixed(r.s->max_value, p));
        if (want_d) line.push_back(fixed(r.d->max_value, p));
        line.push_back(yes_no[r.nondecreasing]);
        if (want_s && want_d) line.push_back(yes_no[r.argmax_differs]);
        if (want_s) line.push_back(distribution_text(r.s->argmax, 4));
        if (want_d) line.push_back(distribution_text(r.d->argmax, 4));
        grid.push_back(std::move(line));
      }
      render_grid(out, header, grid, o.format);
      if (o.format == Format::Table) out << "series nondecreasing: " << yes_no[series_ok] << '\n';
      break;
    }
    case Format::Json: {
      out << "{\"objective\": " << json_string(objective) << ", \"resolution\": " << resolution
          << ", \"nondecreasing\": " << (series_ok ? "true" : "false") << ", \"rows\": [";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << (i ? ", " : "") << "{\"n\": " << r.n;
        if (r.s) {
          out << ", \"max_strife\": " << fixed(r.s->max_value, p)
              << ", \"argmax_strife\": " << distribution_json(r.s->argmax, p);
        }
        if (r.d) {
          out << ", \"max_discord\": " << fixed(r.d->max_value, p)
              << ", \"argmax_discord\": " << distribution_json(r.d->argmax, p);
        }
        if (r.s && r.d) out << ", \"argmax_differs\": " << (r.argmax_differs ? "true" : "false");
        out << ", \"nondecreasing\": " << (r.nondecreasing ? "true" : "false") << "}";
      }
      out << "]}\n";
      break;
    }
  }
  return kOk;
}

inline int cmd_families(const SymmetricFamilySpec& spec, bool uniform, const OutputOptions& o,
                        std::ostream& out) {
  const Frame frame = Frame::of_size(spec.n);
  const auto family = generate_family(spec, frame);
  if (uniform) {
    out << serialize_body(uniform_body(family, frame));
    return kOk;
  }
  const SymmetryReport report = verify_strong_symmetry(family, frame);
  std::vector<std::string> sets;
  for (FocalSet s : family) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (s.contains(i)) names.push_back(frame.label(i));
    sets.push_back(detail::label_list(names));
  }
  std::string cards, members;
  for (const auto& [c, count] : report.cardinality_counts)
    cards += (cards.empty() ? "" : ", ") + std::to_string(c) + ": " + std::to_string(count);
  for (std::size_t i = 0; i < report.membership.size(); ++i)
    members += (i ? ", " : "") + std::to_string(report.membership[i]);

  Fields f;
  f.add("kind", o.format == Format::Json ? json_string(std::string(to_string(spec.kind)))
                                         : std::string(to_string(spec.kind)));
  f.add("n", std::to_string(spec.n));
  f.add("size", std::to_string(family.size()));
  f.add("strongly_symmetric", report.symmetric ? "true" : "false");
  if (o.format == Format::Json) {
    std::string js = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) js += (i ? ", " : "") + sets[i];
    f.add("sets", js + "]");
    std::string jc = "{";
    bool first = true;
    for (const auto& [c, count] : report.cardinality_counts) {
      jc += (first ? "" : ", ") + json_string(std::to_string(c)) + ": " + std::to_string(count);
      first = false;
    }
    f.add("cardinalities", jc + "}");
    f.add("membership", "[" + members + "]");
  } else {
    f.add("cardinalities", cards);
    f.add("membership", members);
    for (std::size_t i = 0; i < sets.size(); ++i) f.add("set " + std::to_string(i + 1), sets[i]);
  }
  f.render(out, o.format);
  return kOk;
}

inline int cmd_search(const SearchConfig& config, std::size_t limit, const OutputOptions& o,
                      std::ostream& out) {
  const SearchReport report = search_subadditivity_violations(config);
  const int p = o.precision;
  const std::size_t shown = std::min(limit, report.records.size());
  switch (o.format) {
    case Format::Table:
    case Format::Tsv: {
      const bool tsv = o.format == Format::Tsv;
      if (!tsv) {
        out << "measure " << to_string(config.measure) << ", frame " << config.x_size << "x"
            << config.y_size << ", trials " << report.trials_run << ", seed " << config.seed
            << ", violations " << report.records.size() << "\n";
      }
      out << (tsv ? "trial\tseed\tjoint\tmarginal_sum\tviolation\trelative\n"
                  : "trial    joint        marginal_sum violation    relative\n");
      for (std::size_t i = 0; i < shown; ++i) {
        const auto& r = report.records[i];
        if (tsv) {
          out << r.trial << '\t' << r.seed << '\t' << fixed(r.joint_value, p) << '\t'
              << fixed(r.marginal_sum, p) << '\t' << fixed(r.violation, p) << '\t'
              << fixed(r.relative_violation, p) << '\n';
        } else {
          char line[160];
          std::snprintf(line, sizeof line, "%-8zu %-12s %-12s %-12s %s\n", r.trial,
                        fixed(r.joint_value, p).c_str(), fixed(r.marginal_sum, p).c_str(),
                        fixed(r.violation, p).c_str(), fixed(r.relative_violation, p).c_str());
          out << line << serialize_body(r.joint);
        }
      }
      break;
    }
    case Format::Json: {
      out << "{\"measure\": " << json_string(std::string(to_string(config.measure)))
          << ", \"x_size\": " << config.x_size << ", \"y_size\": " << config.y_size
          << ", \"trials\": " << report.trials_run << ", \"seed\": " << config.seed
          << ", \"violation_count\": " << report.records.size() << ", \"violations\": [";
      for (std::size_t i = 0; i < shown; ++i) {
        const auto& r = report.records[i];
        const auto joint = nlohmann::ordered_json::parse(serialize_body(r.joint));
        out << (i ? ", " : "") << "{\"seed\": " << r.seed << ", \"trial\": " << r.trial
            << ", \"joint_value\": " << fixed(r.joint_value, p)
            << ", \"marginal_sum\": " << fixed(r.marginal_sum, p)
            << ", \"violation\": " << fixed(r.violation, p)
            << ", \"relative_violation\": " << fixed(r.relative_violation, p)
            << ", \"joint\": " << joint.dump() << "}";
      }
      out << "]}\n";
      break;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

/// Entry point: 0 on success, 1 on a validation error, 2 on a usage error.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Dempster-Shafer uncertainty measures: nonspecificity, discord, strife"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions o;
  std::string format = "table";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "tsv", "json"}));
  app.add_option("--precision", o.precision, "Decimal places")->check(CLI::Range(0, 17));

  auto* measure = app.add_subcommand("measure", "Measures of a body-of-evidence file");
  std::string body_path;
  bool renormalize = false;
  measure->add_option("file", body_path, "Body file, or - for standard input");
  measure->add_flag("--renormalize", renormalize, "Rescale masses that do not sum to one");

  auto* possibility = app.add_subcommand("possibility", "Closed-form measures of a distribution");
  std::vector<std::string> dist_values;
  std::string dist_file;
  possibility->add_option("values", dist_values, "r1 r2 ... rn");
  possibility->add_option("--file", dist_file, "One value per line, or - for standard input");

  auto* maximize_cmd = app.add_subcommand("maximize", "Maximize possibilistic strife or discord");
  std::string n_range = "2..8";
  std::string objective = "strife";
  double resolution = kDefaultResolution;
  maximize_cmd->add_option("--n", n_range, "Frame size or range lo..hi");
  maximize_cmd->add_option("--objective", objective)
      ->check(CLI::IsMember({"strife", "discord", "both"}));
  maximize_cmd->add_option("--resolution", resolution, "Finest grid step");

  auto* families = app.add_subcommand("families", "Strongly symmetric focal families");
  std::string kind_name;
  SymmetricFamilySpec spec;
  bool uniform = false;
  families->add_option("--kind", kind_name)
      ->required()
      ->check(CLI::IsMember({"equal-partition", "all-k-subsets", "chain-k",
                             "partition-all-subsets", "partition-chain-k"}));
  families->add_option("--n", spec.n)->required();
  families->add_option("--c", spec.block_size, "Block size");
  families->add_option("--k", spec.cardinality, "Focal set cardinality");
  families->add_flag("--uniform", uniform, "Emit the uniform body in the body file format");

  auto* search = app.add_subcommand("search", "Random search for subadditivity violations");
  SearchConfig config;
  std::string measure_name = "S";
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  search->add_option("--x-size", config.x_size);
  search->add_option("--y-size", config.y_size);
  search->add_option("--trials", config.trials);
  search->add_option("--seed", config.seed);
  search->add_option("--measure", measure_name)->check(CLI::IsMember({"N", "D", "S", "T", "NS"}));
  search->add_option("--max-focal", config.max_focal, "Largest focal count per random joint");
  search->add_option("--limit", limit, "Show at most this many records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dsm: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }
  o.format = format == "json" ? Format::Json : format == "tsv" ? Format::Tsv : Format::Table;

  try {
    if (*measure) return cmd_measure(body_path, renormalize, o, in, out);
    if (*possibility) {
      if (dist_values.empty() && dist_file.empty()) {
        err << "dsm: possibility needs values or --file\n";
        return kUsage;
      }
      return cmd_possibility(dist_values, dist_file, o, in, out);
    }
    if (*maximize_cmd) {
      std::size_t lo = 0, hi = 0;
      const auto dots = n_range.find("..");
      try {
        if (dots == std::string::npos) {
          lo = hi = std::stoul(n_range);
        } else {
          lo = std::stoul(n_range.substr(0, dots));
          hi = std::stoul(n_range.substr(dots + 2));
        }
      } catch (const std::exception&) {
        err << "dsm: --n expects N or LO..HI\n";
        return kUsage;
      }
      return cmd_maximize(lo, hi, objective, resolution, o, out);
    }
    if (*families) {
      spec.kind = *family_kind_from_string(kind_name);
      return cmd_families(spec, uniform, o, out);
    }
    if (*search) {
      config.measure = *measure_from_string(measure_name);
      return cmd_search(config, limit, o, out);
    }
  } catch (const Error& e) {
    err << "dsm: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace dsm::cli
