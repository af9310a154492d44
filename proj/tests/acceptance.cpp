// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dsm/dsm.hpp"
#include "oracle.hpp"

using namespace dsm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Corpus shared by criteria 3 and 4: |X| <= 6, up to 10 focal sets.
std::vector<BodyOfEvidence> small_corpus() {
  std::vector<BodyOfEvidence> out;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(3, i));
    const Frame frame = Frame::of_size(1 + rng.below(6));
    const std::size_t max_focal = std::min<std::size_t>(10, frame.full_mask());
    out.push_back(random_body(frame, 1 + rng.below(max_focal), rng));
  }
  return out;
}

Outcome paper_counterexample() {
  Outcome o;
  const Frame joint_frame = Frame::product(Frame({"a", "b"}), Frame({"alpha", "beta"}));
  const auto joint = canonical_counterexample(joint_frame);
  const double expected = 0.5 * (std::log2(4.0) - std::log2(3.0));
  const double s = strife(joint);
  const double sx = strife(marginalize(joint, Axis::First));
  const double sy = strife(marginalize(joint, Axis::Second));
  o.require(std::abs(s - expected) <= 1e-9, "S(joint) = " + num(s));
  o.require(sx == 0.0 && sy == 0.0, "marginal strifes " + num(sx) + ", " + num(sy));
  o.detail = o.pass ? "S(joint) = " + std::to_string(s) + ", S(m_x) + S(m_y) = 0" : o.detail;
  return o;
}

Outcome shannon_collapse() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(2, i));
    const auto body = random_bayesian_body(Frame::of_size(1 + rng.below(8)), rng);
    const auto h = shannon_if_bayesian(body);
    if (!h) {
      o.require(false, "body not recognised as Bayesian");
      continue;
    }
    worst = std::max({worst, std::abs(strife(body) - *h), std::abs(discord(body) - *h)});
  }
  o.require(worst <= 1e-10, "max deviation " + num(worst));
  if (o.pass) o.detail = "max |S-H|, |D-H| = " + num(worst);
  return o;
}

Outcome identities(const std::vector<BodyOfEvidence>& corpus) {
  Outcome o;
  double worst = 0.0;
  for (const auto& body : corpus) {
    const double n = nonspecificity(body), s = strife(body), k = k_term(body);
    const double ns = total_NS(body);
    worst = std::max({worst, std::abs(s - (n - k)), std::abs(ns - (2 * n - k)),
                      std::abs(discord(body) - discord_conflict_form(body)),
                      std::abs(s - strife_conflict_form(body))});
  }
  o.require(worst <= 1e-12, "max identity residual " + num(worst));
  if (o.pass) o.detail = "max residual " + num(worst);
  return o;
}

Outcome ranges(const std::vector<BodyOfEvidence>& corpus) {
  Outcome o;
  for (const auto& body : corpus) {
    const Frame& f = body.frame();
    o.require(within_frame_range(nonspecificity(body), f, 1e-12), "N out of range");
    o.require(within_frame_range(discord(body), f, 1e-12), "D out of range");
    o.require(within_frame_range(strife(body), f, 1e-12), "S out of range");
    o.require(within_frame_range(total_T(body), f, 1e-12), "T out of range");
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    const Frame f = Frame::of_size(n);
    const double top = std::log2(static_cast<double>(n));
    const auto certainty = measure_report(BodyOfEvidence::certainty(f, n - 1));
    for (double v : {certainty.nonspecificity, certainty.discord, certainty.strife,
                     certainty.total_T, certainty.total_NS})
      o.require(std::abs(v) <= 1e-12, "certainty endpoint missed at n=" + std::to_string(n));
    const auto vacuous = measure_report(BodyOfEvidence::vacuous(f));
    o.require(std::abs(vacuous.nonspecificity - top) <= 1e-12 &&
                  std::abs(vacuous.total_T - top) <= 1e-12 && std::abs(vacuous.strife) <= 1e-12,
              "vacuous endpoint missed at n=" + std::to_string(n));
    const auto uniform = measure_report(BodyOfEvidence::uniform_bayesian(f));
    o.require(std::abs(uniform.strife - top) <= 1e-12 && std::abs(uniform.discord - top) <= 1e-12 &&
                  std::abs(uniform.total_T - top) <= 1e-12,
              "uniform Bayesian endpoint missed at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "1000 bodies in range; endpoints hit for n = 1..6";
  return o;
}

Outcome additivity() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(derive_seed(5, i));
    const Frame fx = Frame::of_size(1 + rng.below(4));
    const Frame fy = Frame::of_size(1 + rng.below(4));
    const auto x = random_body(fx, 1 + rng.below(std::min<std::size_t>(8, fx.full_mask())), rng);
    const auto y = random_body(fy, 1 + rng.below(std::min<std::size_t>(8, fy.full_mask())), rng);
    const auto xy = product_join(x, y);
    for (Measure m : {Measure::N, Measure::D, Measure::S, Measure::T, Measure::NS})
      worst = std::max(worst, std::abs(evaluate(m, xy) - evaluate(m, x) - evaluate(m, y)));
  }
  o.require(worst <= 1e-9, "max additivity gap " + num(worst));
  if (o.pass) o.detail = "max gap over N, D, S, T, NS = " + num(worst);
  return o;
}

Outcome nonspecificity_subadditive() {
  Outcome o;
  const Frame joint = Frame::product(Frame::of_size(4), Frame::of_size(4));
  int exceptions = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(6, i));
    const auto body = random_body(joint, 1 + rng.below(12), rng);
    const double lhs = nonspecificity(body);
    const double rhs = nonspecificity(marginalize(body, Axis::First)) +
                       nonspecificity(marginalize(body, Axis::Second));
    if (lhs > rhs + 1e-9) ++exceptions;
  }
  o.require(exceptions == 0, std::to_string(exceptions) + " exceptions");
  if (o.pass) o.detail = "0 exceptions in 1000 joints";
  return o;
}

Outcome possibilistic_equivalence() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 12; ++n) {
    Rng rng(derive_seed(7, n));
    for (int t = 0; t < 1000; ++t) {
      const auto d = random_distribution(n, rng);
      const auto body = to_consonant_body(d);
      const double gn = nonspecificity(body), gs = strife(body);
      worst = std::max({worst, std::abs(possibilistic_nonspecificity(d) - gn),
                        std::abs(possibilistic_strife(d) - gs),
                        std::abs(possibilistic_total_NS(d) - (gn + gs))});
    }
  }
  o.require(worst <= 1e-10, "max closed-form gap " + num(worst));
  if (o.pass) o.detail = "max gap " + num(worst);
  return o;
}

Outcome strife_maximization() {
  Outcome o;
  double prev = -1.0;
  std::string series;
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto m = maximize_strife(n, 1e-4);
    o.require(m.max_value >= prev, "maximum decreased at n=" + std::to_string(n));
    o.require(m.max_value >= 0.0 && m.max_value <= 0.902,
              "maximum " + std::to_string(m.max_value) + " outside [0, 0.902]");
    if (n == 2) {
      const auto [best, arg] = oracle::grid_max_1d(
          [](double r) { return r * (1.0 - std::log2(1.0 + r)); }, 1e-4);
      o.require(std::abs(m.max_value - best) <= 1e-3,
                "n=2 maximum " + std::to_string(m.max_value) + " vs oracle " + std::to_string(best));
    }
    if (n == 2 || n == 16) series += (series.empty() ? "" : " .. ") + std::to_string(m.max_value);
    prev = m.max_value;
  }
  if (o.pass) o.detail = "nondecreasing " + series;
  return o;
}

Outcome symmetric_families() {
  Outcome o;
  int count = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const Frame frame = Frame::of_size(n);
    for (const auto& spec : admissible_specs(n)) {
      const auto body = uniform_body(generate_family(spec, frame), frame);
      worst = std::max(worst, std::abs(total_NS(body) - std::log2(static_cast<double>(n))));
      ++count;
    }
  }
  o.require(worst <= 1e-9, "max |NS - log2 n| = " + num(worst));
  if (o.pass) o.detail = std::to_string(count) + " families, max |NS - log2 n| = " + num(worst);
  return o;
}

Outcome ns_search() {
  Outcome o;
  SearchConfig config{.x_size = 2, .y_size = 2, .trials = 10000, .seed = 2718, .measure = Measure::NS};
  const auto a = search_subadditivity_violations(config);
  const auto b = search_subadditivity_violations(config);
  o.require(a.trials_run == 10000, "trials run " + std::to_string(a.trials_run));
  o.require(a.records.size() == b.records.size(), "nondeterministic record count");
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& r = a.records[i];
    o.require(r.trial == b.records[i].trial && r.violation == b.records[i].violation,
              "nondeterministic records");
    o.require(r.violation > 1e-9, "nonpositive violation recorded");
    o.require(parse_body(serialize_body(r.joint)) == r.joint, "record body does not round-trip");
    SearchConfig again = config;
    again.seed = r.seed;
    const auto joint = search_joint(again, r.trial);
    const double joint_value = evaluate(Measure::NS, joint);
    const double marginal_sum = evaluate(Measure::NS, marginalize(joint, Axis::First)) +
                                evaluate(Measure::NS, marginalize(joint, Axis::Second));
    o.require(joint == r.joint && joint_value == r.joint_value &&
                  marginal_sum == r.marginal_sum && joint_value - marginal_sum == r.violation,
              "record not reproducible from (seed, trial)");
    smallest = std::min(smallest, r.violation);
  }
  if (o.pass) {
    o.detail = std::to_string(a.records.size()) + " NS violations in 10000 trials";
    if (!a.records.empty()) {
      o.detail += " (largest " + num(a.records.front().violation) + ", relative " +
                  num(a.records.front().relative_violation) + ")";
    }
  }
  return o;
}

}  // namespace

int main() {
  const auto corpus = small_corpus();
  const std::vector<Criterion> criteria = {
      {1, "paper counterexample regression", 1.0, paper_counterexample},
      {2, "Shannon collapse", 5.0, shannon_collapse},
      {3, "identity suite", 10.0, [&] { return identities(corpus); }},
      {4, "range suite", 0.0, [&] { return ranges(corpus); }},
      {5, "additivity", 10.0, additivity},
      {6, "N subadditivity", 0.0, nonspecificity_subadditive},
      {7, "possibilistic equivalence", 30.0, possibilistic_equivalence},
      {8, "strife maximization trend", 60.0, strife_maximization},
      {9, "symmetric-family maxima", 10.0, symmetric_families},
      {10, "NS-subadditivity search", 0.0, ns_search},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      o.require(false, "runtime " + std::to_string(secs) + " s over limit");
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-32s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
