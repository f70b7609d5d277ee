#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "numerics.hpp"

namespace intertwine {

struct ReportCase {
  std::string key;
  nlohmann::json inputs;
  cplx closed_form = 0.0;
  cplx oracle = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// pass <=> abs_diff <= tolerance; cases serialize sorted by key.
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::vector<ReportCase> cases;

  const ReportCase& add(std::string key, nlohmann::json inputs, cplx closed_form, cplx oracle, double tolerance) {
    ReportCase c{std::move(key), std::move(inputs), closed_form, oracle, std::abs(closed_form - oracle), tolerance,
                 false};
    c.pass = c.abs_diff <= tolerance;
    cases.push_back(std::move(c));
    return cases.back();
  }

  // A boolean check recorded as closed_form = 1 (holds) against oracle = 1.
  const ReportCase& add_check(std::string key, nlohmann::json inputs, bool holds) {
    return add(std::move(key), std::move(inputs), holds ? 1.0 : 0.0, 1.0, 0.0);
  }

  void merge(const Report& other) {
    for (auto c : other.cases) {
      c.key = other.suite + "/" + c.key;
      cases.push_back(std::move(c));
    }
  }

  bool passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const ReportCase& c) { return c.pass; });
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const ReportCase& c) { return !c.pass; }));
  }

  double max_diff() const {
    double m = 0.0;
    for (const auto& c : cases) m = std::max(m, c.abs_diff);
    return m;
  }

  // wall_time is omitted unless requested, so equal seeds give equal bytes.
  nlohmann::json to_json(bool with_timing = false) const {
    auto sorted = cases;
    std::stable_sort(sorted.begin(), sorted.end(), [](const ReportCase& a, const ReportCase& b) { return a.key < b.key; });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : sorted)
      arr.push_back({{"key", c.key},
                     {"inputs", c.inputs},
                     {"closed_form", {c.closed_form.real(), c.closed_form.imag()}},
                     {"oracle", {c.oracle.real(), c.oracle.imag()}},
                     {"abs_diff", c.abs_diff},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
    nlohmann::json j = {{"suite", suite}, {"seed", seed}, {"pass", passed()}, {"cases", arr}};
    if (with_timing) j["wall_time"] = wall_time;
    return j;
  }

  std::string dump(bool with_timing = false) const { return to_json(with_timing).dump(2); }

  static Report from_json(const nlohmann::json& j) {
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("wall_time")) r.wall_time = j.at("wall_time").get<double>();
    for (const auto& c : j.at("cases")) {
      ReportCase rc;
      rc.key = c.at("key").get<std::string>();
      rc.inputs = c.at("inputs");
      rc.closed_form = cplx(c.at("closed_form")[0].get<double>(), c.at("closed_form")[1].get<double>());
      rc.oracle = cplx(c.at("oracle")[0].get<double>(), c.at("oracle")[1].get<double>());
      rc.abs_diff = c.at("abs_diff").get<double>();
      rc.tolerance = c.at("tolerance").get<double>();
      rc.pass = c.at("pass").get<bool>();
      r.cases.push_back(std::move(rc));
    }
    return r;
  }
};

}  // namespace intertwine
