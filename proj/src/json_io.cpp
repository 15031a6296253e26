#include "dyadic/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dyadic/error.hpp"

namespace dyadic {
namespace {

template <typename F>
auto parse_guard(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const DyadicInterval& interval) { return json::array({interval.level, interval.index}); }

DyadicInterval interval_from_json(const json& j) {
  return parse_guard("interval", [&] {
    if (!j.is_array() || j.size() != 2)
      fail(Errc::ParseError, "interval must be [level, index]");
    return DyadicInterval{j.at(0).get<int>(), j.at(1).get<std::int64_t>()};
  });
}

json to_json(const StepFunction& f) {
  return json{{"depth", f.depth()}, {"cells", std::vector<double>(f.cells().begin(), f.cells().end())}};
}

StepFunction step_function_from_json(const json& j) {
  return parse_guard("step function", [&] {
    return StepFunction(j.at("depth").get<int>(), j.at("cells").get<std::vector<double>>());
  });
}

StepFunction weight_from_json(const json& j) {
  StepFunction w = step_function_from_json(j);
  require_weight(w);
  return w;
}

json to_json(const HaarShiftSpec& spec) {
  json entries = json::array();
  for (const ShiftEntry& e : spec.entries)
    entries.push_back({{"q", to_json(e.q)}, {"qp", to_json(e.qp)}, {"qpp", to_json(e.qpp)}, {"a", e.a}});
  return json{{"tau", spec.tau}, {"bound_constant", spec.bound_constant}, {"entries", entries}};
}

HaarShiftSpec shift_spec_from_json(const json& j) {
  return parse_guard("shift spec", [&] {
    HaarShiftSpec spec;
    spec.tau = j.at("tau").get<int>();
    spec.bound_constant = j.at("bound_constant").get<double>();
    for (const json& e : j.at("entries"))
      spec.entries.push_back({interval_from_json(e.at("q")), interval_from_json(e.at("qp")),
                              interval_from_json(e.at("qpp")), e.at("a").get<double>()});
    spec.validate();
    return spec;
  });
}

json to_json(const LernerDecomposition& dec) {
  json gens = json::array();
  for (const auto& list : dec.cube_lists()) {
    json g = json::array();
    for (const DyadicInterval& q : list) g.push_back(to_json(q));
    gens.push_back(g);
  }
  return json{{"root", to_json(dec.root)}, {"generations", gens}};
}

LernerDecomposition decomposition_from_json(const json& j, const StepFunction& f) {
  return parse_guard("decomposition", [&] {
    const DyadicInterval root = interval_from_json(j.at("root"));
    std::vector<std::vector<DyadicInterval>> cubes;
    for (const json& g : j.at("generations")) {
      auto& list = cubes.emplace_back();
      for (const json& q : g) list.push_back(interval_from_json(q));
    }
    return LernerDecomposition::from_cubes(f, root, cubes);
  });
}

json to_json(const ApReport& report) {
  return json{{"p", report.p},
              {"constant", report.constant},
              {"witness", to_json(report.witness)},
              {"depth", report.depth}};
}

json to_json(const NormReport& report) {
  return json{{"value", report.value},
              {"method", method_name(report.method)},
              {"iterations", report.iterations},
              {"residual", report.residual},
              {"depth", report.depth}};
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const PropertyCheck& c : report.checks) {
    json item{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    item["counterexample_cell"] = c.counterexample_cell ? json(*c.counterexample_cell) : json(nullptr);
    checks.push_back(item);
  }
  return json{{"passed", report.passed()},
              {"least_scaling", report.least_scaling},
              {"checks", checks}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace dyadic
