#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adversary.hpp"
#include "poset.hpp"
#include "ramsey.hpp"
#include "realizers.hpp"
#include "structure.hpp"

namespace ordim {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline void check_schema(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("file is not a JSON object");
  if (!j.contains("schema_version"))
    throw std::invalid_argument("missing schema_version");
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
}

inline Json poset_to_json(const Poset& p) {
  Json elements = Json::array();
  for (int v = 0; v < p.size(); ++v) {
    Json tokens = Json::array();
    for (const auto& t : p.label(v)) tokens.push_back(to_string(t));
    elements.push_back({{"id", v}, {"label", tokens}});
  }
  Json covers = Json::array();
  for (auto [x, y] : p.covers()) covers.push_back({x, y});
  return Json{{"covers", covers},
              {"elements", elements},
              {"schema_version", kSchemaVersion}};
}

inline Poset poset_from_json(const Json& j) {
  check_schema(j);
  const auto& elements = j.at("elements");
  const int n = (int)elements.size();
  std::vector<Label> labels(n);
  std::vector<bool> seen(n, false);
  for (const auto& e : elements) {
    const int id = e.at("id").get<int>();
    if (id < 0 || id >= n || seen[id])
      throw std::invalid_argument("element ids must cover 0..n-1 once");
    seen[id] = true;
    Label l;
    for (const auto& t : e.at("label")) l.push_back(parse_label_token(t.get<std::string>()));
    labels[id] = std::move(l);
  }
  std::vector<std::vector<int>> above(n);
  for (const auto& c : j.at("covers")) {
    const int x = c.at(0).get<int>(), y = c.at(1).get<int>();
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw std::invalid_argument("cover endpoint out of range");
    above[x].push_back(y);
  }
  // reachability closure of the cover relation; from_less rechecks axioms
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : above[v])
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
    }
  }
  return Poset::from_less(n, std::move(labels),
                          [&](int x, int y) { return reach[x][y]; });
}

inline Json realizer_to_json(const std::vector<std::vector<int>>& ples) {
  return Json{{"ples", ples}, {"schema_version", kSchemaVersion}};
}

inline std::vector<std::vector<int>> realizer_from_json(const Json& j) {
  check_schema(j);
  return j.at("ples").get<std::vector<std::vector<int>>>();
}

inline Json boolean_realizer_to_json(const BooleanRealizer& br) {
  return Json{{"orders", br.orders},
              {"schema_version", kSchemaVersion},
              {"tau_ones", std::vector<std::string>(br.tau_ones.begin(),
                                                    br.tau_ones.end())}};
}

inline BooleanRealizer boolean_realizer_from_json(const Json& j) {
  check_schema(j);
  BooleanRealizer br;
  br.orders = j.at("orders").get<std::vector<std::vector<int>>>();
  for (const auto& s : j.at("tau_ones")) br.tau_ones.insert(s.get<std::string>());
  return br;
}

// grid files carry axis sizes; in memory the axis values are 0..size-1
inline Json grid_to_json(const GridColoring& grid) {
  std::vector<int> sizes;
  for (const auto& a : grid.axes) sizes.push_back((int)a.size());
  return Json{{"axes", sizes},
              {"colors", grid.colors},
              {"schema_version", kSchemaVersion}};
}

inline GridColoring grid_from_json(const Json& j) {
  check_schema(j);
  GridColoring grid;
  for (const auto& s : j.at("axes")) {
    const int len = s.get<int>();
    if (len < 0) throw std::invalid_argument("axis size must not be negative");
    std::vector<int> axis(len);
    for (int i = 0; i < len; ++i) axis[i] = i;
    grid.axes.push_back(std::move(axis));
  }
  grid.colors = j.at("colors").get<std::vector<int>>();
  grid.validate();
  return grid;
}

inline Json mono_box_to_json(const MonoBox& box) {
  return Json{{"color", box.color},
              {"picks", box.picks},
              {"schema_version", kSchemaVersion}};
}

inline Json ramsey_bound_to_json(const RamseyBound& b) {
  Json j{{"describe", b.describe()}, {"schema_version", kSchemaVersion}};
  switch (b.kind) {
    case RamseyBound::Kind::exact:
      j["kind"] = "exact";
      j["value"] = b.value;
      break;
    case RamseyBound::Kind::log_ten:
      j["kind"] = "log_ten";
      j["log10"] = b.log10_value;
      break;
    case RamseyBound::Kind::astronomical:
      j["kind"] = "astronomical";
      j["tower_height"] = b.tower_height;
      break;
  }
  return j;
}

inline Json tree_decomposition_to_json(const TreeDecomposition& td) {
  Json edges = Json::array();
  for (auto [a, b] : td.edges) edges.push_back({a, b});
  return Json{{"bags", td.bags},
              {"edges", edges},
              {"schema_version", kSchemaVersion}};
}

inline TreeDecomposition tree_decomposition_from_json(const Json& j) {
  check_schema(j);
  TreeDecomposition td;
  td.bags = j.at("bags").get<std::vector<std::vector<int>>>();
  for (const auto& e : j.at("edges"))
    td.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return td;
}

inline const char* failure_reason_name(FailureReport::Reason r) {
  switch (r) {
    case FailureReport::Reason::size_insufficient:
      return "SizeInsufficient";
    case FailureReport::Reason::unreversed_pair:
      return "UnreversedPair";
    case FailureReport::Reason::uncovered_comparability:
      return "UncoveredComparability";
    case FailureReport::Reason::mu_precondition_exceeded:
      return "MuPreconditionExceeded";
  }
  return "?";
}

inline Json adversary_state_to_json(const AdversaryState& st) {
  return Json{{"chosen", st.chosen},
              {"fixed", st.fixed},
              {"live", st.live},
              {"m", st.m}};
}

inline Json adversary_run_to_json(const AdversaryRun& run) {
  Json j{{"schema_version", kSchemaVersion}, {"success", run.success}};
  if (run.success) {
    j["certificate"] = {{"ples", run.certificate.ple_indexes},
                        {"witness", run.certificate.witness}};
  } else {
    const auto& f = run.failure;
    Json fj{{"detail", f.detail},
            {"reason", failure_reason_name(f.reason)},
            {"stage", f.stage}};
    switch (f.reason) {
      case FailureReport::Reason::unreversed_pair:
      case FailureReport::Reason::uncovered_comparability:
        fj["pair"] = {f.pair.first, f.pair.second};
        break;
      case FailureReport::Reason::mu_precondition_exceeded:
        fj["element"] = f.element;
        fj["mu"] = f.mu;
        break;
      case FailureReport::Reason::size_insufficient:
        fj["required_size"] = f.required_size;
        break;
    }
    j["failure"] = fj;
  }
  Json trace = Json::array();
  for (const auto& st : run.trace) trace.push_back(adversary_state_to_json(st));
  j["trace"] = trace;
  return j;
}

// canonical bytes: sorted keys (nlohmann objects), two-space indent,
// one trailing newline
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << dump_canonical(j);
}

}  // namespace ordim
