#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "peq/checker.hpp"

namespace peq {

inline nlohmann::json to_json(const Int& value) {
  if (value >= std::numeric_limits<long long>::min() && value <= std::numeric_limits<long long>::max())
    return static_cast<long long>(value);
  return value.str();
}

inline nlohmann::json to_json(const DataState& s) {
  auto out = nlohmann::json::object();
  for (const auto& [v, value] : s.entries()) out[v.name()] = to_json(value);
  return out;
}

inline nlohmann::json to_json(const Execution& ex) {
  auto steps = nlohmann::json::array();
  for (const auto& t : ex.steps)
    steps.push_back({{"label", t.op.label}, {"op", to_string(t.op)}, {"state", to_json(t.state)}});
  return steps;
}

inline nlohmann::json to_json(const CheckConfig& cfg) {
  return {{"domain", {to_json(cfg.domain.lo), to_json(cfg.domain.hi)}},
          {"max_steps", cfg.max_steps},
          {"max_states", cfg.max_states}};
}

inline std::string domain_note(const CheckConfig& cfg) {
  return "results are relative to initial values in " + to_string(cfg.domain) + " and the configured budgets";
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json out = {{"verdict", to_string(v.kind)}, {"complete", v.complete}};
  if (v.is_violation()) {
    out["initial_state"] = to_json(v.initial);
    out["trace"] = v.trace ? to_json(*v.trace) : nlohmann::json::array();
  } else {
    out["initial_state"] = nullptr;
    out["trace"] = nullptr;
  }
  return out;
}

inline nlohmann::json to_json(const EquivVerdict& v) {
  nlohmann::json out = {{"verdict", to_string(v.kind)}, {"complete", v.complete}};
  if (v.kind == EquivKind::inequivalent) {
    auto states = [](const std::vector<DataState>& ss) {
      auto a = nlohmann::json::array();
      for (const auto& s : ss) a.push_back(to_json(s));
      return a;
    };
    out["initial_state"] = to_json(v.initial);
    out["witness"] = v.witness.name();
    out["terminal_original"] = to_json(v.terminal1);
    out["terminal_modified"] = to_json(v.terminal2);
    out["terminals_original"] = states(v.terminals1);
    out["terminals_modified"] = states(v.terminals2);
  }
  return out;
}

inline nlohmann::json to_json(const PipelineReport& r, const CheckConfig& cfg,
                              std::optional<std::uint64_t> seed = std::nullopt) {
  auto segments = nlohmann::json::array();
  for (const auto& s : r.segments) {
    nlohmann::json entry = to_json(s.verdict);
    entry["id"] = s.task.segment_id;
    entry["sets"] = {{"original", to_json(s.task.summary_original)},
                     {"modified", to_json(s.task.summary_modified)},
                     {"init_set", to_json(s.task.init_set)},
                     {"check_set", to_json(s.task.check_set)}};
    segments.push_back(std::move(entry));
  }
  return {{"verdict", to_string(r.verdict)},
          {"outputs", to_json(r.outputs)},
          {"segments", segments},
          {"config", to_json(cfg)},
          {"generator_seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
          {"note", domain_note(cfg)}};
}

}  // namespace peq
