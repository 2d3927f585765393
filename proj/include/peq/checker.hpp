#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peq/encoder.hpp"
#include "peq/explore.hpp"
#include "peq/segments.hpp"

namespace peq {

struct CheckConfig {
  Domain domain;
  /// Longest execution explored from each initial state.
  std::size_t max_steps = 2000;
  /// Visited configurations allowed per check, over all initial states.
  std::size_t max_states = 200000;

  void validate() const {
    if (domain.lo > domain.hi) throw std::invalid_argument("domain is empty");
    if (max_steps < 1 || max_states < 1) throw std::invalid_argument("budgets must be at least 1");
  }
};

enum class VerdictKind : std::uint8_t { no_violation, violation, resource_exhausted };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::no_violation: return "NoViolation";
    case VerdictKind::violation: return "Violation";
    case VerdictKind::resource_exhausted: return "ResourceExhausted";
  }
  return "?";
}

/// Outcome of checking a task for assertion violations.
struct Verdict {
  VerdictKind kind = VerdictKind::no_violation;
  /// For NoViolation: every exploration finished without truncation.
  bool complete = true;
  /// For Violation: the initial state and a shortest violating execution.
  DataState initial;
  std::optional<Execution> trace;

  bool is_no_violation() const { return kind == VerdictKind::no_violation; }
  bool is_violation() const { return kind == VerdictKind::violation; }
  bool proves_safe() const { return kind == VerdictKind::no_violation && complete; }
};

namespace detail {

inline Execution trace_of(const Search<Config>& search, std::uint32_t idx) {
  const auto& nodes = search.nodes();
  auto path = search.path_to(idx);
  Execution ex{nodes[path[0]].config.program, nodes[path[0]].config.state, {}, Ending::stuck};
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& n = nodes[path[i]];
    ex.steps.push_back({n.op, n.config.program, n.config.state});
  }
  if (ex.final_program().is_empty()) ex.ending = Ending::terminated;
  return ex;
}

}  // namespace detail

/// Explores every initial state over cfg.domain for used_before_def(p)
/// (other variables 0) and reports the first reachable assertion failure.
inline Verdict check_program(const Program& p, const CheckConfig& cfg) {
  cfg.validate();
  Verdict verdict;
  StateBudget budget{cfg.max_states};
  Search<Config> search(cfg.max_steps, budget);
  for_each_initial_state(used_before_def(p), cfg.domain, [&](const DataState& init) {
    auto res = search.run(Config{p, init}, config_successors, [](std::uint32_t, const auto& node) {
      return violates_assertion(node.config.program, node.config.state);
    });
    if (res.stop_index) {
      verdict.kind = VerdictKind::violation;
      verdict.complete = true;
      verdict.initial = init;
      verdict.trace = detail::trace_of(search, *res.stop_index);
      return false;
    }
    if (res.exhausted) {
      verdict.kind = VerdictKind::resource_exhausted;
      verdict.complete = false;
      return false;
    }
    if (res.truncated) verdict.complete = false;
    return true;
  });
  return verdict;
}

inline Verdict check_task(const EquivalenceTask& t, const CheckConfig& cfg) { return check_program(t.task, cfg); }

enum class EquivKind : std::uint8_t { equivalent, inequivalent, unknown };

inline const char* to_string(EquivKind k) {
  switch (k) {
    case EquivKind::equivalent: return "Equivalent";
    case EquivKind::inequivalent: return "Inequivalent";
    case EquivKind::unknown: return "Unknown";
  }
  return "?";
}

/// Outcome of the brute-force partial-equivalence oracle.
struct EquivVerdict {
  EquivKind kind = EquivKind::equivalent;
  bool complete = true;
  /// For Inequivalent: the initial state, two disagreeing terminal states,
  /// the variable they disagree on, and all terminal states of both
  /// programs from that initial state (in discovery order).
  DataState initial;
  DataState terminal1;
  DataState terminal2;
  Var witness;
  std::vector<DataState> terminals1;
  std::vector<DataState> terminals2;
};

namespace detail {

struct Terminals {
  std::vector<DataState> states;
  SearchOutcome outcome;
};

inline Terminals terminal_states(const Program& p, const DataState& init, Search<Config>& search) {
  Terminals out;
  std::unordered_set<DataState> seen;
  out.outcome = search.run(Config{p, init}, config_successors, [&](std::uint32_t, const auto& node) {
    if (node.config.program.is_empty() && seen.insert(node.config.state).second)
      out.states.push_back(node.config.state);
    return false;
  });
  return out;
}

}  // namespace detail

/// Compares the normally terminating executions of s1 and s2 from every
/// initial state over cfg.domain for vars_of(s1) ∪ vars_of(s2) ∪ outputs.
inline EquivVerdict oracle_partial_equiv(const Program& s1, const Program& s2, const VarSet& outputs,
                                         const CheckConfig& cfg) {
  cfg.validate();
  EquivVerdict verdict;
  StateBudget budget{cfg.max_states};
  Search<Config> search(cfg.max_steps, budget);
  VarSet vars = set_union(set_union(vars_of(s1), vars_of(s2)), outputs);
  for_each_initial_state(vars, cfg.domain, [&](const DataState& init) {
    auto t1 = detail::terminal_states(s1, init, search);
    auto t2 = t1.outcome.exhausted ? detail::Terminals{} : detail::terminal_states(s2, init, search);
    for (const auto& a : t1.states) {
      for (const auto& b : t2.states) {
        for (Var v : outputs) {
          if (a.get(v) == b.get(v)) continue;
          verdict = {EquivKind::inequivalent, true, init, a, b, v, t1.states, t2.states};
          return false;
        }
      }
    }
    if (t1.outcome.exhausted || t2.outcome.exhausted) {
      verdict.kind = EquivKind::unknown;
      verdict.complete = false;
      return false;
    }
    if (!t1.outcome.complete() || !t2.outcome.complete()) {
      verdict.kind = EquivKind::unknown;
      verdict.complete = false;
    }
    return true;
  });
  return verdict;
}

enum class PipelineVerdict : std::uint8_t { equivalent, possibly_inequivalent, unknown };

inline const char* to_string(PipelineVerdict k) {
  switch (k) {
    case PipelineVerdict::equivalent: return "Equivalent";
    case PipelineVerdict::possibly_inequivalent: return "PossiblyInequivalent";
    case PipelineVerdict::unknown: return "Unknown";
  }
  return "?";
}

struct SegmentResult {
  EquivalenceTask task;
  Verdict verdict;
};

struct PipelineReport {
  PipelineVerdict verdict = PipelineVerdict::equivalent;
  VarSet outputs;
  std::vector<SegmentResult> segments;
};

/// Builds and checks one task per segment pair. Equivalent only when every
/// task is free of violations with complete exploration.
inline PipelineReport verify_pair(const SourceFile& original, const SourceFile& modified, const VarSet& outputs,
                                  const CheckConfig& cfg) {
  cfg.validate();
  ReplacementMap gamma = validate_replacement(original, modified);
  PipelineReport report;
  report.outputs = outputs;
  bool any_violation = false;
  bool all_safe = true;
  for (const auto& pair : gamma.pairs) {
    UsageSummary s1 = summarize(original.program, pair.original, pair.id, outputs);
    UsageSummary s2 = summarize(modified.program, pair.modified, pair.id, outputs);
    EquivalenceTask task = build_task(pair.original, pair.modified, s1, s2);
    Verdict v = check_task(task, cfg);
    any_violation = any_violation || v.is_violation();
    all_safe = all_safe && v.proves_safe();
    report.segments.push_back({std::move(task), std::move(v)});
  }
  report.verdict = any_violation ? PipelineVerdict::possibly_inequivalent
                   : all_safe    ? PipelineVerdict::equivalent
                                 : PipelineVerdict::unknown;
  return report;
}

/// Outputs used for a pair of files: the union of their #outputs directives.
inline VarSet declared_outputs(const SourceFile& a, const SourceFile& b) { return set_union(a.outputs, b.outputs); }

}  // namespace peq
