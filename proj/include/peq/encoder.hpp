#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "peq/dataflow.hpp"
#include "peq/error.hpp"

namespace peq {

using VarMap = std::map<Var, Var>;

/// Injective map from each of `mods` to a name outside `forbidden`: v_s,
/// then v_s2, v_s3, ... on collision.
inline VarMap fresh_switch(const VarSet& mods, const VarSet& forbidden) {
  VarMap out;
  VarSet taken = forbidden;
  for (Var v : mods) {
    Var candidate(v.name() + "_s");
    for (int n = 2; taken.contains(candidate); ++n) candidate = Var(v.name() + "_s" + std::to_string(n));
    taken.insert(candidate);
    out.emplace(v, candidate);
  }
  return out;
}

/// ρ_switch: v ↦ switch(v), switch(v) ↦ v, identity elsewhere.
inline RenamingFn build_rho_switch(const VarMap& sw) {
  std::vector<std::pair<Var, Var>> pairs;
  for (const auto& [v, w] : sw) {
    pairs.emplace_back(v, w);
    pairs.emplace_back(w, v);
  }
  return RenamingFn(pairs);
}

struct RenamingViolation {
  /// "b1", "b2" or "a".
  std::string clause;
  Var var;
  Var image;
};

struct RenamingReport {
  std::vector<RenamingViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations)
      s += (s.empty() ? "" : "; ") + v.clause + ": " + v.var.name() + " -> " + v.image.name();
    return s;
  }
};

/// Checks that ρ is appropriate for renaming S1 against S2 and keeps the
/// initialized variables I apart.
inline RenamingReport validate_renaming(const RenamingFn& rho, const Program& s1, const Program& s2, const VarSet& m1,
                                        const VarSet& m2, const VarSet& init) {
  RenamingReport report;
  for (Var v : set_union(vars_of(s1), m2))
    if (m2.contains(rho(v))) report.violations.push_back({"b1", v, rho(v)});
  VarSet blocked = set_union(vars_of(s2), m1);
  for (Var v : m1)
    if (blocked.contains(rho(v))) report.violations.push_back({"b2", v, rho(v)});
  for (Var v : init)
    if (rho(v) != v && init.contains(rho(v))) report.violations.push_back({"a", v, rho(v)});
  return report;
}

/// Ascending lexicographic order.
inline std::vector<Var> to_seq(const VarSet& vs) { return {vs.begin(), vs.end()}; }

/// v := ρ(v) for each v in order.
inline Program init_block(const RenamingFn& rho, const std::vector<Var>& vs) {
  std::vector<Program> stmts;
  for (Var v : vs) stmts.push_back(Program::assign(0, v, AExpr::variable(rho(v))));
  return Program::sequence(std::move(stmts));
}

/// assert ρ(v) == v for each v in order.
inline Program equal_block(const RenamingFn& rho, const std::vector<Var>& vs) {
  std::vector<Program> stmts;
  for (Var v : vs) stmts.push_back(Program::assertion(0, eq(AExpr::variable(rho(v)), AExpr::variable(v))));
  return Program::sequence(std::move(stmts));
}

/// Replaces every `assert b` by `while (!(b)) {}`: a failing assertion
/// blocks instead of failing, so only the final checks can fail the task.
inline Program disarm_asserts(const Program& p) {
  switch (p.kind()) {
    case StmtKind::assertion: return Program::loop(p.label(), !p.cond(), Program());
    case StmtKind::branch:
      return Program::branch(p.label(), p.cond(), disarm_asserts(p.then_branch()), disarm_asserts(p.else_branch()));
    case StmtKind::loop: return Program::loop(p.label(), p.cond(), disarm_asserts(p.body()));
    case StmtKind::seq: return Program::seq(disarm_asserts(p.first()), disarm_asserts(p.rest()));
    case StmtKind::par: {
      std::vector<Program> bs;
      for (const auto& b : p.branches()) bs.push_back(disarm_asserts(b));
      return Program::par(std::move(bs));
    }
    default: return p;
  }
}

/// The equivalence task for one segment pair.
struct EquivalenceTask {
  int segment_id = 0;
  Program original;
  Program modified;
  Program task;
  RenamingFn rho;
  VarSet init_set;
  VarSet check_set;
  VarMap duplicates;
  VarSet shared;
  UsageSummary summary_original;
  UsageSummary summary_modified;

  /// The four parts of `task` in order: init, renamed S1, S2, equal.
  Program init_part;
  Program renamed_original;
  Program modified_part;
  Program equal_part;
};

inline EquivalenceTask build_task(const Program& s1, const Program& s2, const UsageSummary& sum1,
                                  const UsageSummary& sum2) {
  EquivalenceTask t;
  t.segment_id = sum1.segment_id;
  t.original = s1;
  t.modified = s2;
  t.summary_original = sum1;
  t.summary_modified = sum2;

  VarSet mods = set_union(sum1.modified, sum2.modified);
  VarSet all_vars = set_union(vars_of(s1), vars_of(s2));
  t.duplicates = fresh_switch(mods, all_vars);
  t.rho = build_rho_switch(t.duplicates);
  t.init_set = set_intersection(set_intersection(sum1.used_before_def, sum2.used_before_def), mods);
  t.check_set = set_intersection(mods, set_union(sum1.live_after, sum2.live_after));
  t.shared = set_difference(set_intersection(sum1.vars, sum2.vars), mods);

  auto report = validate_renaming(t.rho, s1, s2, sum1.modified, sum2.modified, t.init_set);
  if (!report.ok())
    throw Error(ErrorKind::renaming_validation_failed,
                "segment " + std::to_string(t.segment_id) + ": " + report.to_string());

  int next = 1;
  t.init_part = detail::relabel(init_block(t.rho, to_seq(t.init_set)), next);
  t.renamed_original = detail::relabel(rename_program(disarm_asserts(s1), t.rho), next);
  t.modified_part = detail::relabel(disarm_asserts(s2), next);
  t.equal_part = detail::relabel(equal_block(t.rho, to_seq(t.check_set)), next);
  t.task = Program::seq(t.init_part, Program::seq(t.renamed_original, Program::seq(t.modified_part, t.equal_part)));
  return t;
}

inline nlohmann::json to_json(const VarSet& vs) {
  auto out = nlohmann::json::array();
  for (Var v : vs) out.push_back(v.name());
  return out;
}

inline nlohmann::json to_json(const UsageSummary& s) {
  return {{"segment_id", s.segment_id},
          {"vars", to_json(s.vars)},
          {"modified", to_json(s.modified)},
          {"used_before_def", to_json(s.used_before_def)},
          {"live_after", to_json(s.live_after)}};
}

/// Metadata written next to a task file.
inline nlohmann::json sidecar_json(const EquivalenceTask& t) {
  auto renaming = nlohmann::json::array();
  for (const auto& [from, to] : t.rho.pairs()) renaming.push_back({from.name(), to.name()});
  auto duplicates = nlohmann::json::object();
  for (const auto& [v, d] : t.duplicates) duplicates[v.name()] = d.name();
  return {{"segment_id", t.segment_id},
          {"renaming", renaming},
          {"init_set", to_json(t.init_set)},
          {"check_set", to_json(t.check_set)},
          {"shared", to_json(t.shared)},
          {"duplicates", duplicates},
          {"summary_original", to_json(t.summary_original)},
          {"summary_modified", to_json(t.summary_modified)}};
}

}  // namespace peq
