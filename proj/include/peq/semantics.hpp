#pragma once

#include <functional>
#include <string>
#include <vector>

#include "peq/printer.hpp"
#include "peq/rename.hpp"
#include "peq/state.hpp"

namespace peq {

inline Int eval(const AExpr& e, const DataState& s) {
  switch (e.op()) {
    case AOp::literal: return e.value();
    case AOp::variable: return s.get(e.var());
    case AOp::neg: return -eval(e.lhs(), s);
    case AOp::add: return eval(e.lhs(), s) + eval(e.rhs(), s);
    case AOp::sub: return eval(e.lhs(), s) - eval(e.rhs(), s);
    case AOp::mul: return eval(e.lhs(), s) * eval(e.rhs(), s);
  }
  return 0;
}

inline bool eval(const BExpr& e, const DataState& s) {
  switch (e.op()) {
    case BOp::constant: return e.truth();
    case BOp::eq: return eval(e.a_lhs(), s) == eval(e.a_rhs(), s);
    case BOp::ne: return eval(e.a_lhs(), s) != eval(e.a_rhs(), s);
    case BOp::lt: return eval(e.a_lhs(), s) < eval(e.a_rhs(), s);
    case BOp::le: return eval(e.a_lhs(), s) <= eval(e.a_rhs(), s);
    case BOp::gt: return eval(e.a_lhs(), s) > eval(e.a_rhs(), s);
    case BOp::ge: return eval(e.a_lhs(), s) >= eval(e.a_rhs(), s);
    case BOp::conj: return eval(e.b_lhs(), s) && eval(e.b_rhs(), s);
    case BOp::disj: return eval(e.b_lhs(), s) || eval(e.b_rhs(), s);
    case BOp::negation: return !eval(e.b_lhs(), s);
  }
  return false;
}

enum class StepKind : std::uint8_t { assign, guard, nop };

/// The operation labelling one transition: an assignment, a guard (an
/// evaluated condition, possibly negated) or nop.
struct ExecStep {
  StepKind kind = StepKind::nop;
  int label = 0;
  Var target;
  AExpr value;
  BExpr cond;
  bool negated = false;

  static ExecStep nop() { return {}; }
  static ExecStep assignment(int label, Var target, AExpr value) {
    return {StepKind::assign, label, target, std::move(value), {}, false};
  }
  static ExecStep guard(int label, BExpr cond, bool negated) {
    return {StepKind::guard, label, {}, {}, std::move(cond), negated};
  }

  /// Variables read by the operation.
  const std::vector<Var>& reads() const {
    static const std::vector<Var> none;
    switch (kind) {
      case StepKind::assign: return value.vars();
      case StepKind::guard: return cond.vars();
      default: return none;
    }
  }

  friend bool operator==(const ExecStep& a, const ExecStep& b) {
    if (a.kind != b.kind || a.label != b.label) return false;
    switch (a.kind) {
      case StepKind::assign: return a.target == b.target && a.value == b.value;
      case StepKind::guard: return a.negated == b.negated && a.cond == b.cond;
      default: return true;
    }
  }
};

inline std::string to_string(const ExecStep& op) {
  switch (op.kind) {
    case StepKind::assign: return op.target.name() + " := " + to_string(op.value);
    case StepKind::guard: return op.negated ? "!(" + to_string(op.cond) + ")" : to_string(op.cond);
    default: return "nop";
  }
}

inline ExecStep rename_step(const ExecStep& op, const RenamingFn& rho) {
  switch (op.kind) {
    case StepKind::assign: return ExecStep::assignment(op.label, rho(op.target), rename(op.value, rho));
    case StepKind::guard: return ExecStep::guard(op.label, rename(op.cond, rho), op.negated);
    default: return op;
  }
}

struct Transition {
  ExecStep op;
  Program program;
  DataState state;
};

namespace detail {

struct ConcreteRules {
  using State = DataState;
  bool admits(const BExpr& b, bool outcome, const DataState& s) const { return eval(b, s) == outcome; }
  DataState assign(Var v, const AExpr& e, const DataState& s) const { return s.updated(v, eval(e, s)); }
};

// Data states are existentially quantified away: a guard admits an outcome
// unless it is variable-free and evaluates the other way.
struct SyntacticRules {
  struct State {
    friend bool operator==(State, State) { return true; }
  };
  bool admits(const BExpr& b, bool outcome, State) const {
    return !b.vars().empty() || eval(b, DataState{}) == outcome;
  }
  State assign(Var, const AExpr&, State) const { return {}; }
};

template <class State>
struct RuleStep {
  ExecStep op;
  Program program;
  State state;
};

// One application of each rule that fires on (p, s), in a fixed order:
// parallel branches by index, then guard true before false.
template <class Rules>
std::vector<RuleStep<typename Rules::State>> apply_rules(const Program& p, const typename Rules::State& s,
                                                         const Rules& rules) {
  using State = typename Rules::State;
  std::vector<RuleStep<State>> out;
  switch (p.kind()) {
    case StmtKind::empty:
      break;
    case StmtKind::assign:
      out.push_back({ExecStep::assignment(p.label(), p.target(), p.value()), Program(),
                     rules.assign(p.target(), p.value(), s)});
      break;
    case StmtKind::assertion:
      if (rules.admits(p.cond(), true, s)) out.push_back({ExecStep::guard(p.label(), p.cond(), false), Program(), s});
      break;
    case StmtKind::branch:
      if (rules.admits(p.cond(), true, s))
        out.push_back({ExecStep::guard(p.label(), p.cond(), false), p.then_branch(), s});
      if (rules.admits(p.cond(), false, s))
        out.push_back({ExecStep::guard(p.label(), p.cond(), true), p.else_branch(), s});
      break;
    case StmtKind::loop:
      if (rules.admits(p.cond(), true, s))
        out.push_back({ExecStep::guard(p.label(), p.cond(), false), Program::seq(p.body(), p), s});
      if (rules.admits(p.cond(), false, s)) out.push_back({ExecStep::guard(p.label(), p.cond(), true), Program(), s});
      break;
    case StmtKind::seq:
      if (p.first().is_empty()) {
        out.push_back({ExecStep::nop(), p.rest(), s});
      } else {
        for (auto& sub : apply_rules(p.first(), s, rules))
          out.push_back({std::move(sub.op), Program::seq(std::move(sub.program), p.rest()), std::move(sub.state)});
      }
      break;
    case StmtKind::par: {
      auto bs = p.branches();
      bool all_empty = std::all_of(bs.begin(), bs.end(), [](const Program& b) { return b.is_empty(); });
      if (all_empty) {
        out.push_back({ExecStep::nop(), Program(), s});
        break;
      }
      for (std::size_t i = 0; i < bs.size(); ++i) {
        for (auto& sub : apply_rules(bs[i], s, rules)) {
          std::vector<Program> next(bs.begin(), bs.end());
          next[i] = std::move(sub.program);
          out.push_back({std::move(sub.op), Program::par(std::move(next)), std::move(sub.state)});
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// All successors of (p, σ) under the small-step rules. Empty when p is E
/// or stuck on a failing assertion.
inline std::vector<Transition> step(const Program& p, const DataState& s) {
  std::vector<Transition> out;
  for (auto& r : detail::apply_rules(p, s, detail::ConcreteRules{}))
    out.push_back({std::move(r.op), std::move(r.program), std::move(r.state)});
  return out;
}

/// Successors with data states abstracted away.
inline std::vector<std::pair<ExecStep, Program>> syntactic_step(const Program& p) {
  std::vector<std::pair<ExecStep, Program>> out;
  for (auto& r : detail::apply_rules(p, {}, detail::SyntacticRules{}))
    out.emplace_back(std::move(r.op), std::move(r.program));
  return out;
}

/// True when p has a failing assertion at its head, directly, behind a
/// sequence, or in some branch of a leading parallel statement.
inline bool violates_assertion(const Program& p, const DataState& s) {
  switch (p.kind()) {
    case StmtKind::assertion: return !eval(p.cond(), s);
    case StmtKind::seq: return violates_assertion(p.first(), s);
    case StmtKind::par:
      for (const auto& b : p.branches())
        if (violates_assertion(b, s)) return true;
      return false;
    default: return false;
  }
}

enum class Ending : std::uint8_t { terminated, stuck, truncated };

inline const char* to_string(Ending e) {
  switch (e) {
    case Ending::terminated: return "terminated";
    case Ending::stuck: return "stuck";
    case Ending::truncated: return "truncated";
  }
  return "?";
}

struct Execution {
  Program program;
  DataState state;
  std::vector<Transition> steps;
  Ending ending = Ending::terminated;

  const Program& final_program() const { return steps.empty() ? program : steps.back().program; }
  const DataState& final_state() const { return steps.empty() ? state : steps.back().state; }
};

struct ExecutionSet {
  /// Maximal executions within the bound; every member of ex(S) of length
  /// at most the bound is a prefix of one of these.
  std::vector<Execution> executions;
  bool complete = true;
};

inline ExecutionSet executions(const Program& p, const DataState& s, std::size_t max_steps) {
  ExecutionSet out;
  Execution current{p, s, {}, Ending::terminated};
  std::function<void()> extend = [&] {
    const Program& prog = current.final_program();
    const DataState& state = current.final_state();
    auto next = step(prog, state);
    if (next.empty()) {
      current.ending = prog.is_empty() ? Ending::terminated : Ending::stuck;
      out.executions.push_back(current);
      return;
    }
    if (current.steps.size() >= max_steps) {
      current.ending = Ending::truncated;
      out.complete = false;
      out.executions.push_back(current);
      return;
    }
    for (auto& t : next) {
      current.steps.push_back(std::move(t));
      extend();
      current.steps.pop_back();
    }
  };
  extend();
  return out;
}

struct SyntacticPath {
  Program start;
  std::vector<std::pair<ExecStep, Program>> steps;
  Ending ending = Ending::terminated;

  const Program& final_program() const { return steps.empty() ? start : steps.back().second; }
};

struct SyntacticPathSet {
  std::vector<SyntacticPath> paths;
  bool complete = true;
};

/// Maximal syntactic paths within the step bound (prefixes are implied).
inline SyntacticPathSet syntactic_paths(const Program& p, std::size_t max_steps) {
  SyntacticPathSet out;
  SyntacticPath current{p, {}, Ending::terminated};
  std::function<void()> extend = [&] {
    const Program& prog = current.final_program();
    auto next = syntactic_step(prog);
    if (next.empty()) {
      current.ending = prog.is_empty() ? Ending::terminated : Ending::stuck;
      out.paths.push_back(current);
      return;
    }
    if (current.steps.size() >= max_steps) {
      current.ending = Ending::truncated;
      out.complete = false;
      out.paths.push_back(current);
      return;
    }
    for (auto& t : next) {
      current.steps.push_back(std::move(t));
      extend();
      current.steps.pop_back();
    }
  };
  extend();
  return out;
}

/// True when `t` is one of the successors of (p, σ).
inline bool is_transition(const Program& p, const DataState& s, const Transition& t) {
  for (const auto& cand : step(p, s))
    if (cand.op == t.op && cand.program == t.program && cand.state == t.state) return true;
  return false;
}

}  // namespace peq
