#pragma once

#include <functional>
#include <unordered_set>

#include "peq/error.hpp"
#include "peq/explore.hpp"
#include "peq/parser.hpp"

namespace peq {

/// Variable usage of one segment within its whole program.
struct UsageSummary {
  int segment_id = 0;
  VarSet vars;
  VarSet modified;
  VarSet used_before_def;
  VarSet live_after;

  friend bool operator==(const UsageSummary&, const UsageSummary&) = default;
};

/// Variables on the left-hand side of some assignment in p.
inline VarSet modified_vars(const Program& p) {
  VarSet out;
  std::function<void(const Program&)> walk = [&](const Program& q) {
    if (q.kind() == StmtKind::assign) out.insert(q.target());
    for (const auto& c : q.children()) walk(c);
  };
  walk(p);
  return out;
}

namespace detail {

inline void flag_uses(const std::vector<Var>& reads, const VarSet& defined, VarSet& ub) {
  for (Var v : reads)
    if (!defined.contains(v)) ub.insert(v);
}

// Forward definite assignment. Returns the set definitely assigned after p.
inline VarSet definite_after(const Program& p, VarSet defined, VarSet& ub) {
  switch (p.kind()) {
    case StmtKind::empty: return defined;
    case StmtKind::assign:
      flag_uses(p.value().vars(), defined, ub);
      defined.insert(p.target());
      return defined;
    case StmtKind::assertion:
      flag_uses(p.cond().vars(), defined, ub);
      return defined;
    case StmtKind::branch: {
      flag_uses(p.cond().vars(), defined, ub);
      VarSet t = definite_after(p.then_branch(), defined, ub);
      VarSet e = definite_after(p.else_branch(), defined, ub);
      return set_intersection(t, e);
    }
    case StmtKind::loop:
      flag_uses(p.cond().vars(), defined, ub);
      definite_after(p.body(), defined, ub);
      return defined;
    case StmtKind::seq: return definite_after(p.rest(), definite_after(p.first(), std::move(defined), ub), ub);
    case StmtKind::par:
      for (const auto& b : p.branches()) definite_after(b, defined, ub);
      return defined;
  }
  return defined;
}

// Backward liveness. Returns the live-in set of p given live-out `out`;
// records the live-out set of the node `target` (if met) into `recorded`.
inline VarSet live_before(const Program& p, const VarSet& out, const void* target, VarSet& recorded, bool& found) {
  if (p.identity() == target) {
    found = true;
    recorded.insert(out.begin(), out.end());
  }
  auto with_reads = [](VarSet s, const std::vector<Var>& reads) {
    s.insert(reads.begin(), reads.end());
    return s;
  };
  switch (p.kind()) {
    case StmtKind::empty: return out;
    case StmtKind::assign: {
      VarSet in = out;
      in.erase(p.target());
      return with_reads(std::move(in), p.value().vars());
    }
    case StmtKind::assertion: return with_reads(out, p.cond().vars());
    case StmtKind::branch: {
      VarSet in = live_before(p.then_branch(), out, target, recorded, found);
      VarSet e = live_before(p.else_branch(), out, target, recorded, found);
      in.insert(e.begin(), e.end());
      return with_reads(std::move(in), p.cond().vars());
    }
    case StmtKind::loop: {
      VarSet in = with_reads(out, p.cond().vars());
      while (true) {
        VarSet next = with_reads(set_union(out, live_before(p.body(), in, target, recorded, found)), p.cond().vars());
        if (next == in) return in;
        in = std::move(next);
      }
    }
    case StmtKind::seq:
      return live_before(p.first(), live_before(p.rest(), out, target, recorded, found), target, recorded, found);
    case StmtKind::par: {
      VarSet in;
      for (const auto& b : p.branches()) {
        VarSet bi = live_before(b, out, target, recorded, found);
        in.insert(bi.begin(), bi.end());
      }
      return in;
    }
  }
  return out;
}

}  // namespace detail

/// Variables possibly read before being assigned on some syntactic path of p.
inline VarSet used_before_def(const Program& p) {
  VarSet ub;
  detail::definite_after(p, {}, ub);
  return ub;
}

/// Variables live immediately after `segment` (a node of `whole`, by
/// identity) when `outputs` are live at the end of `whole`.
inline VarSet live_after(const Program& whole, const Program& segment, const VarSet& outputs) {
  VarSet recorded;
  bool found = false;
  detail::live_before(whole, outputs, segment.identity(), recorded, found);
  if (!found) throw Error(ErrorKind::unknown_segment, "segment is not part of the program");
  return recorded;
}

inline const SegmentMarker& find_segment(const SourceFile& file, int id) {
  for (const auto& s : file.segments)
    if (s.id == id) return s;
  throw Error(ErrorKind::unknown_segment, "no segment with id " + std::to_string(id));
}

inline VarSet live_after_segment(const SourceFile& file, int id, const VarSet& outputs) {
  return live_after(file.program, find_segment(file, id).body, outputs);
}

inline UsageSummary summarize(const Program& whole, const Program& segment, int id, const VarSet& outputs) {
  return {id, vars_of(segment), modified_vars(segment), used_before_def(segment), live_after(whole, segment, outputs)};
}

inline UsageSummary summarize_segment(const SourceFile& file, int id, const VarSet& outputs) {
  return summarize(file.program, find_segment(file, id).body, id, outputs);
}

/// Result of a bounded semantic oracle. `complete` is false when some
/// exploration was truncated by the step bound or the state budget.
struct OracleSet {
  VarSet vars;
  bool complete = true;
};

/// Variables whose value differs from the initial one in some reachable
/// state, over all initial states assigning domain values to vars_of(p).
inline OracleSet modified_vars_oracle(const Program& p, const Domain& domain, std::size_t max_steps,
                                      std::size_t max_states = 1'000'000) {
  OracleSet out;
  StateBudget budget{max_states};
  Search<Config> search(max_steps, budget);
  for_each_initial_state(vars_of(p), domain, [&](const DataState& init) {
    auto res = search.run(Config{p, init}, config_successors, [&](std::uint32_t, const auto& node) {
      const DataState& s = node.config.state;
      for (const auto& [v, value] : s.entries())
        if (init.get(v) != value) out.vars.insert(v);
      for (const auto& [v, value] : init.entries())
        if (s.get(v) != value) out.vars.insert(v);
      return false;
    });
    if (!res.complete()) out.complete = false;
    return !res.exhausted;
  });
  return out;
}

namespace detail {

// Configuration of the used-before-definition oracle: the assigned set
// determines which future reads count.
struct UbConfig {
  Program program;
  DataState state;
  VarSet assigned;

  friend bool operator==(const UbConfig&, const UbConfig&) = default;
};

struct UbConfigHash {
  std::size_t operator()(const UbConfig& c) const {
    std::size_t h = hash_mix(c.program.hash(), c.state.hash());
    for (Var v : c.assigned) h = hash_mix(h, v.hash());
    return h;
  }
};

}  // namespace detail
}  // namespace peq

template <>
struct std::hash<peq::detail::UbConfig> : peq::detail::UbConfigHash {};

namespace peq {

/// Union over all executions of the variables read at some step before any
/// earlier step assigned them.
inline OracleSet ub_oracle(const Program& p, const Domain& domain, std::size_t max_steps,
                           std::size_t max_states = 1'000'000) {
  using detail::UbConfig;
  OracleSet out;
  StateBudget budget{max_states};
  Search<UbConfig> search(max_steps, budget);
  auto succ = [&](const UbConfig& c) {
    std::vector<std::pair<ExecStep, UbConfig>> next;
    for (auto& t : step(c.program, c.state)) {
      for (Var v : t.op.reads())
        if (!c.assigned.contains(v)) out.vars.insert(v);
      VarSet assigned = c.assigned;
      if (t.op.kind == StepKind::assign) assigned.insert(t.op.target);
      next.emplace_back(t.op, UbConfig{std::move(t.program), std::move(t.state), std::move(assigned)});
    }
    return next;
  };
  for_each_initial_state(vars_of(p), domain, [&](const DataState& init) {
    auto res = search.run(UbConfig{p, init, {}}, succ, [](std::uint32_t, const auto&) { return false; });
    if (!res.complete()) out.complete = false;
    return !res.exhausted;
  });
  return out;
}

namespace detail {

// The continuation S'' when `config` has the form S1;S'' with S1 the node
// `target` at the head of its left spine.
inline std::optional<Program> continuation_after(const Program& config, const void* target) {
  std::vector<Program> rests;
  Program cur = config;
  while (true) {
    if (cur.identity() == target) break;
    if (cur.kind() != StmtKind::seq) return std::nullopt;
    rests.push_back(cur.rest());
    cur = cur.first();
  }
  if (rests.empty()) return Program();
  Program cont = rests.front();
  for (std::size_t i = 1; i < rests.size(); ++i) cont = Program::seq(rests[i], cont);
  return cont;
}

struct KillConfig {
  Program program;
  VarSet killed;

  friend bool operator==(const KillConfig&, const KillConfig&) = default;
};

struct KillConfigHash {
  std::size_t operator()(const KillConfig& c) const {
    std::size_t h = c.program.hash();
    for (Var v : c.killed) h = hash_mix(h, v.hash());
    return h;
  }
};

}  // namespace detail
}  // namespace peq

template <>
struct std::hash<peq::detail::KillConfig> : peq::detail::KillConfigHash {};

namespace peq {

/// Variables live after `segment` by the path-based definition: some
/// syntactic path of a continuation reads v before assigning it, or
/// terminates without assigning v ∈ outputs. Continuations are found by
/// exploring the syntactic paths of `whole`.
inline OracleSet live_oracle(const Program& whole, const Program& segment, const VarSet& outputs,
                             std::size_t max_steps, std::size_t max_states = 1'000'000) {
  OracleSet out;
  StateBudget budget{max_states};

  std::vector<Program> continuations;
  std::unordered_set<Program> seen;
  {
    std::unordered_set<Program> visited{whole};
    std::vector<std::pair<Program, std::size_t>> frontier{{whole, 0}};
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      auto [prog, depth] = frontier[head];
      if (auto cont = detail::continuation_after(prog, segment.identity()); cont && seen.insert(*cont).second)
        continuations.push_back(*cont);
      auto next = syntactic_step(prog);
      if (next.empty()) continue;
      if (depth >= max_steps) {
        out.complete = false;
        continue;
      }
      for (auto& [op, q] : next) {
        if (!visited.insert(q).second) continue;
        if (!budget.consume()) {
          out.complete = false;
          return out;
        }
        frontier.emplace_back(q, depth + 1);
      }
    }
  }

  using detail::KillConfig;
  Search<KillConfig> search(max_steps, budget);
  auto succ = [&](const KillConfig& c) {
    std::vector<std::pair<ExecStep, KillConfig>> next;
    for (auto& [op, q] : syntactic_step(c.program)) {
      for (Var v : op.reads())
        if (!c.killed.contains(v)) out.vars.insert(v);
      VarSet killed = c.killed;
      if (op.kind == StepKind::assign) killed.insert(op.target);
      next.emplace_back(op, KillConfig{q, std::move(killed)});
    }
    return next;
  };
  for (const auto& cont : continuations) {
    auto res = search.run(KillConfig{cont, {}}, succ, [&](std::uint32_t, const auto& node) {
      if (node.config.program.is_empty())
        for (Var v : outputs)
          if (!node.config.killed.contains(v)) out.vars.insert(v);
      return false;
    });
    if (!res.complete()) out.complete = false;
    if (res.exhausted) break;
  }
  return out;
}

}  // namespace peq
