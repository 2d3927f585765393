#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "peq/semantics.hpp"

namespace peq {

/// Inclusive range of initial values assigned to enumerated variables.
struct Domain {
  Int lo = -2;
  Int hi = 2;

  std::size_t size() const { return lo > hi ? 0 : static_cast<std::size_t>(hi - lo + 1); }
};

inline std::string to_string(const Domain& d) { return "[" + d.lo.str() + ".." + d.hi.str() + "]"; }

/// Calls `fn(state)` for every assignment of domain values to `vars` (other
/// variables 0), in odometer order with the lexicographically last variable
/// varying fastest. Stops early when `fn` returns false.
template <class Fn>
bool for_each_initial_state(const VarSet& vars, const Domain& domain, Fn&& fn) {
  if (domain.lo > domain.hi) throw std::invalid_argument("empty domain");
  std::vector<Var> order(vars.begin(), vars.end());
  std::vector<Int> values(order.size(), domain.lo);
  while (true) {
    DataState s;
    for (std::size_t i = 0; i < order.size(); ++i) s.assign(order[i], values[i]);
    if (!fn(s)) return false;
    std::size_t k = order.size();
    while (k > 0) {
      --k;
      if (values[k] < domain.hi) {
        ++values[k];
        break;
      }
      values[k] = domain.lo;
      if (k == 0) return true;
    }
    if (order.empty()) return true;
  }
}

/// A configuration of the small-step semantics.
struct Config {
  Program program;
  DataState state;

  friend bool operator==(const Config& a, const Config& b) { return a.state == b.state && a.program == b.program; }
};

}  // namespace peq

template <>
struct std::hash<peq::Config> {
  std::size_t operator()(const peq::Config& c) const noexcept {
    return peq::detail::hash_mix(c.program.hash(), c.state.hash());
  }
};

namespace peq {

/// Shared budget of newly visited configurations across several searches.
struct StateBudget {
  std::size_t remaining = std::numeric_limits<std::size_t>::max();

  bool consume() {
    if (remaining == 0) return false;
    --remaining;
    return true;
  }
};

struct SearchOutcome {
  /// The visitor asked to stop at node `stop_index`.
  std::optional<std::uint32_t> stop_index;
  /// Some configuration at depth `max_steps` still had successors.
  bool truncated = false;
  /// The state budget ran out before the search finished.
  bool exhausted = false;

  bool complete() const { return !truncated && !exhausted; }
};

/// Breadth-first search over configurations of type C with a visited set.
/// Breadth-first order makes the path to any node a shortest one.
template <class C>
class Search {
 public:
  struct Node {
    C config;
    std::uint32_t parent;
    ExecStep op;
    std::uint32_t depth;
  };

  Search(std::size_t max_steps, StateBudget& budget)
      : max_steps_(max_steps), budget_(budget), visited_(64, IndexHash{&nodes_}, IndexEq{&nodes_}) {}

  /// `succ(config)` yields a vector of (ExecStep, C); `visit(index, node)`
  /// returns true to stop the search.
  template <class Succ, class Visit>
  SearchOutcome run(C init, Succ&& succ, Visit&& visit) {
    SearchOutcome out;
    nodes_.clear();
    visited_.clear();
    if (!budget_.consume()) {
      out.exhausted = true;
      return out;
    }
    nodes_.push_back({std::move(init), 0, ExecStep::nop(), 0});
    visited_.insert(0);
    if (visit(std::uint32_t{0}, nodes_[0])) {
      out.stop_index = 0;
      return out;
    }
    for (std::size_t head = 0; head < nodes_.size(); ++head) {
      auto next = succ(nodes_[head].config);
      if (next.empty()) continue;
      std::uint32_t depth = nodes_[head].depth;
      if (depth >= max_steps_) {
        out.truncated = true;
        continue;
      }
      for (auto& [op, cfg] : next) {
        auto idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({std::move(cfg), static_cast<std::uint32_t>(head), std::move(op), depth + 1});
        if (!visited_.insert(idx).second) {
          nodes_.pop_back();
          continue;
        }
        if (!budget_.consume()) {
          out.exhausted = true;
          return out;
        }
        if (visit(idx, nodes_[idx])) {
          out.stop_index = idx;
          return out;
        }
      }
    }
    return out;
  }

  const std::vector<Node>& nodes() const { return nodes_; }

  /// Node indices from the root to `idx`, inclusive.
  std::vector<std::uint32_t> path_to(std::uint32_t idx) const {
    std::vector<std::uint32_t> path{idx};
    while (idx != 0) {
      idx = nodes_[idx].parent;
      path.push_back(idx);
    }
    return {path.rbegin(), path.rend()};
  }

 private:
  struct IndexHash {
    const std::vector<Node>* nodes;
    std::size_t operator()(std::uint32_t i) const { return std::hash<C>{}((*nodes)[i].config); }
  };
  struct IndexEq {
    const std::vector<Node>* nodes;
    bool operator()(std::uint32_t a, std::uint32_t b) const { return (*nodes)[a].config == (*nodes)[b].config; }
  };

  std::size_t max_steps_;
  StateBudget& budget_;
  std::vector<Node> nodes_;
  std::unordered_set<std::uint32_t, IndexHash, IndexEq> visited_;
};

/// Successor function for concrete configurations.
inline std::vector<std::pair<ExecStep, Config>> config_successors(const Config& c) {
  std::vector<std::pair<ExecStep, Config>> out;
  for (auto& t : step(c.program, c.state))
    out.emplace_back(std::move(t.op), Config{std::move(t.program), std::move(t.state)});
  return out;
}

}  // namespace peq
