#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "peq/expr.hpp"

namespace peq {

enum class StmtKind : std::uint8_t { empty, assign, assertion, branch, loop, seq, par };

/// Immutable labeled program tree. Copies share structure; node identity
/// (`identity()`) is what distinguishes two occurrences of the same code.
class Program {
 public:
  /// The empty program E.
  Program();

  static Program empty() { return Program(); }
  static Program assign(int label, Var target, AExpr value);
  static Program assertion(int label, BExpr cond);
  static Program branch(int label, BExpr cond, Program then_branch, Program else_branch);
  static Program loop(int label, BExpr cond, Program body);
  static Program seq(Program first, Program rest);
  static Program par(std::vector<Program> branches);
  /// Right-nested sequence; E for no statements, the statement itself for one.
  static Program sequence(std::vector<Program> stmts);

  StmtKind kind() const { return node_->kind; }
  bool is_empty() const { return node_->kind == StmtKind::empty; }
  int label() const { return node_->label; }
  Var target() const { return node_->target; }
  const AExpr& value() const { return node_->value; }
  const BExpr& cond() const { return node_->cond; }
  const Program& then_branch() const { return node_->children[0]; }
  const Program& else_branch() const { return node_->children[1]; }
  const Program& body() const { return node_->children[0]; }
  const Program& first() const { return node_->children[0]; }
  const Program& rest() const { return node_->children[1]; }
  std::span<const Program> branches() const { return node_->children; }
  std::span<const Program> children() const { return node_->children; }

  /// Structural hash; labels do not contribute.
  std::size_t hash() const { return node_->hash; }
  const void* identity() const { return node_.get(); }

  /// Structural equality including labels.
  friend bool operator==(const Program& a, const Program& b);

 private:
  struct Node {
    StmtKind kind = StmtKind::empty;
    int label = 0;
    Var target;
    AExpr value;
    BExpr cond;
    std::vector<Program> children;
    std::size_t hash = 0;
  };

  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Program make(Node n);
  static std::size_t compute_hash(const Node& n);

  std::shared_ptr<const Node> node_;
};

inline std::size_t Program::compute_hash(const Node& n) {
  std::size_t h = detail::hash_mix(7001, static_cast<std::size_t>(n.kind));
  switch (n.kind) {
    case StmtKind::assign:
      h = detail::hash_mix(detail::hash_mix(h, n.target.hash()), n.value.hash());
      break;
    case StmtKind::assertion:
    case StmtKind::branch:
    case StmtKind::loop:
      h = detail::hash_mix(h, n.cond.hash());
      break;
    default:
      break;
  }
  for (const auto& c : n.children) h = detail::hash_mix(h, c.hash());
  return h;
}

inline Program Program::make(Node n) {
  n.hash = compute_hash(n);
  return Program(std::make_shared<const Node>(std::move(n)));
}

inline Program::Program() {
  static const std::shared_ptr<const Node> empty_node = [] {
    Node n;
    n.hash = compute_hash(n);
    return std::make_shared<const Node>(std::move(n));
  }();
  node_ = empty_node;
}

inline Program Program::assign(int label, Var target, AExpr value) {
  Node n;
  n.kind = StmtKind::assign;
  n.label = label;
  n.target = target;
  n.value = std::move(value);
  return make(std::move(n));
}

inline Program Program::assertion(int label, BExpr cond) {
  Node n;
  n.kind = StmtKind::assertion;
  n.label = label;
  n.cond = std::move(cond);
  return make(std::move(n));
}

inline Program Program::branch(int label, BExpr cond, Program then_branch, Program else_branch) {
  Node n;
  n.kind = StmtKind::branch;
  n.label = label;
  n.cond = std::move(cond);
  n.children = {std::move(then_branch), std::move(else_branch)};
  return make(std::move(n));
}

inline Program Program::loop(int label, BExpr cond, Program body) {
  Node n;
  n.kind = StmtKind::loop;
  n.label = label;
  n.cond = std::move(cond);
  n.children = {std::move(body)};
  return make(std::move(n));
}

inline Program Program::seq(Program first, Program rest) {
  Node n;
  n.kind = StmtKind::seq;
  n.children = {std::move(first), std::move(rest)};
  return make(std::move(n));
}

inline Program Program::par(std::vector<Program> branches) {
  if (branches.empty()) throw std::invalid_argument("parallel composition needs at least one branch");
  Node n;
  n.kind = StmtKind::par;
  n.children = std::move(branches);
  return make(std::move(n));
}

inline Program Program::sequence(std::vector<Program> stmts) {
  if (stmts.empty()) return Program();
  Program out = stmts.back();
  for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) out = seq(*it, std::move(out));
  return out;
}

namespace detail {

template <bool WithLabels>
bool program_equal(const Program& a, const Program& b) {
  if (a.identity() == b.identity()) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  if constexpr (WithLabels) {
    if (a.label() != b.label()) return false;
  }
  switch (a.kind()) {
    case StmtKind::empty: return true;
    case StmtKind::assign: return a.target() == b.target() && a.value() == b.value();
    case StmtKind::assertion: return a.cond() == b.cond();
    case StmtKind::branch:
    case StmtKind::loop:
      if (!(a.cond() == b.cond())) return false;
      break;
    default: break;
  }
  auto ca = a.children();
  auto cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!program_equal<WithLabels>(ca[i], cb[i])) return false;
  return true;
}

}  // namespace detail

inline bool operator==(const Program& a, const Program& b) { return detail::program_equal<true>(a, b); }

/// Structural equality ignoring labels.
inline bool same_shape(const Program& a, const Program& b) { return detail::program_equal<false>(a, b); }

inline void collect_vars(const Program& p, VarSet& out) {
  switch (p.kind()) {
    case StmtKind::assign:
      out.insert(p.target());
      out.insert(p.value().vars().begin(), p.value().vars().end());
      break;
    case StmtKind::assertion:
    case StmtKind::branch:
    case StmtKind::loop:
      out.insert(p.cond().vars().begin(), p.cond().vars().end());
      break;
    default:
      break;
  }
  for (const auto& c : p.children()) collect_vars(c, out);
}

/// V(S): variables in expressions or on assignment left-hand sides.
inline VarSet vars_of(const Program& p) {
  VarSet out;
  collect_vars(p, out);
  return out;
}

/// Flattens the left and right spines of nested sequences into statement order.
inline void flatten_into(const Program& p, std::vector<Program>& out) {
  if (p.kind() == StmtKind::seq) {
    flatten_into(p.first(), out);
    flatten_into(p.rest(), out);
  } else if (!p.is_empty()) {
    out.push_back(p);
  }
}

inline std::vector<Program> flatten(const Program& p) {
  std::vector<Program> out;
  flatten_into(p, out);
  return out;
}

namespace detail {

inline Program relabel(const Program& p, int& next) {
  switch (p.kind()) {
    case StmtKind::empty: return p;
    case StmtKind::assign: return Program::assign(next++, p.target(), p.value());
    case StmtKind::assertion: return Program::assertion(next++, p.cond());
    case StmtKind::branch: {
      int label = next++;
      Program t = relabel(p.then_branch(), next);
      Program e = relabel(p.else_branch(), next);
      return Program::branch(label, p.cond(), std::move(t), std::move(e));
    }
    case StmtKind::loop: {
      int label = next++;
      return Program::loop(label, p.cond(), relabel(p.body(), next));
    }
    case StmtKind::seq: {
      Program f = relabel(p.first(), next);
      return Program::seq(std::move(f), relabel(p.rest(), next));
    }
    case StmtKind::par: {
      std::vector<Program> bs;
      for (const auto& b : p.branches()) bs.push_back(relabel(b, next));
      return Program::par(std::move(bs));
    }
  }
  return p;
}

}  // namespace detail

/// Assigns fresh labels 1, 2, ... to the basic statements in preorder.
inline Program relabel(const Program& p) {
  int next = 1;
  return detail::relabel(p, next);
}

inline void collect_labels(const Program& p, std::vector<int>& out) {
  switch (p.kind()) {
    case StmtKind::assign:
    case StmtKind::assertion:
    case StmtKind::branch:
    case StmtKind::loop:
      out.push_back(p.label());
      break;
    default:
      break;
  }
  for (const auto& c : p.children()) collect_labels(c, out);
}

inline bool has_unique_labels(const Program& p) {
  std::vector<int> labels;
  collect_labels(p, labels);
  std::sort(labels.begin(), labels.end());
  return std::adjacent_find(labels.begin(), labels.end()) == labels.end();
}

inline bool contains_par(const Program& p) {
  if (p.kind() == StmtKind::par) return true;
  for (const auto& c : p.children())
    if (contains_par(c)) return true;
  return false;
}

}  // namespace peq

template <>
struct std::hash<peq::Program> {
  std::size_t operator()(const peq::Program& p) const noexcept { return p.hash(); }
};
