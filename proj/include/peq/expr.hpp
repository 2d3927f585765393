#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "peq/var.hpp"

namespace peq {

/// Mathematical integer; no overflow.
using Int = boost::multiprecision::cpp_int;

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return std::hash<long long>{}(v.convert_to<long long>());
  return std::hash<std::string>{}(v.str());
}

inline std::vector<Var> merge_vars(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

enum class AOp : std::uint8_t { literal, variable, neg, add, sub, mul };

class AExpr {
 public:
  static AExpr literal(Int value);
  static AExpr variable(Var v);
  static AExpr negate(AExpr e);
  static AExpr binary(AOp op, AExpr lhs, AExpr rhs);

  AOp op() const;
  const Int& value() const;
  Var var() const;
  const AExpr& lhs() const;
  const AExpr& rhs() const;
  /// V(e), sorted by name.
  const std::vector<Var>& vars() const;
  std::size_t hash() const;

  friend bool operator==(const AExpr& a, const AExpr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash() || a.op() != b.op()) return false;
    switch (a.op()) {
      case AOp::literal: return a.value() == b.value();
      case AOp::variable: return a.var() == b.var();
      case AOp::neg: return a.lhs() == b.lhs();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

  AExpr() = default;

 private:
  struct Node;
  explicit AExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct AExpr::Node {
  AOp op = AOp::literal;
  Int value;
  Var var;
  AExpr lhs;
  AExpr rhs;
  std::vector<Var> vars;
  std::size_t hash = 0;
};

inline AOp AExpr::op() const { return node_->op; }
inline const Int& AExpr::value() const { return node_->value; }
inline Var AExpr::var() const { return node_->var; }
inline const AExpr& AExpr::lhs() const { return node_->lhs; }
inline const AExpr& AExpr::rhs() const { return node_->rhs; }
inline const std::vector<Var>& AExpr::vars() const { return node_->vars; }
inline std::size_t AExpr::hash() const { return node_->hash; }

inline AExpr AExpr::literal(Int value) {
  auto n = std::make_shared<Node>();
  n->op = AOp::literal;
  n->hash = detail::hash_mix(1, detail::hash_int(value));
  n->value = std::move(value);
  return AExpr(std::move(n));
}

inline AExpr AExpr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->op = AOp::variable;
  n->var = v;
  n->vars = {v};
  n->hash = detail::hash_mix(2, v.hash());
  return AExpr(std::move(n));
}

inline AExpr AExpr::negate(AExpr e) {
  auto n = std::make_shared<Node>();
  n->op = AOp::neg;
  n->vars = e.vars();
  n->hash = detail::hash_mix(3, e.hash());
  n->lhs = std::move(e);
  return AExpr(std::move(n));
}

inline AExpr AExpr::binary(AOp op, AExpr lhs, AExpr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->vars = detail::merge_vars(lhs.vars(), rhs.vars());
  n->hash = detail::hash_mix(detail::hash_mix(static_cast<std::size_t>(op) + 16, lhs.hash()), rhs.hash());
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return AExpr(std::move(n));
}

inline AExpr lit(long long v) { return AExpr::literal(Int(v)); }
inline AExpr var(std::string_view name) { return AExpr::variable(Var(name)); }
inline AExpr operator+(AExpr a, AExpr b) { return AExpr::binary(AOp::add, std::move(a), std::move(b)); }
inline AExpr operator-(AExpr a, AExpr b) { return AExpr::binary(AOp::sub, std::move(a), std::move(b)); }
inline AExpr operator*(AExpr a, AExpr b) { return AExpr::binary(AOp::mul, std::move(a), std::move(b)); }
inline AExpr operator-(AExpr a) { return AExpr::negate(std::move(a)); }

enum class BOp : std::uint8_t { constant, eq, ne, lt, le, gt, ge, conj, disj, negation };

inline bool is_comparison(BOp op) { return op >= BOp::eq && op <= BOp::ge; }

class BExpr {
 public:
  static BExpr constant(bool value);
  static BExpr compare(BOp op, AExpr lhs, AExpr rhs);
  static BExpr logical(BOp op, BExpr lhs, BExpr rhs);
  static BExpr negate(BExpr e);

  BOp op() const;
  bool truth() const;
  const AExpr& a_lhs() const;
  const AExpr& a_rhs() const;
  const BExpr& b_lhs() const;
  const BExpr& b_rhs() const;
  const std::vector<Var>& vars() const;
  std::size_t hash() const;

  friend bool operator==(const BExpr& a, const BExpr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash() || a.op() != b.op()) return false;
    if (a.op() == BOp::constant) return a.truth() == b.truth();
    if (is_comparison(a.op())) return a.a_lhs() == b.a_lhs() && a.a_rhs() == b.a_rhs();
    if (a.op() == BOp::negation) return a.b_lhs() == b.b_lhs();
    return a.b_lhs() == b.b_lhs() && a.b_rhs() == b.b_rhs();
  }

  BExpr() = default;

 private:
  struct Node;
  explicit BExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct BExpr::Node {
  BOp op = BOp::constant;
  bool truth = false;
  AExpr a_lhs;
  AExpr a_rhs;
  BExpr b_lhs;
  BExpr b_rhs;
  std::vector<Var> vars;
  std::size_t hash = 0;
};

inline BOp BExpr::op() const { return node_->op; }
inline bool BExpr::truth() const { return node_->truth; }
inline const AExpr& BExpr::a_lhs() const { return node_->a_lhs; }
inline const AExpr& BExpr::a_rhs() const { return node_->a_rhs; }
inline const BExpr& BExpr::b_lhs() const { return node_->b_lhs; }
inline const BExpr& BExpr::b_rhs() const { return node_->b_rhs; }
inline const std::vector<Var>& BExpr::vars() const { return node_->vars; }
inline std::size_t BExpr::hash() const { return node_->hash; }

inline BExpr BExpr::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->op = BOp::constant;
  n->truth = value;
  n->hash = detail::hash_mix(101, value ? 1 : 0);
  return BExpr(std::move(n));
}

inline BExpr BExpr::compare(BOp op, AExpr lhs, AExpr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->vars = detail::merge_vars(lhs.vars(), rhs.vars());
  n->hash = detail::hash_mix(detail::hash_mix(static_cast<std::size_t>(op) + 200, lhs.hash()), rhs.hash());
  n->a_lhs = std::move(lhs);
  n->a_rhs = std::move(rhs);
  return BExpr(std::move(n));
}

inline BExpr BExpr::logical(BOp op, BExpr lhs, BExpr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->vars = detail::merge_vars(lhs.vars(), rhs.vars());
  n->hash = detail::hash_mix(detail::hash_mix(static_cast<std::size_t>(op) + 300, lhs.hash()), rhs.hash());
  n->b_lhs = std::move(lhs);
  n->b_rhs = std::move(rhs);
  return BExpr(std::move(n));
}

inline BExpr BExpr::negate(BExpr e) {
  auto n = std::make_shared<Node>();
  n->op = BOp::negation;
  n->vars = e.vars();
  n->hash = detail::hash_mix(400, e.hash());
  n->b_lhs = std::move(e);
  return BExpr(std::move(n));
}

inline BExpr eq(AExpr a, AExpr b) { return BExpr::compare(BOp::eq, std::move(a), std::move(b)); }
inline BExpr ne(AExpr a, AExpr b) { return BExpr::compare(BOp::ne, std::move(a), std::move(b)); }
inline BExpr lt(AExpr a, AExpr b) { return BExpr::compare(BOp::lt, std::move(a), std::move(b)); }
inline BExpr le(AExpr a, AExpr b) { return BExpr::compare(BOp::le, std::move(a), std::move(b)); }
inline BExpr gt(AExpr a, AExpr b) { return BExpr::compare(BOp::gt, std::move(a), std::move(b)); }
inline BExpr ge(AExpr a, AExpr b) { return BExpr::compare(BOp::ge, std::move(a), std::move(b)); }
inline BExpr operator&&(BExpr a, BExpr b) { return BExpr::logical(BOp::conj, std::move(a), std::move(b)); }
inline BExpr operator||(BExpr a, BExpr b) { return BExpr::logical(BOp::disj, std::move(a), std::move(b)); }
inline BExpr operator!(BExpr a) { return BExpr::negate(std::move(a)); }

inline VarSet vars_of(const AExpr& e) { return VarSet(e.vars().begin(), e.vars().end()); }
inline VarSet vars_of(const BExpr& e) { return VarSet(e.vars().begin(), e.vars().end()); }

}  // namespace peq
