#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "peq/parser.hpp"
#include "peq/program.hpp"

namespace peq {

struct GeneratorConfig {
  /// Data variables are drawn from the first `data_vars` of x, y, z.
  int data_vars = 3;
  int max_stmts = 12;
  int max_expr_depth = 3;
  bool loops = true;
  bool par = true;
  bool asserts = true;
};

/// Random programs for the fuzz suites. Loops always have the shape
/// `w := k; while (w > 0) { ...; w := w - 1; }` with a constant k and a
/// reserved counter w that no other statement assigns, so every execution
/// terminates.
class Generator {
 public:
  explicit Generator(std::uint64_t seed, GeneratorConfig cfg = {}) : rng_(seed), cfg_(cfg) {
    static const char* names[] = {"x", "y", "z"};
    for (int i = 0; i < std::clamp(cfg_.data_vars, 1, 3); ++i) vars_.emplace_back(names[i]);
  }

  const std::vector<Var>& data_vars() const { return vars_; }
  static Var counter() { return Var("w"); }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return uniform(1, 100) <= percent; }
  Var any_var() { return vars_[static_cast<std::size_t>(uniform(0, static_cast<int>(vars_.size()) - 1))]; }

  AExpr aexpr(int depth) {
    if (depth <= 1 || chance(35)) return chance(55) ? AExpr::variable(any_var()) : AExpr::literal(uniform(-2, 2));
    switch (uniform(0, 6)) {
      case 0: return AExpr::negate(aexpr(depth - 1));
      case 1:
      case 2: return aexpr(depth - 1) + aexpr(depth - 1);
      case 3:
      case 4: return aexpr(depth - 1) - aexpr(depth - 1);
      default: return aexpr(depth - 1) * aexpr(depth - 1);
    }
  }

  BExpr bexpr(int depth) {
    if (depth > 1 && chance(20)) {
      switch (uniform(0, 2)) {
        case 0: return !bexpr(depth - 1);
        case 1: return bexpr(depth - 1) && bexpr(depth - 1);
        default: return bexpr(depth - 1) || bexpr(depth - 1);
      }
    }
    static const BOp ops[] = {BOp::eq, BOp::ne, BOp::lt, BOp::le, BOp::gt, BOp::ge};
    int sub = std::max(1, depth - 1);
    return BExpr::compare(ops[uniform(0, 5)], aexpr(sub), aexpr(sub));
  }

  Program assignment() { return Program::assign(0, any_var(), aexpr(cfg_.max_expr_depth)); }

  /// A block of `n` statements with freshly assigned labels.
  Program block(int n) { return relabel(block_raw(n, 0, true)); }

  /// A block without parallel statements, so its behavior is deterministic.
  Program deterministic_block(int n) {
    bool par = cfg_.par;
    cfg_.par = false;
    Program p = block(n);
    cfg_.par = par;
    return p;
  }

  /// A program of 1..max_stmts statements.
  Program program() { return block(uniform(1, std::max(1, cfg_.max_stmts))); }

  /// Straight-line assignments whose values stay inside [lo..hi] when the
  /// initial values do: constants from the range and copies.
  Program closed_prefix(int n, int lo, int hi) {
    std::vector<Program> stmts;
    for (int i = 0; i < n; ++i) {
      AExpr value = chance(50) ? AExpr::literal(uniform(lo, hi)) : AExpr::variable(any_var());
      stmts.push_back(Program::assign(0, any_var(), value));
    }
    return Program::sequence(std::move(stmts));
  }

  /// A behavior-preserving rewrite of p: operand commutation, branch swap
  /// with negated guard, neutral arithmetic, or swapping two adjacent
  /// independent assignments.
  Program transform(const Program& p) { return relabel(transform_raw(p, 30)); }

  /// A small change that usually alters behavior.
  Program mutate(const Program& p) {
    std::vector<Program> stmts = flatten(p);
    std::size_t count = stmts.size();
    if (count == 0) return relabel(assignment());
    std::size_t at = static_cast<std::size_t>(uniform(0, static_cast<int>(count) - 1));
    const Program& s = stmts[at];
    switch (s.kind()) {
      case StmtKind::assign:
        if (s.target() != counter()) {
          stmts[at] = chance(50) ? Program::assign(0, s.target(), s.value() + AExpr::literal(uniform(1, 2)))
                                 : Program::assign(0, any_var(), s.value());
          break;
        }
        [[fallthrough]];
      default:
        if (chance(50)) stmts.insert(stmts.begin() + static_cast<std::ptrdiff_t>(at), assignment());
        else stmts.erase(stmts.begin() + static_cast<std::ptrdiff_t>(at));
        break;
    }
    if (stmts.empty()) stmts.push_back(assignment());
    return relabel(Program::sequence(std::move(stmts)));
  }

  /// Either a rewrite or (with probability `mutate_percent`) a mutation.
  Program variant(const Program& p, int mutate_percent) {
    return chance(mutate_percent) ? mutate(p) : transform(p);
  }

 private:
  Program block_raw(int n, int depth, bool allow_loop) {
    std::vector<Program> stmts;
    for (int i = 0; i < n; ++i)
      for (auto& s : flatten(statement(depth, allow_loop))) stmts.push_back(std::move(s));
    return Program::sequence(std::move(stmts));
  }

  Program statement(int depth, bool allow_loop) {
    int roll = uniform(1, 100);
    if (depth < 2 && roll <= 15) return Program::branch(0, bexpr(2), block_raw(uniform(0, 2), depth + 1, allow_loop),
                                                         block_raw(uniform(0, 2), depth + 1, allow_loop));
    if (cfg_.loops && allow_loop && depth == 0 && roll <= 25) {
      AExpr init = AExpr::literal(uniform(0, 3));
      std::vector<Program> body = flatten(block_raw(uniform(1, 2), depth + 1, false));
      body.push_back(Program::assign(0, counter(), AExpr::variable(counter()) - AExpr::literal(1)));
      return Program::seq(Program::assign(0, counter(), init),
                          Program::loop(0, gt(AExpr::variable(counter()), AExpr::literal(0)), Program::sequence(std::move(body))));
    }
    if (cfg_.par && depth < 2 && roll <= 32) {
      std::vector<Program> branches;
      for (int b = 0; b < 2; ++b) branches.push_back(block_raw(uniform(1, 2), 2, false));
      return Program::par(std::move(branches));
    }
    if (cfg_.asserts && roll > 32 && roll <= 35) return Program::assertion(0, bexpr(2));
    return assignment();
  }

  AExpr transform_aexpr(const AExpr& e, int percent) {
    switch (e.op()) {
      case AOp::literal:
      case AOp::variable:
        if (chance(percent / 3)) return chance(50) ? e + AExpr::literal(0) : e * AExpr::literal(1);
        return e;
      case AOp::neg: return AExpr::negate(transform_aexpr(e.lhs(), percent));
      case AOp::sub: return transform_aexpr(e.lhs(), percent) - transform_aexpr(e.rhs(), percent);
      default: {
        AExpr l = transform_aexpr(e.lhs(), percent);
        AExpr r = transform_aexpr(e.rhs(), percent);
        return chance(percent) ? AExpr::binary(e.op(), r, l) : AExpr::binary(e.op(), l, r);
      }
    }
  }

  BExpr transform_bexpr(const BExpr& b, int percent) {
    switch (b.op()) {
      case BOp::constant: return b;
      case BOp::negation: return !transform_bexpr(b.b_lhs(), percent);
      case BOp::conj:
      case BOp::disj: {
        BExpr l = transform_bexpr(b.b_lhs(), percent);
        BExpr r = transform_bexpr(b.b_rhs(), percent);
        return chance(percent) ? BExpr::logical(b.op(), r, l) : BExpr::logical(b.op(), l, r);
      }
      default: return BExpr::compare(b.op(), transform_aexpr(b.a_lhs(), percent), transform_aexpr(b.a_rhs(), percent));
    }
  }

  static bool independent(const Program& a, const Program& b) {
    if (a.kind() != StmtKind::assign || b.kind() != StmtKind::assign) return false;
    if (a.target() == b.target()) return false;
    const auto& ra = a.value().vars();
    const auto& rb = b.value().vars();
    return std::find(ra.begin(), ra.end(), b.target()) == ra.end() &&
           std::find(rb.begin(), rb.end(), a.target()) == rb.end();
  }

  Program transform_raw(const Program& p, int percent) {
    switch (p.kind()) {
      case StmtKind::empty: return p;
      case StmtKind::assign: return Program::assign(0, p.target(), transform_aexpr(p.value(), percent));
      case StmtKind::assertion: return Program::assertion(0, transform_bexpr(p.cond(), percent));
      case StmtKind::branch: {
        BExpr c = transform_bexpr(p.cond(), percent);
        Program t = transform_raw(p.then_branch(), percent);
        Program e = transform_raw(p.else_branch(), percent);
        if (chance(percent)) return Program::branch(0, !c, e, t);
        return Program::branch(0, c, t, e);
      }
      case StmtKind::loop: return Program::loop(0, p.cond(), transform_raw(p.body(), percent));
      case StmtKind::par: {
        std::vector<Program> bs;
        for (const auto& b : p.branches()) bs.push_back(transform_raw(b, percent));
        return Program::par(std::move(bs));
      }
      case StmtKind::seq: {
        std::vector<Program> stmts = flatten(p);
        for (auto& s : stmts) s = transform_raw(s, percent);
        for (std::size_t i = 0; i + 1 < stmts.size(); ++i)
          if (independent(stmts[i], stmts[i + 1]) && chance(percent)) std::swap(stmts[i], stmts[i + 1]);
        return Program::sequence(std::move(stmts));
      }
    }
    return p;
  }

  std::mt19937_64 rng_;
  GeneratorConfig cfg_;
  std::vector<Var> vars_;
};

/// A whole-program pair for end-to-end fuzzing, as parsed-file values with
/// segment markers.
struct GeneratedPair {
  SourceFile original;
  SourceFile modified;
};

/// Builds `prefix; #segment 1 {S1} ; suffix` style pairs. With `branching`,
/// the two segments sit in the two arms of an if statement instead. The
/// context outside the segments is deterministic: a racy context makes a
/// program inequivalent to itself.
inline GeneratedPair generate_program_pair(Generator& gen, int mutate_percent) {
  Program prefix = gen.closed_prefix(gen.uniform(0, 3), -2, 2);
  Program suffix = gen.deterministic_block(gen.uniform(0, 2));
  VarSet outputs;
  for (Var v : gen.data_vars())
    if (gen.chance(60)) outputs.insert(v);
  if (outputs.empty()) outputs.insert(gen.any_var());

  auto make = [&](const std::vector<Program>& bodies, bool branching, const BExpr& guard) {
    SourceFile f;
    f.outputs = outputs;
    f.declares_outputs = true;
    std::vector<Program> items{prefix};
    if (branching) {
      items.push_back(Program::branch(0, guard, bodies[0], bodies[1]));
    } else {
      items.push_back(bodies[0]);
    }
    items.push_back(suffix);
    f.program = Program::sequence(items);
    for (std::size_t i = 0; i < bodies.size(); ++i)
      f.segments.push_back({static_cast<int>(i) + 1, bodies[i], 0, 0, std::nullopt, false});
    return f;
  };

  bool branching = gen.chance(30);
  BExpr guard = gen.bexpr(2);
  std::vector<Program> s1, s2;
  for (int i = 0; i < (branching ? 2 : 1); ++i) {
    Program body = gen.block(gen.uniform(1, 5));
    s1.push_back(body);
    s2.push_back(gen.variant(body, mutate_percent));
  }
  return {make(s1, branching, guard), make(s2, branching, guard)};
}

}  // namespace peq
