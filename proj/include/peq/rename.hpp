#pragma once

#include "peq/program.hpp"
#include "peq/state.hpp"

namespace peq {

inline AExpr rename(const AExpr& e, const RenamingFn& rho) {
  switch (e.op()) {
    case AOp::literal: return e;
    case AOp::variable: return rho(e.var()) == e.var() ? e : AExpr::variable(rho(e.var()));
    case AOp::neg: return AExpr::negate(rename(e.lhs(), rho));
    default: return AExpr::binary(e.op(), rename(e.lhs(), rho), rename(e.rhs(), rho));
  }
}

inline BExpr rename(const BExpr& e, const RenamingFn& rho) {
  switch (e.op()) {
    case BOp::constant: return e;
    case BOp::negation: return BExpr::negate(rename(e.b_lhs(), rho));
    case BOp::conj:
    case BOp::disj: return BExpr::logical(e.op(), rename(e.b_lhs(), rho), rename(e.b_rhs(), rho));
    default: return BExpr::compare(e.op(), rename(e.a_lhs(), rho), rename(e.a_rhs(), rho));
  }
}

/// R(S, ρ): every variable occurrence v becomes ρ(v); labels are kept.
inline Program rename_program(const Program& p, const RenamingFn& rho) {
  if (rho.is_identity()) return p;
  switch (p.kind()) {
    case StmtKind::empty: return p;
    case StmtKind::assign: return Program::assign(p.label(), rho(p.target()), rename(p.value(), rho));
    case StmtKind::assertion: return Program::assertion(p.label(), rename(p.cond(), rho));
    case StmtKind::branch:
      return Program::branch(p.label(), rename(p.cond(), rho), rename_program(p.then_branch(), rho),
                             rename_program(p.else_branch(), rho));
    case StmtKind::loop: return Program::loop(p.label(), rename(p.cond(), rho), rename_program(p.body(), rho));
    case StmtKind::seq: return Program::seq(rename_program(p.first(), rho), rename_program(p.rest(), rho));
    case StmtKind::par: {
      std::vector<Program> bs;
      for (const auto& b : p.branches()) bs.push_back(rename_program(b, rho));
      return Program::par(std::move(bs));
    }
  }
  return p;
}

/// ρ(σ) with ρ(σ)(v) = σ(ρ⁻¹(v)).
inline DataState rename_state(const DataState& s, const RenamingFn& rho) {
  DataState out;
  for (const auto& [v, value] : s.entries()) out.assign(rho(v), value);
  return out;
}

}  // namespace peq
