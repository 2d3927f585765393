#pragma once

#include <map>
#include <string>

#include "peq/program.hpp"

namespace peq {

namespace detail {

inline int aexpr_precedence(const AExpr& e) {
  switch (e.op()) {
    case AOp::add:
    case AOp::sub: return 1;
    case AOp::mul: return 2;
    case AOp::neg: return 3;
    default: return 4;
  }
}

inline int bexpr_precedence(const BExpr& e) {
  switch (e.op()) {
    case BOp::disj: return 1;
    case BOp::conj: return 2;
    case BOp::negation: return 4;
    case BOp::constant: return 5;
    default: return 3;
  }
}

inline const char* aop_symbol(AOp op) {
  switch (op) {
    case AOp::add: return "+";
    case AOp::sub: return "-";
    case AOp::mul: return "*";
    default: return "?";
  }
}

inline const char* bop_symbol(BOp op) {
  switch (op) {
    case BOp::eq: return "==";
    case BOp::ne: return "!=";
    case BOp::lt: return "<";
    case BOp::le: return "<=";
    case BOp::gt: return ">";
    case BOp::ge: return ">=";
    case BOp::conj: return "&&";
    case BOp::disj: return "||";
    default: return "?";
  }
}

}  // namespace detail

inline std::string to_string(const AExpr& e) {
  auto wrap = [](const AExpr& sub, bool parens) { return parens ? "(" + to_string(sub) + ")" : to_string(sub); };
  switch (e.op()) {
    case AOp::literal: return e.value().str();
    case AOp::variable: return e.var().name();
    case AOp::neg: {
      // "-3" would read back as a negative literal, so a negated literal keeps its parentheses.
      const AExpr& sub = e.lhs();
      bool parens = detail::aexpr_precedence(sub) < 3 || sub.op() == AOp::literal;
      return "-" + wrap(sub, parens);
    }
    default: {
      int prec = detail::aexpr_precedence(e);
      bool lparen = detail::aexpr_precedence(e.lhs()) < prec;
      bool rparen = detail::aexpr_precedence(e.rhs()) <= prec;
      return wrap(e.lhs(), lparen) + " " + detail::aop_symbol(e.op()) + " " + wrap(e.rhs(), rparen);
    }
  }
}

inline std::string to_string(const BExpr& e) {
  auto wrap = [](const BExpr& sub, bool parens) { return parens ? "(" + to_string(sub) + ")" : to_string(sub); };
  switch (e.op()) {
    case BOp::constant: return e.truth() ? "true" : "false";
    case BOp::negation: return "!" + wrap(e.b_lhs(), detail::bexpr_precedence(e.b_lhs()) < 4);
    case BOp::conj:
    case BOp::disj: {
      int prec = detail::bexpr_precedence(e);
      return wrap(e.b_lhs(), detail::bexpr_precedence(e.b_lhs()) < prec) + " " + detail::bop_symbol(e.op()) + " " +
             wrap(e.b_rhs(), detail::bexpr_precedence(e.b_rhs()) <= prec);
    }
    default: return to_string(e.a_lhs()) + " " + detail::bop_symbol(e.op()) + " " + to_string(e.a_rhs());
  }
}

/// Maps a node identity to the segment id whose body it is; used to re-emit
/// `#segment` markers.
using SegmentMarkers = std::map<const void*, int>;

namespace detail {

inline void print_block(const Program& p, int indent, const SegmentMarkers& marks, std::string& out);

inline void print_stmt(const Program& p, int indent, const SegmentMarkers& marks, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (p.kind()) {
    case StmtKind::empty: return;
    case StmtKind::assign:
      out += pad + p.target().name() + " := " + to_string(p.value()) + ";\n";
      return;
    case StmtKind::assertion:
      out += pad + "assert (" + to_string(p.cond()) + ");\n";
      return;
    case StmtKind::branch:
      out += pad + "if (" + to_string(p.cond()) + ") {\n";
      print_block(p.then_branch(), indent + 1, marks, out);
      out += pad + "} else {\n";
      print_block(p.else_branch(), indent + 1, marks, out);
      out += pad + "}\n";
      return;
    case StmtKind::loop:
      out += pad + "while (" + to_string(p.cond()) + ") {\n";
      print_block(p.body(), indent + 1, marks, out);
      out += pad + "}\n";
      return;
    case StmtKind::par: {
      out += pad + "par";
      for (const auto& b : p.branches()) {
        out += " {\n";
        print_block(b, indent + 1, marks, out);
        out += pad + "}";
      }
      out += "\n";
      return;
    }
    case StmtKind::seq:
      print_block(p, indent, marks, out);
      return;
  }
}

// Prints a statement list. A node registered as a segment body is wrapped in
// its marker instead of being flattened into the surrounding list.
inline void print_block(const Program& p, int indent, const SegmentMarkers& marks, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  Program cur = p;
  while (true) {
    if (auto it = marks.find(cur.identity()); it != marks.end()) {
      out += pad + "#segment " + std::to_string(it->second) + " {\n";
      SegmentMarkers inner = marks;
      inner.erase(cur.identity());
      print_block(cur, indent + 1, inner, out);
      out += pad + "}\n";
      return;
    }
    if (cur.kind() != StmtKind::seq) {
      print_stmt(cur, indent, marks, out);
      return;
    }
    const Program& head = cur.first();
    if (marks.contains(head.identity()) || head.kind() == StmtKind::seq)
      print_block(head, indent, marks, out);
    else
      print_stmt(head, indent, marks, out);
    cur = cur.rest();
  }
}

}  // namespace detail

/// Canonical concrete syntax, two-space indentation, one statement per line.
inline std::string pretty_print(const Program& p, const SegmentMarkers& marks = {}) {
  std::string out;
  detail::print_block(p, 0, marks, out);
  return out;
}

}  // namespace peq
