#pragma once

#include <string>

#include "peq/dataflow.hpp"
#include "peq/printer.hpp"

namespace peq {

namespace detail {

inline void emit_c(const Program& p, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (p.kind()) {
    case StmtKind::empty: return;
    case StmtKind::assign: out += pad + p.target().name() + " = " + to_string(p.value()) + ";\n"; return;
    case StmtKind::assertion: out += pad + "assert(" + to_string(p.cond()) + ");\n"; return;
    case StmtKind::branch:
      out += pad + "if (" + to_string(p.cond()) + ") {\n";
      emit_c(p.then_branch(), indent + 1, out);
      out += pad + "} else {\n";
      emit_c(p.else_branch(), indent + 1, out);
      out += pad + "}\n";
      return;
    case StmtKind::loop:
      out += pad + "while (" + to_string(p.cond()) + ") {\n";
      emit_c(p.body(), indent + 1, out);
      out += pad + "}\n";
      return;
    case StmtKind::seq:
      emit_c(p.first(), indent, out);
      emit_c(p.rest(), indent, out);
      return;
    case StmtKind::par: {
      auto bs = p.branches();
      out += pad + "/* parallel composition of " + std::to_string(bs.size()) + " branches */\n";
      for (std::size_t i = 0; i < bs.size(); ++i) {
        out += pad + "{ /* branch " + std::to_string(i + 1) + " */\n";
        emit_c(bs[i], indent + 1, out);
        out += pad + "}\n";
      }
      return;
    }
  }
}

}  // namespace detail

/// Best-effort C rendering of a task for external verifiers. Variables read
/// before assignment get nondeterministic values; parallel branches become
/// annotated sequential blocks, so interleavings are not preserved.
inline std::string emit_c(const Program& task) {
  VarSet inputs = used_before_def(task);
  std::string out = "#include <assert.h>\n\nextern long long __VERIFIER_nondet_longlong(void);\n\nint main(void) {\n";
  for (Var v : vars_of(task))
    out += "  long long " + v.name() + " = " + (inputs.contains(v) ? "__VERIFIER_nondet_longlong()" : "0") + ";\n";
  detail::emit_c(task, 1, out);
  out += "  return 0;\n}\n";
  return out;
}

}  // namespace peq
