#include <gtest/gtest.h>

#include "support.hpp"

using namespace peq;
using peq::testing::load_sample;

namespace {

RenamingFn rho_sum2() { return RenamingFn({{Var("sum"), Var("sum_s")}, {Var("sum_s"), Var("sum")}}); }

std::vector<Int> terminal_values(const ExecutionSet& set, Var v) {
  std::vector<Int> out;
  for (const auto& ex : set.executions)
    if (ex.ending == Ending::terminated) out.push_back(ex.final_state().get(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Parser, SingleAssignment) {
  Program p = parse("sum := 0;");
  ASSERT_EQ(p.kind(), StmtKind::assign);
  EXPECT_EQ(p.target(), Var("sum"));
  EXPECT_EQ(p.value(), lit(0));
  EXPECT_EQ(p.label(), 1);
}

TEST(Parser, EmptySourceIsEmptyProgram) { EXPECT_TRUE(parse("").is_empty()); }

TEST(Parser, SequentialSampleHasFourTopLevelStatements) {
  SourceFile f = load_sample("sum2_seq.peq");
  auto stmts = flatten(f.program);
  ASSERT_EQ(stmts.size(), 4u);
  EXPECT_EQ(stmts[2].kind(), StmtKind::loop);
  EXPECT_EQ(f.outputs, var_set({"out"}));
  ASSERT_EQ(f.segments.size(), 1u);
  EXPECT_EQ(f.segments[0].id, 1);
}

TEST(Parser, LabelsAreUniqueAndPreorder) {
  Program p = parse("x := 1; if (x > 0) { y := 2; } else { assert y == 0; } while (x > 0) { x := x - 1; }");
  std::vector<int> labels;
  collect_labels(p, labels);
  EXPECT_EQ(labels, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_TRUE(has_unique_labels(p));
}

TEST(Parser, CommentsAndCrlf) {
  Program p = parse("// leading comment\r\nx := 1; // trailing\r\ny := x;\r\n");
  EXPECT_EQ(flatten(p).size(), 2u);
}

TEST(Parser, ParenthesizedConditions) {
  Program p = parse("if ((x + 1) * 2 > 3 && !(y == 0)) { x := 0; } else { }");
  ASSERT_EQ(p.kind(), StmtKind::branch);
  EXPECT_EQ(p.cond().op(), BOp::conj);
}

TEST(Parser, ReportsPosition) {
  try {
    parse("x := 1;\ny := ;");
    FAIL() << "expected a parse error";
  } catch (const SourceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Parser, SegmentInsideParRejected) {
  try {
    parse_source("par { #segment 1 { x := 1; } } { y := 1; }");
    FAIL() << "expected SegmentInsidePar";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::segment_inside_par);
  }
}

TEST(Parser, DuplicateSegmentIdRejected) {
  try {
    parse_source("#segment 1 { x := 1; } #segment 1 { y := 1; }");
    FAIL() << "expected DuplicateSegmentId";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::duplicate_segment_id);
  }
}

TEST(Printer, EmptyAndAssignment) {
  EXPECT_EQ(pretty_print(Program()), "");
  EXPECT_EQ(pretty_print(Program::assign(1, Var("sum"), var("N"))), "sum := N;\n");
}

TEST(Printer, NegationsRoundTrip) {
  for (const char* src : {"x := -3;", "x := -(3);", "x := -(x - 1) * 2;", "x := 1 - (2 - 3);", "x := --x;"}) {
    Program p = parse(src);
    EXPECT_EQ(parse(pretty_print(p)), p) << src;
  }
}

TEST(Printer, SampleRoundTrip) {
  for (const char* name : {"sum2_seq.peq", "sum2_par.peq", "foo_orig.peq", "race_par.peq", "loops_split_par.peq"}) {
    SourceFile f = load_sample(name);
    std::string text = pretty_print(f);
    SourceFile g = parse_source(text);
    EXPECT_EQ(g.program, f.program) << name;
    EXPECT_EQ(pretty_print(g), text) << name;
  }
}

TEST(Printer, RandomRoundTrip) {
  Generator gen(7);
  for (int i = 0; i < 200; ++i) {
    Program p = gen.program();
    EXPECT_EQ(parse(pretty_print(p)), p) << pretty_print(p);
  }
}

TEST(Vars, SegmentAndExpression) {
  SourceFile f = load_sample("sum2_seq.peq");
  EXPECT_EQ(vars_of(f.segments[0].body), var_set({"j", "N", "sum"}));
  EXPECT_TRUE(vars_of(Program()).empty());
  EXPECT_EQ(vars_of(var("N") - lit(1)), var_set({"N"}));
}

TEST(Rename, Sum2Example) {
  Program p = parse("sum := sum + j;");
  Program r = rename_program(p, rho_sum2());
  EXPECT_EQ(r, parse("sum_s := sum_s + j;"));
  EXPECT_EQ(r.label(), p.label());
  EXPECT_EQ(rename_program(p, RenamingFn()), p);
}

TEST(Rename, RandomRoundTrip) {
  Generator gen(11);
  RenamingFn rho({{Var("x"), Var("y")}, {Var("y"), Var("q")}, {Var("q"), Var("x")}});
  for (int i = 0; i < 100; ++i) {
    Program p = gen.program();
    Program r = rename_program(p, rho);
    EXPECT_TRUE(has_unique_labels(r));
    EXPECT_EQ(rename_program(r, rho.inverse()), p);
  }
}

TEST(Rename, StateDefinition) {
  EXPECT_EQ(rename_state(DataState{{"sum", 3}}, rho_sum2()), (DataState{{"sum_s", 3}}));
  DataState s{{"x", 1}, {"y", -2}};
  EXPECT_EQ(rename_state(s, RenamingFn()), s);
}

TEST(Rename, EvaluationConsistent) {
  Generator gen(13);
  RenamingFn rho({{Var("x"), Var("z")}, {Var("z"), Var("x")}, {Var("y"), Var("v")}, {Var("v"), Var("y")}});
  for (int i = 0; i < 100; ++i) {
    AExpr e = gen.aexpr(3);
    BExpr b = gen.bexpr(3);
    DataState s{{"x", gen.uniform(-2, 2)}, {"y", gen.uniform(-2, 2)}, {"z", gen.uniform(-2, 2)}};
    DataState rs = rename_state(s, rho);
    EXPECT_EQ(eval(e, s), eval(rename(e, rho), rs));
    EXPECT_EQ(eval(b, s), eval(rename(b, rho), rs));
    for (Var v : set_union(s.support(), rs.support())) EXPECT_EQ(rs.get(v), s.get(rho.inverse_of(v)));
  }
}

TEST(Renaming, RejectsNonBijection) {
  EXPECT_THROW(RenamingFn({{Var("a"), Var("b")}, {Var("c"), Var("b")}}), Error);
}

TEST(Eval, Basics) {
  EXPECT_EQ(eval(var("N") - lit(1), DataState{{"N", 3}}), 2);
  EXPECT_TRUE(eval(eq(var("sum_s"), var("sum")), DataState{{"sum", 5}, {"sum_s", 5}}));
  EXPECT_EQ(eval(var("unset"), DataState{}), 0);
}

TEST(Eval, BigIntegersDoNotOverflow) {
  DataState s{{"x", 1LL << 62}};
  EXPECT_EQ(eval(var("x") * var("x"), s), Int(1LL << 62) * Int(1LL << 62));
}

TEST(Eval, DependsOnlyOnOwnVariables) {
  Generator gen(17);
  for (int i = 0; i < 100; ++i) {
    AExpr e = gen.aexpr(3);
    DataState s{{"x", 1}, {"y", 2}, {"z", -1}};
    DataState t = s;
    for (Var v : {Var("x"), Var("y"), Var("z")})
      if (std::find(e.vars().begin(), e.vars().end(), v) == e.vars().end()) t.assign(v, 99);
    EXPECT_EQ(eval(e, s), eval(e, t));
  }
}

TEST(Step, Assignment) {
  auto next = step(parse("x := 1;"), DataState{});
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(next[0].op.kind, StepKind::assign);
  EXPECT_TRUE(next[0].program.is_empty());
  EXPECT_EQ(next[0].state, (DataState{{"x", 1}}));
}

TEST(Step, FailingAssertIsStuck) { EXPECT_TRUE(step(parse("assert false;"), DataState{}).empty()); }

TEST(Step, ParHasOneSuccessorPerBranch) {
  Program p = parse("par { x := x + 1; } { x := 2 * x; }");
  auto next = step(p, DataState{{"x", 1}});
  ASSERT_EQ(next.size(), 2u);
  EXPECT_EQ(next[0].state, (DataState{{"x", 2}}));
  EXPECT_EQ(next[1].state, (DataState{{"x", 2}}));
  EXPECT_NE(next[0].program, next[1].program);
}

TEST(Step, NopRules) {
  auto a = step(Program::seq(Program(), parse("x := 1;")), DataState{});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].op.kind, StepKind::nop);
  auto b = step(Program::par({Program(), Program()}), DataState{});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].op.kind, StepKind::nop);
  EXPECT_TRUE(b[0].program.is_empty());
}

TEST(Step, DeterministicWithoutPar) {
  Generator gen(19, {.par = false});
  for (int i = 0; i < 100; ++i) {
    Program p = gen.program();
    auto ex = executions(p, DataState{{"x", 1}}, 50);
    for (const auto& e : ex.executions) {
      const Program* prog = &e.program;
      const DataState* st = &e.state;
      for (const auto& t : e.steps) {
        EXPECT_LE(step(*prog, *st).size(), 1u);
        prog = &t.program;
        st = &t.state;
      }
    }
  }
}

TEST(Executions, EmptyProgram) {
  auto set = executions(Program(), DataState{}, 10);
  ASSERT_EQ(set.executions.size(), 1u);
  EXPECT_TRUE(set.executions[0].steps.empty());
  EXPECT_TRUE(set.complete);
}

TEST(Executions, RacyPar) {
  auto set = executions(parse("par { x := x + 1; } { x := 2 * x; }"), DataState{{"x", 1}}, 10);
  EXPECT_TRUE(set.complete);
  EXPECT_EQ(set.executions.size(), 2u);
  EXPECT_EQ(terminal_values(set, Var("x")), (std::vector<Int>{3, 4}));
}

TEST(Executions, Sum2SegmentWithNThree) {
  SourceFile f = load_sample("sum2_seq.peq");
  auto set = executions(f.segments[0].body, DataState{{"N", 3}}, 1000);
  EXPECT_TRUE(set.complete);
  ASSERT_EQ(set.executions.size(), 1u);
  EXPECT_EQ(set.executions[0].final_state().get(Var("sum")), 6);
}

TEST(Executions, TruncationClearsComplete) {
  auto set = executions(parse("while (true) { x := x + 1; }"), DataState{}, 20);
  EXPECT_FALSE(set.complete);
  EXPECT_EQ(set.executions.back().ending, Ending::truncated);
}

TEST(Executions, StepsAreTransitions) {
  Generator gen(23);
  for (int i = 0; i < 50; ++i) {
    Program p = gen.program();
    for (const auto& e : executions(p, DataState{{"y", -1}}, 30).executions) {
      Program prog = e.program;
      DataState st = e.state;
      for (const auto& t : e.steps) {
        EXPECT_TRUE(is_transition(prog, st, t));
        prog = t.program;
        st = t.state;
      }
    }
  }
}

TEST(Violation, Cases) {
  EXPECT_TRUE(violates_assertion(parse("assert x == 0;"), DataState{{"x", 1}}));
  EXPECT_FALSE(violates_assertion(Program(), DataState{}));
  Program p = Program::seq(Program::par({Program(), parse("assert x < 0;")}), parse("y := 1;"));
  EXPECT_TRUE(violates_assertion(p, DataState{{"x", 2}}));
  EXPECT_FALSE(violates_assertion(parse("x := 1; assert x == 0;"), DataState{}));
}

TEST(SyntacticPaths, Empty) {
  auto set = syntactic_paths(Program(), 5);
  ASSERT_EQ(set.paths.size(), 1u);
  EXPECT_TRUE(set.paths[0].steps.empty());
  EXPECT_TRUE(set.complete);
}

TEST(SyntacticPaths, BothBranches) {
  auto set = syntactic_paths(parse("if (x < 0) { y := 1; } else { }"), 10);
  EXPECT_TRUE(set.complete);
  ASSERT_EQ(set.paths.size(), 2u);
  EXPECT_FALSE(set.paths[0].steps[0].first.negated);
  EXPECT_TRUE(set.paths[1].steps[0].first.negated);
}

TEST(SyntacticPaths, LoopUnrollingIsBounded) {
  auto set = syntactic_paths(parse("while (x > 0) { x := x - 1; }"), 7);
  EXPECT_FALSE(set.complete);
  std::vector<std::size_t> iterations;
  for (const auto& path : set.paths) {
    if (path.ending != Ending::terminated) continue;
    std::size_t n = 0;
    for (const auto& [op, prog] : path.steps) n += op.kind == StepKind::assign;
    iterations.push_back(n);
  }
  std::sort(iterations.begin(), iterations.end());
  EXPECT_EQ(iterations, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(SyntacticPaths, ConstantGuardsPruned) {
  auto set = syntactic_paths(parse("if (1 < 0) { y := 1; } else { y := 2; }"), 10);
  ASSERT_EQ(set.paths.size(), 1u);
  EXPECT_TRUE(set.paths[0].steps[0].first.negated);
}
