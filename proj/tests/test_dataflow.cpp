#include <gtest/gtest.h>

#include "support.hpp"

using namespace peq;
using peq::testing::load_sample;

TEST(Modified, Syntactic) {
  SourceFile f = load_sample("sum2_seq.peq");
  EXPECT_EQ(modified_vars(f.segments[0].body), var_set({"j", "sum"}));
  EXPECT_TRUE(modified_vars(Program()).empty());
  EXPECT_EQ(modified_vars(parse("x := x;")), var_set({"x"}));
  EXPECT_EQ(modified_vars(parse("par { a := 1; } { if (c > 0) { b := 1; } else { while (d > 0) { e := 1; } } }")),
            var_set({"a", "b", "e"}));
}

TEST(Modified, Oracle) {
  auto same = modified_vars_oracle(parse("x := x;"), {-2, 2}, 200);
  EXPECT_TRUE(same.complete);
  EXPECT_TRUE(same.vars.empty());
  EXPECT_EQ(modified_vars_oracle(parse("x := x + 1;"), {-2, 2}, 200).vars, var_set({"x"}));
  SourceFile f = load_sample("sum2_seq.peq");
  auto seg = modified_vars_oracle(f.segments[0].body, {0, 3}, 200);
  EXPECT_TRUE(seg.complete);
  EXPECT_EQ(seg.vars, var_set({"j", "sum"}));
}

TEST(UsedBeforeDef, Syntactic) {
  SourceFile f = load_sample("sum2_seq.peq");
  EXPECT_EQ(used_before_def(f.segments[0].body), var_set({"N"}));
  EXPECT_TRUE(used_before_def(parse("x := 0; y := x;")).empty());
  EXPECT_EQ(used_before_def(parse("if (c > 0) { x := 1; } else { } y := x;")), var_set({"c", "x"}));
  EXPECT_EQ(used_before_def(parse("if (c > 0) { x := 1; } else { x := 2; } y := x;")), var_set({"c"}));
  EXPECT_EQ(used_before_def(parse("while (x > 0) { y := 1; } z := y;")), var_set({"x", "y"}));
  EXPECT_EQ(used_before_def(parse("par { x := 1; } { y := x; }")), var_set({"x"}));
  EXPECT_EQ(used_before_def(parse("par { x := 1; } { x := 2; } y := x;")), var_set({"x"}));
}

TEST(UsedBeforeDef, Oracle) {
  EXPECT_TRUE(ub_oracle(parse("x := 0; y := x;"), {-2, 2}, 200).vars.empty());
  EXPECT_EQ(ub_oracle(parse("y := x;"), {-2, 2}, 200).vars, var_set({"x"}));
  auto r = ub_oracle(parse("if (c > 0) { x := 1; } else { } y := x;"), {-2, 2}, 200);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.vars, var_set({"c", "x"}));
}

TEST(Live, Sum2Samples) {
  for (const char* name : {"sum2_seq.peq", "sum2_par.peq"}) {
    SourceFile f = load_sample(name);
    EXPECT_EQ(live_after_segment(f, 1, f.outputs), var_set({"sum"})) << name;
  }
}

TEST(Live, SegmentAtEnd) {
  SourceFile f = parse_source("y := 1; #segment 1 { x := 0; }");
  EXPECT_TRUE(live_after_segment(f, 1, {}).empty());
  EXPECT_EQ(live_after_segment(f, 1, var_set({"x", "y"})), var_set({"x", "y"}));
}

TEST(Live, InsideLoop) {
  SourceFile f = parse_source("#outputs r; while (n > 0) { #segment 1 { a := a + n; } n := n - 1; } r := a;");
  EXPECT_EQ(live_after_segment(f, 1, f.outputs), var_set({"a", "n"}));
}

TEST(Live, ParUnionsBranches) {
  SourceFile f = parse_source("#segment 1 { a := 1; } par { a := 2; } { b := a; } c := b;");
  EXPECT_EQ(live_after_segment(f, 1, var_set({"c"})), var_set({"a", "b"}));
}

TEST(Live, UnknownSegment) {
  SourceFile f = parse_source("#segment 1 { x := 0; }");
  try {
    live_after_segment(f, 7, {});
    FAIL() << "expected UnknownSegment";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_segment);
  }
}

TEST(Live, OracleOnSamples) {
  for (const char* name : {"sum2_seq.peq", "sum2_par.peq", "loops_split_seq.peq", "loops_split_par.peq"}) {
    SourceFile f = load_sample(name);
    for (const auto& s : f.segments) {
      auto oracle = live_oracle(f.program, s.body, f.outputs, 200);
      EXPECT_TRUE(oracle.complete);
      EXPECT_TRUE(is_subset(oracle.vars, live_after(f.program, s.body, f.outputs))) << name;
    }
  }
}

TEST(Summary, Sum2Samples) {
  SourceFile seq = load_sample("sum2_seq.peq");
  UsageSummary s = summarize_segment(seq, 1, seq.outputs);
  EXPECT_EQ(s.vars, var_set({"j", "N", "sum"}));
  EXPECT_EQ(s.modified, var_set({"j", "sum"}));
  EXPECT_EQ(s.used_before_def, var_set({"N"}));
  EXPECT_EQ(s.live_after, var_set({"sum"}));

  SourceFile par = load_sample("sum2_par.peq");
  UsageSummary p = summarize_segment(par, 1, par.outputs);
  EXPECT_EQ(p.vars, var_set({"i", "N", "sum"}));
  EXPECT_EQ(p.modified, var_set({"i", "sum"}));
  EXPECT_EQ(p.used_before_def, var_set({"N"}));
  EXPECT_EQ(p.live_after, var_set({"sum"}));
}

TEST(Summary, TrailingAssignment) {
  SourceFile f = parse_source("#segment 1 { x := 0; }");
  UsageSummary s = summarize_segment(f, 1, {});
  EXPECT_EQ(s.modified, var_set({"x"}));
  EXPECT_TRUE(s.used_before_def.empty());
  EXPECT_TRUE(s.live_after.empty());
}

TEST(Summary, SubsetInvariants) {
  Generator gen(29);
  for (int i = 0; i < 100; ++i) {
    Program seg = gen.program();
    Program whole = Program::sequence({gen.block(2), seg, gen.block(2)});
    VarSet outputs = var_set({"x"});
    UsageSummary s = summarize(whole, seg, 1, outputs);
    EXPECT_TRUE(is_subset(s.modified, s.vars));
    EXPECT_TRUE(is_subset(s.used_before_def, s.vars));
    EXPECT_TRUE(is_subset(s.live_after, set_union(vars_of(whole), outputs)));
  }
}

TEST(Containment, SmallRandomPrograms) {
  Generator gen(31);
  int complete = 0;
  for (int i = 0; i < 40; ++i) {
    Program p = gen.block(gen.uniform(1, 5));
    auto m = modified_vars_oracle(p, {-2, 2}, 200);
    auto u = ub_oracle(p, {-2, 2}, 200);
    if (m.complete) EXPECT_TRUE(is_subset(m.vars, modified_vars(p))) << pretty_print(p);
    if (u.complete) EXPECT_TRUE(is_subset(u.vars, used_before_def(p))) << pretty_print(p);
    complete += m.complete && u.complete;
  }
  EXPECT_GT(complete, 30);
}
