#include <gtest/gtest.h>

#include "support.hpp"

using namespace peq;
using peq::testing::load_sample;

namespace {

EquivalenceTask task_for(const SourceFile& a, const SourceFile& b, int id) {
  VarSet outputs = declared_outputs(a, b);
  const Program& s1 = find_segment(a, id).body;
  const Program& s2 = find_segment(b, id).body;
  return build_task(s1, s2, summarize(a.program, s1, id, outputs), summarize(b.program, s2, id, outputs));
}

std::size_t count_kind(const Program& p, StmtKind kind) {
  std::size_t n = p.kind() == kind;
  for (const auto& c : p.children()) n += count_kind(c, kind);
  return n;
}

}  // namespace

TEST(Switch, Fresh) {
  VarMap sw = fresh_switch(var_set({"sum"}), var_set({"i", "j", "N", "sum"}));
  EXPECT_EQ(sw, (VarMap{{Var("sum"), Var("sum_s")}}));
  EXPECT_TRUE(fresh_switch({}, var_set({"x"})).empty());
  EXPECT_EQ(fresh_switch(var_set({"x"}), var_set({"x", "x_s"})).at(Var("x")), Var("x_s2"));
  VarMap two = fresh_switch(var_set({"x", "x_s"}), var_set({"x", "x_s"}));
  EXPECT_EQ(two.at(Var("x")), Var("x_s2"));
  EXPECT_EQ(two.at(Var("x_s")), Var("x_s_s"));
}

TEST(Switch, Rho) {
  RenamingFn rho = build_rho_switch({{Var("sum"), Var("sum_s")}});
  EXPECT_EQ(rho(Var("sum")), Var("sum_s"));
  EXPECT_EQ(rho(Var("sum_s")), Var("sum"));
  EXPECT_EQ(rho(Var("N")), Var("N"));
  EXPECT_TRUE(build_rho_switch({}).is_identity());
}

TEST(Switch, RhoIsInvolution) {
  Generator gen(37);
  for (int i = 0; i < 100; ++i) {
    VarSet mods, forbidden;
    for (const char* n : {"a", "b", "c", "a_s", "b_s"}) {
      if (gen.chance(40)) mods.insert(Var(n));
      if (gen.chance(40)) forbidden.insert(Var(n));
    }
    RenamingFn rho = build_rho_switch(fresh_switch(mods, set_union(mods, forbidden)));
    for (const char* n : {"a", "b", "c", "a_s", "b_s", "a_s2", "zz"}) EXPECT_EQ(rho(rho(Var(n))), Var(n));
  }
}

TEST(ValidateRenaming, Sum2) {
  SourceFile a = load_sample("sum2_seq.peq");
  SourceFile b = load_sample("sum2_par.peq");
  EquivalenceTask t = task_for(a, b, 1);
  EXPECT_TRUE(validate_renaming(t.rho, t.original, t.modified, t.summary_original.modified,
                                t.summary_modified.modified, t.init_set)
                  .ok());
}

TEST(ValidateRenaming, IdentityInterferes) {
  Program s1 = parse("x := 1;");
  Program s2 = parse("x := 2;");
  auto report = validate_renaming(RenamingFn(), s1, s2, var_set({"x"}), var_set({"x"}), {});
  EXPECT_FALSE(report.ok());
  bool saw_b = false;
  for (const auto& v : report.violations) saw_b = saw_b || v.clause[0] == 'b';
  EXPECT_TRUE(saw_b);
}

TEST(ValidateRenaming, ClauseA) {
  RenamingFn swap({{Var("x"), Var("y")}, {Var("y"), Var("x")}});
  auto report = validate_renaming(swap, Program(), Program(), {}, {}, var_set({"x", "y"}));
  ASSERT_EQ(report.violations.size(), 2u);
  EXPECT_EQ(report.violations[0].clause, "a");
}

TEST(Blocks, Init) {
  RenamingFn rho = build_rho_switch({{Var("sum"), Var("sum_s")}});
  EXPECT_TRUE(init_block(rho, {}).is_empty());
  EXPECT_EQ(pretty_print(init_block(rho, {Var("sum")})), "sum := sum_s;\n");
  RenamingFn ab = build_rho_switch({{Var("a"), Var("a_s")}, {Var("b"), Var("b_s")}});
  EXPECT_EQ(pretty_print(init_block(ab, {Var("a"), Var("b")})), "a := a_s;\nb := b_s;\n");
}

TEST(Blocks, Equal) {
  RenamingFn rho = build_rho_switch({{Var("sum"), Var("sum_s")}});
  EXPECT_EQ(pretty_print(equal_block(rho, {Var("sum")})), "assert (sum_s == sum);\n");
  EXPECT_TRUE(equal_block(rho, {}).is_empty());
  RenamingFn xy = build_rho_switch({{Var("x"), Var("x_s")}, {Var("y"), Var("y_s")}});
  EXPECT_EQ(pretty_print(equal_block(xy, {Var("x"), Var("y")})), "assert (x_s == x);\nassert (y_s == y);\n");
}

TEST(Blocks, ToSeq) {
  EXPECT_EQ(to_seq(var_set({"sum", "N"})), (std::vector<Var>{Var("N"), Var("sum")}));
  EXPECT_TRUE(to_seq({}).empty());
  VarSet s = var_set({"c", "a", "b"});
  auto seq = to_seq(s);
  EXPECT_EQ(VarSet(seq.begin(), seq.end()), s);
  EXPECT_EQ(to_seq(VarSet(seq.begin(), seq.end())), seq);
}

TEST(Task, Sum2) {
  EquivalenceTask t = task_for(load_sample("sum2_seq.peq"), load_sample("sum2_par.peq"), 1);
  EXPECT_EQ(t.shared, var_set({"N"}));
  EXPECT_EQ(t.duplicates.at(Var("sum")), Var("sum_s"));
  EXPECT_TRUE(t.init_set.empty());
  EXPECT_TRUE(t.init_part.is_empty());
  EXPECT_EQ(t.check_set, var_set({"sum"}));
  EXPECT_EQ(count_kind(t.task, StmtKind::assertion), 1u);
  EXPECT_EQ(pretty_print(t.equal_part), "assert (sum_s == sum);\n");
  EXPECT_TRUE(has_unique_labels(t.task));
  std::string text = pretty_print(t.task);
  EXPECT_EQ(text.find("assert (sum_s == sum);"), text.rfind("assert (sum_s == sum);"));
}

TEST(Task, FourPartStructure) {
  EquivalenceTask t = task_for(load_sample("loops_joined_seq.peq"), load_sample("loops_joined_par.peq"), 1);
  ASSERT_EQ(t.task.kind(), StmtKind::seq);
  EXPECT_EQ(t.task.first(), t.init_part);
  EXPECT_EQ(t.task.rest().first(), t.renamed_original);
  EXPECT_EQ(t.task.rest().rest().first(), t.modified_part);
  EXPECT_EQ(t.task.rest().rest().rest(), t.equal_part);
  EXPECT_EQ(pretty_print(t.init_part), "sum := sum_s;\n");
}

TEST(Task, NothingLive) {
  SourceFile a = parse_source("#segment 1 { x := 0; }");
  SourceFile b = parse_source("#segment 1 { x := 0; }");
  EquivalenceTask t = task_for(a, b, 1);
  EXPECT_TRUE(t.check_set.empty());
  EXPECT_TRUE(t.equal_part.is_empty());
}

TEST(Task, HandComputedSets) {
  SourceFile a = parse_source("#outputs y; #segment 1 { y := x; x := x + 1; }");
  SourceFile b = parse_source("#outputs y; #segment 1 { x := x + 1; y := x - 1; }");
  EquivalenceTask t = task_for(a, b, 1);
  EXPECT_EQ(t.init_set, var_set({"x"}));
  EXPECT_EQ(t.duplicates, (VarMap{{Var("x"), Var("x_s")}, {Var("y"), Var("y_s")}}));
  EXPECT_TRUE(t.check_set.contains(Var("y")));
}

TEST(Task, RenamedHalvesDoNotShareModifiedNames) {
  Generator gen(41);
  for (int i = 0; i < 100; ++i) {
    Program s1 = gen.block(gen.uniform(1, 4));
    Program s2 = gen.variant(s1, 30);
    EquivalenceTask t = build_task(s1, s2, summarize(s1, s1, 1, var_set({"x"})), summarize(s2, s2, 1, var_set({"x"})));
    VarSet mods = set_union(t.summary_original.modified, t.summary_modified.modified);
    EXPECT_TRUE(set_intersection(vars_of(t.renamed_original), mods).empty());
    EXPECT_TRUE(is_subset(modified_vars(t.modified_part), mods));
  }
}

TEST(Task, SegmentAssertsBecomeBlockingLoops) {
  SourceFile a = parse_source("#outputs x; #segment 1 { assert x > 0; x := 1; }");
  SourceFile b = parse_source("#outputs x; #segment 1 { x := 1; }");
  EquivalenceTask t = task_for(a, b, 1);
  EXPECT_EQ(count_kind(t.renamed_original, StmtKind::assertion), 0u);
  EXPECT_EQ(count_kind(t.renamed_original, StmtKind::loop), 1u);
  Verdict v = check_task(t, {});
  EXPECT_TRUE(v.proves_safe());
}

TEST(Sidecar, Keys) {
  EquivalenceTask t = task_for(load_sample("sum2_seq.peq"), load_sample("sum2_par.peq"), 1);
  auto j = sidecar_json(t);
  for (const char* key : {"segment_id", "renaming", "init_set", "check_set", "shared", "duplicates",
                          "summary_original", "summary_modified"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["duplicates"]["sum"], "sum_s");
  EXPECT_EQ(j["shared"], nlohmann::json::array({"N"}));
  EXPECT_EQ(j["summary_original"]["live_after"], nlohmann::json::array({"sum"}));
}

TEST(Emitter, CRendering) {
  EquivalenceTask t = task_for(load_sample("race_par.peq"), load_sample("race_seq.peq"), 1);
  std::string c = emit_c(t.task);
  EXPECT_NE(c.find("assert(x_s == x);"), std::string::npos) << c;
  EXPECT_NE(c.find("long long x_s = __VERIFIER_nondet_longlong();"), std::string::npos) << c;
  EXPECT_NE(c.find("/* branch 2 */"), std::string::npos) << c;
}
