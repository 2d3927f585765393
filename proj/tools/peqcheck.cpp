#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "peq/peq.hpp"

namespace fs = std::filesystem;
using namespace peq;

namespace {

enum Exit : int { ok = 0, negative = 1, usage = 2, unknown = 3 };

struct Options {
  std::vector<std::string> outputs;
  bool outputs_given = false;
  std::string domain = "-2..2";
  std::size_t max_steps = 2000;
  std::size_t max_states = 200000;
  bool json = false;
  std::string out_dir = ".";
  bool emit_c = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceFile load(const std::string& path) {
  try {
    return parse_source(read_file(path));
  } catch (const Error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Domain parse_domain(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("domain must look like LO..HI");
  try {
    Domain d{Int(text.substr(0, dots).c_str()), Int(text.substr(dots + 2).c_str())};
    if (d.lo > d.hi) throw std::invalid_argument("domain LO must not exceed HI");
    return d;
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("domain must look like LO..HI");
  }
}

CheckConfig make_config(const Options& o) {
  CheckConfig cfg{parse_domain(o.domain), o.max_steps, o.max_states};
  cfg.validate();
  return cfg;
}

VarSet resolve_outputs(const Options& o, const std::vector<const SourceFile*>& files) {
  if (o.outputs_given) {
    VarSet out;
    for (const auto& name : o.outputs)
      if (!name.empty()) out.insert(Var(name));
    return out;
  }
  VarSet out;
  bool declared = false;
  for (const auto* f : files) {
    out = set_union(out, f->outputs);
    declared = declared || f->declares_outputs;
  }
  if (!declared) std::cerr << "warning: no #outputs directive and no --outputs; using an empty output set\n";
  return out;
}

void print_trace(const Verdict& v) {
  std::cout << "  initial state: " << to_string(v.initial) << "\n";
  if (!v.trace) return;
  std::cout << "  trace (" << v.trace->steps.size() << " steps):\n";
  for (const auto& t : v.trace->steps)
    std::cout << "    [" << t.op.label << "] " << to_string(t.op) << "  " << to_string(t.state) << "\n";
}

int verdict_exit(const Verdict& v) {
  if (v.is_violation()) return negative;
  return v.proves_safe() ? ok : unknown;
}

int cmd_analyze(const std::string& path, const Options& o) {
  SourceFile file = load(path);
  SegmentTable table = extract_segments(file);
  VarSet outputs = resolve_outputs(o, {&file});
  std::vector<UsageSummary> rows;
  for (const auto& s : table.segments) rows.push_back(summarize(file.program, s.body, s.id, outputs));
  if (o.json) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    std::cout << nlohmann::json{{"file", path}, {"outputs", to_json(outputs)}, {"segments", arr}}.dump(2) << "\n";
    return ok;
  }
  if (rows.empty()) {
    std::cout << "0 segments\n";
    return ok;
  }
  for (const auto& r : rows)
    std::cout << "segment " << r.segment_id << ": V=" << to_string(r.vars) << " M=" << to_string(r.modified)
              << " UB=" << to_string(r.used_before_def) << " L=" << to_string(r.live_after) << "\n";
  return ok;
}

std::vector<EquivalenceTask> build_tasks(const SourceFile& orig, const SourceFile& mod, const VarSet& outputs) {
  ReplacementMap gamma = validate_replacement(orig, mod);
  if (gamma.pairs.empty()) throw Error(ErrorKind::no_segments, "no segments in either file");
  std::vector<EquivalenceTask> tasks;
  for (const auto& p : gamma.pairs)
    tasks.push_back(build_task(p.original, p.modified, summarize(orig.program, p.original, p.id, outputs),
                               summarize(mod.program, p.modified, p.id, outputs)));
  return tasks;
}

int cmd_encode(const std::string& a, const std::string& b, const Options& o) {
  SourceFile orig = load(a);
  SourceFile mod = load(b);
  auto tasks = build_tasks(orig, mod, resolve_outputs(o, {&orig, &mod}));
  fs::create_directories(o.out_dir);
  for (const auto& t : tasks) {
    std::string stem = (fs::path(o.out_dir) / ("task_" + std::to_string(t.segment_id))).string();
    std::ofstream(stem + ".peq") << pretty_print(t.task);
    std::ofstream(stem + ".json") << sidecar_json(t).dump(2) << "\n";
    std::cout << "wrote " << stem << ".peq\nwrote " << stem << ".json\n";
    if (o.emit_c) {
      std::ofstream(stem + ".c") << emit_c(t.task);
      std::cout << "wrote " << stem << ".c\n";
    }
  }
  return ok;
}

int cmd_check(const std::string& path, const Options& o) {
  CheckConfig cfg = make_config(o);
  SourceFile file = load(path);
  Verdict v = check_program(file.program, cfg);
  if (o.json) {
    nlohmann::json out = to_json(v);
    out["config"] = to_json(cfg);
    out["note"] = domain_note(cfg);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(v.kind);
    if (v.is_no_violation()) std::cout << (v.complete ? " (complete)" : " (incomplete: step bound reached)");
    std::cout << "\n";
    if (v.is_violation()) print_trace(v);
    std::cout << "note: " << domain_note(cfg) << "\n";
  }
  return verdict_exit(v);
}

int cmd_oracle(const std::string& a, const std::string& b, const Options& o) {
  CheckConfig cfg = make_config(o);
  SourceFile orig = load(a);
  SourceFile mod = load(b);
  VarSet outputs = resolve_outputs(o, {&orig, &mod});
  EquivVerdict v = oracle_partial_equiv(orig.program, mod.program, outputs, cfg);
  if (o.json) {
    nlohmann::json out = to_json(v);
    out["outputs"] = to_json(outputs);
    out["config"] = to_json(cfg);
    out["note"] = domain_note(cfg);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(v.kind) << "\n";
    if (v.kind == EquivKind::inequivalent) {
      std::cout << "  initial state: " << to_string(v.initial) << "\n"
                << "  witness: " << v.witness.name() << " = " << v.terminal1.get(v.witness).str() << " vs "
                << v.terminal2.get(v.witness).str() << "\n";
      auto values = [&](const std::vector<DataState>& ss) {
        std::string s = "{";
        for (std::size_t i = 0; i < ss.size(); ++i) s += (i ? ", " : "") + ss[i].get(v.witness).str();
        return s + "}";
      };
      std::cout << "  terminal values of " << v.witness.name() << ": " << values(v.terminals1) << " vs "
                << values(v.terminals2) << "\n";
    }
    std::cout << "note: " << domain_note(cfg) << "\n";
  }
  switch (v.kind) {
    case EquivKind::equivalent: return ok;
    case EquivKind::inequivalent: return negative;
    default: return unknown;
  }
}

int cmd_verify(const std::string& a, const std::string& b, const Options& o) {
  CheckConfig cfg = make_config(o);
  SourceFile orig = load(a);
  SourceFile mod = load(b);
  VarSet outputs = resolve_outputs(o, {&orig, &mod});
  if (extract_segments(orig).empty() && extract_segments(mod).empty())
    throw Error(ErrorKind::no_segments, "no segments in either file");
  PipelineReport r = verify_pair(orig, mod, outputs, cfg);
  if (o.json) {
    std::cout << to_json(r, cfg).dump(2) << "\n";
  } else {
    std::cout << to_string(r.verdict) << "\n";
    for (const auto& s : r.segments) {
      std::cout << "segment " << s.task.segment_id << ": " << to_string(s.verdict.kind);
      if (s.verdict.is_no_violation() && !s.verdict.complete) std::cout << " (incomplete)";
      std::cout << "\n";
      if (s.verdict.is_violation()) print_trace(s.verdict);
    }
    std::cout << "note: " << domain_note(cfg) << "\n";
  }
  switch (r.verdict) {
    case PipelineVerdict::equivalent: return ok;
    case PipelineVerdict::possibly_inequivalent: return negative;
    default: return unknown;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segment-wise partial equivalence checking for a small imperative language"};
  app.require_subcommand(1);
  Options o;

  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("--outputs", o.outputs, "Output variables (overrides #outputs)")->delimiter(',');
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--domain", o.domain, "Initial value range LO..HI")->capture_default_str();
    sub->add_option("--max-steps", o.max_steps, "Step bound per execution")->capture_default_str();
    sub->add_option("--max-states", o.max_states, "Visited configuration budget")->capture_default_str();
  };

  std::string file_a, file_b;

  auto* analyze = app.add_subcommand("analyze", "Print V, M, UB and L for each segment");
  analyze->add_option("file", file_a)->required()->check(CLI::ExistingFile);
  add_outputs(analyze);
  analyze->add_flag("--json", o.json);

  auto* encode = app.add_subcommand("encode", "Write one verification task per segment pair");
  encode->add_option("original", file_a)->required()->check(CLI::ExistingFile);
  encode->add_option("modified", file_b)->required()->check(CLI::ExistingFile);
  encode->add_option("--out", o.out_dir, "Directory for task files")->capture_default_str();
  encode->add_flag("--emit-c", o.emit_c, "Also write a C rendering of each task");
  add_outputs(encode);

  auto* check = app.add_subcommand("check", "Search a task for assertion violations");
  check->add_option("task", file_a)->required()->check(CLI::ExistingFile);
  add_budget(check);
  check->add_flag("--json", o.json);

  auto* oracle = app.add_subcommand("oracle", "Compare two whole programs by brute force");
  oracle->add_option("original", file_a)->required()->check(CLI::ExistingFile);
  oracle->add_option("modified", file_b)->required()->check(CLI::ExistingFile);
  add_outputs(oracle);
  add_budget(oracle);
  oracle->add_flag("--json", o.json);

  auto* verify = app.add_subcommand("verify", "Check every segment pair of two programs");
  verify->add_option("original", file_a)->required()->check(CLI::ExistingFile);
  verify->add_option("modified", file_b)->required()->check(CLI::ExistingFile);
  add_outputs(verify);
  add_budget(verify);
  verify->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  for (auto* sub : {analyze, encode, oracle, verify})
    if (sub->count("--outputs")) o.outputs_given = true;

  try {
    if (*analyze) return cmd_analyze(file_a, o);
    if (*encode) return cmd_encode(file_a, file_b, o);
    if (*check) return cmd_check(file_a, o);
    if (*oracle) return cmd_oracle(file_a, file_b, o);
    if (*verify) return cmd_verify(file_a, file_b, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
