#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peq/error.hpp"
#include "peq/parser.hpp"

namespace peq {

struct Segment {
  int id = 0;
  Program body;
  int line = 0;
  int column = 0;
};

/// The segments of one file, ordered by id.
struct SegmentTable {
  std::vector<Segment> segments;

  const Segment* find(int id) const {
    for (const auto& s : segments)
      if (s.id == id) return &s;
    return nullptr;
  }
  std::vector<int> ids() const {
    std::vector<int> out;
    for (const auto& s : segments) out.push_back(s.id);
    return out;
  }
  bool empty() const { return segments.empty(); }
  std::size_t size() const { return segments.size(); }
};

/// One pair (S1, S2) of the replacement function.
struct SegmentPair {
  int id = 0;
  Program original;
  Program modified;
};

/// The replacement function γ, ordered by segment id.
struct ReplacementMap {
  std::vector<SegmentPair> pairs;
};

inline bool is_empty_segment(const Program& p) {
  if (p.is_empty()) return true;
  if (p.kind() != StmtKind::par) return false;
  auto bs = p.branches();
  return std::all_of(bs.begin(), bs.end(), [](const Program& b) { return b.is_empty(); });
}

namespace detail {

inline std::string segment_where(const SegmentMarker& m) {
  return "segment " + std::to_string(m.id) + " (line " + std::to_string(m.line) + ")";
}

}  // namespace detail

inline SegmentTable extract_segments(const SourceFile& file) {
  SegmentTable table;
  for (const auto& m : file.segments) {
    if (m.inside_par)
      throw SourceError(ErrorKind::segment_inside_par, m.line, m.column,
                        detail::segment_where(m) + " occurs inside a parallel statement");
    if (table.find(m.id))
      throw SourceError(ErrorKind::duplicate_segment_id, m.line, m.column,
                        "segment id " + std::to_string(m.id) + " is used twice");
    if (m.parent)
      throw SourceError(ErrorKind::nested_segments, m.line, m.column,
                        detail::segment_where(m) + " is nested in segment " + std::to_string(*m.parent));
    if (is_empty_segment(m.body))
      throw SourceError(ErrorKind::empty_segment, m.line, m.column, detail::segment_where(m) + " is empty");
    table.segments.push_back({m.id, m.body, m.line, m.column});
  }
  std::sort(table.segments.begin(), table.segments.end(), [](const Segment& a, const Segment& b) { return a.id < b.id; });
  return table;
}

namespace detail {

// Statement list of a block with segment bodies kept atomic.
inline void block_items(const Program& p, const SegmentMarkers& marks, std::vector<Program>& out) {
  if (marks.contains(p.identity())) {
    out.push_back(p);
  } else if (p.kind() == StmtKind::seq) {
    block_items(p.first(), marks, out);
    block_items(p.rest(), marks, out);
  } else if (!p.is_empty()) {
    out.push_back(p);
  }
}

inline std::string describe_stmt(const Program& p, const SegmentMarkers& marks) {
  if (auto it = marks.find(p.identity()); it != marks.end()) return "#segment " + std::to_string(it->second);
  std::string text = pretty_print(p);
  auto nl = text.find('\n');
  if (nl != std::string::npos) text.resize(nl);
  return "'" + text + "'";
}

struct ResidueComparer {
  const SegmentMarkers& left;
  const SegmentMarkers& right;
  std::string mismatch;

  bool fail(const std::string& a, const std::string& b) {
    mismatch = "original has " + a + " where modified has " + b;
    return false;
  }

  bool blocks(const Program& a, const Program& b) {
    std::vector<Program> xs, ys;
    block_items(a, left, xs);
    block_items(b, right, ys);
    for (std::size_t i = 0; i < std::max(xs.size(), ys.size()); ++i) {
      if (i >= xs.size()) return fail("end of block", describe_stmt(ys[i], right));
      if (i >= ys.size()) return fail(describe_stmt(xs[i], left), "end of block");
      if (!stmts(xs[i], ys[i])) return false;
    }
    return true;
  }

  bool stmts(const Program& a, const Program& b) {
    auto la = left.find(a.identity());
    auto rb = right.find(b.identity());
    if (la != left.end() || rb != right.end()) {
      if (la != left.end() && rb != right.end() && la->second == rb->second) return true;
      return fail(describe_stmt(a, left), describe_stmt(b, right));
    }
    bool same = a.kind() == b.kind();
    if (same) {
      switch (a.kind()) {
        case StmtKind::assign: same = a.target() == b.target() && a.value() == b.value(); break;
        case StmtKind::assertion:
        case StmtKind::branch:
        case StmtKind::loop: same = a.cond() == b.cond(); break;
        case StmtKind::par: same = a.branches().size() == b.branches().size(); break;
        default: break;
      }
    }
    if (!same) return fail(describe_stmt(a, left), describe_stmt(b, right));
    auto ca = a.children();
    auto cb = b.children();
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (!blocks(ca[i], cb[i])) return false;
    return true;
  }
};

}  // namespace detail

/// Checks that the modified file is the original with each segment body
/// replaced by the same-id body of the modified file, up to labels.
inline ReplacementMap validate_replacement(const SourceFile& original, const SourceFile& modified) {
  SegmentTable t1 = extract_segments(original);
  SegmentTable t2 = extract_segments(modified);
  if (t1.ids() != t2.ids()) {
    auto list = [](const std::vector<int>& ids) {
      std::string s = "{";
      for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
      return s + "}";
    };
    throw Error(ErrorKind::segment_id_mismatch,
                "original has segments " + list(t1.ids()) + ", modified has " + list(t2.ids()));
  }
  SegmentMarkers m1 = original.markers();
  SegmentMarkers m2 = modified.markers();
  detail::ResidueComparer cmp{m1, m2, {}};
  if (!cmp.blocks(original.program, modified.program)) throw Error(ErrorKind::context_mismatch, cmp.mismatch);
  ReplacementMap out;
  for (std::size_t i = 0; i < t1.size(); ++i)
    out.pairs.push_back({t1.segments[i].id, t1.segments[i].body, t2.segments[i].body});
  return out;
}

namespace detail {

inline Program with_children(const Program& p, std::vector<Program> cs) {
  switch (p.kind()) {
    case StmtKind::branch: return Program::branch(p.label(), p.cond(), std::move(cs[0]), std::move(cs[1]));
    case StmtKind::loop: return Program::loop(p.label(), p.cond(), std::move(cs[0]));
    case StmtKind::seq: return Program::seq(std::move(cs[0]), std::move(cs[1]));
    case StmtKind::par: return Program::par(std::move(cs));
    default: return p;
  }
}

inline Program substitute_in(const Program& p, const SegmentMarkers& marks, const std::map<int, Program>& bodies,
                             std::vector<SegmentMarker>& placed) {
  if (auto it = marks.find(p.identity()); it != marks.end()) {
    auto body = bodies.find(it->second);
    Program out = body == bodies.end() ? p : body->second;
    placed.push_back({it->second, out, 0, 0, std::nullopt, false});
    return out;
  }
  if (p.children().empty()) return p;
  std::vector<Program> cs;
  for (const auto& c : p.children()) cs.push_back(substitute_in(c, marks, bodies, placed));
  return with_children(p, std::move(cs));
}

}  // namespace detail

/// Γ(S, γ): replaces the segment bodies of `file` by `bodies` (by id). The
/// result keeps segment markers on the new bodies.
inline SourceFile substitute(const SourceFile& file, const std::map<int, Program>& bodies) {
  SourceFile out;
  out.outputs = file.outputs;
  out.declares_outputs = file.declares_outputs;
  out.program = detail::substitute_in(file.program, file.markers(), bodies, out.segments);
  return out;
}

}  // namespace peq
