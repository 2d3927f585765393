#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peq/error.hpp"
#include "peq/printer.hpp"
#include "peq/program.hpp"

namespace peq {

struct SegmentMarker {
  int id = 0;
  Program body;
  int line = 0;
  int column = 0;
  /// Id of the segment whose block contains this marker, if any.
  std::optional<int> parent;
  bool inside_par = false;
};

/// A parsed `.peq` file: the program plus its directives.
struct SourceFile {
  Program program;
  VarSet outputs;
  bool declares_outputs = false;
  /// Segment markers in source order.
  std::vector<SegmentMarker> segments;

  SegmentMarkers markers() const {
    SegmentMarkers out;
    for (const auto& s : segments) out.emplace(s.body.identity(), s.id);
    return out;
  }
};

namespace detail {

enum class Tok : std::uint8_t {
  ident, integer, kw_assert, kw_if, kw_else, kw_while, kw_par, kw_true, kw_false,
  dir_segment, dir_outputs,
  assign, semi, comma, lparen, rparen, lbrace, rbrace,
  plus, minus, star, eq, ne, lt, le, gt, ge, and_, or_, not_,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::ident;
      if (word == "assert") kind = Tok::kw_assert;
      else if (word == "if") kind = Tok::kw_if;
      else if (word == "else") kind = Tok::kw_else;
      else if (word == "while") kind = Tok::kw_while;
      else if (word == "par") kind = Tok::kw_par;
      else if (word == "true") kind = Tok::kw_true;
      else if (word == "false") kind = Tok::kw_false;
      else if (word == "#segment") kind = Tok::dir_segment;
      else if (word == "#outputs") kind = Tok::dir_outputs;
      else if (c == '#') throw SourceError(ErrorKind::parse, tl, tc, "unknown directive '" + word + "'");
      out.push_back({kind, word, tl, tc});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym two_char[] = {{":=", Tok::assign}, {"==", Tok::eq}, {"!=", Tok::ne}, {"<=", Tok::le},
                                       {">=", Tok::ge},     {"&&", Tok::and_}, {"||", Tok::or_}};
    static constexpr Sym one_char[] = {{";", Tok::semi},   {",", Tok::comma},  {"(", Tok::lparen}, {")", Tok::rparen},
                                       {"{", Tok::lbrace}, {"}", Tok::rbrace}, {"+", Tok::plus},   {"-", Tok::minus},
                                       {"*", Tok::star},   {"<", Tok::lt},     {">", Tok::gt},     {"!", Tok::not_}};
    bool matched = false;
    for (const auto& s : two_char) {
      if (two == s.text) {
        out.push_back({s.kind, std::string(s.text), tl, tc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (const auto& s : one_char) {
        if (src.substr(i, 1) == s.text) {
          out.push_back({s.kind, std::string(s.text), tl, tc});
          advance(1);
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw SourceError(ErrorKind::parse, tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  SourceFile parse_file() {
    SourceFile file;
    std::vector<Program> items;
    while (peek().kind != Tok::end) {
      if (peek().kind == Tok::dir_outputs) {
        take();
        file.declares_outputs = true;
        file.outputs.insert(Var(expect(Tok::ident, "output variable").text));
        while (accept(Tok::comma)) file.outputs.insert(Var(expect(Tok::ident, "output variable").text));
        expect(Tok::semi, "';'");
        continue;
      }
      items.push_back(parse_stmt());
    }
    file.program = Program::sequence(std::move(items));
    file.segments = std::move(segments_);
    return file;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    take();
    return true;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SourceError(ErrorKind::parse, peek().line, peek().column, msg);
  }

  Program parse_block() {
    expect(Tok::lbrace, "'{'");
    std::vector<Program> items;
    while (peek().kind != Tok::rbrace) {
      if (peek().kind == Tok::end) fail("unterminated block, expected '}'");
      if (peek().kind == Tok::dir_outputs) fail("#outputs is only allowed at top level");
      items.push_back(parse_stmt());
    }
    take();
    return Program::sequence(std::move(items));
  }

  Program parse_stmt() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: {
        Var target(take().text);
        int label = next_label_++;
        expect(Tok::assign, "':='");
        AExpr value = parse_aexpr();
        expect(Tok::semi, "';'");
        return Program::assign(label, target, std::move(value));
      }
      case Tok::kw_assert: {
        take();
        int label = next_label_++;
        BExpr cond = parse_bexpr();
        expect(Tok::semi, "';'");
        return Program::assertion(label, std::move(cond));
      }
      case Tok::kw_if: {
        take();
        int label = next_label_++;
        expect(Tok::lparen, "'('");
        BExpr cond = parse_bexpr();
        expect(Tok::rparen, "')'");
        Program then_branch = parse_block();
        Program else_branch;
        if (accept(Tok::kw_else)) else_branch = parse_block();
        return Program::branch(label, std::move(cond), std::move(then_branch), std::move(else_branch));
      }
      case Tok::kw_while: {
        take();
        int label = next_label_++;
        expect(Tok::lparen, "'('");
        BExpr cond = parse_bexpr();
        expect(Tok::rparen, "')'");
        return Program::loop(label, std::move(cond), parse_block());
      }
      case Tok::kw_par: {
        take();
        ++par_depth_;
        std::vector<Program> branches;
        branches.push_back(parse_block());
        while (peek().kind == Tok::lbrace) branches.push_back(parse_block());
        --par_depth_;
        return Program::par(std::move(branches));
      }
      case Tok::dir_segment: return parse_segment();
      default: fail("expected a statement, found '" + t.text + "'");
    }
  }

  Program parse_segment() {
    const Token& start = take();
    int line = start.line;
    int column = start.column;
    const Token& id_tok = expect(Tok::integer, "segment id");
    int id = 0;
    try {
      id = std::stoi(id_tok.text);
    } catch (const std::exception&) {
      throw SourceError(ErrorKind::parse, id_tok.line, id_tok.column, "segment id out of range");
    }
    if (par_depth_ > 0)
      throw SourceError(ErrorKind::segment_inside_par, line, column,
                        "segment " + std::to_string(id) + " occurs inside a parallel statement");
    for (const auto& s : segments_)
      if (s.id == id)
        throw SourceError(ErrorKind::duplicate_segment_id, line, column,
                          "segment id " + std::to_string(id) + " already used on line " + std::to_string(s.line));
    std::optional<int> parent = open_segments_.empty() ? std::nullopt : std::optional<int>(open_segments_.back());
    open_segments_.push_back(id);
    std::size_t slot = segments_.size();
    segments_.push_back({id, Program(), line, column, parent, false});
    Program body = parse_block();
    open_segments_.pop_back();
    segments_[slot].body = body;
    return body;
  }

  AExpr parse_aexpr() {
    AExpr lhs = parse_term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      AOp op = take().kind == Tok::plus ? AOp::add : AOp::sub;
      lhs = AExpr::binary(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  AExpr parse_term() {
    AExpr lhs = parse_unary();
    while (accept(Tok::star)) lhs = AExpr::binary(AOp::mul, std::move(lhs), parse_unary());
    return lhs;
  }

  AExpr parse_unary() {
    if (accept(Tok::minus)) {
      if (peek().kind == Tok::integer) return AExpr::literal(-Int(take().text.c_str()));
      return AExpr::negate(parse_unary());
    }
    return parse_primary();
  }

  AExpr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::integer) return AExpr::literal(Int(take().text.c_str()));
    if (t.kind == Tok::ident) return AExpr::variable(Var(take().text));
    if (accept(Tok::lparen)) {
      AExpr e = parse_aexpr();
      expect(Tok::rparen, "')'");
      return e;
    }
    fail("expected an arithmetic expression, found '" + t.text + "'");
  }

  BExpr parse_bexpr() {
    BExpr lhs = parse_bterm();
    while (accept(Tok::or_)) lhs = BExpr::logical(BOp::disj, std::move(lhs), parse_bterm());
    return lhs;
  }

  BExpr parse_bterm() {
    BExpr lhs = parse_bfactor();
    while (accept(Tok::and_)) lhs = BExpr::logical(BOp::conj, std::move(lhs), parse_bfactor());
    return lhs;
  }

  static bool continues_arithmetic(Tok k) {
    switch (k) {
      case Tok::plus: case Tok::minus: case Tok::star:
      case Tok::eq: case Tok::ne: case Tok::lt: case Tok::le: case Tok::gt: case Tok::ge:
        return true;
      default:
        return false;
    }
  }

  BExpr parse_bfactor() {
    if (accept(Tok::not_)) return BExpr::negate(parse_bfactor());
    if (accept(Tok::kw_true)) return BExpr::constant(true);
    if (accept(Tok::kw_false)) return BExpr::constant(false);
    if (peek().kind == Tok::lparen) {
      // "(" opens either a boolean group or a parenthesized operand of a comparison.
      std::size_t saved = pos_;
      try {
        take();
        BExpr inner = parse_bexpr();
        expect(Tok::rparen, "')'");
        if (!continues_arithmetic(peek().kind)) return inner;
      } catch (const SourceError&) {
      }
      pos_ = saved;
    }
    AExpr lhs = parse_aexpr();
    BOp op;
    switch (peek().kind) {
      case Tok::eq: op = BOp::eq; break;
      case Tok::ne: op = BOp::ne; break;
      case Tok::lt: op = BOp::lt; break;
      case Tok::le: op = BOp::le; break;
      case Tok::gt: op = BOp::gt; break;
      case Tok::ge: op = BOp::ge; break;
      default: fail("expected a comparison operator, found '" + peek().text + "'");
    }
    take();
    return BExpr::compare(op, std::move(lhs), parse_aexpr());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int next_label_ = 1;
  int par_depth_ = 0;
  std::vector<int> open_segments_;
  std::vector<SegmentMarker> segments_;
};

}  // namespace detail

/// Parses a `.peq` source. Labels are assigned in preorder starting at 1.
inline SourceFile parse_source(std::string_view text) { return detail::Parser(text).parse_file(); }

/// Parses a source and returns only its program.
inline Program parse(std::string_view text) { return parse_source(text).program; }

inline std::string pretty_print(const SourceFile& file) {
  std::string out;
  if (file.declares_outputs) {
    out += "#outputs";
    bool first = true;
    for (Var v : file.outputs) {
      out += (first ? " " : ", ") + v.name();
      first = false;
    }
    out += ";\n";
  }
  return out + pretty_print(file.program, file.markers());
}

}  // namespace peq
