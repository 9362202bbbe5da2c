#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "absunf/lang/program.hpp"

namespace absunf::lang {

namespace {

enum class Tok : std::uint8_t { ident, number, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Value number = 0;
  SourcePos pos;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Tok::ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::number;
      t.text = std::string(text.substr(i, j - i));
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, t.number);
      if (ec != std::errc{}) throw ParseError("integer literal out of range", t.pos);
      advance(j - i);
    } else {
      static constexpr std::string_view two[] = {"==", "!=", "<=", ">=", "&&", "||", "+=", "-="};
      t.kind = Tok::punct;
      std::string_view rest = text.substr(i);
      bool matched = false;
      for (auto op : two) {
        if (rest.starts_with(op)) {
          t.text = std::string(op);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("{}();,=+-*<>!").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", t.pos);
        t.text = std::string(1, c);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.pos = {line, col};
  out.push_back(eof);
  return out;
}

struct Backtrack {};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Program run() {
    bool seen_thread = false;
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      if (is_kw("global")) {
        if (seen_thread) throw ParseError("global declarations must precede threads", t.pos);
        parse_global();
      } else if (is_kw("mutex")) {
        if (seen_thread) throw ParseError("mutex declarations must precede threads", t.pos);
        parse_mutex();
      } else if (is_kw("thread")) {
        seen_thread = true;
        parse_thread();
      } else {
        throw ParseError("expected 'global', 'mutex' or 'thread', got '" + t.text + "'", t.pos);
      }
    }
    std::vector<ThreadCfg> threads;
    std::vector<Edge> edges;
    std::vector<AssertInfo> asserts;
    for (auto& pt : threads_) {
      ThreadCfg cfg;
      cfg.id = static_cast<ThreadId>(threads.size());
      cfg.name = pt.name;
      cfg.locals = pt.locals;
      cfg.body = std::move(pt.body);
      cfg.pos = pt.pos;
      cfg.entry = 0;
      CfgBuilder b{cfg, edges, asserts};
      b.next_loc = 1;
      if (!cfg.body.empty()) {
        LocId exit = b.fresh();
        b.block(cfg.body, cfg.entry, exit);
      }
      cfg.location_count = b.next_loc;
      threads.push_back(std::move(cfg));
    }
    std::sort(asserts.begin(), asserts.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return Program(std::move(vars_), std::move(mutexes_), std::move(threads), std::move(edges), std::move(asserts),
                   false);
  }

 private:
  struct PendingThread {
    std::string name;
    std::vector<VarId> locals;
    std::vector<SrcStmt> body;
    SourcePos pos;
  };

  struct CfgBuilder {
    ThreadCfg& cfg;
    std::vector<Edge>& edges;
    std::vector<AssertInfo>& asserts;
    LocId next_loc = 0;

    LocId fresh() { return next_loc++; }

    void edge(LocId src, Stmt s, LocId dst, SourcePos pos) {
      auto id = static_cast<EdgeId>(edges.size());
      if (const auto* a = std::get_if<Assert>(&s)) asserts.push_back(AssertInfo{a->id, cfg.id, id, pos});
      edges.push_back(Edge{id, cfg.id, src, std::move(s), dst, pos});
      cfg.edges.push_back(id);
    }

    void block(const std::vector<SrcStmt>& body, LocId from, LocId to) {
      for (std::size_t k = 0; k < body.size(); ++k) {
        LocId target = k + 1 == body.size() ? to : fresh();
        stmt(body[k], from, target);
        from = target;
      }
    }

    void branch(const Cond& c, const std::vector<SrcStmt>& body, LocId from, LocId to, SourcePos pos) {
      if (body.empty()) {
        edge(from, Assume{c}, to, pos);
        return;
      }
      LocId start = fresh();
      edge(from, Assume{c}, start, pos);
      block(body, start, to);
    }

    void stmt(const SrcStmt& s, LocId from, LocId to) {
      switch (s.kind) {
        case SrcStmt::Kind::simple: edge(from, s.stmt, to, s.pos); break;
        case SrcStmt::Kind::if_else:
          branch(s.cond, s.then_body, from, to, s.pos);
          branch(Cond::negation(s.cond), s.else_body, from, to, s.pos);
          break;
        case SrcStmt::Kind::while_loop:
          branch(s.cond, s.then_body, from, from, s.pos);
          edge(from, Assume{Cond::negation(s.cond)}, to, s.pos);
          break;
      }
    }
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_kw(std::string_view kw) const { return peek().kind == Tok::ident && peek().text == kw; }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (speculative_ > 0) throw Backtrack{};
    const Token& t = peek();
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.pos);
  }

  std::string ident() {
    if (peek().kind != Tok::ident) fail("expected identifier");
    return next().text;
  }

  Value integer() {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::number) fail("expected integer");
    Value v = next().number;
    return neg ? -v : v;
  }

  void declare_global_name(const std::string& name, SourcePos pos) {
    if (!global_names_.insert(name).second) throw SemanticError("duplicate declaration of '" + name + "'", pos);
  }

  void parse_global() {
    next();
    SourcePos pos = peek().pos;
    std::string name = ident();
    expect("=");
    Value init = integer();
    expect(";");
    declare_global_name(name, pos);
    globals_[name] = static_cast<VarId>(vars_.size());
    vars_.push_back(VarDecl{name, std::nullopt, init, false});
  }

  void parse_mutex() {
    next();
    SourcePos pos = peek().pos;
    std::string name = ident();
    expect(";");
    declare_global_name(name, pos);
    mutex_ids_[name] = static_cast<MutexId>(mutexes_.size());
    mutexes_.push_back(MutexDecl{name, pos});
  }

  void parse_thread() {
    SourcePos pos = next().pos;
    PendingThread t;
    t.pos = pos;
    const auto tid = static_cast<ThreadId>(threads_.size());
    if (peek().kind == Tok::ident) {
      t.name = ident();
      if (!thread_names_.insert(t.name).second) throw SemanticError("duplicate thread '" + t.name + "'", pos);
    }
    expect("{");
    locals_.clear();
    while (is_kw("local")) {
      next();
      SourcePos lpos = peek().pos;
      std::string name = ident();
      expect("=");
      Value init = integer();
      expect(";");
      if (global_names_.count(name)) throw SemanticError("local '" + name + "' shadows a global", lpos);
      if (locals_.count(name)) throw SemanticError("duplicate local '" + name + "'", lpos);
      locals_[name] = static_cast<VarId>(vars_.size());
      t.locals.push_back(locals_[name]);
      vars_.push_back(VarDecl{name, tid, init, false});
    }
    while (!is_punct("}")) {
      if (peek().kind == Tok::end) fail("expected '}'");
      t.body.push_back(statement());
    }
    expect("}");
    threads_.push_back(std::move(t));
  }

  VarId resolve_var(const std::string& name, SourcePos pos) const {
    if (auto it = locals_.find(name); it != locals_.end()) return it->second;
    if (auto it = globals_.find(name); it != globals_.end()) return it->second;
    if (mutex_ids_.count(name)) throw SemanticError("mutex '" + name + "' used as a variable", pos);
    throw SemanticError("undeclared variable '" + name + "'", pos);
  }

  MutexId resolve_mutex(const std::string& name, SourcePos pos) const {
    if (auto it = mutex_ids_.find(name); it != mutex_ids_.end()) return it->second;
    throw SemanticError("undeclared mutex '" + name + "'", pos);
  }

  std::vector<SrcStmt> block() {
    expect("{");
    std::vector<SrcStmt> out;
    while (!is_punct("}")) {
      if (peek().kind == Tok::end) fail("expected '}'");
      out.push_back(statement());
    }
    expect("}");
    return out;
  }

  SrcStmt simple(Stmt s, SourcePos pos) {
    SrcStmt out;
    out.kind = SrcStmt::Kind::simple;
    out.stmt = std::move(s);
    out.pos = pos;
    return out;
  }

  SrcStmt statement() {
    SourcePos pos = peek().pos;
    if (is_kw("skip")) {
      next();
      expect(";");
      return simple(Skip{}, pos);
    }
    if (is_kw("havoc")) {
      next();
      expect("(");
      SourcePos vpos = peek().pos;
      VarId v = resolve_var(ident(), vpos);
      expect(",");
      Value lo = integer();
      expect(",");
      Value hi = integer();
      expect(")");
      expect(";");
      if (lo > hi) throw SemanticError("havoc bounds must satisfy lo <= hi", pos);
      return simple(Havoc{v, lo, hi}, pos);
    }
    if (is_kw("assume") || is_kw("assert")) {
      bool is_assert = peek().text == "assert";
      next();
      expect("(");
      Cond c = condition();
      expect(")");
      expect(";");
      if (is_assert) return simple(Assert{std::move(c), next_assert_++}, pos);
      return simple(Assume{std::move(c)}, pos);
    }
    if (is_kw("lock") || is_kw("unlock")) {
      bool is_lock = peek().text == "lock";
      next();
      expect("(");
      SourcePos mpos = peek().pos;
      MutexId m = resolve_mutex(ident(), mpos);
      expect(")");
      expect(";");
      if (is_lock) return simple(Lock{m}, pos);
      return simple(Unlock{m}, pos);
    }
    if (is_kw("if")) {
      next();
      expect("(");
      SrcStmt s;
      s.kind = SrcStmt::Kind::if_else;
      s.pos = pos;
      s.cond = condition();
      expect(")");
      s.then_body = block();
      if (is_kw("else")) {
        next();
        if (is_kw("if")) {
          s.else_body.push_back(statement());
        } else {
          s.else_body = block();
        }
      }
      return s;
    }
    if (is_kw("while")) {
      next();
      expect("(");
      SrcStmt s;
      s.kind = SrcStmt::Kind::while_loop;
      s.pos = pos;
      s.cond = condition();
      expect(")");
      s.then_body = block();
      return s;
    }
    if (peek().kind == Tok::ident) {
      SourcePos vpos = peek().pos;
      std::string name = ident();
      VarId v = resolve_var(name, vpos);
      if (is_punct("+=") || is_punct("-=")) {
        ExprKind k = peek().text == "+=" ? ExprKind::add : ExprKind::sub;
        next();
        Expr rhs = expr();
        expect(";");
        return simple(Assign{v, Expr::binary(k, Expr::variable(v), std::move(rhs))}, pos);
      }
      expect("=");
      Expr rhs = expr();
      expect(";");
      return simple(Assign{v, std::move(rhs)}, pos);
    }
    fail("expected statement");
  }

  Cond condition() {
    Cond c = conjunction();
    while (is_punct("||")) {
      next();
      c = Cond::disj(std::move(c), conjunction());
    }
    return c;
  }

  Cond conjunction() {
    Cond c = unary_cond();
    while (is_punct("&&")) {
      next();
      c = Cond::conj(std::move(c), unary_cond());
    }
    return c;
  }

  Cond unary_cond() {
    if (is_punct("!")) {
      next();
      return Cond::negation(unary_cond());
    }
    if (is_kw("true")) {
      next();
      return Cond::truth();
    }
    if (is_kw("false")) {
      next();
      return Cond::falsity();
    }
    if (is_punct("(")) {
      // `(` opens either a parenthesised condition or an expression operand
      const std::size_t save = pos_;
      ++speculative_;
      try {
        Cond c = comparison();
        --speculative_;
        return c;
      } catch (const Backtrack&) {
        --speculative_;
        pos_ = save;
      }
      next();
      Cond c = condition();
      expect(")");
      return c;
    }
    return comparison();
  }

  Cond comparison() {
    Expr lhs = expr();
    static const std::map<std::string, CmpOp, std::less<>> ops = {{"==", CmpOp::eq}, {"!=", CmpOp::ne},
                                                                  {"<", CmpOp::lt},  {"<=", CmpOp::le},
                                                                  {">", CmpOp::gt},  {">=", CmpOp::ge}};
    if (peek().kind != Tok::punct) fail("expected comparison operator");
    auto it = ops.find(peek().text);
    if (it == ops.end()) fail("expected comparison operator");
    next();
    Expr rhs = expr();
    return Cond::compare(it->second, std::move(lhs), std::move(rhs));
  }

  Expr expr() {
    Expr e = term();
    while (is_punct("+") || is_punct("-")) {
      ExprKind k = peek().text == "+" ? ExprKind::add : ExprKind::sub;
      next();
      e = Expr::binary(k, std::move(e), term());
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (is_punct("*")) {
      next();
      e = Expr::binary(ExprKind::mul, std::move(e), factor());
    }
    return e;
  }

  Expr factor() {
    if (peek().kind == Tok::number) return Expr::constant(next().number);
    if (is_punct("-")) {
      next();
      if (peek().kind == Tok::number) return Expr::constant(-next().number);
      return Expr::negate(factor());
    }
    if (is_punct("(")) {
      next();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (peek().kind == Tok::ident && !is_kw("true") && !is_kw("false")) {
      SourcePos vpos = peek().pos;
      std::string name = ident();
      if (speculative_ > 0 && !locals_.count(name) && !globals_.count(name)) throw Backtrack{};
      return Expr::variable(resolve_var(name, vpos));
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int speculative_ = 0;
  std::vector<VarDecl> vars_;
  std::vector<MutexDecl> mutexes_;
  std::vector<PendingThread> threads_;
  std::set<std::string> global_names_;
  std::set<std::string> thread_names_;
  std::map<std::string, VarId> globals_;
  std::map<std::string, MutexId> mutex_ids_;
  std::map<std::string, VarId> locals_;
  AssertId next_assert_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

}  // namespace absunf::lang
