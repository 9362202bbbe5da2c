#include "absunf/lang/program.hpp"

#include <sstream>
#include <utility>

namespace absunf::lang {

namespace {

std::string with_pos(const std::string& msg, SourcePos pos) {
  std::ostringstream os;
  os << pos.line << ":" << pos.column << ": " << msg;
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& msg, SourcePos pos)
    : std::runtime_error(with_pos("syntax error: " + msg, pos)), pos_(pos) {}

SemanticError::SemanticError(const std::string& msg, SourcePos pos)
    : std::runtime_error(with_pos("semantic error: " + msg, pos)), pos_(pos) {}

Program::Program(std::vector<VarDecl> vars, std::vector<MutexDecl> mutexes, std::vector<ThreadCfg> threads,
                 std::vector<Edge> edges, std::vector<AssertInfo> asserts, bool desugared)
    : vars_(std::move(vars)),
      mutexes_(std::move(mutexes)),
      threads_(std::move(threads)),
      edges_(std::move(edges)),
      asserts_(std::move(asserts)),
      desugared_(desugared) {
  out_.resize(threads_.size());
  for (std::size_t t = 0; t < threads_.size(); ++t) {
    if (threads_[t].id != t) throw std::invalid_argument("thread ids must be 0..n-1 in order");
    out_[t].resize(threads_[t].location_count);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id != i) throw std::invalid_argument("edge ids must be dense");
    if (e.thread >= threads_.size()) throw std::invalid_argument("edge thread out of range");
    auto& locs = out_[e.thread];
    if (e.src >= locs.size() || e.dst >= locs.size()) throw std::invalid_argument("edge endpoint out of range");
    locs[e.src].push_back(e.id);
  }
  if (desugared_) {
    for (const auto& m : mutexes_) {
      auto v = find_var(m.name, std::nullopt);
      if (!v || !vars_[*v].ghost) throw std::invalid_argument("missing ghost variable for mutex " + m.name);
      mutex_vars_.push_back(*v);
    }
  }
}

std::span<const EdgeId> Program::out_edges(ThreadId t, LocId loc) const {
  const auto& locs = out_.at(t);
  if (loc >= locs.size()) return {};
  return locs[loc];
}

VarId Program::mutex_var(MutexId m) const {
  if (!desugared_) throw std::logic_error("mutex ghost variables exist only after desugaring");
  return mutex_vars_.at(m);
}

std::optional<VarId> Program::find_var(std::string_view name, std::optional<ThreadId> scope) const {
  for (VarId v = 0; v < vars_.size(); ++v) {
    const auto& d = vars_[v];
    if (d.name != name) continue;
    if (d.is_global() || (scope && d.owner == scope)) return v;
  }
  return std::nullopt;
}

Program desugar_mutexes(const Program& p) {
  if (p.desugared()) return p;
  std::vector<VarDecl> vars(p.vars().begin(), p.vars().end());
  std::vector<VarId> ghost;
  for (const auto& m : p.mutexes()) {
    ghost.push_back(static_cast<VarId>(vars.size()));
    vars.push_back(VarDecl{m.name, std::nullopt, 0, true});
  }
  std::vector<Edge> edges(p.edges().begin(), p.edges().end());
  for (auto& e : edges) {
    const Value owner = static_cast<Value>(e.thread) + 1;
    if (const auto* lk = std::get_if<Lock>(&e.stmt)) {
      VarId m = ghost.at(lk->mutex);
      e.stmt = GuardedAssign{Cond::compare(CmpOp::eq, Expr::variable(m), Expr::constant(0)), m,
                             Expr::constant(owner)};
    } else if (const auto* ul = std::get_if<Unlock>(&e.stmt)) {
      VarId m = ghost.at(ul->mutex);
      e.stmt = GuardedAssign{Cond::compare(CmpOp::eq, Expr::variable(m), Expr::constant(owner)), m,
                             Expr::constant(0)};
    }
  }
  std::vector<MutexDecl> mutexes(p.mutexes().begin(), p.mutexes().end());
  std::vector<ThreadCfg> threads(p.threads().begin(), p.threads().end());
  std::vector<AssertInfo> asserts(p.asserts().begin(), p.asserts().end());
  return Program(std::move(vars), std::move(mutexes), std::move(threads), std::move(edges), std::move(asserts),
                 true);
}

namespace {

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "==";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "?";
}

int expr_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul: return 2;
    default: return 3;
  }
}

void print_expr(std::ostream& os, const Program& p, const Expr& e, int min_prec) {
  const int prec = expr_prec(e);
  const bool parens = prec < min_prec;
  if (parens) os << "(";
  switch (e.kind) {
    case ExprKind::constant: os << e.value; break;
    case ExprKind::variable: os << p.var(e.var).name; break;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul: {
      print_expr(os, p, e.args[0], prec);
      os << (e.kind == ExprKind::add ? " + " : e.kind == ExprKind::sub ? " - " : " * ");
      print_expr(os, p, e.args[1], prec + 1);
      break;
    }
    case ExprKind::neg:
      os << "-";
      // `-5` would re-parse as a literal, keep the negation node explicit
      print_expr(os, p, e.args[0], e.args[0].kind == ExprKind::constant ? 4 : 3);
      break;
  }
  if (parens) os << ")";
}

int cond_prec(const Cond& c) {
  switch (c.kind) {
    case CondKind::disj: return 1;
    case CondKind::conj: return 2;
    default: return 3;
  }
}

void print_cond(std::ostream& os, const Program& p, const Cond& c, int min_prec) {
  const int prec = cond_prec(c);
  const bool parens = prec < min_prec;
  if (parens) os << "(";
  switch (c.kind) {
    case CondKind::truth: os << "true"; break;
    case CondKind::falsity: os << "false"; break;
    case CondKind::cmp:
      print_expr(os, p, c.operands[0], 1);
      os << " " << cmp_text(c.op) << " ";
      print_expr(os, p, c.operands[1], 1);
      break;
    case CondKind::conj:
    case CondKind::disj:
      print_cond(os, p, c.args[0], prec);
      os << (c.kind == CondKind::conj ? " && " : " || ");
      print_cond(os, p, c.args[1], prec + 1);
      break;
    case CondKind::negation:
      os << "!(";
      print_cond(os, p, c.args[0], 0);
      os << ")";
      break;
  }
  if (parens) os << ")";
}

void print_simple(std::ostream& os, const Program& p, const Stmt& s) {
  std::visit(
      [&](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, Assign>) {
          os << p.var(st.var).name << " = ";
          print_expr(os, p, st.value, 1);
        } else if constexpr (std::is_same_v<T, Havoc>) {
          os << "havoc(" << p.var(st.var).name << ", " << st.lo << ", " << st.hi << ")";
        } else if constexpr (std::is_same_v<T, Assume>) {
          os << "assume(";
          print_cond(os, p, st.cond, 0);
          os << ")";
        } else if constexpr (std::is_same_v<T, Assert>) {
          os << "assert(";
          print_cond(os, p, st.cond, 0);
          os << ")";
        } else if constexpr (std::is_same_v<T, Lock>) {
          os << "lock(" << p.mutexes()[st.mutex].name << ")";
        } else if constexpr (std::is_same_v<T, Unlock>) {
          os << "unlock(" << p.mutexes()[st.mutex].name << ")";
        } else if constexpr (std::is_same_v<T, Skip>) {
          os << "skip";
        } else if constexpr (std::is_same_v<T, GuardedAssign>) {
          os << "assume(";
          print_cond(os, p, st.guard, 0);
          os << "); " << p.var(st.var).name << " = ";
          print_expr(os, p, st.value, 1);
        }
      },
      s);
}

void print_block(std::ostream& os, const Program& p, const std::vector<SrcStmt>& body, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& s : body) {
    switch (s.kind) {
      case SrcStmt::Kind::simple:
        os << pad;
        print_simple(os, p, s.stmt);
        os << ";\n";
        break;
      case SrcStmt::Kind::if_else:
        os << pad << "if (";
        print_cond(os, p, s.cond, 0);
        os << ") {\n";
        print_block(os, p, s.then_body, indent + 1);
        os << pad << "} else {\n";
        print_block(os, p, s.else_body, indent + 1);
        os << pad << "}\n";
        break;
      case SrcStmt::Kind::while_loop:
        os << pad << "while (";
        print_cond(os, p, s.cond, 0);
        os << ") {\n";
        print_block(os, p, s.then_body, indent + 1);
        os << pad << "}\n";
        break;
    }
  }
}

}  // namespace

std::string expr_text(const Program& p, const Expr& e) {
  std::ostringstream os;
  print_expr(os, p, e, 0);
  return os.str();
}

std::string cond_text(const Program& p, const Cond& c) {
  std::ostringstream os;
  print_cond(os, p, c, 0);
  return os.str();
}

std::string stmt_text(const Program& p, const Stmt& s) {
  std::ostringstream os;
  print_simple(os, p, s);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& v : p.vars()) {
    if (v.is_global() && !v.ghost) os << "global " << v.name << " = " << v.init << ";\n";
  }
  for (const auto& m : p.mutexes()) os << "mutex " << m.name << ";\n";
  for (const auto& t : p.threads()) {
    os << "thread ";
    if (!t.name.empty()) os << t.name << " ";
    os << "{\n";
    for (VarId v : t.locals) os << "  local " << p.var(v).name << " = " << p.var(v).init << ";\n";
    print_block(os, p, t.body, 1);
    os << "}\n";
  }
  return os.str();
}

bool same_structure(const Program& a, const Program& b) {
  if (a.var_count() != b.var_count() || a.thread_count() != b.thread_count() || a.edge_count() != b.edge_count() ||
      a.mutexes().size() != b.mutexes().size() || a.asserts().size() != b.asserts().size())
    return false;
  for (VarId v = 0; v < a.var_count(); ++v) {
    const auto &x = a.var(v), &y = b.var(v);
    if (x.name != y.name || x.owner != y.owner || x.init != y.init || x.ghost != y.ghost) return false;
  }
  for (std::size_t m = 0; m < a.mutexes().size(); ++m) {
    if (a.mutexes()[m].name != b.mutexes()[m].name) return false;
  }
  for (ThreadId t = 0; t < a.thread_count(); ++t) {
    const auto &x = a.thread(t), &y = b.thread(t);
    if (x.name != y.name || x.entry != y.entry || x.location_count != y.location_count || x.edges != y.edges ||
        x.locals != y.locals)
      return false;
  }
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    const auto &x = a.edge(e), &y = b.edge(e);
    if (x.thread != y.thread || x.src != y.src || x.dst != y.dst || !(x.stmt == y.stmt)) return false;
  }
  return true;
}

}  // namespace absunf::lang
