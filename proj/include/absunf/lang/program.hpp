#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "absunf/lang/syntax.hpp"

namespace absunf::lang {

struct VarDecl {
  std::string name;
  std::optional<ThreadId> owner;  // nullopt for globals
  Value init = 0;
  bool ghost = false;  // mutex variable introduced by desugaring

  bool is_global() const { return !owner.has_value(); }
};

struct Edge {
  EdgeId id = 0;
  ThreadId thread = 0;
  LocId src = 0;
  Stmt stmt;
  LocId dst = 0;
  SourcePos pos;
};

struct ThreadCfg {
  ThreadId id = 0;
  std::string name;
  LocId entry = 0;
  std::size_t location_count = 0;
  std::vector<EdgeId> edges;
  std::vector<VarId> locals;
  std::vector<SrcStmt> body;
  SourcePos pos;
};

struct AssertInfo {
  AssertId id = 0;
  ThreadId thread = 0;
  EdgeId edge = 0;
  SourcePos pos;
};

struct MutexDecl {
  std::string name;
  SourcePos pos;
};

/// A concurrent program: globals, mutexes and one control-flow graph per
/// thread. Thread ids are 0..n-1 in declaration order. Immutable once built.
class Program {
 public:
  Program() = default;
  Program(std::vector<VarDecl> vars, std::vector<MutexDecl> mutexes, std::vector<ThreadCfg> threads,
          std::vector<Edge> edges, std::vector<AssertInfo> asserts, bool desugared);

  std::span<const VarDecl> vars() const { return vars_; }
  const VarDecl& var(VarId v) const { return vars_.at(v); }
  std::size_t var_count() const { return vars_.size(); }

  std::span<const MutexDecl> mutexes() const { return mutexes_; }
  std::span<const ThreadCfg> threads() const { return threads_; }
  const ThreadCfg& thread(ThreadId t) const { return threads_.at(t); }
  std::size_t thread_count() const { return threads_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const AssertInfo> asserts() const { return asserts_; }

  /// Edges of `t` leaving location `loc`.
  std::span<const EdgeId> out_edges(ThreadId t, LocId loc) const;

  /// Variable id for a mutex ghost; only valid once desugared.
  VarId mutex_var(MutexId m) const;

  bool desugared() const { return desugared_; }

  std::optional<VarId> find_var(std::string_view name, std::optional<ThreadId> scope) const;

 private:
  std::vector<VarDecl> vars_;
  std::vector<MutexDecl> mutexes_;
  std::vector<ThreadCfg> threads_;
  std::vector<Edge> edges_;
  std::vector<AssertInfo> asserts_;
  std::vector<std::vector<std::vector<EdgeId>>> out_;  // [thread][loc]
  std::vector<VarId> mutex_vars_;
  bool desugared_ = false;
};

/// Replaces every lock/unlock with an atomic guarded assignment on a ghost
/// global: lock(m) by thread i is `assume(m == 0); m = i + 1`, unlock(m) is
/// `assume(m == i + 1); m = 0`.
Program desugar_mutexes(const Program& p);

/// Structural equality of variables, control-flow graphs and statements.
bool same_structure(const Program& a, const Program& b);

/// Readable text of an edge statement, e.g. `g = g + i`.
std::string stmt_text(const Program& p, const Stmt& s);
std::string expr_text(const Program& p, const Expr& e);
std::string cond_text(const Program& p, const Cond& c);

/// Prints the program back to the mini-language.
std::string print_program(const Program& p);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class SemanticError : public std::runtime_error {
 public:
  SemanticError(const std::string& msg, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

Program parse_program(std::string_view text);

}  // namespace absunf::lang
