#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace absunf::lang {

using Value = std::int64_t;
using VarId = std::uint32_t;
using ThreadId = std::uint32_t;
using LocId = std::uint32_t;
using EdgeId = std::uint32_t;
using AssertId = std::uint32_t;
using MutexId = std::uint32_t;

inline constexpr VarId kNoVar = std::numeric_limits<VarId>::max();

struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ExprKind : std::uint8_t { constant, variable, add, sub, mul, neg };

/// Integer expression tree. No division.
struct Expr {
  ExprKind kind = ExprKind::constant;
  Value value = 0;
  VarId var = kNoVar;
  std::vector<Expr> args;

  static Expr constant(Value v);
  static Expr variable(VarId v);
  static Expr binary(ExprKind k, Expr lhs, Expr rhs);
  static Expr negate(Expr operand);

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };
enum class CondKind : std::uint8_t { truth, falsity, cmp, conj, disj, negation };

struct Cond {
  CondKind kind = CondKind::truth;
  CmpOp op = CmpOp::eq;
  std::vector<Expr> operands;  // cmp: lhs, rhs
  std::vector<Cond> args;      // conj/disj: two, negation: one

  static Cond truth();
  static Cond falsity();
  static Cond compare(CmpOp op, Expr lhs, Expr rhs);
  static Cond conj(Cond a, Cond b);
  static Cond disj(Cond a, Cond b);
  static Cond negation(Cond a);

  friend bool operator==(const Cond&, const Cond&) = default;
};

/// Pushes negations down to the comparisons.
Cond negation_normal_form(const Cond& c, bool negated = false);

CmpOp negate(CmpOp op);

struct Assign {
  VarId var = kNoVar;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Havoc {
  VarId var = kNoVar;
  Value lo = 0;
  Value hi = 0;
  friend bool operator==(const Havoc&, const Havoc&) = default;
};

struct Assume {
  Cond cond;
  friend bool operator==(const Assume&, const Assume&) = default;
};

struct Assert {
  Cond cond;
  AssertId id = 0;
  friend bool operator==(const Assert&, const Assert&) = default;
};

struct Lock {
  MutexId mutex = 0;
  friend bool operator==(const Lock&, const Lock&) = default;
};

struct Unlock {
  MutexId mutex = 0;
  friend bool operator==(const Unlock&, const Unlock&) = default;
};

struct Skip {
  friend bool operator==(const Skip&, const Skip&) = default;
};

/// `assume(guard); var = value;` executed as one atomic step. Produced by
/// mutex desugaring only.
struct GuardedAssign {
  Cond guard;
  VarId var = kNoVar;
  Expr value;
  friend bool operator==(const GuardedAssign&, const GuardedAssign&) = default;
};

using Stmt = std::variant<Assign, Havoc, Assume, Assert, Lock, Unlock, Skip, GuardedAssign>;

/// Structured statement as written in the source text.
struct SrcStmt {
  enum class Kind : std::uint8_t { simple, if_else, while_loop };

  Kind kind = Kind::simple;
  Stmt stmt = Skip{};
  Cond cond;
  std::vector<SrcStmt> then_body;
  std::vector<SrcStmt> else_body;
  SourcePos pos;

  friend bool operator==(const SrcStmt&, const SrcStmt&) = default;
};

}  // namespace absunf::lang
