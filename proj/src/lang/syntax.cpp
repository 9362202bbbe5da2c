#include "absunf/lang/syntax.hpp"

#include <utility>

namespace absunf::lang {

Expr Expr::constant(Value v) {
  Expr e;
  e.kind = ExprKind::constant;
  e.value = v;
  return e;
}

Expr Expr::variable(VarId v) {
  Expr e;
  e.kind = ExprKind::variable;
  e.var = v;
  return e;
}

Expr Expr::binary(ExprKind k, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = k;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::negate(Expr operand) {
  Expr e;
  e.kind = ExprKind::neg;
  e.args.push_back(std::move(operand));
  return e;
}

Cond Cond::truth() { return Cond{}; }

Cond Cond::falsity() {
  Cond c;
  c.kind = CondKind::falsity;
  return c;
}

Cond Cond::compare(CmpOp op, Expr lhs, Expr rhs) {
  Cond c;
  c.kind = CondKind::cmp;
  c.op = op;
  c.operands.push_back(std::move(lhs));
  c.operands.push_back(std::move(rhs));
  return c;
}

Cond Cond::conj(Cond a, Cond b) {
  Cond c;
  c.kind = CondKind::conj;
  c.args.push_back(std::move(a));
  c.args.push_back(std::move(b));
  return c;
}

Cond Cond::disj(Cond a, Cond b) {
  Cond c;
  c.kind = CondKind::disj;
  c.args.push_back(std::move(a));
  c.args.push_back(std::move(b));
  return c;
}

Cond Cond::negation(Cond a) {
  Cond c;
  c.kind = CondKind::negation;
  c.args.push_back(std::move(a));
  return c;
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return CmpOp::ne;
    case CmpOp::ne: return CmpOp::eq;
    case CmpOp::lt: return CmpOp::ge;
    case CmpOp::le: return CmpOp::gt;
    case CmpOp::gt: return CmpOp::le;
    case CmpOp::ge: return CmpOp::lt;
  }
  return op;
}

Cond negation_normal_form(const Cond& c, bool negated) {
  switch (c.kind) {
    case CondKind::truth: return negated ? Cond::falsity() : Cond::truth();
    case CondKind::falsity: return negated ? Cond::truth() : Cond::falsity();
    case CondKind::cmp: {
      Cond out = c;
      if (negated) out.op = negate(c.op);
      return out;
    }
    case CondKind::conj:
    case CondKind::disj: {
      auto a = negation_normal_form(c.args[0], negated);
      auto b = negation_normal_form(c.args[1], negated);
      bool is_conj = (c.kind == CondKind::conj) != negated;
      return is_conj ? Cond::conj(std::move(a), std::move(b)) : Cond::disj(std::move(a), std::move(b));
    }
    case CondKind::negation: return negation_normal_form(c.args[0], !negated);
  }
  return c;
}

}  // namespace absunf::lang
