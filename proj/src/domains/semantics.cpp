#include "absunf/domains/semantics.hpp"

#include <stdexcept>

namespace absunf::domains {

using lang::CmpOp;
using lang::Cond;
using lang::CondKind;
using lang::Expr;
using lang::ExprKind;

Interval eval(const Expr& e, const Env& env) {
  switch (e.kind) {
    case ExprKind::constant: return Interval::point(e.value);
    case ExprKind::variable: return env.at(e.var);
    case ExprKind::add: return add(eval(e.args[0], env), eval(e.args[1], env));
    case ExprKind::sub: return sub(eval(e.args[0], env), eval(e.args[1], env));
    case ExprKind::mul: return mul(eval(e.args[0], env), eval(e.args[1], env));
    case ExprKind::neg: return neg(eval(e.args[0], env));
  }
  return Interval::top();
}

namespace {

constexpr int kConjRounds = 8;

// Restricts `env` so that `e` evaluates inside `target`, pushing the
// constraint down through the expression. False means unsatisfiable.
bool narrow(const Expr& e, const Interval& target, Env& env) {
  auto here = meet(eval(e, env), target);
  if (!here) return false;
  switch (e.kind) {
    case ExprKind::constant: return true;
    case ExprKind::variable: env[e.var] = *here; return true;
    case ExprKind::add: {
      const Expr &a = e.args[0], &b = e.args[1];
      if (!narrow(a, sub(*here, eval(b, env)), env)) return false;
      return narrow(b, sub(*here, eval(a, env)), env);
    }
    case ExprKind::sub: {
      const Expr &a = e.args[0], &b = e.args[1];
      if (!narrow(a, add(*here, eval(b, env)), env)) return false;
      return narrow(b, sub(eval(a, env), *here), env);
    }
    case ExprKind::neg: return narrow(e.args[0], neg(*here), env);
    case ExprKind::mul: {
      for (int k = 0; k < 2; ++k) {
        Interval other = eval(e.args[1 - k], env);
        if (!other.is_point()) continue;
        if (other.lo == 0) return here->contains(0);
        auto q = div_exact(*here, other.lo);
        if (!q) return false;
        return narrow(e.args[k], *q, env);
      }
      return true;
    }
  }
  return true;
}

Interval at_most(Value v) { return {Interval::kNegInf, v}; }
Interval at_least(Value v) { return {v, Interval::kPosInf}; }

Value dec(Value v) { return v == Interval::kNegInf || v == Interval::kPosInf ? v : v - 1; }
Value inc(Value v) { return v == Interval::kNegInf || v == Interval::kPosInf ? v : v + 1; }

bool narrow_cmp(CmpOp op, const Expr& l, const Expr& r, Env& env) {
  const Interval L = eval(l, env), R = eval(r, env);
  switch (op) {
    case CmpOp::eq:
      return narrow(l, R, env) && narrow(r, eval(l, env), env);
    case CmpOp::le:
      return narrow(l, at_most(R.hi), env) && narrow(r, at_least(eval(l, env).lo), env);
    case CmpOp::lt:
      return narrow(l, at_most(dec(R.hi)), env) && narrow(r, at_least(inc(eval(l, env).lo)), env);
    case CmpOp::ge: return narrow_cmp(CmpOp::le, r, l, env);
    case CmpOp::gt: return narrow_cmp(CmpOp::lt, r, l, env);
    case CmpOp::ne: {
      if (L.is_point() && R.is_point()) return L.lo != R.lo;
      auto trim = [&env](const Expr& e, const Interval& E, Value c) {
        if (E.lo == c) return narrow(e, at_least(c + 1), env);
        if (E.hi == c) return narrow(e, at_most(c - 1), env);
        return true;
      };
      if (R.is_point()) return trim(l, L, R.lo);
      if (L.is_point()) return trim(r, R, L.lo);
      return true;
    }
  }
  return true;
}

std::optional<Env> refine_nnf(const Cond& c, Env env) {
  switch (c.kind) {
    case CondKind::truth: return env;
    case CondKind::falsity: return std::nullopt;
    case CondKind::cmp:
      if (!narrow_cmp(c.op, c.operands[0], c.operands[1], env)) return std::nullopt;
      return env;
    case CondKind::conj:
      for (int round = 0; round < kConjRounds; ++round) {
        auto a = refine_nnf(c.args[0], env);
        if (!a) return std::nullopt;
        auto b = refine_nnf(c.args[1], std::move(*a));
        if (!b) return std::nullopt;
        if (*b == env) break;
        env = std::move(*b);
      }
      return env;
    case CondKind::disj: {
      auto a = refine_nnf(c.args[0], env);
      auto b = refine_nnf(c.args[1], env);
      if (!a) return b;
      if (!b) return a;
      return join(*a, *b);
    }
    case CondKind::negation: break;
  }
  throw std::logic_error("condition not in negation normal form");
}

}  // namespace

std::optional<Env> refine(const Cond& c, Env env) { return refine_nnf(lang::negation_normal_form(c), std::move(env)); }

ApplyResult apply_edge(const lang::Program& p, lang::EdgeId id, const AbsElement& d) {
  const lang::Edge& e = p.edge(id);
  ApplyResult r;
  for (const auto& [locs, env] : d.entries()) {
    if (locs.at(e.thread) != e.src) continue;
    std::optional<Env> next = std::visit(
        [&](const auto& st) -> std::optional<Env> {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, lang::Assign>) {
            Env n = env;
            n[st.var] = eval(st.value, env);
            return n;
          } else if constexpr (std::is_same_v<T, lang::Havoc>) {
            Env n = env;
            n[st.var] = Interval::of(st.lo, st.hi);
            return n;
          } else if constexpr (std::is_same_v<T, lang::Assume>) {
            return refine(st.cond, env);
          } else if constexpr (std::is_same_v<T, lang::Assert>) {
            if (refine(Cond::negation(st.cond), env)) r.may_fail = true;
            return env;
          } else if constexpr (std::is_same_v<T, lang::GuardedAssign>) {
            auto n = refine(st.guard, env);
            if (n) (*n)[st.var] = eval(st.value, *n);
            return n;
          } else if constexpr (std::is_same_v<T, lang::Skip>) {
            return env;
          } else {
            throw std::logic_error("abstract semantics requires a desugared program");
          }
        },
        e.stmt);
    if (!next) continue;
    LocVec to = locs;
    to[e.thread] = e.dst;
    r.out.join_in(to, *next);
  }
  return r;
}

ConcreteElement collecting_apply(const lang::Program& p, lang::EdgeId e, const ConcreteElement& s) {
  ConcreteElement out;
  for (const auto& st : s) {
    if (!lang::is_enabled(p, st, e)) continue;
    for (auto& n : lang::concrete_step(p, st, e)) out.insert(std::move(n));
  }
  return out;
}

}  // namespace absunf::domains
