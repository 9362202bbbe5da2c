#include "absunf/lang/semantics.hpp"

#include <functional>
#include <stdexcept>

namespace absunf::lang {

namespace {

template <class Op>
Value checked(Op op, Value a, Value b) {
  Value r = 0;
  if (op(a, b, &r)) throw std::overflow_error("integer overflow in concrete evaluation");
  return r;
}

bool add_ovf(Value a, Value b, Value* r) { return __builtin_add_overflow(a, b, r); }
bool sub_ovf(Value a, Value b, Value* r) { return __builtin_sub_overflow(a, b, r); }
bool mul_ovf(Value a, Value b, Value* r) { return __builtin_mul_overflow(a, b, r); }

bool compare(CmpOp op, Value a, Value b) {
  switch (op) {
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::gt: return a > b;
    case CmpOp::ge: return a >= b;
  }
  return false;
}

void require_desugared(const Program& p) {
  if (!p.desugared() && !p.mutexes().empty())
    throw std::logic_error("concrete semantics requires a desugared program");
}

}  // namespace

std::size_t ConcreteStateHash::operator()(const ConcreteState& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (auto l : s.locs) mix(std::hash<LocId>{}(l));
  for (auto v : s.vals) mix(std::hash<Value>{}(v));
  return h;
}

Value eval(const Expr& e, std::span<const Value> vals) {
  switch (e.kind) {
    case ExprKind::constant: return e.value;
    case ExprKind::variable: return vals[e.var];
    case ExprKind::add: return checked(add_ovf, eval(e.args[0], vals), eval(e.args[1], vals));
    case ExprKind::sub: return checked(sub_ovf, eval(e.args[0], vals), eval(e.args[1], vals));
    case ExprKind::mul: return checked(mul_ovf, eval(e.args[0], vals), eval(e.args[1], vals));
    case ExprKind::neg: return checked(sub_ovf, Value{0}, eval(e.args[0], vals));
  }
  return 0;
}

bool eval(const Cond& c, std::span<const Value> vals) {
  switch (c.kind) {
    case CondKind::truth: return true;
    case CondKind::falsity: return false;
    case CondKind::cmp: return compare(c.op, eval(c.operands[0], vals), eval(c.operands[1], vals));
    case CondKind::conj: return eval(c.args[0], vals) && eval(c.args[1], vals);
    case CondKind::disj: return eval(c.args[0], vals) || eval(c.args[1], vals);
    case CondKind::negation: return !eval(c.args[0], vals);
  }
  return false;
}

ConcreteState initial_state(const Program& p) {
  ConcreteState s;
  for (const auto& t : p.threads()) s.locs.push_back(t.entry);
  for (const auto& v : p.vars()) s.vals.push_back(v.init);
  return s;
}

bool is_enabled(const Program& p, const ConcreteState& s, EdgeId id) {
  require_desugared(p);
  const Edge& e = p.edge(id);
  if (s.locs.at(e.thread) != e.src) return false;
  return std::visit(
      [&](const auto& st) -> bool {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, Assume>) return eval(st.cond, s.vals);
        else if constexpr (std::is_same_v<T, GuardedAssign>) return eval(st.guard, s.vals);
        else return true;
      },
      e.stmt);
}

std::vector<EdgeId> enabled(const Program& p, const ConcreteState& s) {
  std::vector<EdgeId> out;
  for (ThreadId t = 0; t < p.thread_count(); ++t) {
    for (EdgeId e : p.out_edges(t, s.locs.at(t))) {
      if (is_enabled(p, s, e)) out.push_back(e);
    }
  }
  return out;
}

std::vector<ConcreteState> concrete_step(const Program& p, const ConcreteState& s, EdgeId id) {
  if (!is_enabled(p, s, id)) throw std::logic_error("edge not enabled at state");
  const Edge& e = p.edge(id);
  ConcreteState next = s;
  next.locs[e.thread] = e.dst;
  std::vector<ConcreteState> out;
  std::visit(
      [&](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, Assign>) {
          next.vals[st.var] = eval(st.value, s.vals);
          out.push_back(std::move(next));
        } else if constexpr (std::is_same_v<T, GuardedAssign>) {
          next.vals[st.var] = eval(st.value, s.vals);
          out.push_back(std::move(next));
        } else if constexpr (std::is_same_v<T, Havoc>) {
          out.reserve(static_cast<std::size_t>(st.hi - st.lo + 1));
          for (Value v = st.lo;; ++v) {
            next.vals[st.var] = v;
            out.push_back(next);
            if (v == st.hi) break;
          }
        } else {
          out.push_back(std::move(next));
        }
      },
      e.stmt);
  return out;
}

bool violates_assert(const Program& p, const ConcreteState& s, EdgeId id) {
  const auto* a = std::get_if<Assert>(&p.edge(id).stmt);
  return a != nullptr && s.locs.at(p.edge(id).thread) == p.edge(id).src && !eval(a->cond, s.vals);
}

}  // namespace absunf::lang
