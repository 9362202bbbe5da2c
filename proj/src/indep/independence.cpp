#include "absunf/indep/independence.hpp"

#include <stdexcept>

namespace absunf::indep {

namespace {

void collect(const lang::Program& p, const lang::Expr& e, std::set<VarId>& out) {
  if (e.kind == lang::ExprKind::variable && p.var(e.var).is_global()) out.insert(e.var);
  for (const auto& a : e.args) collect(p, a, out);
}

void collect(const lang::Program& p, const lang::Cond& c, std::set<VarId>& out) {
  for (const auto& o : c.operands) collect(p, o, out);
  for (const auto& a : c.args) collect(p, a, out);
}

bool overlaps(const std::set<VarId>& a, const std::set<VarId>& b) {
  for (auto v : a)
    if (b.count(v)) return true;
  return false;
}

}  // namespace

ActionSet actions_of(const lang::Program& p, const lang::Edge& e) {
  ActionSet s;
  auto write = [&](VarId v) {
    if (p.var(v).is_global()) s.writes.insert(v);
  };
  std::visit(
      [&](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, lang::Assign>) {
          collect(p, st.value, s.reads);
          write(st.var);
        } else if constexpr (std::is_same_v<T, lang::Havoc>) {
          write(st.var);
        } else if constexpr (std::is_same_v<T, lang::Assume> || std::is_same_v<T, lang::Assert>) {
          collect(p, st.cond, s.reads);
        } else if constexpr (std::is_same_v<T, lang::GuardedAssign>) {
          collect(p, st.guard, s.reads);
          collect(p, st.value, s.reads);
          write(st.var);
        } else if constexpr (std::is_same_v<T, lang::Lock> || std::is_same_v<T, lang::Unlock>) {
          throw std::logic_error("actions_of requires a desugared program");
        }
      },
      e.stmt);
  return s;
}

const char* mode_name(Mode m) { return m == Mode::sync ? "sync" : "heap"; }

void IndepRelation::add(std::size_t f, std::size_t g) {
  if (f == g) throw std::invalid_argument("independence must be irreflexive");
  if (!bits_[f * n_ + g]) ++pairs_;
  bits_[f * n_ + g] = 1;
  bits_[g * n_ + f] = 1;
}

std::vector<std::pair<std::size_t, std::size_t>> IndepRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t f = 0; f < n_; ++f)
    for (std::size_t g = f + 1; g < n_; ++g)
      if (independent(f, g)) out.emplace_back(f, g);
  return out;
}

IndepRelation build_independence(const lang::Program& p, Mode mode) {
  std::vector<ActionSet> acts;
  for (const auto& e : p.edges()) {
    ActionSet a = actions_of(p, e);
    if (mode == Mode::sync) {
      std::erase_if(a.reads, [&](VarId v) { return !p.var(v).ghost; });
      std::erase_if(a.writes, [&](VarId v) { return !p.var(v).ghost; });
    }
    acts.push_back(std::move(a));
  }
  IndepRelation r(p.edge_count(), mode);
  for (EdgeId f = 0; f < p.edge_count(); ++f) {
    for (EdgeId g = f + 1; g < p.edge_count(); ++g) {
      if (p.edge(f).thread == p.edge(g).thread) continue;
      const auto &a = acts[f], &b = acts[g];
      bool conflict = overlaps(a.writes, b.reads) || overlaps(a.writes, b.writes) || overlaps(b.writes, a.reads);
      if (!conflict) r.add(f, g);
    }
  }
  return r;
}

Partition classify_transformers(const std::vector<ThreadId>& thread_of, std::size_t threads, const IndepRelation& r) {
  Partition part;
  part.local.resize(threads);
  part.global.resize(threads);
  const std::size_t n = thread_of.size();
  for (std::size_t f = 0; f < n; ++f) {
    bool local = true;
    for (std::size_t g = 0; g < n && local; ++g)
      if (thread_of[g] != thread_of[f] && r.dependent(f, g)) local = false;
    part.is_local.push_back(local);
    (local ? part.local : part.global)[thread_of[f]].push_back(f);
  }
  return part;
}

Partition classify_transformers(const lang::Program& p, const IndepRelation& r) {
  std::vector<ThreadId> owner;
  for (const auto& e : p.edges()) owner.push_back(e.thread);
  return classify_transformers(owner, p.thread_count(), r);
}

}  // namespace absunf::indep
