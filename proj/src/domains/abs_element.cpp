#include "absunf/domains/abs_element.hpp"

#include <sstream>
#include <stdexcept>

namespace absunf::domains {

namespace {

void check_width(const Env& a, const Env& b) {
  if (a.size() != b.size()) throw std::invalid_argument("environments of different programs");
}

}  // namespace

bool leq(const Env& a, const Env& b) {
  check_width(a, b);
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!leq(a[v], b[v])) return false;
  return true;
}

Env join(const Env& a, const Env& b) {
  check_width(a, b);
  Env r(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) r[v] = join(a[v], b[v]);
  return r;
}

std::optional<Env> meet(const Env& a, const Env& b) {
  check_width(a, b);
  Env r(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) {
    auto m = meet(a[v], b[v]);
    if (!m) return std::nullopt;
    r[v] = *m;
  }
  return r;
}

Env widen(const Env& a, const Env& b) {
  check_width(a, b);
  Env r(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) r[v] = widen(a[v], b[v]);
  return r;
}

AbsElement AbsElement::single(LocVec locs, Env env) {
  AbsElement a;
  a.entries_.emplace(std::move(locs), std::move(env));
  return a;
}

const Env* AbsElement::find(const LocVec& locs) const {
  auto it = entries_.find(locs);
  return it == entries_.end() ? nullptr : &it->second;
}

bool AbsElement::join_in(const LocVec& locs, const Env& env) {
  auto [it, inserted] = entries_.try_emplace(locs, env);
  if (inserted) return true;
  Env j = join(it->second, env);
  if (j == it->second) return false;
  it->second = std::move(j);
  return true;
}

std::size_t AbsElement::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [locs, env] : entries_) {
    for (auto l : locs) mix(l);
    for (const auto& i : env) {
      mix(static_cast<std::uint64_t>(i.lo));
      mix(static_cast<std::uint64_t>(i.hi));
    }
    mix(0xff);
  }
  return h;
}

bool leq(const AbsElement& a, const AbsElement& b) {
  for (const auto& [locs, env] : a.entries()) {
    const Env* other = b.find(locs);
    if (other == nullptr || !leq(env, *other)) return false;
  }
  return true;
}

AbsElement join(const AbsElement& a, const AbsElement& b) {
  AbsElement r = a;
  for (const auto& [locs, env] : b.entries()) r.join_in(locs, env);
  return r;
}

AbsElement meet(const AbsElement& a, const AbsElement& b) {
  AbsElement r;
  for (const auto& [locs, env] : a.entries()) {
    const Env* other = b.find(locs);
    if (other == nullptr) continue;
    if (auto m = meet(env, *other)) r.set(locs, std::move(*m));
  }
  return r;
}

AbsElement widen(const AbsElement& a, const AbsElement& b) {
  AbsElement r = a;
  for (const auto& [locs, env] : b.entries()) {
    const Env* old = a.find(locs);
    r.set(locs, old == nullptr ? env : widen(*old, env));
  }
  return r;
}

bool contains(const AbsElement& a, const lang::ConcreteState& s) {
  const Env* env = a.find(s.locs);
  if (env == nullptr || env->size() != s.vals.size()) return false;
  for (std::size_t v = 0; v < env->size(); ++v)
    if (!(*env)[v].contains(s.vals[v])) return false;
  return true;
}

AbsElement initial_element(const lang::Program& p) {
  auto s = lang::initial_state(p);
  Env env;
  for (auto v : s.vals) env.push_back(Interval::point(v));
  return AbsElement::single(s.locs, std::move(env));
}

std::string to_string(const lang::Program& p, const Env& env) {
  std::ostringstream os;
  os << "<";
  for (std::size_t v = 0; v < env.size(); ++v) {
    if (v) os << ", ";
    os << p.var(static_cast<lang::VarId>(v)).name << " -> " << to_string(env[v]);
  }
  os << ">";
  return os.str();
}

std::string to_string(const lang::Program& p, const AbsElement& a) {
  if (a.is_bottom()) return "bottom";
  std::ostringstream os;
  bool first = true;
  for (const auto& [locs, env] : a.entries()) {
    if (!first) os << "\n";
    first = false;
    os << "(";
    for (std::size_t t = 0; t < locs.size(); ++t) os << (t ? "," : "") << locs[t];
    os << ") " << to_string(p, env);
  }
  return os.str();
}

}  // namespace absunf::domains
