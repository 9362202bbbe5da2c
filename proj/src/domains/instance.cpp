#include "absunf/domains/instance.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace absunf::domains {

bool CollectingInstance::leq(const Element& a, const Element& b) const {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ConcreteElement CollectingInstance::meet(const Element& a, const Element& b) const {
  ConcreteElement r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

std::size_t CollectingInstance::hash(const Element& d) const {
  std::size_t h = d.size();
  lang::ConcreteStateHash hs;
  for (const auto& s : d) h = h * 1099511628211ULL ^ hs(s);
  return h;
}

std::string CollectingInstance::describe(const Element& d) const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& s : d) {
    os << (first ? "" : ", ") << "<";
    first = false;
    for (std::size_t v = 0; v < s.vals.size(); ++v)
      os << (v ? ", " : "") << p_->var(static_cast<lang::VarId>(v)).name << " -> " << s.vals[v];
    os << ">";
  }
  os << "}";
  return os.str();
}

std::string FunctionInstance::describe(const Element& d) const {
  if (d.is_bottom()) return "bottom";
  std::ostringstream os;
  for (const auto& [locs, env] : d.entries()) {
    os << "<";
    for (std::size_t v = 0; v < env.size(); ++v) os << (v ? ", " : "") << "v" << v << " -> " << to_string(env[v]);
    os << ">";
  }
  return os.str();
}

}  // namespace absunf::domains
