#pragma once

// Small hand-written analyses over two variables x (slot 0) and y (slot 1).

#include "absunf/domains/instance.hpp"
#include "absunf/indep/independence.hpp"

namespace examples {

using absunf::domains::AbsElement;
using absunf::domains::Env;
using absunf::domains::FunctionInstance;
using absunf::domains::Interval;

inline AbsElement xy(Interval x, Interval y) { return AbsElement::single({0, 0}, Env{x, y}); }

inline FunctionInstance::Fn map_env(std::function<void(Env&)> g) {
  return [g](const AbsElement& d) {
    AbsElement r;
    for (auto [locs, env] : d.entries()) {
      g(env);
      r.join_in(locs, env);
    }
    return r;
  };
}

/// t1: x = 2 and t2: y = 7 with deliberately imprecise transformers.
inline FunctionInstance breaks_independence() {
  auto f1 = map_env([](Env& e) { e[0] = {2, 4}; });
  auto f2 = map_env([](Env& e) { e[1] = e[0].contains(3) ? Interval{7, 9} : Interval{6, 8}; });
  return FunctionInstance(xy({0, 0}, {0, 0}), {f1, f2}, {0, 1});
}

/// t1: x = 2 and t2: x = 3, both abstracted to x in [2,3].
inline FunctionInstance creates_independence() {
  auto f = map_env([](Env& e) { e[0] = {2, 3}; });
  return FunctionInstance(AbsElement::single({0, 0}, Env{{0, 0}}), {f, f}, {0, 1});
}

inline absunf::indep::IndepRelation both_ways() {
  absunf::indep::IndepRelation r(2, absunf::indep::Mode::heap);
  r.add(0, 1);
  return r;
}

}  // namespace examples
