#pragma once

#include <limits>
#include <optional>
#include <string>

#include "absunf/lang/syntax.hpp"

namespace absunf::domains {

using lang::Value;

/// Integer interval with optional infinite bounds. The extreme int64 values
/// stand for the infinities, so arithmetic saturates instead of wrapping.
/// An empty interval is never represented; operations that could produce
/// one return std::nullopt.
struct Interval {
  static constexpr Value kNegInf = std::numeric_limits<Value>::min();
  static constexpr Value kPosInf = std::numeric_limits<Value>::max();

  Value lo = kNegInf;
  Value hi = kPosInf;

  static Interval top() { return {}; }
  static Interval point(Value v) { return {v, v}; }
  static Interval of(Value lo, Value hi) { return {lo, hi}; }

  bool contains(Value v) const { return lo <= v && v <= hi; }
  bool is_point() const { return lo == hi; }
  bool lo_finite() const { return lo != kNegInf; }
  bool hi_finite() const { return hi != kPosInf; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

bool leq(const Interval& a, const Interval& b);
Interval join(const Interval& a, const Interval& b);
std::optional<Interval> meet(const Interval& a, const Interval& b);
/// Standard widening: bounds that moved go to the matching infinity.
Interval widen(const Interval& a, const Interval& b);

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval neg(const Interval& a);

/// Tightest interval holding every x with c*x in t, or nullopt. c != 0.
std::optional<Interval> div_exact(const Interval& t, Value c);

std::string to_string(const Interval& i);

}  // namespace absunf::domains
