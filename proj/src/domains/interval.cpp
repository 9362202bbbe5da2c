#include "absunf/domains/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace absunf::domains {

namespace {

using Wide = __int128;
constexpr Wide kWideInf = Wide{1} << 100;

Wide widen_bound(Value v) {
  if (v == Interval::kNegInf) return -kWideInf;
  if (v == Interval::kPosInf) return kWideInf;
  return v;
}

// Lower bounds never become +inf and upper bounds never -inf.
Value narrow_lo(Wide x) {
  if (x <= Interval::kNegInf) return Interval::kNegInf;
  if (x >= Interval::kPosInf) return Interval::kPosInf - 1;
  return static_cast<Value>(x);
}

Value narrow_hi(Wide x) {
  if (x >= Interval::kPosInf) return Interval::kPosInf;
  if (x <= Interval::kNegInf) return Interval::kNegInf + 1;
  return static_cast<Value>(x);
}

Wide wide_mul(Wide a, Wide b) {
  if (a == 0 || b == 0) return 0;
  const bool negative = (a < 0) != (b < 0);
  if (a == kWideInf || a == -kWideInf || b == kWideInf || b == -kWideInf) return negative ? -kWideInf : kWideInf;
  return a * b;
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

}  // namespace

bool leq(const Interval& a, const Interval& b) { return b.lo <= a.lo && a.hi <= b.hi; }

Interval join(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

std::optional<Interval> meet(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) return std::nullopt;
  return r;
}

Interval widen(const Interval& a, const Interval& b) {
  return {b.lo < a.lo ? Interval::kNegInf : a.lo, b.hi > a.hi ? Interval::kPosInf : a.hi};
}

Interval add(const Interval& a, const Interval& b) {
  return {narrow_lo(widen_bound(a.lo) + widen_bound(b.lo)), narrow_hi(widen_bound(a.hi) + widen_bound(b.hi))};
}

Interval sub(const Interval& a, const Interval& b) { return add(a, neg(b)); }

Interval neg(const Interval& a) { return {narrow_lo(-widen_bound(a.hi)), narrow_hi(-widen_bound(a.lo))}; }

Interval mul(const Interval& a, const Interval& b) {
  const Wide c[4] = {wide_mul(widen_bound(a.lo), widen_bound(b.lo)), wide_mul(widen_bound(a.lo), widen_bound(b.hi)),
                     wide_mul(widen_bound(a.hi), widen_bound(b.lo)), wide_mul(widen_bound(a.hi), widen_bound(b.hi))};
  return {narrow_lo(*std::min_element(c, c + 4)), narrow_hi(*std::max_element(c, c + 4))};
}

std::optional<Interval> div_exact(const Interval& t, Value c) {
  if (c == 0) throw std::invalid_argument("div_exact by zero");
  Wide lo = widen_bound(t.lo), hi = widen_bound(t.hi);
  if (c < 0) {
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
    c = -c;
  }
  Wide rlo = lo == -kWideInf ? -kWideInf : ceil_div(lo, c);
  Wide rhi = hi == kWideInf ? kWideInf : floor_div(hi, c);
  if (rlo > rhi) return std::nullopt;
  return Interval{narrow_lo(rlo), narrow_hi(rhi)};
}

std::string to_string(const Interval& i) {
  std::string lo = i.lo_finite() ? std::to_string(i.lo) : "-inf";
  std::string hi = i.hi_finite() ? std::to_string(i.hi) : "+inf";
  return "[" + lo + "," + hi + "]";
}

}  // namespace absunf::domains
