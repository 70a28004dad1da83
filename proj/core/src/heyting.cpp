#include "qind/heyting.hpp"

#include <algorithm>
#include <sstream>

#include "qind/error.hpp"

namespace qind::qmetric {

HeytingValue::HeytingValue(double v) : v_(v) {
  // Written so that NaN fails too.
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "semantic value " << v << " is outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
}

HeytingValue heyting_meet(HeytingValue a, HeytingValue b) noexcept { return std::min(a, b); }

HeytingValue heyting_join(HeytingValue a, HeytingValue b) noexcept { return std::max(a, b); }

HeytingValue heyting_implies(HeytingValue a, HeytingValue b) noexcept {
  return a <= b ? HeytingValue::top() : b;
}

HeytingValue heyting_not(HeytingValue a) noexcept {
  return heyting_implies(a, HeytingValue::bottom());
}

HeytingValue heyting_meet(double a, double b) {
  return heyting_meet(HeytingValue(a), HeytingValue(b));
}

HeytingValue heyting_join(double a, double b) {
  return heyting_join(HeytingValue(a), HeytingValue(b));
}

HeytingValue heyting_implies(double a, double b) {
  return heyting_implies(HeytingValue(a), HeytingValue(b));
}

HeytingValue heyting_not(double a) { return heyting_not(HeytingValue(a)); }

}  // namespace qind::qmetric
