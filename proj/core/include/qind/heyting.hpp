#pragma once

// The unit interval under its usual order, viewed as a Heyting algebra.
//
// meet = min, join = max, and a => b is the relative pseudo-complement
// max{c : min(c, a) <= b}, which for a chain is 1 when a <= b and b
// otherwise. Negation is a => 0, so not(not(a)) = 1 for every a > 0.

#include <compare>

namespace qind::qmetric {

class HeytingValue {
 public:
  /// Throws OutOfRange unless 0 <= v <= 1.
  explicit HeytingValue(double v);

  static HeytingValue top() noexcept { return HeytingValue(Unchecked{}, 1.0); }
  static HeytingValue bottom() noexcept { return HeytingValue(Unchecked{}, 0.0); }

  double value() const noexcept { return v_; }

  friend bool operator==(HeytingValue, HeytingValue) = default;
  friend auto operator<=>(HeytingValue a, HeytingValue b) { return a.v_ <=> b.v_; }

 private:
  struct Unchecked {};
  HeytingValue(Unchecked, double v) noexcept : v_(v) {}

  double v_;
};

HeytingValue heyting_meet(HeytingValue a, HeytingValue b) noexcept;
HeytingValue heyting_join(HeytingValue a, HeytingValue b) noexcept;
HeytingValue heyting_implies(HeytingValue a, HeytingValue b) noexcept;
HeytingValue heyting_not(HeytingValue a) noexcept;

// Raw-double overloads; throw OutOfRange on inputs outside [0, 1].
HeytingValue heyting_meet(double a, double b);
HeytingValue heyting_join(double a, double b);
HeytingValue heyting_implies(double a, double b);
HeytingValue heyting_not(double a);

}  // namespace qind::qmetric
