#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>

namespace binet {

/// A coordinate in the half-integer lattice (1/2)Z, stored as twice its
/// value so that shifts by 1/2 are exact integer operations.
class HalfIndex {
 public:
  constexpr HalfIndex() = default;

  static constexpr HalfIndex from_twice(int twice) { return HalfIndex(twice); }
  static constexpr HalfIndex of_int(int n) { return HalfIndex(2 * n); }
  static constexpr HalfIndex half() { return HalfIndex(1); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  // parity separates the Z sublattice from Z* = Z + 1/2
  constexpr bool is_integer() const { return (twice_ & 1) == 0; }
  constexpr bool is_half_odd() const { return (twice_ & 1) != 0; }
  constexpr int floor_int() const {
    return (twice_ >= 0) ? twice_ / 2 : -((-twice_ + 1) / 2);
  }

  constexpr HalfIndex up() const { return HalfIndex(twice_ + 1); }    // n + 1/2
  constexpr HalfIndex down() const { return HalfIndex(twice_ - 1); }  // n - 1/2

  constexpr HalfIndex operator-() const { return HalfIndex(-twice_); }
  constexpr HalfIndex operator+(HalfIndex o) const { return HalfIndex(twice_ + o.twice_); }
  constexpr HalfIndex operator-(HalfIndex o) const { return HalfIndex(twice_ - o.twice_); }

  friend constexpr auto operator<=>(HalfIndex, HalfIndex) = default;

 private:
  explicit constexpr HalfIndex(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfIndex n) {
  if (n.is_integer()) return os << n.twice() / 2;
  return os << n.twice() << "/2";
}

/// A point of the two-dimensional half-integer lattice.
struct LatticePoint {
  HalfIndex n1, n2;

  constexpr bool on_primal() const { return n1.is_integer() && n2.is_integer(); }
  constexpr bool on_dual() const { return n1.is_half_odd() && n2.is_half_odd(); }
  constexpr bool on_binet() const { return on_primal() || on_dual(); }

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint make_point(int twice_n1, int twice_n2) {
  return {HalfIndex::from_twice(twice_n1), HalfIndex::from_twice(twice_n2)};
}

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
  return os << '(' << p.n1 << ',' << p.n2 << ')';
}

/// A point of the three-dimensional half-integer lattice.
struct LatticePoint3 {
  HalfIndex n1, n2, n3;

  constexpr bool on_primal() const {
    return n1.is_integer() && n2.is_integer() && n3.is_integer();
  }
  constexpr bool on_dual() const {
    return n1.is_half_odd() && n2.is_half_odd() && n3.is_half_odd();
  }

  friend constexpr auto operator<=>(const LatticePoint3&, const LatticePoint3&) = default;
};

}  // namespace binet
