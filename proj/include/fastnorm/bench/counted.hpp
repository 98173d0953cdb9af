#pragma once

// A double that tallies the operations performed on it.
//
// Running a norm on VectorX<Counted> executes the same arithmetic as on
// VectorXd (bit-identical values) while the thread-local tally records abs,
// comparisons, additions (incl. subtraction), multiplications (incl. division)
// and square roots.

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace fastnorm::bench {

struct OpCount {
  std::uint64_t abs = 0;
  std::uint64_t comp = 0;
  std::uint64_t add = 0;
  std::uint64_t mult = 0;
  std::uint64_t sqrt = 0;

  friend bool operator==(const OpCount&, const OpCount&) = default;
};

inline thread_local OpCount tally;

class Counted {
public:
  Counted() = default;
  Counted(double v) : v_(v) {}  // NOLINT: implicit, like a scalar literal

  double value() const noexcept { return v_; }

  friend Counted operator+(Counted a, Counted b) { ++tally.add; return a.v_ + b.v_; }
  friend Counted operator-(Counted a, Counted b) { ++tally.add; return a.v_ - b.v_; }
  friend Counted operator*(Counted a, Counted b) { ++tally.mult; return a.v_ * b.v_; }
  friend Counted operator/(Counted a, Counted b) { ++tally.mult; return a.v_ / b.v_; }
  friend Counted operator-(Counted a) { return -a.v_; }

  Counted& operator+=(Counted b) { return *this = *this + b; }
  Counted& operator-=(Counted b) { return *this = *this - b; }
  Counted& operator*=(Counted b) { return *this = *this * b; }
  Counted& operator/=(Counted b) { return *this = *this / b; }

  friend bool operator<(Counted a, Counted b) { ++tally.comp; return a.v_ < b.v_; }
  friend bool operator>(Counted a, Counted b) { ++tally.comp; return a.v_ > b.v_; }
  friend bool operator<=(Counted a, Counted b) { ++tally.comp; return a.v_ <= b.v_; }
  friend bool operator>=(Counted a, Counted b) { ++tally.comp; return a.v_ >= b.v_; }
  friend bool operator==(Counted a, Counted b) { ++tally.comp; return a.v_ == b.v_; }
  friend bool operator!=(Counted a, Counted b) { ++tally.comp; return a.v_ != b.v_; }

  friend Counted abs(Counted a) { ++tally.abs; return std::abs(a.v_); }
  friend Counted sqrt(Counted a) { ++tally.sqrt; return std::sqrt(a.v_); }
  friend double value_of(Counted a) { return a.v_; }

private:
  double v_ = 0.0;
};

}  // namespace fastnorm::bench

namespace Eigen {

template <>
struct NumTraits<fastnorm::bench::Counted> : NumTraits<double> {
  using Real = fastnorm::bench::Counted;
  using NonInteger = fastnorm::bench::Counted;
  using Nested = fastnorm::bench::Counted;
  using Literal = fastnorm::bench::Counted;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 1
  };
};

}  // namespace Eigen
