#ifndef BLOCKSCHED_DURATION_HPP
#define BLOCKSCHED_DURATION_HPP

#include <cmath>
#include <compare>

namespace blocksched {

// Time measured in tenths of a minute. Instance data always lands on whole
// ticks, so deterministic sums, maxima and differences are exact in a double.
// Sampled service times and robust appointment times may fall between ticks.
class Duration {
 public:
  constexpr Duration() = default;

  static constexpr Duration from_ticks(double ticks) { return Duration(ticks); }
  static constexpr Duration from_minutes(double minutes) { return Duration(minutes * 10.0); }
  // Input values carry at most one decimal; snap them to the tick grid.
  static constexpr Duration from_decimal(double minutes) {
    const double t = minutes * 10.0;
    return Duration(static_cast<double>(static_cast<long long>(t < 0 ? t - 0.5 : t + 0.5)));
  }

  constexpr double ticks() const { return ticks_; }
  constexpr double minutes() const { return ticks_ / 10.0; }
  bool on_grid() const { return std::floor(ticks_) == ticks_; }

  constexpr Duration& operator+=(Duration o) { ticks_ += o.ticks_; return *this; }
  constexpr Duration& operator-=(Duration o) { ticks_ -= o.ticks_; return *this; }

  friend constexpr Duration operator+(Duration a, Duration b) { return Duration(a.ticks_ + b.ticks_); }
  friend constexpr Duration operator-(Duration a, Duration b) { return Duration(a.ticks_ - b.ticks_); }
  friend constexpr Duration operator*(Duration a, double s) { return Duration(a.ticks_ * s); }
  friend constexpr Duration operator*(double s, Duration a) { return Duration(a.ticks_ * s); }
  friend constexpr double operator/(Duration a, Duration b) { return a.ticks_ / b.ticks_; }

  friend constexpr auto operator<=>(Duration, Duration) = default;
  friend constexpr bool operator==(Duration, Duration) = default;

 private:
  constexpr explicit Duration(double ticks) : ticks_(ticks) {}
  double ticks_ = 0.0;
};

constexpr Duration max(Duration a, Duration b) { return a < b ? b : a; }
constexpr Duration min(Duration a, Duration b) { return b < a ? b : a; }
constexpr Duration positive_part(Duration a) { return a < Duration() ? Duration() : a; }

namespace literals {
constexpr Duration operator""_min(long double m) { return Duration::from_decimal(static_cast<double>(m)); }
constexpr Duration operator""_min(unsigned long long m) { return Duration::from_decimal(static_cast<double>(m)); }
}  // namespace literals

}  // namespace blocksched

#endif
