#ifndef TEKL_TIME_HPP
#define TEKL_TIME_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tekl {

// Discrete tick on a totally ordered, non-Zeno timeline. What a tick means
// (seconds, minutes, ...) is decided by the trace that uses it.
struct Timestamp {
  std::uint64_t ticks = 0;

  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::uint64_t t) : ticks(t) {}

  auto operator<=>(const Timestamp&) const = default;
};

inline std::string to_string(Timestamp t) { return std::to_string(t.ticks); }

// Derivation window / memory span. Either a finite number of ticks or
// unbounded (perfect recall).
class Window {
 public:
  constexpr Window() = default;
  constexpr explicit Window(std::uint64_t ticks) : ticks_(ticks) {}

  static constexpr Window infinite() {
    Window w;
    w.infinite_ = true;
    return w;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr std::uint64_t ticks() const { return ticks_; }

  // Whether `delta` ticks of recall fit in this window.
  constexpr bool covers(std::uint64_t delta) const {
    return infinite_ || delta <= ticks_;
  }

  // Window left after consuming `delta` ticks. Caller checks covers() first.
  constexpr Window consume(std::uint64_t delta) const {
    if (infinite_) return *this;
    return Window(ticks_ - delta);
  }

  constexpr bool operator==(const Window& o) const {
    return infinite_ == o.infinite_ && (infinite_ || ticks_ == o.ticks_);
  }

  std::uint64_t key() const {
    return infinite_ ? std::numeric_limits<std::uint64_t>::max() : ticks_;
  }

 private:
  std::uint64_t ticks_ = 0;
  bool infinite_ = false;
};

inline std::string to_string(Window w) {
  return w.is_infinite() ? "inf" : std::to_string(w.ticks());
}

enum class BeliefPolicy { Conservative, Susceptible };

inline std::string to_string(BeliefPolicy b) {
  return b == BeliefPolicy::Conservative ? "conservative" : "susceptible";
}

// Framework-level knobs: how long agents remember (omega), how they resolve
// belief conflicts (beta), and the proof-search depth bound.
struct FrameworkParams {
  Window omega = Window::infinite();
  BeliefPolicy beta = BeliefPolicy::Conservative;
  int proof_depth = 64;
  bool strict_history = false;  // use t' < t instead of t' <= t in K/B queries
  bool respect_start = false;   // clamp policy-body time quantifiers to >= start
};

// Strictly increasing set of trace timestamps with the boundary-saturating
// pred/next maps: pred of the first element and next of the last element are
// the element itself.
class TimestampSet {
 public:
  TimestampSet() = default;
  explicit TimestampSet(std::vector<Timestamp> sorted) : ts_(std::move(sorted)) {}

  bool contains(Timestamp t) const {
    return std::binary_search(ts_.begin(), ts_.end(), t);
  }

  Timestamp pred(Timestamp t) const {
    auto it = find(t);
    return it == ts_.begin() ? t : *std::prev(it);
  }

  Timestamp next(Timestamp t) const {
    auto it = find(t);
    return std::next(it) == ts_.end() ? t : *std::next(it);
  }

  Timestamp min() const { return ts_.front(); }
  Timestamp max() const { return ts_.back(); }
  bool empty() const { return ts_.empty(); }
  std::size_t size() const { return ts_.size(); }
  const std::vector<Timestamp>& values() const { return ts_; }

 private:
  std::vector<Timestamp>::const_iterator find(Timestamp t) const {
    auto it = std::lower_bound(ts_.begin(), ts_.end(), t);
    if (it == ts_.end() || *it != t)
      throw std::out_of_range("timestamp " + to_string(t) + " not in trace");
    return it;
  }

  std::vector<Timestamp> ts_;
};

}  // namespace tekl

#endif
