#ifndef SEALBID_TIMEUTIL_H_
#define SEALBID_TIMEUTIL_H_

#include <chrono>
#include <string>
#include <string_view>

namespace sealbid {

using Timestamp = std::chrono::sys_seconds;

// "YYYY-MM-DDTHH:MM:SSZ", UTC only.
std::string FormatRfc3339(Timestamp t);
Timestamp ParseRfc3339(std::string_view text);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp Now() = 0;
};

class SystemClock : public Clock {
 public:
  Timestamp Now() override;
};

// Logical clock for simulations: returns the set time, optionally ticking
// forward by `step` after every read.
class ManualClock : public Clock {
 public:
  explicit ManualClock(Timestamp start, std::chrono::seconds step = std::chrono::seconds(0))
      : now_(start), step_(step) {}

  Timestamp Now() override {
    Timestamp t = now_;
    now_ += step_;
    return t;
  }

  void Set(Timestamp t) { now_ = t; }
  void Advance(std::chrono::seconds d) { now_ += d; }
  Timestamp Peek() const { return now_; }

 private:
  Timestamp now_;
  std::chrono::seconds step_;
};

}  // namespace sealbid

#endif  // SEALBID_TIMEUTIL_H_
