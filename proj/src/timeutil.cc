#include "sealbid/timeutil.h"

#include <ctime>
#include <cstdio>

#include "sealbid/error.h"

namespace sealbid {

std::string FormatRfc3339(Timestamp t) {
  std::time_t raw = static_cast<std::time_t>(t.time_since_epoch().count());
  std::tm tm{};
  gmtime_r(&raw, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Timestamp ParseRfc3339(std::string_view text) {
  int year, month, day, hour, minute, second;
  char tail = 0;
  std::string s(text);
  if (s.size() != 20 ||
      std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &year, &month, &day, &hour, &minute,
                  &second, &tail) != 7 ||
      tail != 'Z') {
    throw Error(ErrorCode::kFormat, "timestamp must look like 2024-01-31T12:00:00Z, got '" + s + "'");
  }
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year(year), std::chrono::month(static_cast<unsigned>(month)),
                     std::chrono::day(static_cast<unsigned>(day))};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
    throw Error(ErrorCode::kFormat, "timestamp out of range: '" + s + "'");
  }
  return sys_days(ymd) + hours(hour) + minutes(minute) + seconds(second);
}

Timestamp SystemClock::Now() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace sealbid
