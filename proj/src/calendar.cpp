#include "paddy/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "paddy/error.hpp"

namespace paddy {

namespace {

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
  int v = 0;
  const char* first = text.data() + pos;
  const char* last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) fail(ErrorCode::Parse, "malformed date '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    fail(ErrorCode::Parse, "malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  const int y = parse_field(text, 0, 4, text);
  const int m = parse_field(text, 5, 2, text);
  const int d = parse_field(text, 8, 2, text);
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) fail(ErrorCode::Parse, "invalid calendar date '" + std::string(text) + "'");
  return date;
}

std::string format_date(const Date& d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

int day_of_year(const Date& d) {
  using namespace std::chrono;
  const sys_days jan1 = year_month_day{d.year(), January, day{1}};
  return static_cast<int>((sys_days{d} - jan1).count()) + 1;
}

Date add_days(const Date& d, int days) {
  return std::chrono::sys_days{d} + std::chrono::days{days};
}

int days_between(const Date& a, const Date& b) {
  return static_cast<int>((std::chrono::sys_days{b} - std::chrono::sys_days{a}).count());
}

}  // namespace paddy
