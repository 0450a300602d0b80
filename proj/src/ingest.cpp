#include "paddy/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "paddy/error.hpp"
#include "paddy/text.hpp"

namespace paddy {

namespace {

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

std::vector<std::string_view> expect_header(std::string_view header, std::span<const std::string_view> required,
                                            std::string_view optional, const std::string& source,
                                            bool& has_optional) {
  auto cols = text::split_csv(header);
  for (auto& c : cols) c = text::trim(c);
  if (!cols.empty() && cols[0].starts_with("\xEF\xBB\xBF")) cols[0].remove_prefix(3);
  const bool exact = cols.size() == required.size() || cols.size() == required.size() + 1;
  bool ok = exact && std::equal(required.begin(), required.end(), cols.begin());
  has_optional = ok && cols.size() == required.size() + 1;
  if (has_optional && cols.back() != optional) ok = false;
  if (!ok) {
    std::string expected;
    for (auto r : required) expected += std::string(r) + ",";
    expected += "[" + std::string(optional) + "]";
    fail(ErrorCode::Parse, where(source, 1) + ": unexpected header, expected " + expected);
  }
  return cols;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

Timestamp parse_timestamp(std::string_view s) {
  s = text::trim(s);
  if (s.size() < 16 || (s[10] != 'T' && s[10] != ' ') || s[13] != ':')
    fail(ErrorCode::Parse, "malformed timestamp '" + std::string(s) + "'");
  const Date d = parse_date(s.substr(0, 10));
  const auto hh = text::parse_int(s.substr(11, 2), "timestamp hour");
  const auto mm = text::parse_int(s.substr(14, 2), "timestamp minute");
  long long ss = 0;
  if (s.size() > 16) {
    if (s.size() != 19 || s[16] != ':') fail(ErrorCode::Parse, "malformed timestamp '" + std::string(s) + "'");
    ss = text::parse_int(s.substr(17, 2), "timestamp second");
  }
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59)
    fail(ErrorCode::Parse, "timestamp out of range '" + std::string(s) + "'");
  using namespace std::chrono;
  return sys_days{d} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day = floor<days>(ts);
  const auto secs = (ts - day).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "T%02lld:%02lld:%02lld", static_cast<long long>(secs / 3600),
                static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
  return format_date(year_month_day{day}) + buf;
}

AggregateResult daily_aggregate(std::span<const HalfHourRecord> records, int min_coverage,
                                std::optional<Date> planting) {
  require(min_coverage >= 1 && min_coverage <= kIntervalsPerDay, ErrorCode::InvalidArgument,
          "minimum coverage must be in 1..48");
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp <= records[i - 1].timestamp)
      fail(ErrorCode::Ordering, "record " + std::to_string(i) + " at " + format_timestamp(records[i].timestamp) +
                                    " is not after " + format_timestamp(records[i - 1].timestamp));
  }
  AggregateResult out;
  if (records.empty()) return out;

  using namespace std::chrono;
  const sys_days first_day = floor<days>(records.front().timestamp);
  const Date origin = planting.value_or(year_month_day{first_day});

  sys_days expected = first_day;
  std::size_t i = 0;
  while (i < records.size()) {
    const sys_days day = floor<days>(records[i].timestamp);
    for (; expected < day; expected += days{1}) out.gaps.push_back(DayGap{year_month_day{expected}, 0});
    expected = day + days{1};

    std::size_t j = i;
    double tmax = records[i].temp, tmin = records[i].temp, tsum = 0.0, psum = 0.0, theta_sum = 0.0;
    int theta_n = 0;
    for (; j < records.size() && floor<days>(records[j].timestamp) == day; ++j) {
      const auto& r = records[j];
      require(std::isfinite(r.temp), ErrorCode::InvalidArgument, "non-finite temperature");
      require(std::isfinite(r.precip) && r.precip >= 0.0, ErrorCode::InvalidArgument,
              "precipitation must be non-negative at " + format_timestamp(r.timestamp));
      tmax = std::max(tmax, r.temp);
      tmin = std::min(tmin, r.temp);
      tsum += r.temp;
      psum += r.precip;
      if (r.theta) {
        theta_sum += *r.theta;
        ++theta_n;
      }
    }
    const int count = static_cast<int>(j - i);
    if (count < min_coverage) {
      out.gaps.push_back(DayGap{year_month_day{day}, count});
    } else {
      DailyRecord rec;
      rec.weather.date = year_month_day{day};
      rec.weather.day_index = days_between(origin, rec.weather.date);
      rec.weather.tmax = tmax;
      rec.weather.tmin = tmin;
      rec.weather.tavg = std::clamp(tsum / count, tmin, tmax);
      rec.weather.precip = psum;
      if (theta_n > 0) rec.theta = theta_sum / theta_n;
      out.days.push_back(rec);
    }
    i = j;
  }
  return out;
}

std::vector<HalfHourRecord> read_half_hourly_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Parse, source + ": empty file, header required");
  static constexpr std::string_view kCols[] = {"timestamp_iso8601", "temp_c", "precip_mm"};
  bool has_theta = false;
  expect_header(line, kCols, "theta_vwc", source, has_theta);

  std::vector<HalfHourRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    const std::size_t want = has_theta ? 4 : 3;
    if (f.size() != want)
      fail(ErrorCode::Parse, where(source, lineno) + ": expected " + std::to_string(want) + " fields, got " +
                                 std::to_string(f.size()));
    HalfHourRecord r;
    try {
      r.timestamp = parse_timestamp(f[0]);
    } catch (const Error& e) {
      fail(ErrorCode::Parse, where(source, lineno) + ": " + e.what());
    }
    r.temp = text::parse_double(f[1], where(source, lineno) + " temp_c");
    r.precip = text::parse_double(f[2], where(source, lineno) + " precip_mm");
    if (has_theta && !text::trim(f[3]).empty()) r.theta = text::parse_double(f[3], where(source, lineno) + " theta_vwc");
    if (!out.empty() && r.timestamp <= out.back().timestamp)
      fail(ErrorCode::Ordering, where(source, lineno) + ": timestamps must be strictly increasing");
    out.push_back(r);
  }
  return out;
}

std::vector<HalfHourRecord> read_half_hourly_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_half_hourly_csv(in, path.string());
}

void write_half_hourly_csv(std::ostream& out, std::span<const HalfHourRecord> records) {
  const bool has_theta = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.theta.has_value(); });
  out << "timestamp_iso8601,temp_c,precip_mm" << (has_theta ? ",theta_vwc" : "") << '\n';
  for (const auto& r : records) {
    out << format_timestamp(r.timestamp) << ',' << text::format_double(r.temp) << ','
        << text::format_double(r.precip);
    if (has_theta) out << ',' << (r.theta ? text::format_double(*r.theta) : "");
    out << '\n';
  }
}

std::vector<DailyRecord> read_daily_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Parse, source + ": empty file, header required");
  static constexpr std::string_view kCols[] = {"date", "day_index", "tmax_c", "tavg_c", "tmin_c", "precip_mm"};
  bool has_theta = false;
  expect_header(line, kCols, "theta_vwc", source, has_theta);

  std::vector<DailyRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    const std::size_t want = has_theta ? 7 : 6;
    if (f.size() != want)
      fail(ErrorCode::Parse, where(source, lineno) + ": expected " + std::to_string(want) + " fields, got " +
                                 std::to_string(f.size()));
    const auto at = where(source, lineno);
    DailyRecord r;
    try {
      r.weather.date = parse_date(text::trim(f[0]));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, at + ": " + e.what());
    }
    r.weather.day_index = static_cast<int>(text::parse_int(f[1], at + " day_index"));
    r.weather.tmax = text::parse_double(f[2], at + " tmax_c");
    r.weather.tavg = text::parse_double(f[3], at + " tavg_c");
    r.weather.tmin = text::parse_double(f[4], at + " tmin_c");
    r.weather.precip = text::parse_double(f[5], at + " precip_mm");
    if (has_theta && !text::trim(f[6]).empty()) r.theta = text::parse_double(f[6], at + " theta_vwc");
    try {
      r.weather.validate();
    } catch (const Error& e) {
      fail(ErrorCode::Parse, at + ": " + e.what());
    }
    if (!out.empty() && !(std::chrono::sys_days{r.weather.date} > std::chrono::sys_days{out.back().weather.date}))
      fail(ErrorCode::Ordering, at + ": dates must be strictly increasing");
    out.push_back(r);
  }
  return out;
}

std::vector<DailyRecord> read_daily_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_daily_csv(in, path.string());
}

void write_daily_csv(std::ostream& out, std::span<const DailyRecord> days) {
  const bool has_theta = std::any_of(days.begin(), days.end(), [](const auto& d) { return d.theta.has_value(); });
  out << "date,day_index,tmax_c,tavg_c,tmin_c,precip_mm" << (has_theta ? ",theta_vwc" : "") << '\n';
  for (const auto& d : days) {
    const auto& w = d.weather;
    out << format_date(w.date) << ',' << w.day_index << ',' << text::format_double(w.tmax) << ','
        << text::format_double(w.tavg) << ',' << text::format_double(w.tmin) << ','
        << text::format_double(w.precip);
    if (has_theta) out << ',' << (d.theta ? text::format_double(*d.theta) : "");
    out << '\n';
  }
}

void write_daily_csv(const std::filesystem::path& path, std::span<const DailyRecord> days) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_daily_csv(out, days);
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace paddy
