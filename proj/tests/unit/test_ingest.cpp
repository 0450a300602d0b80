#include <gtest/gtest.h>

#include <sstream>

#include "paddy/error.hpp"
#include "paddy/ingest.hpp"

using namespace paddy;
using namespace std::chrono;

namespace {

const Date kDay = year{2010} / October / 14;

std::vector<HalfHourRecord> day_of(const Date& d, int count, double temp, double precip) {
  std::vector<HalfHourRecord> out;
  for (int k = 0; k < count; ++k) out.push_back(HalfHourRecord{sys_days{d} + minutes{30 * k}, temp, precip, {}});
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

}  // namespace

TEST(DailyAggregate, ConstantDay) {
  const auto recs = day_of(kDay, 48, 20.0, 0.5);
  const auto agg = daily_aggregate(recs);
  ASSERT_EQ(agg.days.size(), 1u);
  const auto& w = agg.days[0].weather;
  EXPECT_EQ(w.tmax, 20.0);
  EXPECT_EQ(w.tavg, 20.0);
  EXPECT_EQ(w.tmin, 20.0);
  EXPECT_DOUBLE_EQ(w.precip, 24.0);
  EXPECT_EQ(w.date, kDay);
  EXPECT_EQ(w.day_index, 0);
  EXPECT_TRUE(agg.gaps.empty());
}

TEST(DailyAggregate, LowCoverageDayIsExcludedAndReported) {
  auto recs = day_of(kDay, 48, 20.0, 0.0);
  const auto second = day_of(add_days(kDay, 1), 39, 21.0, 0.0);
  const auto third = day_of(add_days(kDay, 2), 40, 22.0, 0.0);
  recs.insert(recs.end(), second.begin(), second.end());
  recs.insert(recs.end(), third.begin(), third.end());
  const auto agg = daily_aggregate(recs, 40, kDay);
  ASSERT_EQ(agg.days.size(), 2u);
  EXPECT_EQ(agg.days[1].weather.day_index, 2);
  ASSERT_EQ(agg.gaps.size(), 1u);
  EXPECT_EQ(agg.gaps[0].date, add_days(kDay, 1));
  EXPECT_EQ(agg.gaps[0].records, 39);
}

TEST(DailyAggregate, MissingWholeDayIsReported) {
  auto recs = day_of(kDay, 48, 20.0, 0.0);
  const auto later = day_of(add_days(kDay, 3), 48, 20.0, 0.0);
  recs.insert(recs.end(), later.begin(), later.end());
  const auto agg = daily_aggregate(recs);
  EXPECT_EQ(agg.days.size(), 2u);
  ASSERT_EQ(agg.gaps.size(), 2u);
  EXPECT_EQ(agg.gaps[0].records, 0);
  EXPECT_EQ(agg.gaps[1].date, add_days(kDay, 2));
}

TEST(DailyAggregate, CraftedStatistics) {
  std::vector<HalfHourRecord> recs;
  const double temps[4] = {18.0, 25.5, 31.0, 22.5};
  for (int k = 0; k < 48; ++k) {
    HalfHourRecord r{sys_days{kDay} + minutes{30 * k}, temps[k % 4], k == 30 ? 12.25 : (k == 31 ? 0.75 : 0.0), {}};
    if (k % 2 == 0) r.theta = 0.40 + 0.001 * k;
    recs.push_back(r);
  }
  const auto agg = daily_aggregate(recs);
  ASSERT_EQ(agg.days.size(), 1u);
  const auto& d = agg.days[0];
  EXPECT_EQ(d.weather.tmax, 31.0);
  EXPECT_EQ(d.weather.tmin, 18.0);
  EXPECT_DOUBLE_EQ(d.weather.tavg, (18.0 + 25.5 + 31.0 + 22.5) / 4.0);
  EXPECT_DOUBLE_EQ(d.weather.precip, 13.0);
  ASSERT_TRUE(d.theta.has_value());
  // even k = 0..46: mean of 0.001*k is 0.023
  EXPECT_NEAR(*d.theta, 0.423, 1e-12);
}

TEST(DailyAggregate, UnsortedIsOrderingError) {
  auto recs = day_of(kDay, 48, 20.0, 0.0);
  std::swap(recs[3], recs[4]);
  EXPECT_EQ(code_of([&] { daily_aggregate(recs); }), ErrorCode::Ordering);
  recs = day_of(kDay, 2, 20.0, 0.0);
  recs[1].timestamp = recs[0].timestamp;
  EXPECT_EQ(code_of([&] { daily_aggregate(recs); }), ErrorCode::Ordering);
}

TEST(Timestamp, ParseAndFormat) {
  const auto ts = parse_timestamp("2010-10-14T13:30:00");
  EXPECT_EQ(format_timestamp(ts), "2010-10-14T13:30:00");
  EXPECT_EQ(parse_timestamp("2010-10-14 13:30"), ts);
  EXPECT_THROW(parse_timestamp("2010-10-14T25:00"), Error);
  EXPECT_THROW(parse_timestamp("2010/10/14 13:30"), Error);
  EXPECT_THROW(parse_timestamp("2010-02-30T00:00"), Error);
}

TEST(HalfHourlyCsv, ReadWithTheta) {
  std::istringstream in(
      "timestamp_iso8601,temp_c,precip_mm,theta_vwc\n"
      "2010-10-14T00:00:00,21.5,0,0.41\n"
      "2010-10-14T00:30:00,21.0,0.2,\n");
  const auto recs = read_half_hourly_csv(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].theta, 0.41);
  EXPECT_FALSE(recs[1].theta.has_value());
  EXPECT_EQ(recs[1].precip, 0.2);

  std::ostringstream out;
  write_half_hourly_csv(out, recs);
  std::istringstream back(out.str());
  const auto again = read_half_hourly_csv(back);
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again[1].timestamp, recs[1].timestamp);
  EXPECT_EQ(again[0].theta, recs[0].theta);
}

TEST(HalfHourlyCsv, Errors) {
  std::istringstream bad_header("time,temp,precip\n");
  EXPECT_EQ(code_of([&] { read_half_hourly_csv(bad_header); }), ErrorCode::Parse);
  std::istringstream bad_number("timestamp_iso8601,temp_c,precip_mm\n2010-10-14T00:00:00,warm,0\n");
  try {
    read_half_hourly_csv(bad_number, "f.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("f.csv:2"), std::string::npos);
  }
  std::istringstream backwards(
      "timestamp_iso8601,temp_c,precip_mm\n2010-10-14T00:30:00,20,0\n2010-10-14T00:00:00,20,0\n");
  EXPECT_EQ(code_of([&] { read_half_hourly_csv(backwards); }), ErrorCode::Ordering);
}

TEST(DailyCsv, RoundTrip) {
  std::vector<DailyRecord> days;
  for (int i = 0; i < 5; ++i) {
    DailyRecord r;
    r.weather = DailyWeather{i, add_days(kDay, i), 30.1 + i, 24.3, 19.7 - i * 0.1, i * 1.25};
    if (i != 2) r.theta = 0.4 + i / 100.0;
    days.push_back(r);
  }
  std::ostringstream out;
  write_daily_csv(out, days);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "date,day_index,tmax_c,tavg_c,tmin_c,precip_mm,theta_vwc");
  std::istringstream in(out.str());
  const auto back = read_daily_csv(in);
  ASSERT_EQ(back.size(), days.size());
  for (std::size_t i = 0; i < days.size(); ++i) {
    EXPECT_EQ(back[i].weather.tmax, days[i].weather.tmax);
    EXPECT_EQ(back[i].weather.precip, days[i].weather.precip);
    EXPECT_EQ(back[i].weather.date, days[i].weather.date);
    EXPECT_EQ(back[i].theta, days[i].theta);
  }
}

TEST(DailyCsv, RejectsInconsistentRows) {
  std::istringstream in("date,day_index,tmax_c,tavg_c,tmin_c,precip_mm\n2010-10-14,0,20,25,15,0\n");
  EXPECT_EQ(code_of([&] { read_daily_csv(in); }), ErrorCode::Parse);
  std::istringstream short_row("date,day_index,tmax_c,tavg_c,tmin_c,precip_mm\n2010-10-14,0,20,18\n");
  EXPECT_EQ(code_of([&] { read_daily_csv(short_row); }), ErrorCode::Parse);
}
