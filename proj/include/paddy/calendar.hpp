#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace paddy {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD. Throws Parse on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

/// 1 for January 1st.
int day_of_year(const Date& d);
Date add_days(const Date& d, int days);
/// b - a in days.
int days_between(const Date& a, const Date& b);

}  // namespace paddy
