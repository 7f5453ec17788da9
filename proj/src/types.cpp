#include "mgarch/types.hpp"

#include <charconv>
#include <cmath>

namespace mgarch {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap(y)) return 29;
    return lens[m - 1];
}

}  // namespace

bool Date::valid() const {
    if (year < 1583 || year > 9999) return false;
    if (month < 1 || month > 12) return false;
    return day >= 1 && day <= days_in_month(year, month);
}

// Howard Hinnant's days_from_civil.
long Date::serial() const {
    long y = year;
    const unsigned m = static_cast<unsigned>(month);
    const unsigned d = static_cast<unsigned>(day);
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

Date Date::from_serial(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int Date::weekday() const {
    const long s = serial();
    return static_cast<int>(((s % 7) + 11) % 7);  // 1970-01-01 was a Thursday
}

std::string Date::str() const {
    char buf[11];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [](std::string_view v, int& out) {
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        return ec == std::errc{} && p == v.data() + v.size();
    };
    Date d;
    if (!digits(text.substr(0, 4), d.year) || !digits(text.substr(5, 2), d.month) ||
        !digits(text.substr(8, 2), d.day))
        return std::nullopt;
    if (!d.valid()) return std::nullopt;
    return d;
}

Date Date::next_business_day() const {
    Date d = from_serial(serial() + 1);
    while (d.weekday() == 0 || d.weekday() == 6) d = from_serial(d.serial() + 1);
    return d;
}

std::vector<Date> business_days(Date origin, std::size_t n) {
    std::vector<Date> out;
    out.reserve(n);
    Date d = origin;
    if (d.weekday() == 0 || d.weekday() == 6) d = d.next_business_day();
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(d);
        d = d.next_business_day();
    }
    return out;
}

std::string to_string(Unit u) { return u == Unit::Percent ? "percent" : "decimal"; }

void ReturnSeries::validate() const {
    if (values.size() < 2) throw std::invalid_argument("series '" + name + "': length < 2");
    if (static_cast<Eigen::Index>(dates.size()) != values.size())
        throw std::invalid_argument("series '" + name + "': dates/values length mismatch");
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("series '" + name + "': non-finite value at row " +
                                        std::to_string(i));
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i]))
            throw std::invalid_argument("series '" + name + "': non-monotone dates at " +
                                        dates[i].str());
}

ReturnSeries convert_scale(const ReturnSeries& s, Unit target) {
    if (s.unit == target) return s;
    ReturnSeries out = s;
    out.unit = target;
    out.values = target == Unit::Percent ? (s.values * 100.0).eval() : (s.values / 100.0).eval();
    return out;
}

ReturnSeries AlignedPanel::series(Eigen::Index i) const {
    return ReturnSeries{names.at(static_cast<std::size_t>(i)), dates, values.col(i), Unit::Percent};
}

MatX2 AlignedPanel::pair(Eigen::Index i, Eigen::Index j) const {
    MatX2 out(T(), 2);
    out.col(0) = values.col(i);
    out.col(1) = values.col(j);
    return out;
}

void AlignedPanel::validate() const {
    if (width() < 2) throw std::invalid_argument("panel must hold at least two series");
    if (static_cast<Eigen::Index>(names.size()) != width())
        throw std::invalid_argument("panel names/columns mismatch");
    if (static_cast<Eigen::Index>(dates.size()) != T())
        throw std::invalid_argument("panel dates/rows mismatch");
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i])) throw std::invalid_argument("panel dates non-monotone");
    if (!values.allFinite()) throw std::invalid_argument("panel contains non-finite values");
}

}  // namespace mgarch
