#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace vtl {

// Calendar month, the sampling period of index series. Wire format "YYYY-MM".
struct Period {
    int months = 0; // months since year 0, January

    static Period ym(int year, int month);
    static Period parse(std::string_view text);

    int year() const { return months / 12; }
    int month() const { return months % 12 + 1; }
    std::string str() const;

    Period operator+(int n) const { return Period{months + n}; }
    Period operator-(int n) const { return Period{months - n}; }
    Period& operator++() { ++months; return *this; }
    int operator-(Period other) const { return months - other.months; }
    auto operator<=>(const Period&) const = default;
};

} // namespace vtl
