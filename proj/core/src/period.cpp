#include "vtl/period.hpp"

#include "vtl/errors.hpp"

#include <cctype>
#include <cstdio>

namespace vtl {

Period Period::ym(int year, int month) {
    if (month < 1 || month > 12)
        fail(Errc::parse_error, "month out of range: " + std::to_string(month));
    return Period{year * 12 + (month - 1)};
}

Period Period::parse(std::string_view text) {
    // strict "YYYY-MM"
    if (text.size() != 7 || text[4] != '-')
        fail(Errc::parse_error, "expected YYYY-MM period, got '" + std::string(text) + "'");
    for (int i : {0, 1, 2, 3, 5, 6})
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            fail(Errc::parse_error, "expected YYYY-MM period, got '" + std::string(text) + "'");
    int year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    int month = (text[5] - '0') * 10 + (text[6] - '0');
    if (month < 1 || month > 12)
        fail(Errc::parse_error, "month out of range in '" + std::string(text) + "'");
    return ym(year, month);
}

std::string Period::str() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year(), month());
    return buf;
}

} // namespace vtl
