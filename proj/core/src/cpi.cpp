#include "vtl/cpi.hpp"

#include "vtl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vtl {

namespace {

void validate(const std::vector<CpiSeries::Obs>& obs) {
    if (obs.empty())
        fail(Errc::parse_error, "CPI series has no observations");
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!(obs[i].value > 0.0))
            fail(Errc::parse_error,
                 "CPI value must be positive at " + obs[i].period.str());
        if (i > 0 && obs[i].period <= obs[i - 1].period)
            fail(Errc::parse_error,
                 "CPI periods must be strictly ascending at " + obs[i].period.str());
    }
}

} // namespace

CpiSeries::CpiSeries(std::vector<Obs> observations, Period base)
    : obs_(std::move(observations)), base_(base) {
    validate(obs_);
}

CpiSeries::CpiSeries(std::vector<Obs> observations)
    : obs_(std::move(observations)), base_{} {
    validate(obs_);
    base_ = obs_.front().period;
}

CpiSeries CpiSeries::constant_rate(Period start, int count, double annual_rate,
                                   int periods_per_year, double base_value) {
    if (count < 1)
        fail(Errc::parse_error, "constant_rate needs at least one observation");
    if (periods_per_year < 1)
        fail(Errc::parse_error, "periods_per_year must be >= 1");
    if (annual_rate <= -1.0)
        fail(Errc::parse_error, "annual rate must be > -100%");
    const double per_period =
        periods_per_year == 1 ? annual_rate
                              : std::pow(1.0 + annual_rate, 1.0 / periods_per_year) - 1.0;
    std::vector<Obs> obs;
    obs.reserve(static_cast<std::size_t>(count));
    double v = base_value;
    for (int i = 0; i < count; ++i) {
        obs.push_back({start + i, v});
        v *= 1.0 + per_period;
    }
    return CpiSeries(std::move(obs));
}

bool CpiSeries::contains(Period p) const {
    auto it = std::lower_bound(obs_.begin(), obs_.end(), p,
                               [](const Obs& o, Period q) { return o.period < q; });
    return it != obs_.end() && it->period == p;
}

double CpiSeries::at(Period p) const {
    auto it = std::lower_bound(obs_.begin(), obs_.end(), p,
                               [](const Obs& o, Period q) { return o.period < q; });
    if (it == obs_.end() || it->period != p)
        fail(Errc::missing_period, "no CPI observation for " + p.str());
    return it->value;
}

CpiSeries CpiSeries::from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        fail(Errc::parse_error, "empty CPI file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "period,index")
        fail(Errc::parse_error, "expected header 'period,index', got '" + line + "'");

    std::vector<Obs> obs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            fail(Errc::parse_error, "line " + std::to_string(lineno) + ": missing comma");
        Period p = Period::parse(line.substr(0, comma));
        const std::string num = line.substr(comma + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(num, &used);
        } catch (const std::exception&) {
            fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad index value '" + num + "'");
        }
        if (used != num.size())
            fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad index value '" + num + "'");
        obs.push_back({p, v});
    }
    return CpiSeries(std::move(obs));
}

CpiSeries CpiSeries::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::io_error, "cannot open CPI file '" + path + "'");
    return from_csv(in);
}

void CpiSeries::to_csv(std::ostream& out) const {
    out << "period,index\n";
    char buf[64];
    for (const Obs& o : obs_) {
        std::snprintf(buf, sizeof buf, "%.6f", o.value);
        out << o.period.str() << ',' << buf << '\n';
    }
}

double inflation_rate(const CpiSeries& series, Period t) {
    const double cur = series.at(t);
    if (!series.contains(t - 1))
        fail(Errc::missing_period, "no CPI observation for " + (t - 1).str());
    const double prev = series.at(t - 1);
    return (cur - prev) / prev;
}

double index_factor(const CpiSeries& series, Period t0, Period t) {
    if (t < t0)
        fail(Errc::missing_period, "index_factor requires t0 <= t");
    return series.at(t) / series.at(t0);
}

double applied_index(const CpiSeries& series, const IndexationPolicy& policy, Period t) {
    if (policy.trailing_window < 1)
        fail(Errc::invalid_fraction, "trailing window must be >= 1");
    if (policy.mode == IndexationPolicy::Mode::DirectSeries)
        return series.at(t);

    if (series.size() < 2)
        fail(Errc::insufficient_history, "synthesized indexation needs at least 2 observations");
    if (!series.contains(t))
        fail(Errc::missing_period, "no CPI observation for " + t.str());

    // Compound the blended rate into a level anchored at the first observation.
    const auto& obs = series.observations();
    double level = obs.front().value;
    std::vector<double> realized;
    realized.reserve(obs.size());
    for (std::size_t i = 1; i < obs.size() && obs[i].period <= t; ++i) {
        realized.push_back(obs[i].value / obs[i - 1].value - 1.0);
        const std::size_t window = std::min<std::size_t>(realized.size(),
                                                         static_cast<std::size_t>(policy.trailing_window));
        double trailing = 0.0;
        for (std::size_t k = realized.size() - window; k < realized.size(); ++k)
            trailing += realized[k];
        trailing /= static_cast<double>(window);
        const double forecast = policy.forecast == IndexationPolicy::Forecast::RepeatLast
                                    ? realized.back()
                                    : trailing;
        level *= 1.0 + 0.5 * (trailing + forecast);
    }
    return level;
}

} // namespace vtl
