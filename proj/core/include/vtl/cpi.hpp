#pragma once

#include "vtl/period.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vtl {

// Consumer-price-index series: dated observations, strictly ascending periods,
// all values positive. Immutable after construction.
class CpiSeries {
public:
    struct Obs {
        Period period;
        double value = 0.0;
    };

    CpiSeries(std::vector<Obs> observations, Period base);
    explicit CpiSeries(std::vector<Obs> observations); // base = first period

    // Contiguous monthly series growing at a constant annual rate, compounded
    // per period. periods_per_year = 1 treats each row as one year.
    static CpiSeries constant_rate(Period start, int count, double annual_rate,
                                   int periods_per_year = 12, double base_value = 100.0);

    // CSV wire format: header "period,index", period as YYYY-MM, '.' decimal
    // separator, rows strictly ascending.
    static CpiSeries from_csv(std::istream& in);
    static CpiSeries load_csv(const std::string& path);
    void to_csv(std::ostream& out) const;

    std::size_t size() const { return obs_.size(); }
    Period first() const { return obs_.front().period; }
    Period last() const { return obs_.back().period; }
    Period base() const { return base_; }
    bool contains(Period p) const;
    double at(Period p) const; // throws missing-period
    const std::vector<Obs>& observations() const { return obs_; }

private:
    std::vector<Obs> obs_;
    Period base_;
};

// pi_t = (CPI_t - CPI_{t-1}) / CPI_{t-1}; both months must be present.
double inflation_rate(const CpiSeries& series, Period t);

// CPI_t / CPI_t0. Equals the cumulative product of (1 + pi_j) over (t0, t]
// when the series is contiguous there.
double index_factor(const CpiSeries& series, Period t0, Period t);

struct IndexationPolicy {
    enum class Mode {
        DirectSeries,     // the supplied series IS the applied index (default)
        SynthesizedJanus, // labeled approximation of the 12-month weighting
    };
    enum class Forecast { RepeatLast, TrailingAverage };

    Mode mode = Mode::DirectSeries;
    int trailing_window = 12; // months, >= 1
    Forecast forecast = Forecast::RepeatLast;
};

// Applied indexation index at t. DirectSeries returns the series value
// verbatim. SynthesizedJanus blends trailing realized inflation with a
// forecast (equal weights) and compounds that rate into a level anchored at
// the first observation; shorter histories use the available prefix.
double applied_index(const CpiSeries& series, const IndexationPolicy& policy, Period t);

} // namespace vtl
