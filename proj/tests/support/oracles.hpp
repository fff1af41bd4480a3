#pragma once

// Independent spreadsheet-style oracles. These re-derive every loan identity
// with plain loops and no shared code with the engine, so the tests check two
// routes against each other.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

struct Row {
    double payment = 0.0;
    double interest = 0.0;
    double amort = 0.0;
    double principal = 0.0; // nominal, end of period
};

inline double annuity(double x0, double r, int n) {
    return r == 0.0 ? x0 / n : x0 * r / (1.0 - std::pow(1.0 + r, -n));
}

// Fixed payment (annuity in real terms), recursive: the nominal payment is the
// real annuity scaled by the index factor, interest accrues on the indexed
// prior principal, amortization is the remainder.
inline std::vector<Row> fixed_payment(double x0, int n, double r, const std::vector<double>& pi) {
    const double pr = annuity(x0, r, n);
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(n));
    double x = x0, f = 1.0;
    for (int t = 1; t <= n; ++t) {
        const double p = pi[static_cast<std::size_t>(t - 1)];
        f *= 1.0 + p;
        const double pn = pr * f;
        const double in = r * (1.0 + p) * x;
        const double an = pn - in;
        const double xn = (1.0 + p) * x - an;
        rows.push_back({pn, in, an, xn});
        x = xn;
    }
    return rows;
}

// Fixed amortization: equal real amortization, every column from the closed
// forms evaluated row by row.
inline std::vector<Row> fixed_amortization(double x0, int n, double r,
                                           const std::vector<double>& pi) {
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(n));
    double f = 1.0, xprev = x0;
    for (int t = 1; t <= n; ++t) {
        const double p = pi[static_cast<std::size_t>(t - 1)];
        f *= 1.0 + p;
        const double an = x0 / n * f;
        const double xn = x0 * (1.0 - static_cast<double>(t) / n) * f;
        const double in = r * (1.0 + p) * xprev;
        rows.push_back({an + in, in, an, xn});
        xprev = xn;
    }
    return rows;
}

inline std::vector<Row> fixed_rate(double x0, int n, double r) {
    return fixed_payment(x0, n, r, std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

inline double total(const std::vector<Row>& rows) {
    double sum = 0.0;
    for (const Row& row : rows)
        sum += row.payment;
    return sum;
}

// Smallest constant annual rate (1bp grid) whose annual-period fixed-payment
// schedule shows nominal principal above x0 at any period >= 2.
inline double threshold_grid(int years, double r_annual) {
    const auto exceeds = [&](double pi) {
        const auto rows = fixed_payment(100.0, years, r_annual,
                                        std::vector<double>(static_cast<std::size_t>(years), pi));
        for (int t = 2; t <= years; ++t)
            if (rows[static_cast<std::size_t>(t - 1)].principal > 100.0)
                return true;
        return false;
    };
    for (int bp = 0; bp <= 10000; ++bp) {
        const double pi = bp * 1e-4;
        if (exceeds(pi))
            return pi;
    }
    return std::numeric_limits<double>::infinity();
}

// Random walk CPI path for property tests; steps within (-20%, +25%].
inline std::vector<double> random_cpi_values(std::mt19937& rng, int count, double start = 100.0) {
    std::uniform_real_distribution<double> step(-0.20, 0.25);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    double v = start;
    for (int i = 0; i < count; ++i) {
        values.push_back(v);
        v *= 1.0 + step(rng);
    }
    return values;
}

} // namespace oracle
