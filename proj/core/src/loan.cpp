#include "vtl/loan.hpp"

#include "vtl/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace vtl {

const char* loan_form_name(LoanForm form) {
    switch (form) {
    case LoanForm::FixedAmortization: return "fixed-amortization";
    case LoanForm::FixedPayment: return "fixed-payment";
    case LoanForm::FixedRate: return "fixed-rate";
    }
    return "unknown";
}

LoanForm loan_form_from_name(std::string_view name) {
    if (name == "fixed-amortization") return LoanForm::FixedAmortization;
    if (name == "fixed-payment") return LoanForm::FixedPayment;
    if (name == "fixed-rate") return LoanForm::FixedRate;
    fail(Errc::config_error, "unknown loan form '" + std::string(name) + "'");
}

double annuity_payment(double principal, double period_rate, int periods) {
    if (periods < 1)
        fail(Errc::bad_loan_spec, "periods must be >= 1");
    if (period_rate == 0.0)
        return principal / periods;
    return principal * period_rate / (1.0 - std::pow(1.0 + period_rate, -periods));
}

LoanPosition::LoanPosition(double principal, int periods, double period_rate, LoanForm form)
    : principal0_(principal), rate_(period_rate), outstanding_(principal), n_(periods), form_(form) {
    if (!(principal > 0.0))
        fail(Errc::bad_loan_spec, "principal must be positive");
    if (periods < 1)
        fail(Errc::bad_loan_spec, "periods must be >= 1");
    if (period_rate < 0.0)
        fail(Errc::bad_loan_spec, "rate must be non-negative");
    payment_real_ = form == LoanForm::FixedAmortization ? principal / periods
                                                        : annuity_payment(principal, period_rate, periods);
}

LoanPosition::Flow LoanPosition::advance(double pi) {
    if (matured())
        fail(Errc::bad_loan_spec, "loan already matured");
    if (form_ == LoanForm::FixedRate)
        pi = 0.0;
    if (!(pi > -1.0))
        fail(Errc::bad_loan_spec, "inflation must exceed -100%");

    ++t_;
    const double prev = outstanding_;
    factor_ *= 1.0 + pi;

    Flow flow;
    flow.indexation = pi * prev;
    flow.interest = rate_ * (1.0 + pi) * prev;

    switch (form_) {
    case LoanForm::FixedAmortization: {
        flow.amortization = principal0_ / n_ * factor_;
        // closed form keeps the terminal principal exactly zero
        flow.outstanding = principal0_ * (1.0 - static_cast<double>(t_) / n_) * factor_;
        flow.payment = flow.amortization + flow.interest;
        break;
    }
    case LoanForm::FixedPayment:
    case LoanForm::FixedRate: {
        flow.payment = payment_real_ * factor_;
        flow.amortization = flow.payment - flow.interest;
        flow.outstanding = (1.0 + pi) * prev - flow.amortization;
        if (t_ == n_) {
            // settle the annuity's floating-point residue in the last payment
            flow.amortization = (1.0 + pi) * prev;
            flow.payment = flow.amortization + flow.interest;
            flow.outstanding = 0.0;
        }
        break;
    }
    }
    outstanding_ = flow.outstanding;
    return flow;
}

namespace {

void check_spec(const LoanSpec& spec, LoanForm expected) {
    if (spec.form != expected)
        fail(Errc::bad_loan_spec, std::string("expected form ") + loan_form_name(expected) +
                                      ", got " + loan_form_name(spec.form));
}

void check_coverage(const LoanSpec& spec, const CpiSeries& series) {
    for (int t = 0; t <= spec.periods; ++t) {
        const Period p = spec.origination + t;
        if (!series.contains(p))
            fail(Errc::series_coverage, "CPI series does not cover " + p.str());
    }
}

Schedule build(const LoanSpec& spec, const CpiSeries* series) {
    LoanPosition pos(spec.principal, spec.periods, spec.period_rate, spec.form);
    Schedule schedule{spec, {}};
    schedule.rows.reserve(static_cast<std::size_t>(spec.periods));
    for (int t = 1; t <= spec.periods; ++t) {
        const double pi = series ? inflation_rate(*series, spec.origination + t) : 0.0;
        const LoanPosition::Flow flow = pos.advance(pi);
        const double f = pos.index_factor();
        ScheduleRow row;
        row.t = t;
        row.amort_nominal = flow.amortization;
        row.amort_real = flow.amortization / f;
        row.interest_nominal = flow.interest;
        row.interest_real = flow.interest / f;
        row.payment = flow.payment;
        row.principal_nominal = flow.outstanding;
        row.principal_real = flow.outstanding / f;
        schedule.rows.push_back(row);
    }
    return schedule;
}

} // namespace

Schedule fixed_amortization_schedule(const LoanSpec& spec, const CpiSeries& series) {
    check_spec(spec, LoanForm::FixedAmortization);
    check_coverage(spec, series);
    return build(spec, &series);
}

Schedule fixed_payment_schedule(const LoanSpec& spec, const CpiSeries& series) {
    check_spec(spec, LoanForm::FixedPayment);
    check_coverage(spec, series);
    return build(spec, &series);
}

Schedule fixed_rate_schedule(const LoanSpec& spec) {
    check_spec(spec, LoanForm::FixedRate);
    return build(spec, nullptr);
}

Schedule generate_schedule(const LoanSpec& spec, const CpiSeries* series) {
    if (spec.form == LoanForm::FixedRate)
        return fixed_rate_schedule(spec);
    if (!series)
        fail(Errc::series_coverage, "indexed loan forms need a CPI series");
    return spec.form == LoanForm::FixedAmortization ? fixed_amortization_schedule(spec, *series)
                                                    : fixed_payment_schedule(spec, *series);
}

double total_cost(const Schedule& schedule) {
    double sum = 0.0;
    for (const ScheduleRow& row : schedule.rows)
        sum += row.payment;
    return sum;
}

std::pair<int, double> principal_peak(const Schedule& schedule) {
    if (schedule.rows.empty())
        fail(Errc::bad_loan_spec, "empty schedule");
    int best_t = schedule.rows.front().t;
    double best = schedule.rows.front().principal_nominal;
    for (const ScheduleRow& row : schedule.rows) {
        if (row.principal_nominal > best) {
            best = row.principal_nominal;
            best_t = row.t;
        }
    }
    return {best_t, best};
}

double negative_amortization_threshold(int term_years, double annual_rate) {
    if (term_years < 1 || term_years > 50)
        fail(Errc::bad_loan_spec, "term must be 1..50 years");
    if (annual_rate < 0.0)
        fail(Errc::bad_loan_spec, "rate must be non-negative");

    const auto principal_exceeded = [&](double pi_annual) {
        LoanPosition pos(100.0, term_years, annual_rate, LoanForm::FixedPayment);
        for (int t = 1; t <= term_years; ++t) {
            const LoanPosition::Flow flow = pos.advance(pi_annual);
            if (t >= 2 && flow.outstanding > 100.0)
                return true;
        }
        return false;
    };

    double lo = 0.0;
    double hi = 1.0;
    if (!principal_exceeded(hi))
        return std::numeric_limits<double>::infinity();
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (principal_exceeded(mid) ? hi : lo) = mid;
    }
    return hi;
}

void schedule_to_csv(const Schedule& schedule, std::ostream& out) {
    out << "t,payment,interest,amortization,principal_nominal,principal_real\n";
    char buf[160];
    for (const ScheduleRow& row : schedule.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.2f,%.2f,%.2f,%.2f,%.2f\n", row.t, row.payment,
                      row.interest_nominal, row.amort_nominal, row.principal_nominal,
                      row.principal_real);
        out << buf;
    }
}

} // namespace vtl
