#pragma once

#include "vtl/cpi.hpp"
#include "vtl/period.hpp"

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

namespace vtl {

enum class LoanForm {
    FixedAmortization, // indexed, equal real amortization
    FixedPayment,      // indexed, annuity in real terms
    FixedRate,         // conventional nominal annuity
};

const char* loan_form_name(LoanForm form);
LoanForm loan_form_from_name(std::string_view name);

struct LoanSpec {
    double principal = 0.0;  // X_0, currency units
    int periods = 0;         // N payment periods
    double period_rate = 0.0; // base rate per payment period
    LoanForm form = LoanForm::FixedPayment;
    Period origination;      // CPI observation at drawdown; row t uses origination + t
};

struct ScheduleRow {
    int t = 0;
    double amort_real = 0.0;
    double amort_nominal = 0.0;
    double interest_real = 0.0;
    double interest_nominal = 0.0;
    double payment = 0.0; // nominal, = amort_nominal + interest_nominal
    double principal_real = 0.0;
    double principal_nominal = 0.0;
};

struct Schedule {
    LoanSpec spec;
    std::vector<ScheduleRow> rows; // contiguous t = 1..N
};

// Standard annuity payment; rate 0 degenerates to principal / periods.
double annuity_payment(double principal, double period_rate, int periods);

// One loan advanced period by period with realized inflation. The schedule
// generators and the closed-loop simulation share this recursion so their
// cash flows agree exactly.
class LoanPosition {
public:
    LoanPosition(double principal, int periods, double period_rate, LoanForm form);

    struct Flow {
        double indexation = 0.0;   // pi * previous outstanding
        double payment = 0.0;      // nominal
        double interest = 0.0;     // nominal
        double amortization = 0.0; // nominal
        double outstanding = 0.0;  // nominal, end of period
    };

    // Advance one period at realized inflation pi (> -1). FixedRate ignores pi.
    Flow advance(double pi);

    double outstanding() const { return outstanding_; }
    double index_factor() const { return factor_; }
    int period() const { return t_; }
    int periods() const { return n_; }
    bool matured() const { return t_ >= n_; }

private:
    double principal0_;
    double rate_;
    double payment_real_;
    double outstanding_;
    double factor_ = 1.0;
    int n_;
    int t_ = 0;
    LoanForm form_;
};

Schedule fixed_amortization_schedule(const LoanSpec& spec, const CpiSeries& series);
Schedule fixed_payment_schedule(const LoanSpec& spec, const CpiSeries& series);
Schedule fixed_rate_schedule(const LoanSpec& spec);

// Dispatch on spec.form; series may be null for FixedRate.
Schedule generate_schedule(const LoanSpec& spec, const CpiSeries* series);

// Sum of nominal payments over the whole schedule.
double total_cost(const Schedule& schedule);

// Argmax of nominal principal, (period index, value); ties break earliest.
std::pair<int, double> principal_peak(const Schedule& schedule);

// Smallest constant annual CPI rate at which a fixed-payment loan's nominal
// principal rises above X_0 at any period after the first. Evaluated on an
// annual-period schedule (one period per year of term) and bisected to one
// basis point. Returns +inf when no rate up to 100%/yr triggers it.
double negative_amortization_threshold(int term_years, double annual_rate);

// CSV wire format: header
// "t,payment,interest,amortization,principal_nominal,principal_real",
// currency with two decimals, no thousands separators.
void schedule_to_csv(const Schedule& schedule, std::ostream& out);

} // namespace vtl
