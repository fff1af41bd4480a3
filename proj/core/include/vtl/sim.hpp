#pragma once

#include "vtl/ledger.hpp"
#include "vtl/loan.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vtl {

// Closed-loop economy: indexed loan books feed bookkeeping flows, recognized
// income feeds the money supply, and the quantity-theory price level feeds
// the CPI back into next period's indexation (one-period lag).
struct SimConfig {
    enum class LendingPolicy { None, CapitalConstrainedMax };
    enum class CpiMode {
        Endogenous, // CPI proportional to P = M/Q, seeded at inflation_annual
        Constant,   // CPI held at inflation_annual throughout (regime studies)
    };

    int periods = 20;
    IndexationTreatment treatment = IndexationTreatment::NonCashIncome;
    LendingPolicy policy = LendingPolicy::None;
    std::optional<Money> capital_cap; // absolute system capital limit
    double retention = 0.10;          // share of recognized income kept as capital
    double provision = 0.0;           // loss provision taken at recognition
    int recognition_cadence = 12;     // periods between income recognitions
    int periods_per_year = 12;
    CpiMode cpi_mode = CpiMode::Endogenous;
    double inflation_annual = 0.054;
    std::vector<double> q_path; // transaction quantity; empty = constant at initial M

    // opening position per bank, currency units
    int banks = 1;
    double loans0 = 10000.0;
    double deposits0 = 10000.0;
    double capital0 = 1000.0;
    double reserves0 = 210.0;
    double cash0 = 790.0;

    // the indexed loan cohort held by each bank
    int loan_term_years = 25;
    double loan_rate_annual = 0.04;
    LoanForm loan_form = LoanForm::FixedPayment;

    RegulatoryConfig regulatory;

    void validate() const;

    // Flat key=value text; '#' starts a comment. Keys mirror the fields, see
    // the CLI --help for the full list.
    static SimConfig from_kv(std::istream& in);
    static SimConfig from_kv_file(const std::string& path);
};

struct PeriodRecord {
    int period = 0;
    Money money_supply = 0;
    double price_level = 0.0;
    double cpi = 0.0;
    Money capital_total = 0;
    Money loans_total = 0;
    double expansion_annual = 0.0; // trailing window of up to one year
    std::vector<Money> capital_by_bank;
    std::vector<double> outstanding_by_bank; // cohort contractual principal
};

// Geometric annualized growth of M over the span (window = whole span).
double expansion_rate(std::span<const Money> money, int periods_per_year);

class Economy {
public:
    explicit Economy(SimConfig config);

    PeriodRecord step();
    const std::vector<PeriodRecord>& records() const { return records_; }
    const BankingSystem& system() const { return system_; }
    const SimConfig& config() const { return config_; }
    int period() const { return period_; }

private:
    double q_at(int t) const;
    Money lending_limit(const Bank& bank) const;
    void reverse_indexation(Bank& bank, Money amount);

    SimConfig config_;
    BankingSystem system_;
    std::vector<LoanPosition> positions_; // one cohort per bank
    std::vector<double> cpi_;             // two seed observations + one per period
    std::vector<Money> m_;                // money supply, index 0 = opening
    std::vector<PeriodRecord> records_;
    double pi_seed_ = 0.0;  // per-period seed / constant rate
    double cpi_scale_ = 1.0; // CPI per unit of price level
    int period_ = 0;
};

// Deterministic full run; identical configs give identical series.
std::vector<PeriodRecord> run(const SimConfig& config);

// CSV wire format:
// "period,M,P,CPI,capital_total,loans_total,expansion_rate_annual"
void run_to_csv(std::span<const PeriodRecord> records, std::ostream& out);

} // namespace vtl
