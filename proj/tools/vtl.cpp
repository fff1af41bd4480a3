// vtl: index-linked loan schedules, double-entry bank bookkeeping, and the
// loan-indexation -> money-supply feedback simulation. All output is CSV.

#include "vtl/cpi.hpp"
#include "vtl/errors.hpp"
#include "vtl/ledger.hpp"
#include "vtl/loan.hpp"
#include "vtl/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace vtl;

// stdout by default, a file when --out is given
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                fail(Errc::io_error, "cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct LoanOptions {
    std::string form = "fixed-payment";
    double principal = 0.0;
    double rate_percent = 0.0; // annual percent
    int years = 0;
    std::string cpi_path;
    std::string origination; // YYYY-MM, defaults to the series start
    std::string frequency = "monthly";
    std::string out;
};

int periods_per_year(const std::string& frequency) {
    if (frequency == "monthly") return 12;
    if (frequency == "annual") return 1;
    fail(Errc::config_error, "frequency must be monthly or annual");
}

LoanSpec build_spec(const LoanOptions& opt, LoanForm form, const CpiSeries* series) {
    const int ppy = periods_per_year(opt.frequency);
    LoanSpec spec;
    spec.principal = opt.principal;
    spec.periods = opt.years * ppy;
    spec.period_rate = opt.rate_percent / 100.0 / ppy;
    spec.form = form;
    if (!opt.origination.empty())
        spec.origination = Period::parse(opt.origination);
    else if (series)
        spec.origination = series->first();
    return spec;
}

std::optional<CpiSeries> load_series(const std::string& path) {
    if (path.empty())
        return std::nullopt;
    return CpiSeries::load_csv(path);
}

void cmd_schedule(const LoanOptions& opt) {
    const LoanForm form = loan_form_from_name(opt.form);
    const auto series = load_series(opt.cpi_path);
    const LoanSpec spec = build_spec(opt, form, series ? &*series : nullptr);
    const Schedule schedule = generate_schedule(spec, series ? &*series : nullptr);
    Output output(opt.out);
    schedule_to_csv(schedule, output.stream());
}

void cmd_compare(const LoanOptions& opt, const std::vector<double>& rates,
                 const std::vector<int>& years) {
    const auto series = load_series(opt.cpi_path);
    Output output(opt.out);
    std::ostream& out = output.stream();
    out << "form,years,rate_percent,total\n";
    char buf[96];

    std::vector<LoanForm> forms = {LoanForm::FixedRate};
    if (series) {
        forms.push_back(LoanForm::FixedPayment);
        forms.push_back(LoanForm::FixedAmortization);
    }
    for (LoanForm form : forms)
        for (int y : years)
            for (double r : rates) {
                LoanOptions row = opt;
                row.years = y;
                row.rate_percent = r;
                const LoanSpec spec = build_spec(row, form, series ? &*series : nullptr);
                const Schedule schedule =
                    generate_schedule(spec, series ? &*series : nullptr);
                std::snprintf(buf, sizeof buf, "%s,%d,%.2f,%.2f\n", loan_form_name(form), y, r,
                              total_cost(schedule));
                out << buf;
            }
}

void cmd_threshold(const std::vector<int>& years, double rate_percent, const std::string& out_path) {
    Output output(out_path);
    std::ostream& out = output.stream();
    out << "term_years,rate_percent,threshold_percent\n";
    char buf[64];
    for (int y : years) {
        const double threshold = negative_amortization_threshold(y, rate_percent / 100.0);
        std::snprintf(buf, sizeof buf, "%d,%.2f,%.4f\n", y, rate_percent, threshold * 100.0);
        out << buf;
    }
}

// The four-scene worked example: an opening two-deposit bank, a loan to its
// own customer, indexation accrued to non-cash income, and the year-end
// recognition that turns the accrual into capital and deposit money.
void cmd_ledger_demo(const std::string& out_dir) {
    BankingSystem lending;
    lending.banks.push_back(
        Bank::opening("A", 1000000, {{"C1", 500000}, {"C2", 500000}}, 21000, 79000, 100000));
    lending.central = CentralBank({{"A", 21000}});

    std::ostringstream opening;
    lending.snapshot_csv(opening);

    lending.bank("A").make_loan("C1", 50000, LoanClass::Mortgage, RegulatoryConfig{});
    std::ostringstream loaned;
    lending.snapshot_csv(loaned);

    BankingSystem accrual;
    accrual.banks.push_back(
        Bank::opening("A", 1000000, {{"C1", 500000}, {"C2", 500000}}, 2000, 98000, 100000));
    accrual.banks.push_back(
        Bank::opening("B", 1000000, {{"C3", 500000}, {"C4", 500000}}, 2000, 98000, 100000));
    accrual.central = CentralBank({{"A", 2000}, {"B", 2000}});

    accrual.bank("A").apply_indexation(50000, IndexationTreatment::NonCashIncome);
    std::ostringstream indexed;
    accrual.snapshot_csv(indexed);

    accrual.bank("A").recognize_income(50000, "C2", 0.10);
    std::ostringstream recognized;
    accrual.snapshot_csv(recognized);

    std::ostringstream journal;
    journal << "seq,bank,credit,debit,amount,memo\n";
    int seq = 0;
    const auto append = [&](const BankingSystem& system) {
        for (const Bank& b : system.banks)
            for (const Posting& p : b.journal())
                journal << ++seq << ',' << b.name() << ',' << p.credit << ',' << p.debit << ','
                        << format_money(p.amount) << ',' << p.memo << '\n';
    };
    append(lending);
    append(accrual);

    if (out_dir.empty()) {
        std::cout << "# opening position\n" << opening.str();
        std::cout << "# loan of 500 to A.C1\n" << loaned.str();
        std::cout << "# indexation of 500 credited to non-cash income\n" << indexed.str();
        std::cout << "# recognition of 500 at 10% retention\n" << recognized.str();
        std::cout << "# journal\n" << journal.str();
        return;
    }
    std::filesystem::create_directories(out_dir);
    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream f(out_dir + "/" + name);
        if (!f)
            fail(Errc::io_error, "cannot write '" + out_dir + "/" + name + "'");
        f << text;
    };
    write("demo_opening.csv", opening.str());
    write("demo_loan.csv", loaned.str());
    write("demo_indexation.csv", indexed.str());
    write("demo_recognition.csv", recognized.str());
    write("demo_journal.csv", journal.str());
}

void cmd_simulate(const std::string& config_path, const std::string& out_path) {
    const SimConfig config = SimConfig::from_kv_file(config_path);
    const auto records = run(config);
    Output output(out_path);
    run_to_csv(records, output.stream());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vtl: index-linked loan schedules, bank bookkeeping, and the loan-indexation\n"
                 "feedback simulation. Rates are annual percentages; all output is CSV."};
    app.require_subcommand(1);

    LoanOptions loan;
    std::vector<double> rates;
    std::vector<int> years = {25, 40};
    double threshold_rate = 4.0;
    std::string config_path, out_path, out_dir;

    CLI::App* schedule =
        app.add_subcommand("schedule", "Emit one repayment schedule as CSV\n"
                                       "(t,payment,interest,amortization,principal_nominal,principal_real)");
    schedule->add_option("--form", loan.form,
                         "fixed-payment | fixed-amortization | fixed-rate (default fixed-payment)");
    schedule->add_option("--principal", loan.principal, "loan principal, currency units")->required();
    schedule->add_option("--rate", loan.rate_percent, "annual base rate, percent")->required();
    schedule->add_option("--years", loan.years, "term in years")->required();
    schedule->add_option("--cpi", loan.cpi_path,
                         "CPI CSV (period,index with YYYY-MM rows, strictly ascending); required "
                         "for the indexed forms");
    schedule->add_option("--origination", loan.origination,
                         "origination period YYYY-MM (default: first CPI row)");
    schedule->add_option("--frequency", loan.frequency, "monthly | annual (default monthly)");
    schedule->add_option("--out", loan.out, "write to a file instead of standard output");

    CLI::App* compare = app.add_subcommand(
        "compare", "Total repayment per (form, term, rate) as CSV (form,years,rate_percent,total)");
    compare->add_option("--principal", loan.principal, "loan principal, currency units")->required();
    compare->add_option("--rates", rates, "annual rates, percent (comma separated)")
        ->required()
        ->delimiter(',');
    compare->add_option("--years", years, "terms in years (comma separated)")->delimiter(',');
    compare->add_option("--cpi", loan.cpi_path,
                        "CPI CSV; adds the indexed forms next to the fixed-rate baseline");
    compare->add_option("--origination", loan.origination, "origination period YYYY-MM");
    compare->add_option("--frequency", loan.frequency, "monthly | annual (default monthly)");
    compare->add_option("--out", loan.out, "write to a file instead of standard output");

    CLI::App* threshold = app.add_subcommand(
        "threshold", "Constant annual CPI rate that triggers negative amortization, per term\n"
                     "as CSV (term_years,rate_percent,threshold_percent)");
    threshold->add_option("--years", years, "terms in years (default 25,40)")->delimiter(',');
    threshold->add_option("--rate", threshold_rate, "annual base rate, percent (default 4)");
    threshold->add_option("--out", out_path, "write to a file instead of standard output");

    CLI::App* demo = app.add_subcommand(
        "ledger-demo", "Replay the worked bookkeeping example; snapshots\n"
                       "(bank,account,side,balance) and the posting journal\n"
                       "(seq,bank,credit,debit,amount,memo)");
    demo->add_option("--out-dir", out_dir, "write each section to CSV files in this directory");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run the closed-loop simulation from a key=value config file as CSV\n"
                    "(period,M,P,CPI,capital_total,loans_total,expansion_rate_annual).\n"
                    "Keys: periods, treatment, lending_policy, capital_cap, retention, provision,\n"
                    "recognition_cadence, periods_per_year, cpi_mode, inflation_annual, q, q_path,\n"
                    "banks, loans0, deposits0, capital0, reserves0, cash0, loan_term_years,\n"
                    "loan_rate_annual, loan_form");
    simulate->add_option("--config", config_path, "key=value configuration file")->required();
    simulate->add_option("--out", out_path, "write to a file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        std::ostringstream usage;
        const int code = app.exit(e, usage, usage);
        std::cerr << "error: usage: " << e.what() << '\n';
        return code == 0 ? 2 : code;
    }

    try {
        if (schedule->parsed())
            cmd_schedule(loan);
        else if (compare->parsed())
            cmd_compare(loan, rates, years);
        else if (threshold->parsed())
            cmd_threshold(years, threshold_rate, out_path);
        else if (demo->parsed())
            cmd_ledger_demo(out_dir);
        else if (simulate->parsed())
            cmd_simulate(config_path, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
