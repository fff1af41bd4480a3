#include "vtl/sim.hpp"

#include "vtl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace vtl {

namespace {

double per_period_rate(double annual, int periods_per_year) {
    if (periods_per_year == 1)
        return annual;
    return std::pow(1.0 + annual, 1.0 / periods_per_year) - 1.0;
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        fail(Errc::config_error, "bad number for '" + key + "': '" + value + "'");
    }
    if (used != value.size())
        fail(Errc::config_error, "bad number for '" + key + "': '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v != std::floor(v))
        fail(Errc::config_error, "expected integer for '" + key + "'");
    return static_cast<int>(v);
}

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

} // namespace

void SimConfig::validate() const {
    if (periods < 1)
        fail(Errc::config_error, "periods must be >= 1");
    if (retention < 0.0 || retention > 1.0)
        fail(Errc::invalid_fraction, "retention must be in [0,1]");
    if (provision < 0.0 || provision > 1.0)
        fail(Errc::invalid_fraction, "provision must be in [0,1]");
    if (recognition_cadence < 1)
        fail(Errc::config_error, "recognition_cadence must be >= 1");
    if (periods_per_year < 1)
        fail(Errc::config_error, "periods_per_year must be >= 1");
    if (banks < 1)
        fail(Errc::config_error, "banks must be >= 1");
    if (inflation_annual <= -1.0)
        fail(Errc::config_error, "inflation_annual must exceed -100%");
    if (loan_term_years < 1)
        fail(Errc::config_error, "loan_term_years must be >= 1");
    if (loan_rate_annual < 0.0)
        fail(Errc::config_error, "loan_rate_annual must be non-negative");
    if (capital_cap && *capital_cap <= 0)
        fail(Errc::config_error, "capital_cap must be positive");
    for (double q : q_path)
        if (!(q > 0.0))
            fail(Errc::config_error, "q values must be positive");
    const Money assets = to_minor(loans0) + to_minor(reserves0) + to_minor(cash0);
    const Money claims = to_minor(deposits0) + to_minor(capital0);
    if (assets != claims)
        fail(Errc::config_error,
             "opening balances must satisfy loans0 + reserves0 + cash0 = deposits0 + capital0");
}

SimConfig SimConfig::from_kv(std::istream& in) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::config_error, "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "periods") cfg.periods = parse_int(key, value);
        else if (key == "treatment") cfg.treatment = treatment_from_name(value);
        else if (key == "lending_policy") {
            if (value == "none") cfg.policy = LendingPolicy::None;
            else if (value == "capital-constrained-max") cfg.policy = LendingPolicy::CapitalConstrainedMax;
            else fail(Errc::config_error, "unknown lending_policy '" + value + "'");
        }
        else if (key == "capital_cap") cfg.capital_cap = to_minor(parse_number(key, value));
        else if (key == "retention") cfg.retention = parse_number(key, value);
        else if (key == "provision") cfg.provision = parse_number(key, value);
        else if (key == "recognition_cadence") cfg.recognition_cadence = parse_int(key, value);
        else if (key == "periods_per_year") cfg.periods_per_year = parse_int(key, value);
        else if (key == "cpi_mode") {
            if (value == "endogenous") cfg.cpi_mode = CpiMode::Endogenous;
            else if (value == "constant") cfg.cpi_mode = CpiMode::Constant;
            else fail(Errc::config_error, "unknown cpi_mode '" + value + "'");
        }
        else if (key == "inflation_annual") cfg.inflation_annual = parse_number(key, value);
        else if (key == "q") cfg.q_path = {parse_number(key, value)};
        else if (key == "q_path") {
            cfg.q_path.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                cfg.q_path.push_back(parse_number(key, trim(item)));
        }
        else if (key == "banks") cfg.banks = parse_int(key, value);
        else if (key == "loans0") cfg.loans0 = parse_number(key, value);
        else if (key == "deposits0") cfg.deposits0 = parse_number(key, value);
        else if (key == "capital0") cfg.capital0 = parse_number(key, value);
        else if (key == "reserves0") cfg.reserves0 = parse_number(key, value);
        else if (key == "cash0") cfg.cash0 = parse_number(key, value);
        else if (key == "loan_term_years") cfg.loan_term_years = parse_int(key, value);
        else if (key == "loan_rate_annual") cfg.loan_rate_annual = parse_number(key, value);
        else if (key == "loan_form") cfg.loan_form = loan_form_from_name(value);
        else fail(Errc::config_error, "unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

SimConfig SimConfig::from_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::io_error, "cannot open config file '" + path + "'");
    return from_kv(in);
}

double expansion_rate(std::span<const Money> money, int periods_per_year) {
    if (money.size() < 2)
        fail(Errc::empty_window, "expansion window needs at least two points");
    if (money.front() <= 0 || money.back() <= 0)
        fail(Errc::empty_window, "money supply must be positive over the window");
    const double intervals = static_cast<double>(money.size() - 1);
    const double growth = static_cast<double>(money.back()) / static_cast<double>(money.front());
    return std::pow(growth, static_cast<double>(periods_per_year) / intervals) - 1.0;
}

Economy::Economy(SimConfig config) : config_(std::move(config)) {
    config_.validate();
    pi_seed_ = per_period_rate(config_.inflation_annual, config_.periods_per_year);

    std::vector<std::pair<std::string, Money>> reserve_deposits;
    for (int i = 1; i <= config_.banks; ++i) {
        const std::string name = "bank" + std::to_string(i);
        system_.banks.push_back(Bank::opening(name, to_minor(config_.loans0),
                                              {{"C1", to_minor(config_.deposits0)}},
                                              to_minor(config_.reserves0), to_minor(config_.cash0),
                                              to_minor(config_.capital0)));
        reserve_deposits.emplace_back(name, to_minor(config_.reserves0));
        positions_.emplace_back(config_.loans0, config_.loan_term_years * config_.periods_per_year,
                                config_.loan_rate_annual / config_.periods_per_year,
                                config_.loan_form);
    }
    system_.central = CentralBank(reserve_deposits);

    m_.push_back(system_.money_supply());
    cpi_ = {100.0 / (1.0 + pi_seed_), 100.0};
    cpi_scale_ = 100.0 / (to_units(m_.front()) / q_at(1));
}

double Economy::q_at(int t) const {
    if (config_.q_path.empty())
        return to_units(m_.front());
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max(t - 1, 0)),
                                                config_.q_path.size() - 1);
    return config_.q_path[i];
}

Money Economy::lending_limit(const Bank& bank) const {
    const double weight = config_.regulatory.risk_weight(LoanClass::Mortgage);
    if (weight <= 0.0 || config_.regulatory.capital_ratio <= 0.0)
        return std::numeric_limits<Money>::max();
    return static_cast<Money>(std::floor(static_cast<double>(bank.balance("capital")) /
                                         (config_.regulatory.capital_ratio * weight)));
}

void Economy::reverse_indexation(Bank& bank, Money amount) {
    const char* accrual = config_.treatment == IndexationTreatment::NonCashIncome
                              ? "non-cash-income"
                              : "indexation-contra";
    const Money from_accrual =
        std::min(amount, bank.has_account(accrual) ? bank.balance(accrual) : 0);
    if (from_accrual > 0)
        bank.post({"loans", accrual, from_accrual, "indexation reversal (deflation)"});
    const Money excess = amount - from_accrual;
    if (excess > 0) {
        try {
            bank.post({"loans", "capital", excess, "indexation loss (deflation)"});
        } catch (const Error& e) {
            if (e.code() == Errc::negative_balance)
                fail(Errc::insolvency, bank.name() + ": deflation losses exceed capital");
            throw;
        }
    }
}

PeriodRecord Economy::step() {
    const int t = period_ + 1;

    // (1) inflation realized this period, from the last two CPI observations
    const double pi = config_.cpi_mode == SimConfig::CpiMode::Constant
                          ? pi_seed_
                          : cpi_[cpi_.size() - 1] / cpi_[cpi_.size() - 2] - 1.0;

    const char* accrual = config_.treatment == IndexationTreatment::NonCashIncome
                              ? "non-cash-income"
                              : "indexation-contra";
    const std::string customer = "C1";

    for (int i = 0; i < config_.banks; ++i) {
        Bank& bank = system_.banks[static_cast<std::size_t>(i)];
        LoanPosition& pos = positions_[static_cast<std::size_t>(i)];
        LoanPosition::Flow flow;
        if (!pos.matured())
            flow = pos.advance(pi);

        // (2) indexation of the outstanding principal
        const Money idx = to_minor(flow.indexation);
        if (idx > 0)
            bank.apply_indexation(idx, config_.treatment);
        else if (idx < 0)
            reverse_indexation(bank, -idx);

        // (3) scheduled payment collection; collections realize accrued
        // indexation first, cash income is paid back out as operating
        // expenses, and the remaining principal collections are re-lent so
        // the book only moves with unrealized indexation
        const Money interest = to_minor(flow.interest);
        const Money amort = to_minor(flow.amortization);
        if (interest > 0)
            bank.pay_interest(customer, interest);
        if (amort > 0)
            bank.repay_principal(customer, amort);
        const Money accrued = bank.has_account(accrual) ? bank.balance(accrual) : 0;
        const Money realized = std::min(amort, accrued);
        if (realized > 0) {
            if (!bank.has_account("interest-income"))
                bank.add_account("interest-income", Side::Liability);
            bank.post({"interest-income", accrual, realized, "accrued indexation realized at collection"});
        }
        const Money cash_income =
            bank.has_account("interest-income") ? bank.balance("interest-income") : 0;
        if (cash_income > 0)
            bank.recognize_amounts("interest-income", cash_income, customer, 0, 0);
        const Money replacement = amort - realized;
        if (replacement > 0)
            bank.post({"deposit:" + customer, "loans", replacement, "replacement lending"});

        // (4) period-end recognition of accrued non-cash income
        if (config_.treatment == IndexationTreatment::NonCashIncome &&
            t % config_.recognition_cadence == 0) {
            const Money accrual_balance =
                bank.has_account("non-cash-income") ? bank.balance("non-cash-income") : 0;
            if (accrual_balance > 0) {
                const Money provisioned =
                    std::llround(static_cast<double>(accrual_balance) * config_.provision);
                Money retained = std::llround(
                    static_cast<double>(accrual_balance - provisioned) * config_.retention);
                if (config_.capital_cap) {
                    const Money cap_share = *config_.capital_cap / config_.banks;
                    retained = std::min(retained,
                                        std::max<Money>(0, cap_share - bank.balance("capital")));
                }
                bank.recognize_amounts("non-cash-income", accrual_balance, customer, retained,
                                       provisioned);
            }
        }

        // (5) lending policy and capital-cap enforcement, on the book net of
        // any contra offset
        const Money limit = lending_limit(bank);
        if (config_.policy == SimConfig::LendingPolicy::CapitalConstrainedMax) {
            const Money room = limit - bank.net_exposure(LoanClass::Mortgage);
            if (room > 0)
                bank.make_loan(customer, room, LoanClass::Mortgage, config_.regulatory);
        }
        if (config_.capital_cap) {
            const Money excess = bank.net_exposure(LoanClass::Mortgage) - limit;
            if (excess > 0)
                bank.post({"loans", "deposit:" + customer, excess,
                           "deleveraging to the capital limit"});
        }

        if (!bank.balanced())
            fail(Errc::config_error, bank.name() + ": accounting equation violated");
    }

    // (6) close: money supply, price level, CPI observation for this period
    period_ = t;
    const Money money = system_.money_supply();
    m_.push_back(money);
    const double q = q_at(t);
    const double price = to_units(money) / q;
    const double next_cpi = config_.cpi_mode == SimConfig::CpiMode::Constant
                                ? cpi_.back() * (1.0 + pi_seed_)
                                : cpi_scale_ * price;
    cpi_.push_back(next_cpi);

    const int window = std::min(t, config_.periods_per_year);
    const std::span<const Money> tail(m_.data() + (t - window), static_cast<std::size_t>(window) + 1);

    PeriodRecord record;
    record.period = t;
    record.money_supply = money;
    record.price_level = price;
    record.cpi = next_cpi;
    record.capital_total = system_.capital_total();
    record.loans_total = system_.loans_total();
    record.expansion_annual = expansion_rate(tail, config_.periods_per_year);
    for (int i = 0; i < config_.banks; ++i) {
        record.capital_by_bank.push_back(system_.banks[static_cast<std::size_t>(i)].balance("capital"));
        record.outstanding_by_bank.push_back(positions_[static_cast<std::size_t>(i)].outstanding());
    }
    records_.push_back(record);
    return record;
}

std::vector<PeriodRecord> run(const SimConfig& config) {
    Economy economy(config);
    for (int t = 0; t < config.periods; ++t)
        economy.step();
    return economy.records();
}

void run_to_csv(std::span<const PeriodRecord> records, std::ostream& out) {
    out << "period,M,P,CPI,capital_total,loans_total,expansion_rate_annual\n";
    char buf[64];
    for (const PeriodRecord& r : records) {
        out << r.period << ',' << format_money(r.money_supply) << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.price_level);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.cpi);
        out << buf << ',' << format_money(r.capital_total) << ',' << format_money(r.loans_total)
            << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.expansion_annual);
        out << buf << '\n';
    }
}

} // namespace vtl
