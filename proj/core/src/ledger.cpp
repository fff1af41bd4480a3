#include "vtl/ledger.hpp"

#include "vtl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace vtl {

Money to_minor(double units) { return std::llround(units * 100.0); }
double to_units(Money m) { return static_cast<double>(m) / 100.0; }

std::string format_money(Money m) {
    const bool neg = m < 0;
    const Money a = neg ? -m : m;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "",
                  static_cast<long long>(a / 100), static_cast<long long>(a % 100));
    return buf;
}

const char* side_name(Side side) {
    switch (side) {
    case Side::Asset: return "asset";
    case Side::Liability: return "liability";
    case Side::Equity: return "equity";
    }
    return "unknown";
}

const char* loan_class_account(LoanClass cls) {
    switch (cls) {
    case LoanClass::Mortgage: return "loans";
    case LoanClass::Government: return "loans:government";
    case LoanClass::CorporateUnsecured: return "loans:corporate";
    }
    return "loans";
}

double RegulatoryConfig::risk_weight(LoanClass cls) const {
    auto it = risk_weights.find(cls);
    return it == risk_weights.end() ? 1.0 : it->second;
}

const char* treatment_name(IndexationTreatment t) {
    return t == IndexationTreatment::NonCashIncome ? "non-cash-income" : "contra-asset";
}

IndexationTreatment treatment_from_name(std::string_view name) {
    if (name == "non-cash-income") return IndexationTreatment::NonCashIncome;
    if (name == "contra-asset") return IndexationTreatment::ContraAsset;
    fail(Errc::config_error, "unknown indexation treatment '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Bank

Bank::Bank(std::string name) : name_(std::move(name)) {}

Bank Bank::opening(std::string name, Money loans,
                   const std::vector<std::pair<std::string, Money>>& deposits, Money reserves,
                   Money cash, Money capital) {
    Bank bank(std::move(name));
    bank.add_account("loans", Side::Asset);
    bank.add_account("reserves", Side::Asset);
    bank.add_account("cash", Side::Asset);
    bank.account_ref("loans").balance = loans;
    bank.account_ref("reserves").balance = reserves;
    bank.account_ref("cash").balance = cash;
    for (const auto& [customer, balance] : deposits) {
        const std::string acct = "deposit:" + customer;
        bank.add_account(acct, Side::Liability);
        bank.account_ref(acct).balance = balance;
    }
    bank.add_account("capital", Side::Equity);
    bank.account_ref("capital").balance = capital;
    if (!bank.balanced())
        fail(Errc::config_error, "opening balances do not satisfy assets = liabilities + equity");
    return bank;
}

void Bank::add_account(const std::string& account, Side side, bool contra) {
    if (index_.contains(account))
        fail(Errc::duplicate_account, account);
    if (contra && side != Side::Asset)
        fail(Errc::config_error, "contra accounts are asset-side");
    index_[account] = accounts_.size();
    accounts_.push_back(Account{account, side, 0, contra});
}

bool Bank::has_account(std::string_view account) const {
    return index_.find(account) != index_.end();
}

Money Bank::balance(std::string_view account) const { return account_ref(account).balance; }

Account& Bank::account_ref(std::string_view account) {
    auto it = index_.find(account);
    if (it == index_.end())
        fail(Errc::unknown_account, name_ + ": " + std::string(account));
    return accounts_[it->second];
}

const Account& Bank::account_ref(std::string_view account) const {
    auto it = index_.find(account);
    if (it == index_.end())
        fail(Errc::unknown_account, name_ + ": " + std::string(account));
    return accounts_[it->second];
}

void Bank::ensure_account(const std::string& account, Side side, bool contra) {
    if (!has_account(account))
        add_account(account, side, contra);
}

// Credits increase liability/equity balances and decrease asset balances;
// debits the reverse. A contra asset carries a credit balance.
void Bank::apply_credit(Account& account, Money amount) {
    const bool increases = account.side != Side::Asset || account.contra;
    account.balance += increases ? amount : -amount;
}

void Bank::apply_debit(Account& account, Money amount) {
    const bool increases = account.side == Side::Asset && !account.contra;
    account.balance += increases ? amount : -amount;
}

void Bank::post(const Posting& posting) {
    if (posting.amount <= 0)
        fail(Errc::nonpositive_amount, "posting amount must be positive");
    Account& credit = account_ref(posting.credit);
    Account& debit = account_ref(posting.debit);
    if (&credit == &debit)
        fail(Errc::config_error, "credit and debit must differ");
    apply_credit(credit, posting.amount);
    apply_debit(debit, posting.amount);
    if (credit.balance < 0 || debit.balance < 0) {
        const std::string overdrawn = credit.balance < 0 ? credit.name : debit.name;
        apply_debit(credit, posting.amount); // roll back
        apply_credit(debit, posting.amount);
        fail(Errc::negative_balance, name_ + ": " + overdrawn);
    }
    journal_.push_back(posting);
}

void Bank::make_loan(const std::string& customer, Money amount, LoanClass cls,
                     const RegulatoryConfig& config) {
    if (amount <= 0)
        fail(Errc::nonpositive_amount, "loan amount must be positive");
    const std::string deposit = "deposit:" + customer;
    ensure_account(deposit, Side::Liability);
    ensure_account(loan_class_account(cls), Side::Asset);

    // post-transaction Basel check
    double rwa = 0.0;
    for (LoanClass c : {LoanClass::Mortgage, LoanClass::Government, LoanClass::CorporateUnsecured}) {
        Money bal = net_exposure(c);
        if (c == cls) bal += amount;
        rwa += to_units(bal) * config.risk_weight(c);
    }
    if (rwa > 0.0) {
        const double ratio = to_units(balance("capital")) / rwa;
        if (ratio < config.capital_ratio - 1e-12)
            fail(Errc::capital_limit,
                 name_ + ": loan of " + format_money(amount) + " would breach the capital ratio");
    }

    post({deposit, loan_class_account(cls), amount, "loan to customer " + customer});

    if (config.reserve_topup) {
        const Money required = std::llround(config.reserve_ratio * static_cast<double>(deposits()));
        const Money gap = required - balance("reserves");
        const Money transfer = std::min(gap, balance("cash"));
        if (transfer > 0)
            post({"cash", "reserves", transfer, "reserve top-up"});
    }
}

void Bank::repay_principal(const std::string& customer, Money amount) {
    if (amount <= 0)
        fail(Errc::nonpositive_amount, "repayment must be positive");
    const std::string deposit = "deposit:" + customer;
    if (balance(deposit) < amount)
        fail(Errc::insufficient_deposit, name_ + ": " + deposit);
    if (balance("loans") < amount)
        fail(Errc::over_repayment, name_ + ": repaying more than the outstanding book");
    post({"loans", deposit, amount, "principal repayment by " + customer});
}

void Bank::pay_interest(const std::string& customer, Money amount) {
    if (amount <= 0)
        fail(Errc::nonpositive_amount, "interest must be positive");
    const std::string deposit = "deposit:" + customer;
    if (balance(deposit) < amount)
        fail(Errc::insufficient_deposit, name_ + ": " + deposit);
    ensure_account("interest-income", Side::Liability);
    post({"interest-income", deposit, amount, "interest paid by " + customer});
}

void Bank::apply_indexation(Money amount, IndexationTreatment treatment) {
    if (amount <= 0)
        fail(Errc::nonpositive_amount, "indexation must be positive");
    if (treatment == IndexationTreatment::NonCashIncome) {
        ensure_account("non-cash-income", Side::Liability);
        post({"non-cash-income", "loans", amount, "loan indexation"});
    } else {
        ensure_account("indexation-contra", Side::Asset, /*contra=*/true);
        post({"indexation-contra", "loans", amount, "loan indexation (contra)"});
    }
}

void Bank::recognize_income(Money amount, const std::string& customer, double retention) {
    recognize_from("non-cash-income", amount, customer, retention);
}

void Bank::recognize_from(const std::string& source, Money amount, const std::string& customer,
                          double retention, double provision) {
    if (retention < 0.0 || retention > 1.0)
        fail(Errc::invalid_fraction, "retention must be in [0,1]");
    if (provision < 0.0 || provision > 1.0)
        fail(Errc::invalid_fraction, "provision must be in [0,1]");
    const Money provisioned = std::llround(static_cast<double>(amount) * provision);
    const Money retained = std::llround(static_cast<double>(amount - provisioned) * retention);
    recognize_amounts(source, amount, customer, retained, provisioned);
}

void Bank::recognize_amounts(const std::string& source, Money amount, const std::string& customer,
                             Money retained, Money provisioned) {
    if (amount <= 0)
        fail(Errc::nonpositive_amount, "recognition amount must be positive");
    if (retained < 0 || provisioned < 0 || retained + provisioned > amount)
        fail(Errc::invalid_fraction, "retained + provisioned must be within the amount");
    if (!has_account(source) || balance(source) < amount)
        fail(Errc::insufficient_income, name_ + ": " + source);
    const std::string deposit = "deposit:" + customer;
    ensure_account(deposit, Side::Liability);

    if (provisioned > 0) {
        ensure_account("loan-loss-provision", Side::Liability);
        post({"loan-loss-provision", source, provisioned, "loss provision at recognition"});
    }
    if (retained > 0)
        post({"capital", source, retained, "income retained as capital"});
    const Money payout = amount - retained - provisioned;
    if (payout > 0)
        post({deposit, source, payout, "income recognized and paid out"});
}

Money Bank::assets() const {
    Money sum = 0;
    for (const Account& a : accounts_)
        if (a.side == Side::Asset)
            sum += a.contra ? -a.balance : a.balance;
    return sum;
}

Money Bank::liabilities_and_equity() const {
    Money sum = 0;
    for (const Account& a : accounts_)
        if (a.side != Side::Asset)
            sum += a.balance;
    return sum;
}

Money Bank::deposits() const {
    Money sum = 0;
    for (const Account& a : accounts_)
        if (a.name.starts_with("deposit:"))
            sum += a.balance;
    return sum;
}

Money Bank::loans_book() const {
    Money sum = 0;
    for (LoanClass c : {LoanClass::Mortgage, LoanClass::Government, LoanClass::CorporateUnsecured})
        sum += loan_class_balance(c);
    return sum;
}

Money Bank::loan_class_balance(LoanClass cls) const {
    const char* acct = loan_class_account(cls);
    return has_account(acct) ? balance(acct) : 0;
}

Money Bank::net_exposure(LoanClass cls) const {
    Money bal = loan_class_balance(cls);
    if (cls == LoanClass::Mortgage && has_account("indexation-contra"))
        bal = std::max<Money>(0, bal - balance("indexation-contra"));
    return bal;
}

std::optional<double> Bank::capital_ratio(const RegulatoryConfig& config) const {
    double rwa = 0.0;
    for (LoanClass c : {LoanClass::Mortgage, LoanClass::Government, LoanClass::CorporateUnsecured})
        rwa += to_units(net_exposure(c)) * config.risk_weight(c);
    if (rwa <= 0.0)
        return std::nullopt; // unbounded-ratio signal
    return to_units(balance("capital")) / rwa;
}

ReserveStatus Bank::reserve_check(const RegulatoryConfig& config) const {
    const Money required = std::llround(config.reserve_ratio * static_cast<double>(deposits()));
    const Money held = has_account("reserves") ? balance("reserves") : 0;
    if (held >= required)
        return {true, 0};
    return {false, required - held};
}

// ---------------------------------------------------------------------------
// CentralBank

CentralBank::CentralBank() : CentralBank(std::vector<std::pair<std::string, Money>>{}) {}

CentralBank::CentralBank(const std::vector<std::pair<std::string, Money>>& reserve_deposits) {
    Money total = 0;
    for (const auto& [bank, amount] : reserve_deposits)
        total += amount;
    accounts_.push_back(Account{"cash-issued", Side::Asset, total, false});
    for (const auto& [bank, amount] : reserve_deposits)
        accounts_.push_back(Account{"reserve-deposit:" + bank, Side::Liability, amount, false});
}

Money CentralBank::cash_issued() const { return accounts_.front().balance; }

Money CentralBank::reserve_deposit(std::string_view bank) const {
    const std::string needle = "reserve-deposit:" + std::string(bank);
    for (const Account& a : accounts_)
        if (a.name == needle)
            return a.balance;
    fail(Errc::unknown_account, "central-bank: " + needle);
}

bool CentralBank::balanced() const {
    Money assets = 0, liabilities = 0;
    for (const Account& a : accounts_)
        (a.side == Side::Asset ? assets : liabilities) += a.balance;
    return assets == liabilities;
}

// ---------------------------------------------------------------------------
// BankingSystem

Bank& BankingSystem::bank(std::string_view name) {
    for (Bank& b : banks)
        if (b.name() == name)
            return b;
    fail(Errc::unknown_account, "no bank named " + std::string(name));
}

const Bank& BankingSystem::bank(std::string_view name) const {
    for (const Bank& b : banks)
        if (b.name() == name)
            return b;
    fail(Errc::unknown_account, "no bank named " + std::string(name));
}

Money BankingSystem::money_supply() const {
    Money sum = 0;
    for (const Bank& b : banks) {
        sum += b.deposits();
        if (b.has_account("interest-income"))
            sum += b.balance("interest-income");
    }
    return sum;
}

Money BankingSystem::capital_total() const {
    Money sum = 0;
    for (const Bank& b : banks)
        sum += b.balance("capital");
    return sum;
}

Money BankingSystem::loans_total() const {
    Money sum = 0;
    for (const Bank& b : banks)
        sum += b.loans_book();
    return sum;
}

bool BankingSystem::balanced() const {
    for (const Bank& b : banks)
        if (!b.balanced())
            return false;
    return central.balanced();
}

namespace {

void snapshot_rows(std::ostream& out, const std::string& owner,
                   const std::vector<Account>& accounts) {
    const auto emit = [&](const Account& a) {
        const char* side = a.contra ? "contra-asset" : side_name(a.side);
        out << owner << ',' << a.name << ',' << side << ',' << format_money(a.balance) << '\n';
    };
    for (const Account& a : accounts)
        if (a.side == Side::Asset) emit(a);
    for (const Account& a : accounts)
        if (a.side == Side::Liability) emit(a);
    for (const Account& a : accounts)
        if (a.side == Side::Equity) emit(a);
}

} // namespace

void BankingSystem::snapshot_csv(std::ostream& out) const {
    out << "bank,account,side,balance\n";
    for (const Bank& b : banks)
        snapshot_rows(out, b.name(), b.accounts());
    snapshot_rows(out, "central-bank", central.accounts());
}

void BankingSystem::journal_csv(std::ostream& out) const {
    out << "seq,bank,credit,debit,amount,memo\n";
    int seq = 0;
    for (const Bank& b : banks)
        for (const Posting& p : b.journal())
            out << ++seq << ',' << b.name() << ',' << p.credit << ',' << p.debit << ','
                << format_money(p.amount) << ',' << p.memo << '\n';
}

} // namespace vtl
