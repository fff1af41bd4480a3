#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vtl {

// Integer minor currency units; the accounting equation is checked exactly.
using Money = std::int64_t;

Money to_minor(double units);
double to_units(Money m);
std::string format_money(Money m); // "10500.00"

enum class Side { Asset, Liability, Equity };
const char* side_name(Side side);

struct Account {
    std::string name;
    Side side = Side::Asset;
    Money balance = 0;  // natural-side balance, never negative
    bool contra = false; // asset account carrying a credit balance
};

// Every ledger operation is a (credit, debit) pair of equal amount.
struct Posting {
    std::string credit;
    std::string debit;
    Money amount = 0;
    std::string memo;
};

enum class LoanClass { Mortgage, Government, CorporateUnsecured };
const char* loan_class_account(LoanClass cls);

struct RegulatoryConfig {
    double reserve_ratio = 0.20; // of deposit liabilities
    double capital_ratio = 0.08; // of risk-weighted assets
    std::map<LoanClass, double> risk_weights = {
        {LoanClass::Mortgage, 0.50},
        {LoanClass::Government, 0.0},
        {LoanClass::CorporateUnsecured, 1.0},
    };
    bool reserve_topup = false; // reclassify cash into reserves after lending

    double risk_weight(LoanClass cls) const;
};

enum class IndexationTreatment { NonCashIncome, ContraAsset };
const char* treatment_name(IndexationTreatment t);
IndexationTreatment treatment_from_name(std::string_view name);

struct ReserveStatus {
    bool satisfied = true;
    Money shortfall = 0;
};

// One commercial bank's books. Single-writer; copyable for snapshots.
class Bank {
public:
    explicit Bank(std::string name);

    // Standard opening position: a mortgage loan book, reserves, cash, one
    // deposit account per (customer, balance) pair, and capital.
    static Bank opening(std::string name, Money loans,
                        const std::vector<std::pair<std::string, Money>>& deposits,
                        Money reserves, Money cash, Money capital);

    const std::string& name() const { return name_; }

    void add_account(const std::string& account, Side side, bool contra = false);
    bool has_account(std::string_view account) const;
    Money balance(std::string_view account) const;
    const std::vector<Account>& accounts() const { return accounts_; }

    // Applies one balanced (credit, debit) pair; rejects unknown accounts,
    // non-positive amounts, and any balance that would turn negative.
    void post(const Posting& posting);

    void make_loan(const std::string& customer, Money amount, LoanClass cls,
                   const RegulatoryConfig& config);
    void repay_principal(const std::string& customer, Money amount);
    void pay_interest(const std::string& customer, Money amount);
    void apply_indexation(Money amount, IndexationTreatment treatment);

    // Year-end recognition of accrued non-cash income: a share is retained as
    // capital, the rest is paid out to a deposit account and becomes money.
    void recognize_income(Money amount, const std::string& customer, double retention);

    // Shared recognition path for any income account, with optional loss
    // provision; retained/provisioned given as explicit amounts.
    void recognize_from(const std::string& source, Money amount, const std::string& customer,
                        double retention, double provision = 0.0);
    void recognize_amounts(const std::string& source, Money amount, const std::string& customer,
                           Money retained, Money provisioned);

    Money assets() const;                 // net of contra balances
    Money liabilities_and_equity() const;
    bool balanced() const { return assets() == liabilities_and_equity(); }

    Money deposits() const;   // customer deposit accounts
    Money loans_book() const; // all loan-class accounts, gross
    Money loan_class_balance(LoanClass cls) const;
    // Carrying amount for risk purposes: the indexation contra offsets the
    // mortgage book.
    Money net_exposure(LoanClass cls) const;

    // Capital over risk-weighted assets; nullopt signals an unbounded ratio
    // (no risk-weighted assets).
    std::optional<double> capital_ratio(const RegulatoryConfig& config) const;
    ReserveStatus reserve_check(const RegulatoryConfig& config) const;

    const std::vector<Posting>& journal() const { return journal_; }

private:
    Account& account_ref(std::string_view account);
    const Account& account_ref(std::string_view account) const;
    void ensure_account(const std::string& account, Side side, bool contra = false);
    static void apply_credit(Account& account, Money amount);
    static void apply_debit(Account& account, Money amount);

    std::string name_;
    std::vector<Account> accounts_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<Posting> journal_;
};

// Central bank: issued cash against one reserve-deposit per member bank.
class CentralBank {
public:
    CentralBank();
    explicit CentralBank(const std::vector<std::pair<std::string, Money>>& reserve_deposits);

    Money cash_issued() const;
    Money reserve_deposit(std::string_view bank) const;
    const std::vector<Account>& accounts() const { return accounts_; }
    bool balanced() const;

private:
    std::vector<Account> accounts_;
};

// All banks plus the central bank; the money-supply aggregate lives here.
struct BankingSystem {
    std::vector<Bank> banks;
    CentralBank central;

    Bank& bank(std::string_view name);
    const Bank& bank(std::string_view name) const;

    // M-proxy: customer deposits plus cash interest income across banks.
    // Non-cash income, capital, provisions, and asset-side holdings are not
    // money; the cash interest-income account is the bank's own spendable
    // deposit money, so interest payments are money-supply neutral.
    Money money_supply() const;

    Money capital_total() const;
    Money loans_total() const;
    bool balanced() const;

    // CSV: "bank,account,side,balance", assets then liabilities then equity.
    void snapshot_csv(std::ostream& out) const;
    // CSV: "seq,bank,credit,debit,amount,memo", per-bank journals in order.
    void journal_csv(std::ostream& out) const;
};

} // namespace vtl
