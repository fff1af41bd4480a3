#include "vtl/errors.hpp"

namespace vtl {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::missing_period: return "missing-period";
    case Errc::insufficient_history: return "insufficient-history";
    case Errc::series_coverage: return "series-coverage";
    case Errc::bad_loan_spec: return "bad-loan-spec";
    case Errc::empty_window: return "empty-window";
    case Errc::unknown_account: return "unknown-account";
    case Errc::duplicate_account: return "duplicate-account";
    case Errc::nonpositive_amount: return "nonpositive-amount";
    case Errc::negative_balance: return "negative-balance";
    case Errc::insufficient_deposit: return "insufficient-deposit";
    case Errc::over_repayment: return "over-repayment";
    case Errc::capital_limit: return "capital-limit";
    case Errc::insufficient_income: return "insufficient-income";
    case Errc::invalid_fraction: return "invalid-fraction";
    case Errc::insolvency: return "insolvency";
    case Errc::parse_error: return "parse";
    case Errc::config_error: return "config";
    case Errc::io_error: return "io";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

} // namespace vtl
