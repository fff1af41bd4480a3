#pragma once

#include <stdexcept>
#include <string>

namespace vtl {

// Stable error codes; the CLI prints them as "error: <name>: <detail>".
enum class Errc {
    missing_period,
    insufficient_history,
    series_coverage,
    bad_loan_spec,
    empty_window,
    unknown_account,
    duplicate_account,
    nonpositive_amount,
    negative_balance,
    insufficient_deposit,
    over_repayment,
    capital_limit,
    insufficient_income,
    invalid_fraction,
    insolvency,
    parse_error,
    config_error,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail);
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail);

} // namespace vtl
