#include "vtl/cpi.hpp"
#include "vtl/ledger.hpp"
#include "vtl/loan.hpp"
#include "vtl/sim.hpp"

#include <benchmark/benchmark.h>

using namespace vtl;

namespace {

const Period kStart = Period::ym(1990, 1);

void BM_FixedPaymentSchedule(benchmark::State& state) {
    const int years = static_cast<int>(state.range(0));
    const CpiSeries series = CpiSeries::constant_rate(kStart, years * 12 + 1, 0.054, 12);
    const LoanSpec spec{20000000.0, years * 12, 0.04 / 12.0, LoanForm::FixedPayment, kStart};
    for (auto _ : state) {
        Schedule s = fixed_payment_schedule(spec, series);
        benchmark::DoNotOptimize(s.rows.back().payment);
    }
}
BENCHMARK(BM_FixedPaymentSchedule)->Arg(25)->Arg(40);

void BM_NegativeAmortizationThreshold(benchmark::State& state) {
    for (auto _ : state) {
        const double t = negative_amortization_threshold(40, 0.04);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_NegativeAmortizationThreshold);

void BM_LedgerPosting(benchmark::State& state) {
    Bank bank =
        Bank::opening("A", 1000000, {{"C1", 500000}, {"C2", 500000}}, 21000, 79000, 100000);
    for (auto _ : state) {
        bank.post({"deposit:C1", "loans", 1, "bench"});
        bank.post({"loans", "deposit:C1", 1, "bench"});
    }
    benchmark::DoNotOptimize(bank.balance("loans"));
}
BENCHMARK(BM_LedgerPosting);

void BM_SimulationRun(benchmark::State& state) {
    SimConfig cfg;
    cfg.periods = static_cast<int>(state.range(0));
    cfg.cpi_mode = SimConfig::CpiMode::Constant;
    cfg.recognition_cadence = 12;
    for (auto _ : state) {
        auto records = run(cfg);
        benchmark::DoNotOptimize(records.back().money_supply);
    }
}
BENCHMARK(BM_SimulationRun)->Arg(50)->Arg(240);

} // namespace

BENCHMARK_MAIN();
