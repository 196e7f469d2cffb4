// Serial reference against the OpenMP kernels. The second argument of each
// benchmark selects the execution mode: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "qpack/constants.hpp"
#include "qpack/hidden_mode.hpp"
#include "qpack/ladder.hpp"
#include "qpack/match_synth.hpp"
#include "qpack/survey.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <string>

using namespace qpack;

namespace {

Execution mode(const benchmark::State &state) { return state.range(1) ? Execution::parallel : Execution::serial; }

void BM_ladder_crosstalk(benchmark::State &state)
{
    line::LadderNetwork net;
    net.sections.assign(8, {1e-9, 100e-15, 0.1e-9, 5e-15});
    const auto grid = hidden::make_grid(0.1e9, 40e9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(line::ladder_crosstalk(net, grid, mode(state)));
    }
}

void BM_filter_response(benchmark::State &state)
{
    const auto m = match::synthesize_match(1e-9, 20e-15, match::FilterSpec{});
    const auto grid = hidden::make_grid(0.1e9, 30e9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(match::filter_response(m, 50.0, grid, mode(state)));
    }
}

void BM_sweep_probe(benchmark::State &state)
{
    hidden::GroundTruthScenario s;
    s.qubits.push_back({"q", kTwoPi * 2.9531e9, std::nullopt, std::nullopt, 53.2e-6});
    s.intrinsic_t2["q"] = 53.2e-6;
    s.photon_gain_eta = 1e6;
    s.modes.push_back({"IV", kTwoPi * 17.18e9, kTwoPi * 20e6, {{"q", kTwoPi * 17.73e6}}});
    const auto grid = hidden::make_grid(17.1e9, 17.26e9, static_cast<std::size_t>(state.range(0)));
    const auto delays = hidden::make_delays(0.0, 40e-6, 401);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hidden::sweep_probe(s, "q", grid, hidden::PowerSchedule{}, delays, mode(state)));
    }
}

void BM_average_cross_traces(benchmark::State &state)
{
    survey::ScatteringData data;
    data.n_ports = 20;
    data.freqs = hidden::make_grid(2e9, 20e9, static_cast<std::size_t>(state.range(0)));
    data.values.resize(data.freqs.size() * 400);
    for (std::size_t k = 0; k < data.values.size(); ++k) {
        data.values[k] = std::polar(1e-3 * (1.0 + static_cast<double>(k % 7)), 0.1 * static_cast<double>(k % 13));
    }
    std::map<int, std::string> sides;
    for (int p = 1; p <= 20; ++p) {
        sides[p] = p <= 10 ? "a" : "b";
    }
    const auto pairs = survey::cross_pairs_from_sides(sides);
    for (auto _ : state) {
        benchmark::DoNotOptimize(survey::average_cross_traces(data, pairs, mode(state)));
    }
}

} // namespace

BENCHMARK(BM_ladder_crosstalk)->ArgsProduct({{4000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_filter_response)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_probe)->ArgsProduct({{41}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_average_cross_traces)->ArgsProduct({{2001}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
