#include <benchmark/benchmark.h>

#include <string>

#include "kat/derivative_automaton.hpp"
#include "kat/equivalence.hpp"
#include "kat/error.hpp"
#include "kat/normal_form.hpp"
#include "kat/while_frontend.hpp"
#include "support.hpp"

using namespace kat;
using namespace kat::testing;

namespace {

const Alphabet& bench_alphabet() {
    static const Alphabet a({"b", "c", "d", "e", "f", "g"}, {"p", "q"});
    return a;
}

ExprType bench_type() { return {TestSet::single(0), TestSet{}}; }

// Loops nested one per test, alternating programs, compiled from the while
// language.
const Expr& workload() {
    static const Expr e = [] {
        const auto& a = bench_alphabet();
        std::string text = "q";
        for (std::size_t i = a.test_count(); i-- > 0;) {
            const std::string x = i % 2 ? "q" : "p";
            text = "while " + a.test_name(i) + " do { " + x + "; " + text + "; " + x + " }";
        }
        return compile(a, parse_program(a, text), TestSet::single(0)).expr;
    }();
    return e;
}

const DerivativeAutomaton& workload_automaton() {
    static const DerivativeAutomaton d = derivative_automaton(bench_alphabet(), workload(), bench_type());
    return d;
}

const std::vector<FrontierItem>& workload_frontier() {
    static const std::vector<FrontierItem> f = [] {
        std::vector<FrontierItem> out;
        const auto& d = workload_automaton();
        for (std::uint32_t bits = 0; bits < d.exprs.size(); ++bits)
            for (const auto& x : d.exprs[bits]) out.push_back({x, TestSet(bits)});
        return out;
    }();
    return f;
}

const SyntacticBisimulation& workload_certificate() {
    static const SyntacticBisimulation r = [] {
        Rng rng(29);
        const Expr other = rewrite(bench_alphabet(), rng, workload(), bench_type(), 6);
        auto v = decide_equiv(bench_alphabet(), workload(), other, bench_type());
        return std::get<Equivalent>(v).certificate;
    }();
    return r;
}

Execution mode(const benchmark::State& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_ExpandFrontier(benchmark::State& state) {
    const auto& f = workload_frontier();
    for (auto _ : state) benchmark::DoNotOptimize(expand_frontier(bench_alphabet(), f, mode(state)));
    state.counters["items"] = static_cast<double>(f.size());
}

void BM_DerivativeAutomaton(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(derivative_automaton(bench_alphabet(), workload(), bench_type(),
                                                      default_state_cap, mode(state)));
    state.counters["states"] = static_cast<double>(workload_automaton().automaton.total_states());
}

void BM_Validate(benchmark::State& state) {
    const auto& m = workload_automaton().automaton;
    for (auto _ : state) benchmark::DoNotOptimize(validate(m, mode(state)));
}

void BM_CheckCertificate(benchmark::State& state) {
    const auto& r = workload_certificate();
    for (auto _ : state) benchmark::DoNotOptimize(check_certificate(r, mode(state)));
    state.counters["pairs"] = static_cast<double>(r.size());
}

} // namespace

BENCHMARK(BM_ExpandFrontier)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DerivativeAutomaton)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Validate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckCertificate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
