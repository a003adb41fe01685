#include "sia/dynamics.hpp"
#include "sia/oracle.hpp"
#include "sia/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace sia;

namespace {

const FamilySpec& family(const char* name, int p, int q) {
    static std::map<std::tuple<std::string, int, int>, FamilySpec> cache;
    auto key = std::make_tuple(std::string(name), p, q);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_family(name, p, q)).first;
    return it->second;
}

void BM_PolyMultiply(benchmark::State& st) {
    Poly a, b;
    for (int i = 0; i < st.range(0); ++i) {
        Monomial m;
        m.set(0, i % 5);
        m.set(1, (i * 3) % 7 - 3);
        m.set(2, i % 3);
        a += Poly::monomial(m, GaussianRational::frac(i + 1, 7));
        m.set(3, 1);
        b += Poly::monomial(m, GaussianRational(Rational(i), Rational(-2)));
    }
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_PolyMultiply)->RangeMultiplier(4)->Range(4, 256);

void BM_BracketL2H(benchmark::State& st) {
    const FamilySpec& f = family("sphere-generic", 1, 1);
    for (auto _ : st) benchmark::DoNotOptimize(poisson_bracket(f.L2, f.H));
}
BENCHMARK(BM_BracketL2H);

void BM_BuildLadderSet(benchmark::State& st) {
    const FamilySpec& f = family("ttw", static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(build_ladder_set(f));
}
BENCHMARK(BM_BuildLadderSet)->Args({1, 1})->Args({2, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_SymbolicIdentity(benchmark::State& st) {
    const FamilySpec& f = family("ttw", 2, 1);
    LadderSet ls = build_ladder_set(f);
    QuantityTable t(f, ls);
    IdentitySpec id{};
    for (const auto& s : structure_suite(f))
        if (s.name == "L2_R") id = s;
    for (auto _ : st) benchmark::DoNotOptimize(check_identity(id, t));
}
BENCHMARK(BM_SymbolicIdentity)->Unit(benchmark::kMillisecond);

void BM_OracleIdentity(benchmark::State& st) {
    const FamilySpec& f = family("ttw", 2, 1);
    LadderSet ls = build_ladder_set(f);
    IdentitySpec id{};
    for (const auto& s : structure_suite(f))
        if (s.name == "L2_R") id = s;
    for (auto _ : st) benchmark::DoNotOptimize(oracle_check(f, ls, id, 20, 1));
}
BENCHMARK(BM_OracleIdentity)->Unit(benchmark::kMillisecond);

void BM_Integrate(benchmark::State& st) {
    const FamilySpec& f = family("ttw", 1, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, random_params(f, 1));
    NumericState s0 = random_initial_state(m, 2);
    long steps = 0;
    for (auto _ : st) {
        Trajectory tr = integrate(m, s0, {});
        steps += tr.steps;
        benchmark::DoNotOptimize(tr);
    }
    st.counters["steps"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Integrate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
