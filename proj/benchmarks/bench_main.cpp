#include <benchmark/benchmark.h>

#include <random>

#include "cky/certify.hpp"
#include "cky/interval.hpp"
#include "cky/odes.hpp"
#include "cky/series.hpp"
#include "cky/simulate.hpp"

using namespace cky;

static void BM_IntervalMulAdd(benchmark::State& st)
{
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<Interval> a(1024), b(1024);
    for (int i = 0; i < 1024; ++i) {
        const double x = u(g), y = u(g);
        a[i] = Interval(std::min(x, y), std::max(x, y));
        b[i] = Interval(u(g));
    }
    for (auto _ : st) {
        Interval acc(0.0);
        for (int i = 0; i < 1024; ++i)
            acc = acc + a[i] * b[i];
        benchmark::DoNotOptimize(acc);
    }
    st.SetItemsProcessed(st.iterations() * 1024);
}
BENCHMARK(BM_IntervalMulAdd);

static void BM_IntervalDiv(benchmark::State& st)
{
    Interval a(1.0, 1.5), b(2.0, 3.0);
    for (auto _ : st) {
        benchmark::DoNotOptimize(a);
        benchmark::DoNotOptimize(b);
        Interval r = a / b;
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_IntervalDiv);

static void BM_SeriesBuild(benchmark::State& st)
{
    ScalingParams p;
    p.c_l = 3.7967;
    const int K = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(build_coefficients(p, K));
}
BENCHMARK(BM_SeriesBuild)->Arg(50)->Arg(100);

static void BM_SeriesBuildInterval(benchmark::State& st)
{
    ScalingParams p;
    p.c_l = 3.0;
    for (auto _ : st)
        benchmark::DoNotOptimize(build_coefficients_interval(p, 21));
}
BENCHMARK(BM_SeriesBuildInterval);

static void BM_ValidatedStep(benchmark::State& st)
{
    const IntervalState s0 = validated_initial(2, 3.0, 20, 0.1);
    const Propagation prop = st.range(0) ? Propagation::Matrix : Propagation::Additive;
    for (auto _ : st) {
        IntervalState s = s0;
        for (int i = 0; i < 1000; ++i)
            s = validated_step(s, s.eta + 2.9e-6, 3.0, 2, prop);
        benchmark::DoNotOptimize(s);
    }
    st.SetItemsProcessed(st.iterations() * 1000);
}
BENCHMARK(BM_ValidatedStep)->Arg(0)->Arg(1);

static void BM_EvalG(benchmark::State& st)
{
    GConfig g;
    g.n_far = st.range(0);
    for (auto _ : st)
        benchmark::DoNotOptimize(eval_G(2, 3.8, g));
}
BENCHMARK(BM_EvalG)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Velocity(benchmark::State& st)
{
    const ParticleSystem sys = init_particles(2, WInit::Cos4Pi, Layout::desk());
    for (auto _ : st)
        benchmark::DoNotOptimize(velocity(sys));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(sys.size()));
}
BENCHMARK(BM_Velocity);

static void BM_ParticleStep(benchmark::State& st)
{
    const Layout lay = st.range(0) ? Layout::full() : Layout::desk();
    ParticleSystem sys = init_particles(2, WInit::Cos4Pi, lay);
    for (auto _ : st)
        step(sys, 1e-5);
    st.SetItemsProcessed(st.iterations() * static_cast<long>(sys.size()));
}
BENCHMARK(BM_ParticleStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
