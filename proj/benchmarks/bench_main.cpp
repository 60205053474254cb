#include <benchmark/benchmark.h>

#include "potkit/builtins.hpp"
#include "potkit/charpoly.hpp"
#include "potkit/envelope.hpp"
#include "potkit/rng.hpp"
#include "potkit/spectral.hpp"
#include "potkit/synthesis.hpp"

using namespace potkit;

namespace {

void BM_PotentialDiv3(benchmark::State& state) {
    const DiffOp div3 = builtin("div", 3);
    for (auto _ : state) benchmark::DoNotOptimize(potential_of(div3, false));
}
BENCHMARK(BM_PotentialDiv3);

void BM_PotentialCurl3d(benchmark::State& state) {
    const DiffOp curl = builtin("curl3d", 3);
    for (auto _ : state) benchmark::DoNotOptimize(potential_of(curl, false));
}
BENCHMARK(BM_PotentialCurl3d);

void BM_CharPoly(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    Rng rng(7);
    PolyMatrix m(size, size, 2);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            Poly p(2);
            p.add_term(MultiIndex::unit(2, 0), rng.rational_nonzero(9, 4));
            p.add_term(MultiIndex::unit(2, 1), rng.rational_nonzero(9, 4));
            m.at(i, j) = p;
        }
    PolyMatrix h = m * m.transpose();
    for (auto _ : state) benchmark::DoNotOptimize(faddeev_leverrier(h));
}
BENCHMARK(BM_CharPoly)->Arg(3)->Arg(4);

void BM_ExactRank(benchmark::State& state) {
    Rng rng(11);
    RatMatrix m(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(i, j) = rng.rational_nonzero();
    for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_ExactRank);

void BM_ProjectDiv2(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const AfreeProjector projector(builtin("div", 2));
    const TorusField w = random_field(2, 2, m, m / 4, false, 3);
    for (auto _ : state) benchmark::DoNotOptimize(projector.project(w));
}
BENCHMARK(BM_ProjectDiv2)->Arg(64)->Arg(128);

void BM_VerifyPair(benchmark::State& state) {
    const DiffOp a = builtin("div", 3);
    const DiffOp b = potential_of(a, false);
    for (auto _ : state) benchmark::DoNotOptimize(verify_exact_pair(a, b, 25, 1));
}
BENCHMARK(BM_VerifyPair);

void BM_EnvelopeCandidate(benchmark::State& state) {
    const DiffOp grad_vec = builtin("grad_vector", 2);
    const Integrand det = parse_integrand("det2", 4);
    const std::vector<double> eta{1.0, 0.0, 0.0, 1.0};
    for (auto _ : state) {
        EnvelopeParams params;
        params.base_grid = 64;
        benchmark::DoNotOptimize(estimate_envelope(det, eta, grad_vec, 4, 5, params));
    }
}
BENCHMARK(BM_EnvelopeCandidate);

}  // namespace

BENCHMARK_MAIN();
