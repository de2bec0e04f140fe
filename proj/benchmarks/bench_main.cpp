#include <benchmark/benchmark.h>

#include "lowdim/codec.hpp"
#include "lowdim/grid.hpp"
#include "lowdim/jl.hpp"
#include "lowdim/measures.hpp"

using namespace lowdim;

namespace {

void BM_Energy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cloud = jl::gaussian_cloud(n, 32, 1);
  const auto orig = pairwise_distances(cloud);
  const auto emb = pairwise_distances(jl::gaussian_projection(cloud, {32, 8, 2, std::nullopt}));
  for (auto _ : state) benchmark::DoNotOptimize(measures::energy(orig, emb, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_Energy)->Arg(64)->Arg(256)->Arg(1024);

void BM_Projection(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto cloud = jl::gaussian_cloud(256, 64, 3);
  for (auto _ : state) benchmark::DoNotOptimize(jl::gaussian_projection(cloud, {64, k, 4, std::nullopt}));
}
BENCHMARK(BM_Projection)->Arg(8)->Arg(64)->Arg(256);

void BM_GridEncode(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const grid::GridParams gp{0.001, 1.0, k, 1.0, 5};
  const auto pts = jl::uniform_ball(256, k, 1.0, 6);
  const auto codes = grid::round_to_grid(pts, gp);
  for (auto _ : state) {
    Bitstring out;
    for (const auto& c : codes) grid::encode_grid_point(c, gp, out);
    benchmark::DoNotOptimize(out.size());
  }
}
BENCHMARK(BM_GridEncode)->Arg(4)->Arg(16)->Arg(64);

void BM_CodecRoundTrip(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  const auto p = instances::InstanceParams::from_l(l, 0.2);
  const auto inst = instances::build_instance(p, 7);
  codec::CodecParams cp;
  cp.grid.delta = 0.001;
  cp.grid.dim = p.d;
  for (auto _ : state) {
    const auto art = codec::encode_instance(inst, inst.points(), cp);
    benchmark::DoNotOptimize(codec::decode_instance(art, cp, p));
  }
}
BENCHMARK(BM_CodecRoundTrip)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
