#include <benchmark/benchmark.h>

#include "roomgen/augment.hpp"
#include "roomgen/generate.hpp"
#include "roomgen/layout.hpp"
#include "roomgen/ocl.hpp"
#include "roomgen/scene.hpp"
#include "roomgen/synth.hpp"

namespace {

using namespace roomgen;

const std::vector<PointCloud>& catalog() {
  static const auto c = synth::make_catalog_clouds(90, 42);
  return c;
}

void BM_RotateZ(benchmark::State& state) {
  const PointCloud& pc = catalog()[0];
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rotate_z(pc, theta += 0.01));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pc.size()));
}
BENCHMARK(BM_RotateZ);

void BM_AugmentObject(benchmark::State& state) {
  Rng rng(1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(augment_object(catalog()[i++ % catalog().size()], rng, {}));
  }
}
BENCHMARK(BM_AugmentObject);

void BM_GenerateLayout(benchmark::State& state) {
  Rng rng(2);
  std::vector<PointCloud> objs;
  for (int k = 0; k < state.range(0); ++k) objs.push_back(augment_object(catalog()[k], rng, {}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_layout(objs, rng, {}));
  }
}
BENCHMARK(BM_GenerateLayout)->Arg(12)->Arg(18);

void BM_GeneratePair(benchmark::State& state) {
  SceneConfig cfg;
  cfg.point_budget = static_cast<std::size_t>(state.range(0));
  std::uint32_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_indexed_pair(catalog(), 3, i++, cfg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GeneratePair)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

void BM_OclLoss(benchmark::State& state) {
  Rng rng(4);
  const Eigen::Index n = state.range(0);
  auto rows = [&](Eigen::Index r) {
    FeatureMatrix m(r, 128);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index k = 0; k < 128; ++k) m(i, k) = rng.normal(0, 1);
      m.row(i).normalize();
    }
    return m;
  };
  const FeatureMatrix a = rows(n), b = rows(n), extras = rows(15 * n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocl_loss(a, b, extras, {}));
  }
}
BENCHMARK(BM_OclLoss)->Arg(12)->Arg(18);

void BM_OclGrad(benchmark::State& state) {
  Rng rng(5);
  FeatureMatrix a(18, 128), b(18, 128);
  for (auto* m : {&a, &b}) {
    for (Eigen::Index i = 0; i < 18; ++i) {
      for (Eigen::Index k = 0; k < 128; ++k) (*m)(i, k) = rng.normal(0, 1);
      m->row(i).normalize();
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocl_grad(a, b, FeatureMatrix(0, 128), {}));
  }
}
BENCHMARK(BM_OclGrad);

}  // namespace

BENCHMARK_MAIN();
