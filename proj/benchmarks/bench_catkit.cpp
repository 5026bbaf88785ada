#include <catkit/io.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>

using namespace catkit;

namespace {

Workspace& workspace() {
    static Workspace ws;
    return ws;
}

std::filesystem::path corpus(const std::string& relative) { return std::filesystem::path(CATKIT_CORPUS_DIR) / relative; }

CatPtr category(const std::string& name) { return workspace().load_category(corpus("categories/" + name + ".json")); }
IndexedCat fibration(const std::string& name) {
    return workspace().load_indexed(corpus("fibrations/" + name + ".json")).cat;
}

SimplicialMap identity_of(const SSetPtr& x) {
    SimplicialMap id{x, x, {}};
    for (int k = 0; k <= x->level(); ++k) {
        std::vector<std::size_t> v(x->size(k));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        id.maps.push_back(std::move(v));
    }
    return id;
}

void BM_Nerve(benchmark::State& state) {
    auto c = category("bz2");
    int level = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nerve(c, level).sset->size(level));
}
BENCHMARK(BM_Nerve)->DenseRange(3, 9, 2);

void BM_Replacement(benchmark::State& state) {
    auto c = category("square");
    int level = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simplicial_replacement(c, level).cat()->num_arrows());
}
BENCHMARK(BM_Replacement)->DenseRange(1, 3);

void BM_Homology(benchmark::State& state) {
    auto c = category("bz2");
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nerve_homology(c, depth).valid_to);
}
BENCHMARK(BM_Homology)->DenseRange(3, 7, 2);

void BM_AdjunctionSuite(benchmark::State& state) {
    auto e = fibration("chain");
    int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto x = build_extension(e, level);
        const FinCat& r = *x.replacement->cat();
        std::size_t holds = 0;
        for (ArrowId a = 0; a < r.num_arrows(); ++a)
            if (!r.is_identity(a)) holds += check_adjunction(x.transition(a), right_adjoint(x, a)).holds;
        benchmark::DoNotOptimize(holds);
    }
}
BENCHMARK(BM_AdjunctionSuite)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SectionEnumeration(benchmark::State& state) {
    auto e = fibration("chain");
    auto x = build_extension(e, static_cast<int>(state.range(0)));
    IndexedCat ix = x.indexed();
    for (auto _ : state) {
        auto found = enumerate_sections(ix, {}, [&](const Section& partial, ArrowId a) {
            return !(classify(x.replacement->delta(a)) & label_segal) || sends_segal_to_cartesian(x, partial, a);
        });
        benchmark::DoNotOptimize(found.size());
    }
}
BENCHMARK(BM_SectionEnumeration)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_RelativeComma(benchmark::State& state) {
    Nerve nv = nerve(category("point"), static_cast<int>(state.range(0)));
    SimplicialMap id = identity_of(nv.sset);
    for (auto _ : state) benchmark::DoNotOptimize(relative_comma(id, id).cat->num_arrows());
}
BENCHMARK(BM_RelativeComma)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_CheckResolution(benchmark::State& state) {
    FinFunctor f = workspace().load_functor(corpus("functors/arrow_to_point.json"));
    int level = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(check_resolution(f, level, 2).per_fibre.size());
}
BENCHMARK(BM_CheckResolution)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
