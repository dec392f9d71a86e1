// Kernel benchmark: serial reference vs OpenMP paths for the grid expansion,
// the Hata graph build and the census, plus the end-to-end pipeline.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "carpetlab/census.hpp"
#include "carpetlab/classifier.hpp"
#include "carpetlab/graph_metrics.hpp"
#include "carpetlab/grid.hpp"

using namespace carpetlab;

namespace {

double time_once(const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double best_of(int reps, const std::function<void()>& body) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(body));
    return best;
}

// 6x6 grid with a 2x2 hole: a mid-sized connected carpet.
DigitSet big_carpet() {
    std::vector<Digit> digits;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (!(a >= 2 && a <= 3 && b >= 2 && b <= 3)) digits.push_back({a, b});
    return DigitSet::create(GridSpec::square(6), digits);
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.3fs %10.3fs %9.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = 4;
#ifdef _OPENMP
    jobs = omp_get_max_threads();
#endif
    if (argc > 1) jobs = std::stoi(argv[1]);

    std::printf("carpetlab kernel benchmark (parallel jobs = %d)\n", jobs);
    std::printf("%-34s %11s %11s %10s\n", "kernel", "serial", "parallel", "speedup");

    DigitSet carpet = big_carpet();

    {
        double s = best_of(3, [&] { build_level_grid(carpet, 4, 1); });
        double p = best_of(3, [&] { build_level_grid(carpet, 4, jobs); });
        row("level grid |D|=32, n=4 (1.0M)", s, p);
    }
    {
        double s = best_of(3, [&] { build_hata(carpet, 3, false, 1); });
        double p = best_of(3, [&] { build_hata(carpet, 3, false, jobs); });
        row("hata graph |D|=32, k=3 (33k)", s, p);
    }
    {
        double s = best_of(1, [&] { build_hata(carpet, 4, false, 1); });
        double p = best_of(1, [&] { build_hata(carpet, 4, false, jobs); });
        row("hata graph |D|=32, k=4 (1.0M)", s, p);
    }
    {
        auto census = [&](int j) {
            CensusOptions opt;
            opt.n = 3;
            opt.jobs = j;
            opt.out_path = "/tmp/carpetlab_bench_census.jsonl";
            std::remove(opt.out_path.c_str());
            census_run(opt);
            std::remove(opt.out_path.c_str());
        };
        double s = best_of(1, [&] { census(1); });
        double p = best_of(1, [&] { census(jobs); });
        row("census N=3 (501 sets)", s, p);
    }
    {
        double s = best_of(1, [&] {
            ClassifyOptions opt;
            opt.jobs = 1;
            classify(carpet, opt);
        });
        double p = best_of(1, [&] {
            ClassifyOptions opt;
            opt.jobs = jobs;
            classify(carpet, opt);
        });
        row("classify |D|=32 end-to-end", s, p);
    }
    return 0;
}
