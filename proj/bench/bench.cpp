// Wall-clock comparison of the OpenMP kernels against their serial
// references on fixed workloads. Each pair is checked for equal results
// before timing, so the numbers compare identical computations.

#include "subtile/block_code.hpp"
#include "subtile/finite_type.hpp"
#include "subtile/plane_tiling.hpp"
#include "subtile/substitution1d.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace subtile;

double seconds(const std::function<void()>& fn) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-24s %10.4fs %10.4fs %8.2fx\n", name.c_str(), serial,
                parallel, serial / parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP off)\n");
#endif
    std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    Substitution1D fib = fibonacci();

    {
        Pattern w = fib.iterate(kTileB, 24); // 121393 letters
        auto a = word_factors_serial(w, 10);
        auto b = word_factors(w, 10);
        if (a.size() != b.size()) {
            std::fprintf(stderr, "word_factors mismatch\n");
            return 1;
        }
        row("word_factors m=10",
            seconds([&] { word_factors_serial(w, 10); }),
            seconds([&] { word_factors(w, 10); }));
    }

    {
        // the alternation is a member at radius 1, so neither side can
        // exit early and both scan every center
        WindowSFT sft = sft_from_language(fib, 1);
        std::vector<Letter> cells;
        for (int i = 0; i < 600000; ++i) {
            cells.push_back(kTileA);
            cells.push_back(kTileB);
        }
        PeriodicConfig x{Pattern::word(cells)};
        auto a = is_member_serial(sft, x);
        auto b = is_member(sft, x);
        if (!a.member || !b.member) {
            std::fprintf(stderr, "is_member mismatch\n");
            return 1;
        }
        row("is_member n=1",
            seconds([&] { is_member_serial(sft, x); }),
            seconds([&] { is_member(sft, x); }));
    }

    {
        Alphabet ab({"a", "b"});
        SlidingBlockCode code = code_from_function(
            2, ab, ab, all_windows_1d(ab, 2), [](const Window& w) {
                Letter acc = 0;
                for (Letter l : w.cells().cells()) acc ^= l;
                return acc;
            });
        Pattern w = fib.iterate(kTileB, 23);
        Pattern a = apply_serial(code, w);
        Pattern b = apply(code, w);
        if (!(a.cells() == b.cells())) {
            std::fprintf(stderr, "apply mismatch\n");
            return 1;
        }
        row("apply radius=2",
            seconds([&] { apply_serial(code, w); }),
            seconds([&] { apply(code, w); }));
    }

    {
        RowsTiling rows = RowsTiling::sample(11, 32, Golden(600));
        PatchSampler sampler =
            rows_census_sampler(rows, Golden(BigRat(3, 2)), 5, 400);
        auto a = neighborhood_census_serial(sampler, 1500);
        auto b = neighborhood_census(sampler, 1500);
        if (a.classes != b.classes) {
            std::fprintf(stderr, "census mismatch\n");
            return 1;
        }
        row("census budget=1500",
            seconds([&] { neighborhood_census_serial(sampler, 1500); }),
            seconds([&] { neighborhood_census(sampler, 1500); }));
    }

    return 0;
}
