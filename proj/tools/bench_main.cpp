#include <chrono>
#include <cstdio>
#include <string>

#include "graphonlab/alignment.hpp"
#include "graphonlab/generators.hpp"
#include "graphonlab/norms.hpp"
#include "graphonlab/reference.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gl = graphonlab;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto start = std::chrono::steady_clock::now();
        f();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        best = std::min(best, ms);
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   |diff| %.2e\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
    uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1234;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

    {
        // exact cut norm: Gray-code blocks vs plain subset pairs
        int n = 11;
        auto x = gl::gen::random_step(gl::KernelClass::GeneralKernel, n, 1, 1.0, seed);
        double v_par = 0, v_ser = 0;
        double par = time_ms([&] {
            v_par = gl::norms::cut_norm_kernel_exact(x.kernel, x.partition.masses).value;
        });
        double ser = time_ms(
            [&] { v_ser = gl::reference::cut_norm_exact(x.kernel, x.partition.masses).value; },
            1);
        report("cut_norm_exact (n=12)", ser, par, std::abs(v_par - v_ser));
    }
    {
        // heuristic cut norm: parallel restarts vs single-threaded restarts
        int n = 256;
        auto x = gl::gen::random_step(gl::KernelClass::GeneralKernel, n, 1, 1.0, seed + 1);
        gl::norms::CutNormParams p;
        p.restarts = 64;
        double v_par = 0;
        double par = time_ms([&] {
            v_par = gl::norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p).value;
        });
#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        double v_ser = 0;
        double ser = time_ms([&] {
            v_ser = gl::norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p).value;
        });
#ifdef _OPENMP
        omp_set_num_threads(saved);
#endif
        report("cut_norm_heuristic (n=256)", ser, par, std::abs(v_par - v_ser));
    }
    {
        // exact alignment: permutation blocks vs next_permutation scan
        int n = 6;
        auto a = gl::gen::random_step(gl::KernelClass::Graphon, n, 1, 1.0, seed + 2);
        auto b = gl::gen::random_step(gl::KernelClass::Graphon, n, 1, 1.0, seed + 3);
        double v_par = 0, v_ser = 0;
        gl::alignment::AlignmentParams p;
        p.mode = gl::alignment::DistanceMode::Exact;
        double par = time_ms([&] { v_par = gl::alignment::cut_distance(a, b, p).distance; });
        double ser = time_ms([&] { v_ser = gl::reference::cut_distance_exact(a, b); }, 1);
        report("cut_distance_exact (n=6)", ser, par, std::abs(v_par - v_ser));
    }
    return 0;
}
