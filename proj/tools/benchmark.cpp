// Kernel and end-to-end benchmark: serial reference vs OpenMP backend.
//
//   mfrec-benchmark [--quick]
//
// Prints one row per kernel with both timings and the speedup. Results are
// checked for bit-identity between backends while timing.

#include <cstdio>
#include <cstring>
#include <string>

#include "mfrec/kernels.hpp"
#include "mfrec/nmf.hpp"
#include "mfrec/rng.hpp"
#include "mfrec/svd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>

using namespace mfrec;
namespace kn = mfrec::kernels;

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double lo, double hi) {
    DenseMatrix m(r, c);
    for (double& v : m.values) v = lo + (hi - lo) * rng.uniform01();
    return m;
}

template <class F>
double time_best_of(F&& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now();
        fn();
        best = std::min(best, now() - t0);
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-22s %10.4fs %10.4fs %7.2fx   %s\n", name, serial, parallel,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    const std::size_t dim = quick ? 160 : 700;
    const std::size_t users = quick ? 120 : 943;
    const std::size_t items = quick ? 200 : 1682;
    const int reps = quick ? 2 : 3;

    std::printf("threads available: %d\n", kn::max_threads());
    std::printf("%-22s %11s %11s %8s\n", "kernel", "serial", "openmp", "speedup");

    Rng rng(8080);
    DenseMatrix a = random_matrix(dim, dim, rng, -1.0, 1.0);
    DenseMatrix b = random_matrix(dim, dim, rng, -1.0, 1.0);

    {
        DenseMatrix c1, c2;
        kn::set_backend(kn::Backend::serial);
        const double ts = time_best_of([&] { kn::matmul(a, b, c1); }, reps);
        kn::set_backend(kn::Backend::parallel);
        const double tp = time_best_of([&] { kn::matmul(a, b, c2); }, reps);
        report("matmul", ts, tp, c1.values == c2.values);
    }
    {
        DenseMatrix g1, g2;
        kn::set_backend(kn::Backend::serial);
        const double ts = time_best_of([&] { kn::gram_nt(a, g1); }, reps);
        kn::set_backend(kn::Backend::parallel);
        const double tp = time_best_of([&] { kn::gram_nt(a, g2); }, reps);
        report("gram A*A^T", ts, tp, g1.values == g2.values);
    }
    {
        kn::set_backend(kn::Backend::serial);
        double f1 = 0.0, f2 = 0.0;
        const double ts = time_best_of([&] { f1 = kn::frobenius_diff_sq(a, b); }, reps);
        kn::set_backend(kn::Backend::parallel);
        const double tp = time_best_of([&] { f2 = kn::frobenius_diff_sq(a, b); }, reps);
        report("frobenius_diff_sq", ts, tp, f1 == f2);
    }

    // End-to-end fits at rating-matrix scale.
    DenseMatrix x = random_matrix(users, items, rng, 1.0, 5.0);
    {
        NmfModel m1, m2;
        kn::set_backend(kn::Backend::serial);
        const double ts =
            time_best_of([&] { m1 = nmf_fit(x, 15, quick ? 8 : 25, 0.0, 99); }, 1);
        kn::set_backend(kn::Backend::parallel);
        const double tp =
            time_best_of([&] { m2 = nmf_fit(x, 15, quick ? 8 : 25, 0.0, 99); }, 1);
        report("nmf_fit r=15", ts, tp,
               m1.w.values == m2.w.values && m1.h.values == m2.h.values);
    }
    {
        SvdModel m1, m2;
        kn::set_backend(kn::Backend::serial);
        const double ts = time_best_of([&] { m1 = svd_truncated(x, 16); }, 1);
        kn::set_backend(kn::Backend::parallel);
        const double tp = time_best_of([&] { m2 = svd_truncated(x, 16); }, 1);
        report("svd_truncated k=16", ts, tp,
               m1.u.values == m2.u.values && m1.s == m2.s && m1.vt.values == m2.vt.values);
    }

    return 0;
}
