#include "mfrec/kernels.hpp"

#include <cassert>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfrec::kernels {

namespace {

#ifdef _OPENMP
Backend g_backend = Backend::parallel;
#else
Backend g_backend = Backend::serial;
#endif

// Reduction chunk size. Fixed so that partial sums do not depend on the
// number of threads.
constexpr std::size_t kChunk = 4096;

inline void resize_out(DenseMatrix& c, std::size_t r, std::size_t n) {
    if (c.rows != r || c.cols != n) {
        c.rows = r;
        c.cols = n;
        c.values.assign(r * n, 0.0);
    }
}

} // namespace

void set_backend(Backend b) {
#ifndef _OPENMP
    (void)b;
    g_backend = Backend::serial;
#else
    g_backend = b;
#endif
}

Backend backend() { return g_backend; }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---------------------------------------------------------------------------
// Row workers. Each computes a contiguous row range of the output; per output
// element the accumulation order is ascending over the contraction index, so
// serial and parallel execution agree bitwise.
// ---------------------------------------------------------------------------

namespace {

// c[i,:] = sum_k a[i,k] * b[k,:]
void matmul_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c,
                 std::size_t i0, std::size_t i1) {
    const std::size_t n = b.cols, kk = a.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        double* ci = c.row(i);
        std::memset(ci, 0, n * sizeof(double));
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < kk; ++k) {
            const double aik = ai[k];
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

// c[i,:] = sum_k a[k,i] * b[k,:]   (c = a^T b)
void matmul_tn_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c,
                    std::size_t i0, std::size_t i1) {
    const std::size_t n = b.cols, kk = a.rows;
    for (std::size_t i = i0; i < i1; ++i) {
        double* ci = c.row(i);
        std::memset(ci, 0, n * sizeof(double));
        for (std::size_t k = 0; k < kk; ++k) {
            const double aki = a(k, i);
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aki * bk[j];
        }
    }
}

// c[i,j] = dot(a.row(i), b.row(j))   (c = a b^T)
void matmul_nt_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c,
                    std::size_t i0, std::size_t i1) {
    const std::size_t n = b.rows, kk = a.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double* bj = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < kk; ++k) s += ai[k] * bj[k];
            ci[j] = s;
        }
    }
}

// g[i,j] = dot(a.row(i), a.row(j)), j <= i (lower triangle)
void gram_nt_rows(const DenseMatrix& a, DenseMatrix& g, std::size_t i0, std::size_t i1) {
    const std::size_t kk = a.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        const double* ai = a.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            const double* aj = a.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < kk; ++k) s += ai[k] * aj[k];
            g(i, j) = s;
        }
    }
}

// g[i,j] = sum_u a[u,i] * a[u,j], j >= i (upper triangle)
void gram_tn_rows(const DenseMatrix& a, DenseMatrix& g, std::size_t i0, std::size_t i1) {
    const std::size_t m = a.rows, n = a.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        double* gi = g.row(i);
        for (std::size_t j = i; j < n; ++j) gi[j] = 0.0;
        for (std::size_t u = 0; u < m; ++u) {
            const double aui = a(u, i);
            if (aui == 0.0) continue;
            const double* au = a.row(u);
            for (std::size_t j = i; j < n; ++j) gi[j] += aui * au[j];
        }
    }
}

void frob_rows(const DenseMatrix& x, const DenseMatrix& y, double* partial,
               std::size_t i0, std::size_t i1) {
    const std::size_t n = x.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        const double* xi = x.row(i);
        const double* yi = y.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = xi[j] - yi[j];
            s += d * d;
        }
        partial[i] = s;
    }
}

void dot_chunks(const double* x, const double* y, std::size_t n, double* partial,
                std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
        partial[c] = s;
    }
}

void mu_rows(DenseMatrix& h, const DenseMatrix& num, const DenseMatrix& den,
             double eps, std::size_t i0, std::size_t i1) {
    const std::size_t n = h.cols;
    for (std::size_t i = i0; i < i1; ++i) {
        double* hi = h.row(i);
        const double* ni = num.row(i);
        const double* di = den.row(i);
        for (std::size_t j = 0; j < n; ++j) hi[j] *= ni[j] / (di[j] + eps);
    }
}

void mirror_lower_to_upper(DenseMatrix& g) {
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = i + 1; j < g.cols; ++j) g(i, j) = g(j, i);
}

void mirror_upper_to_lower(DenseMatrix& g) {
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = i + 1; j < g.cols; ++j) g(j, i) = g(i, j);
}

} // namespace

// ---------------------------------------------------------------------------
// Serial reference backend.
// ---------------------------------------------------------------------------

namespace serial {

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.cols == b.rows);
    resize_out(c, a.rows, b.cols);
    matmul_rows(a, b, c, 0, a.rows);
}

void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.rows == b.rows);
    resize_out(c, a.cols, b.cols);
    matmul_tn_rows(a, b, c, 0, a.cols);
}

void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.cols == b.cols);
    resize_out(c, a.rows, b.rows);
    matmul_nt_rows(a, b, c, 0, a.rows);
}

void gram_nt(const DenseMatrix& a, DenseMatrix& g) {
    resize_out(g, a.rows, a.rows);
    gram_nt_rows(a, g, 0, a.rows);
    mirror_lower_to_upper(g);
}

void gram_tn(const DenseMatrix& a, DenseMatrix& g) {
    resize_out(g, a.cols, a.cols);
    gram_tn_rows(a, g, 0, a.cols);
    mirror_upper_to_lower(g);
}

double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    std::vector<double> partial(x.rows);
    frob_rows(x, y, partial.data(), 0, x.rows);
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks);
    dot_chunks(x, y, n, partial.data(), 0, nchunks);
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps) {
    assert(h.rows == num.rows && h.cols == num.cols);
    assert(h.rows == den.rows && h.cols == den.cols);
    mu_rows(h, num, den, eps, 0, h.rows);
}

} // namespace serial

// ---------------------------------------------------------------------------
// OpenMP backend. Row ranges are distributed over threads; workers are the
// same as the serial ones, so each row is produced by identical code.
// ---------------------------------------------------------------------------

namespace omp {

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.cols == b.rows);
    resize_out(c, a.rows, b.cols);
    const long m = static_cast<long>(a.rows);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) matmul_rows(a, b, c, i, i + 1);
}

void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.rows == b.rows);
    resize_out(c, a.cols, b.cols);
    const long m = static_cast<long>(a.cols);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) matmul_tn_rows(a, b, c, i, i + 1);
}

void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    assert(a.cols == b.cols);
    resize_out(c, a.rows, b.rows);
    const long m = static_cast<long>(a.rows);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) matmul_nt_rows(a, b, c, i, i + 1);
}

void gram_nt(const DenseMatrix& a, DenseMatrix& g) {
    resize_out(g, a.rows, a.rows);
    const long m = static_cast<long>(a.rows);
    // Lower-triangle rows get longer toward the bottom; guided keeps threads fed.
#pragma omp parallel for schedule(guided)
    for (long i = 0; i < m; ++i) gram_nt_rows(a, g, i, i + 1);
    mirror_lower_to_upper(g);
}

void gram_tn(const DenseMatrix& a, DenseMatrix& g) {
    resize_out(g, a.cols, a.cols);
    const long n = static_cast<long>(a.cols);
#pragma omp parallel for schedule(guided)
    for (long i = 0; i < n; ++i) gram_tn_rows(a, g, i, i + 1);
    mirror_upper_to_lower(g);
}

double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    std::vector<double> partial(x.rows);
    const long m = static_cast<long>(x.rows);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) frob_rows(x, y, partial.data(), i, i + 1);
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks);
    const long nc = static_cast<long>(nchunks);
#pragma omp parallel for schedule(static)
    for (long c = 0; c < nc; ++c) dot_chunks(x, y, n, partial.data(), c, c + 1);
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps) {
    assert(h.rows == num.rows && h.cols == num.cols);
    const long m = static_cast<long>(h.rows);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) mu_rows(h, num, den, eps, i, i + 1);
}

} // namespace omp

// ---------------------------------------------------------------------------
// Dispatchers.
// ---------------------------------------------------------------------------

#define MFREC_DISPATCH(fn, ...)                         \
    do {                                                \
        if (g_backend == Backend::parallel)             \
            return omp::fn(__VA_ARGS__);                \
        return serial::fn(__VA_ARGS__);                 \
    } while (0)

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    MFREC_DISPATCH(matmul, a, b, c);
}
void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    MFREC_DISPATCH(matmul_tn, a, b, c);
}
void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    MFREC_DISPATCH(matmul_nt, a, b, c);
}
void gram_nt(const DenseMatrix& a, DenseMatrix& g) { MFREC_DISPATCH(gram_nt, a, g); }
void gram_tn(const DenseMatrix& a, DenseMatrix& g) { MFREC_DISPATCH(gram_tn, a, g); }
double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y) {
    MFREC_DISPATCH(frobenius_diff_sq, x, y);
}
double dot(const double* x, const double* y, std::size_t n) {
    MFREC_DISPATCH(dot, x, y, n);
}
void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps) {
    MFREC_DISPATCH(multiplicative_update, h, num, den, eps);
}

#undef MFREC_DISPATCH

} // namespace mfrec::kernels
