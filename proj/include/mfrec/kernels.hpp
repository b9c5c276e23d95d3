#ifndef MFREC_KERNELS_HPP
#define MFREC_KERNELS_HPP

#include <cstddef>

#include "mfrec/dense.hpp"

namespace mfrec::kernels {

// Execution backend for the numeric kernels. `serial` is the plain-loop
// reference implementation; `parallel` is the OpenMP version. Both produce
// bit-identical results: every output element is owned by exactly one thread
// and accumulated in the same order, and reductions combine fixed-size chunk
// partials in a fixed order regardless of thread count.
enum class Backend { serial, parallel };

void set_backend(Backend b);
Backend backend();
int max_threads();

namespace serial {
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void gram_nt(const DenseMatrix& a, DenseMatrix& g);
void gram_tn(const DenseMatrix& a, DenseMatrix& g);
double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y);
double dot(const double* x, const double* y, std::size_t n);
void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps);
} // namespace serial

namespace omp {
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void gram_nt(const DenseMatrix& a, DenseMatrix& g);
void gram_tn(const DenseMatrix& a, DenseMatrix& g);
double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y);
double dot(const double* x, const double* y, std::size_t n);
void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps);
} // namespace omp

// Dispatching entry points; choose the implementation from the active backend.

// c = a * b
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
// c = a^T * b
void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
// c = a * b^T
void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
// g = a * a^T (symmetric, fully stored)
void gram_nt(const DenseMatrix& a, DenseMatrix& g);
// g = a^T * a (symmetric, fully stored)
void gram_tn(const DenseMatrix& a, DenseMatrix& g);
// sum of squared elementwise differences
double frobenius_diff_sq(const DenseMatrix& x, const DenseMatrix& y);
// chunked dot product; same result regardless of backend or thread count
double dot(const double* x, const double* y, std::size_t n);
// h <- h * num / (den + eps), elementwise
void multiplicative_update(DenseMatrix& h, const DenseMatrix& num,
                           const DenseMatrix& den, double eps);

} // namespace mfrec::kernels

#endif
