#include "doctest.h"

#include <vector>

#include "mfrec/kernels.hpp"
#include "mfrec/rng.hpp"

using namespace mfrec;
namespace kn = mfrec::kernels;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double lo = -1.0,
                          double hi = 1.0) {
    DenseMatrix m(r, c);
    for (double& v : m.values) v = lo + (hi - lo) * rng.uniform01();
    return m;
}

// Naive reference implementations, independent of the library kernels.
DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

DenseMatrix naive_transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

void check_close(const DenseMatrix& got, const DenseMatrix& want, double tol) {
    REQUIRE(got.rows == want.rows);
    REQUIRE(got.cols == want.cols);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got.values[i] == doctest::Approx(want.values[i]).epsilon(tol));
}

struct BackendGuard {
    kn::Backend saved;
    BackendGuard() : saved(kn::backend()) {}
    ~BackendGuard() { kn::set_backend(saved); }
};

} // namespace

TEST_CASE("matmul variants match a naive oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 1 + rng.bounded(12);
        const std::size_t k = 1 + rng.bounded(12);
        const std::size_t n = 1 + rng.bounded(12);
        DenseMatrix a = random_matrix(m, k, rng);
        DenseMatrix b = random_matrix(k, n, rng);

        DenseMatrix c;
        kn::matmul(a, b, c);
        check_close(c, naive_matmul(a, b), 1e-12);

        DenseMatrix at = naive_transpose(a);
        DenseMatrix ctn;
        kn::matmul_tn(at, b, ctn); // (a^T)^T b = a b
        check_close(ctn, naive_matmul(a, b), 1e-12);

        DenseMatrix bt = naive_transpose(b);
        DenseMatrix cnt;
        kn::matmul_nt(a, bt, cnt); // a (b^T)^T = a b
        check_close(cnt, naive_matmul(a, b), 1e-12);
    }
}

TEST_CASE("gram kernels match naive A*A^T and A^T*A") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t m = 1 + rng.bounded(10);
        const std::size_t n = 1 + rng.bounded(10);
        DenseMatrix a = random_matrix(m, n, rng);

        DenseMatrix g1;
        kn::gram_nt(a, g1);
        check_close(g1, naive_matmul(a, naive_transpose(a)), 1e-12);

        DenseMatrix g2;
        kn::gram_tn(a, g2);
        check_close(g2, naive_matmul(naive_transpose(a), a), 1e-12);
    }
}

TEST_CASE("frobenius_diff_sq and dot match direct sums") {
    Rng rng(303);
    DenseMatrix x = random_matrix(7, 9, rng);
    DenseMatrix y = random_matrix(7, 9, rng);
    double want = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x.values[i] - y.values[i];
        want += d * d;
    }
    CHECK(kn::frobenius_diff_sq(x, y) == doctest::Approx(want).epsilon(1e-13));

    std::vector<double> u(10000), v(10000);
    Rng rng2(404);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = rng2.uniform01() - 0.5;
        v[i] = rng2.uniform01() - 0.5;
    }
    double dwant = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dwant += u[i] * v[i];
    CHECK(kn::dot(u.data(), v.data(), u.size()) == doctest::Approx(dwant).epsilon(1e-12));
}

TEST_CASE("serial and parallel backends are bit-identical") {
    BackendGuard guard;
    Rng rng(505);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t m = 1 + rng.bounded(40);
        const std::size_t k = 1 + rng.bounded(40);
        const std::size_t n = 1 + rng.bounded(40);
        DenseMatrix a = random_matrix(m, k, rng);
        DenseMatrix b = random_matrix(k, n, rng);

        kn::set_backend(kn::Backend::serial);
        DenseMatrix c_s, g_s;
        kn::matmul(a, b, c_s);
        kn::gram_nt(a, g_s);
        const double f_s = kn::frobenius_diff_sq(c_s, c_s);
        const double d_s = kn::dot(a.values.data(), a.values.data(), a.size());

        kn::set_backend(kn::Backend::parallel);
        DenseMatrix c_p, g_p;
        kn::matmul(a, b, c_p);
        kn::gram_nt(a, g_p);
        const double f_p = kn::frobenius_diff_sq(c_p, c_p);
        const double d_p = kn::dot(a.values.data(), a.values.data(), a.size());

        CHECK(c_s.values == c_p.values);
        CHECK(g_s.values == g_p.values);
        CHECK(f_s == f_p);
        CHECK(d_s == d_p);
    }
}

TEST_CASE("multiplicative_update applies h *= num/(den+eps) elementwise") {
    DenseMatrix h(1, 3);
    h.values = {2.0, 4.0, 8.0};
    DenseMatrix num(1, 3);
    num.values = {1.0, 2.0, 0.0};
    DenseMatrix den(1, 3);
    den.values = {1.0, 1.0, 1.0};
    kn::multiplicative_update(h, num, den, 0.0);
    CHECK(h.values[0] == doctest::Approx(2.0));
    CHECK(h.values[1] == doctest::Approx(8.0));
    CHECK(h.values[2] == doctest::Approx(0.0));
}
