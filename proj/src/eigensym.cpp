#include "mfrec/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "mfrec/errors.hpp"
#include "mfrec/kernels.hpp"
#include "mfrec/rng.hpp"

namespace mfrec::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Threshold below which parallelizing the trailing-block updates costs more
// than it saves.
constexpr std::size_t kParCutoff = 96;

double norm2(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

} // namespace

SymTridiag tridiagonalize(DenseMatrix a) {
    const std::size_t n = a.rows;
    assert(a.rows == a.cols);

    SymTridiag t;
    t.diag.assign(n, 0.0);
    t.sub.assign(n > 0 ? n - 1 : 0, 0.0);
    t.tau.assign(n > 0 ? n - 1 : 0, 0.0);

    if (n == 0) {
        t.house = std::move(a);
        return t;
    }

    std::vector<double> v(n), p(n), q(n);

    for (std::size_t j = 0; j + 2 < n; ++j) {
        const std::size_t len = n - j - 1; // length of the column below the diagonal
        double* col = v.data();
        for (std::size_t i = 0; i < len; ++i) col[i] = a(j + 1 + i, j);

        const double xnorm = norm2(col, len);
        t.diag[j] = a(j, j);
        if (xnorm == 0.0) {
            t.sub[j] = 0.0;
            t.tau[j] = 0.0;
            for (std::size_t i = 0; i < len; ++i) a(j + 1 + i, j) = 0.0;
            continue;
        }

        const double alpha = col[0] >= 0.0 ? -xnorm : xnorm;
        col[0] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm2 += col[i] * col[i];
        const double tau = vnorm2 > 0.0 ? 2.0 / vnorm2 : 0.0;

        // p = tau * B v over the trailing block B = a[j+1.., j+1..]
        const std::size_t base = j + 1;
        const bool par = kernels::backend() == kernels::Backend::parallel && len >= kParCutoff;
        const long llen = static_cast<long>(len);
#pragma omp parallel for schedule(static) if (par)
        for (long li = 0; li < llen; ++li) {
            const std::size_t i = static_cast<std::size_t>(li);
            const double* arow = a.row(base + i) + base;
            double s = 0.0;
            for (std::size_t kk = 0; kk < len; ++kk) s += arow[kk] * col[kk];
            p[i] = tau * s;
        }

        double vp = 0.0;
        for (std::size_t i = 0; i < len; ++i) vp += col[i] * p[i];
        const double half = 0.5 * tau * vp;
        for (std::size_t i = 0; i < len; ++i) q[i] = p[i] - half * col[i];

        // B <- B - v q^T - q v^T
#pragma omp parallel for schedule(static) if (par)
        for (long li = 0; li < llen; ++li) {
            const std::size_t i = static_cast<std::size_t>(li);
            double* arow = a.row(base + i) + base;
            const double vi = col[i], qi = q[i];
            for (std::size_t kk = 0; kk < len; ++kk) arow[kk] -= vi * q[kk] + qi * col[kk];
        }

        t.sub[j] = alpha;
        t.tau[j] = tau;
        for (std::size_t i = 0; i < len; ++i) a(j + 1 + i, j) = col[i];
    }

    if (n >= 2) {
        t.diag[n - 2] = a(n - 2, n - 2);
        t.sub[n - 2] = a(n - 1, n - 2);
        if (t.tau.size() >= n - 1) t.tau[n - 2] = 0.0;
    }
    t.diag[n - 1] = a(n - 1, n - 1);

    t.house = std::move(a);
    return t;
}

void apply_q(const SymTridiag& t, std::vector<double>& x) {
    const std::size_t n = t.diag.size();
    assert(x.size() == n);
    if (n < 3) return;
    // Q = H_0 H_1 ... H_{n-3}; apply in reverse so x picks up H_{n-3} first.
    for (std::size_t jj = n - 2; jj-- > 0;) {
        const double tau = t.tau[jj];
        if (tau == 0.0) continue;
        const std::size_t base = jj + 1, len = n - jj - 1;
        double dot = 0.0;
        for (std::size_t i = 0; i < len; ++i) dot += t.house(base + i, jj) * x[base + i];
        dot *= tau;
        for (std::size_t i = 0; i < len; ++i) x[base + i] -= dot * t.house(base + i, jj);
    }
}

std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const std::size_t n = d.size();
    if (n == 0) return {};
    assert(e.size() == n - 1 || (n == 1 && e.empty()));
    e.push_back(0.0); // sentinel

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        for (;;) {
            // Find the first negligible subdiagonal at or after l.
            std::size_t m = l;
            while (m + 1 < n) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= kEps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 64) throw error("tridiagonal QL failed to converge");

            // Wilkinson-style shift from the leading 2x2.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, pshift = 0.0;

            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    // Rotation chain collapsed; split the problem here.
                    d[i + 1] -= pshift;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - pshift;
                r = (d[i] - g) * s + 2.0 * c * b;
                pshift = s * r;
                d[i + 1] = g + pshift;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= pshift;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::sort(d.begin(), d.end(), std::greater<double>());
    return d;
}

namespace {

// One inverse-iteration solve: (T - lambda I) y = b, tridiagonal LU with
// partial pivoting. Near-zero pivots are nudged so the solve amplifies the
// desired eigendirection instead of dividing by zero.
void tridiag_solve_shifted(const std::vector<double>& d, const std::vector<double>& e,
                           double lambda, double pivot_floor, std::vector<double>& y) {
    const std::size_t n = d.size();
    if (n == 1) {
        double piv = d[0] - lambda;
        if (std::fabs(piv) < pivot_floor) piv = piv < 0.0 ? -pivot_floor : pivot_floor;
        y[0] /= piv;
        return;
    }

    // Rows: lower a_i = e[i-1], diag b_i = d[i]-lambda, upper c_i = e[i].
    static thread_local std::vector<double> u, v, w;
    u.assign(n, 0.0);
    v.assign(n, 0.0);
    w.assign(n, 0.0);

    double bi = d[0] - lambda;
    double ci = e[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double ai1 = e[i];             // subdiagonal of row i+1
        double bi1 = d[i + 1] - lambda;      // diagonal of row i+1
        const double ci1 = i + 1 < n - 1 ? e[i + 1] : 0.0;
        if (std::fabs(bi) >= std::fabs(ai1)) {
            double piv = bi;
            if (std::fabs(piv) < pivot_floor) piv = piv < 0.0 ? -pivot_floor : pivot_floor;
            const double m = ai1 / piv;
            u[i] = piv;
            v[i] = ci;
            w[i] = 0.0;
            bi = bi1 - m * ci;
            ci = ci1;
            y[i + 1] -= m * y[i];
        } else {
            // Swap rows i and i+1.
            const double m = bi / ai1;
            u[i] = ai1;
            v[i] = bi1;
            w[i] = ci1;
            bi = ci - m * bi1;
            ci = -m * ci1;
            std::swap(y[i], y[i + 1]);
            y[i + 1] -= m * y[i];
        }
    }
    double piv = bi;
    if (std::fabs(piv) < pivot_floor) piv = piv < 0.0 ? -pivot_floor : pivot_floor;
    u[n - 1] = piv;
    v[n - 1] = 0.0;
    w[n - 1] = 0.0;

    // Back substitution over the factored band (diag u, supers v, w).
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        if (i + 1 < n) s -= v[i] * y[i + 1];
        if (i + 2 < n) s -= w[i] * y[i + 2];
        y[i] = s / u[i];
    }
}

double tridiag_residual(const std::vector<double>& d, const std::vector<double>& e,
                        double lambda, const std::vector<double>& y) {
    const std::size_t n = d.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = (d[i] - lambda) * y[i];
        if (i > 0) t += e[i - 1] * y[i - 1];
        if (i + 1 < n) t += e[i] * y[i + 1];
        s += t * t;
    }
    return std::sqrt(s);
}

} // namespace

TopEigen top_eigen_sym(DenseMatrix a, std::size_t k) {
    const std::size_t n = a.rows;
    if (n == 0 || a.cols != n) throw validation_error("top_eigen_sym: matrix must be square");
    if (k < 1 || k > n) throw validation_error("top_eigen_sym: k out of range");

    TopEigen out;
    if (n == 1) {
        out.values = {a(0, 0)};
        out.vectors = DenseMatrix(1, 1, 1.0);
        return out;
    }

    SymTridiag t = tridiagonalize(std::move(a));
    const std::vector<double> all = tridiag_eigenvalues(t.diag, t.sub);
    out.values.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));

    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::fabs(t.diag[i]);
        if (i > 0) row += std::fabs(t.sub[i - 1]);
        if (i + 1 < n) row += std::fabs(t.sub[i]);
        anorm = std::max(anorm, row);
    }
    if (anorm == 0.0) anorm = 1.0;
    const double pivot_floor = kEps * anorm;
    const double accept_tol = 1e3 * kEps * anorm;

    // Tridiagonal-basis eigenvectors, one per requested eigenvalue.
    DenseMatrix z(n, k, 0.0);
    std::vector<double> y(n), best(n);

    for (std::size_t idx = 0; idx < k; ++idx) {
        const double lambda = out.values[idx];
        Rng rng(mix_seed(0x9d2c5680u, idx * 2654435761u + n));
        for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform01() - 0.5;

        double best_res = std::numeric_limits<double>::infinity();
        for (std::size_t round = 0; round < 8; ++round) {
            tridiag_solve_shifted(t.diag, t.sub, lambda, pivot_floor, y);

            // Orthogonalize against previously accepted vectors; required for
            // clustered eigenvalues, harmless otherwise.
            for (std::size_t jprev = 0; jprev < idx; ++jprev) {
                double dp = 0.0;
                for (std::size_t i = 0; i < n; ++i) dp += z(i, jprev) * y[i];
                for (std::size_t i = 0; i < n; ++i) y[i] -= dp * z(i, jprev);
            }
            const double nrm = norm2(y.data(), n);
            if (nrm == 0.0 || !std::isfinite(nrm)) {
                for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform01() - 0.5;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) y[i] /= nrm;

            const double res = tridiag_residual(t.diag, t.sub, lambda, y);
            if (res < best_res) {
                best_res = res;
                best = y;
            }
            if (res <= accept_tol) break;
        }
        for (std::size_t i = 0; i < n; ++i) z(i, idx) = best[i];
    }

    // Back-transform to the original basis; orthogonality is preserved.
    out.vectors = DenseMatrix(n, k, 0.0);
    std::vector<double> col(n);
    for (std::size_t idx = 0; idx < k; ++idx) {
        for (std::size_t i = 0; i < n; ++i) col[i] = z(i, idx);
        apply_q(t, col);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, idx) = col[i];
    }
    return out;
}

} // namespace mfrec::linalg
