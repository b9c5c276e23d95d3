#include "mfrec/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfrec/errors.hpp"
#include "mfrec/kernels.hpp"
#include "mfrec/linalg.hpp"

namespace mfrec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Modified Gram-Schmidt across the rows of `rows` (k x n). Rows whose norm
// collapses (null singular directions) are replaced by the first canonical
// basis vector that survives projection, so the result is always orthonormal.
void orthonormalize_rows(DenseMatrix& rows) {
    const std::size_t k = rows.rows, n = rows.cols;
    for (std::size_t i = 0; i < k; ++i) {
        double* ri = rows.row(i);
        for (std::size_t j = 0; j < i; ++j) {
            const double* rj = rows.row(j);
            double dp = 0.0;
            for (std::size_t c = 0; c < n; ++c) dp += ri[c] * rj[c];
            for (std::size_t c = 0; c < n; ++c) ri[c] -= dp * rj[c];
        }
        double nrm = 0.0;
        for (std::size_t c = 0; c < n; ++c) nrm += ri[c] * ri[c];
        nrm = std::sqrt(nrm);
        if (nrm > 0.5) {
            for (std::size_t c = 0; c < n; ++c) ri[c] /= nrm;
            continue;
        }
        // Deterministic completion from the canonical basis.
        bool done = false;
        for (std::size_t cand = 0; cand < n && !done; ++cand) {
            for (std::size_t c = 0; c < n; ++c) ri[c] = c == cand ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                const double* rj = rows.row(j);
                double dp = 0.0;
                for (std::size_t c = 0; c < n; ++c) dp += ri[c] * rj[c];
                for (std::size_t c = 0; c < n; ++c) ri[c] -= dp * rj[c];
            }
            double nn = 0.0;
            for (std::size_t c = 0; c < n; ++c) nn += ri[c] * ri[c];
            nn = std::sqrt(nn);
            if (nn > 0.5) {
                for (std::size_t c = 0; c < n; ++c) ri[c] /= nn;
                done = true;
            }
        }
        if (!done) throw error("orthonormal completion failed");
    }
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

// First-nonzero-positive sign convention on U columns, mirrored onto Vt rows.
void fix_signs(DenseMatrix& u, DenseMatrix& vt) {
    for (std::size_t j = 0; j < u.cols; ++j) {
        double lead = 0.0;
        for (std::size_t i = 0; i < u.rows; ++i) {
            if (u(i, j) != 0.0) {
                lead = u(i, j);
                break;
            }
        }
        if (lead < 0.0) {
            for (std::size_t i = 0; i < u.rows; ++i) u(i, j) = -u(i, j);
            double* vr = vt.row(j);
            for (std::size_t c = 0; c < vt.cols; ++c) vr[c] = -vr[c];
        }
    }
}

} // namespace

double SvdModel::predict_raw(std::size_t user, std::size_t item) const {
    double p = 0.0;
    const double* ur = u.row(user);
    for (std::size_t f = 0; f < k; ++f) p += ur[f] * s[f] * vt(f, item);
    return p;
}

SvdModel svd_truncated(const DenseMatrix& x, std::size_t k) {
    const std::size_t m = x.rows, n = x.cols;
    if (m == 0 || n == 0) throw validation_error("svd_truncated: empty matrix");
    if (k < 1 || k > std::min(m, n))
        throw validation_error("svd_truncated: k must be in [1, min(rows, cols)]");
    if (!x.all_finite()) throw validation_error("svd_truncated: non-finite input");

    SvdModel model;
    model.k = k;
    model.s.resize(k);

    DenseMatrix g;
    const bool user_side = m <= n;
    if (user_side)
        kernels::gram_nt(x, g); // m x m
    else
        kernels::gram_tn(x, g); // n x n

    linalg::TopEigen eig = linalg::top_eigen_sym(std::move(g), k);

    double smax = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double lam = std::max(eig.values[i], 0.0);
        model.s[i] = std::sqrt(lam);
        smax = std::max(smax, model.s[i]);
    }
    // Keep the order non-increasing even when sqrt rounds ties.
    for (std::size_t i = 1; i < k; ++i)
        if (model.s[i] > model.s[i - 1]) model.s[i] = model.s[i - 1];

    const double cutoff = smax * 1e4 * kEps * static_cast<double>(std::max(m, n));

    if (user_side) {
        model.u = std::move(eig.vectors); // m x k
        // Vt = diag(1/s) U^T X
        kernels::matmul_tn(model.u, x, model.vt); // k x n
        for (std::size_t i = 0; i < k; ++i) {
            double* vr = model.vt.row(i);
            if (model.s[i] > cutoff) {
                const double inv = 1.0 / model.s[i];
                for (std::size_t c = 0; c < n; ++c) vr[c] *= inv;
            } else {
                for (std::size_t c = 0; c < n; ++c) vr[c] = 0.0; // rebuilt below
            }
        }
        orthonormalize_rows(model.vt);
    } else {
        DenseMatrix v = std::move(eig.vectors); // n x k, columns are v_i
        model.vt = transpose(v);                // k x n
        // U = X V diag(1/s)
        kernels::matmul(x, v, model.u); // m x k
        DenseMatrix ut = transpose(model.u); // k x m; rows are candidate u_i
        for (std::size_t i = 0; i < k; ++i) {
            double* ur = ut.row(i);
            if (model.s[i] > cutoff) {
                const double inv = 1.0 / model.s[i];
                for (std::size_t c = 0; c < m; ++c) ur[c] *= inv;
            } else {
                for (std::size_t c = 0; c < m; ++c) ur[c] = 0.0;
            }
        }
        orthonormalize_rows(ut);
        model.u = transpose(ut);
    }

    fix_signs(model.u, model.vt);
    return model;
}

DenseMatrix svd_reconstruct(const SvdModel& model) {
    DenseMatrix us = model.u; // scale columns by singular values
    for (std::size_t i = 0; i < us.rows; ++i) {
        double* r = us.row(i);
        for (std::size_t f = 0; f < model.k; ++f) r[f] *= model.s[f];
    }
    DenseMatrix rec;
    kernels::matmul(us, model.vt, rec);
    return rec;
}

SvdIterResult svd_iterative(const SparseRatingMatrix& m, const FillStrategy& initial_fill,
                            std::size_t k, double threshold, std::size_t max_iterations) {
    if (!(threshold > 0.0)) throw validation_error("svd_iterative: threshold must be > 0");
    if (max_iterations < 1) throw validation_error("svd_iterative: max_iterations must be >= 1");

    SvdIterResult res;
    DenseMatrix x = impute_dense(m, initial_fill);
    const std::size_t missing = x.size() - m.nnz();

    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        SvdModel model = svd_truncated(x, k);
        model.fill = initial_fill;
        DenseMatrix next = svd_reconstruct(model);

        // Observed cells are reset to their original values every iteration;
        // only missing cells keep the reconstruction.
        const long nu = static_cast<long>(m.n_users);
#pragma omp parallel for schedule(static)
        for (long lu = 0; lu < nu; ++lu) {
            const std::size_t u = static_cast<std::size_t>(lu);
            double* row = next.row(u);
            for (std::size_t p = m.row_begin(u); p < m.row_end(u); ++p)
                row[m.col_indices[p]] = m.values[p];
        }

        double delta = 0.0;
        if (missing > 0) {
            // RMS change over missing cells only; observed cells are pinned.
            double sq = kernels::frobenius_diff_sq(next, x);
            delta = std::sqrt(sq / static_cast<double>(missing));
        }

        x = std::move(next);
        res.model = std::move(model);
        res.delta_trace.push_back(delta);
        res.iterations = iter;
        if (delta < threshold) break;
        if (iter == max_iterations) res.hit_max_iterations = true;
    }

    res.completed = std::move(x);
    return res;
}

} // namespace mfrec
