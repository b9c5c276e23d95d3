#include "mfrec/nmf.hpp"

#include <algorithm>
#include <cmath>

#include "mfrec/errors.hpp"
#include "mfrec/kernels.hpp"
#include "mfrec/rng.hpp"

namespace mfrec {

namespace {

// Denominator guard for the multiplicative updates.
constexpr double kTiny = 1e-12;

} // namespace

double NmfModel::predict_raw(std::size_t user, std::size_t item) const {
    double p = 0.0;
    const double* wr = w.row(user);
    for (std::size_t f = 0; f < r; ++f) p += wr[f] * h(f, item);
    return p;
}

NmfModel nmf_fit(const DenseMatrix& x, std::size_t r, std::size_t max_iterations,
                 double rel_tolerance, std::uint64_t seed) {
    const std::size_t m = x.rows, n = x.cols;
    if (m == 0 || n == 0) throw validation_error("nmf_fit: empty matrix");
    if (r < 1 || r > std::min(m, n))
        throw validation_error("nmf_fit: r must be in [1, min(rows, cols)]");
    if (max_iterations < 1) throw validation_error("nmf_fit: max_iterations must be >= 1");
    if (!x.all_finite()) throw validation_error("nmf_fit: non-finite input");
    if (x.min_value() < 0.0) throw validation_error("nmf_fit: negative entries in input");

    NmfModel model;
    model.r = r;
    model.seed = seed;

    Rng rng(seed);
    model.w = DenseMatrix(m, r);
    for (double& v : model.w.values) v = rng.uniform_open_closed(1.0);
    model.h = DenseMatrix(r, n);
    for (double& v : model.h.values) v = rng.uniform_open_closed(1.0);

    double xnorm2 = 0.0;
    for (double v : x.values) xnorm2 += v * v;

    // Initial objective, computed directly.
    DenseMatrix wh;
    kernels::matmul(model.w, model.h, wh);
    model.objective_trace.push_back(kernels::frobenius_diff_sq(x, wh));
    wh = DenseMatrix(); // the loop never needs the full product again

    DenseMatrix wtx, wtw, den_h, xht, hht, den_w;
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        // H <- H .* (W^T X) ./ (W^T W H)
        kernels::matmul_tn(model.w, x, wtx);
        kernels::gram_tn(model.w, wtw);
        kernels::matmul(wtw, model.h, den_h);
        kernels::multiplicative_update(model.h, wtx, den_h, kTiny);

        // W <- W .* (X H^T) ./ (W H H^T)
        kernels::matmul_nt(x, model.h, xht);
        kernels::gram_nt(model.h, hht);
        kernels::matmul(model.w, hht, den_w);
        kernels::multiplicative_update(model.w, xht, den_w, kTiny);

        // ||X - WH||^2 = ||X||^2 - 2 <W, X H^T> + <W^T W, H H^T>,
        // with X H^T and H H^T already on hand for the current H.
        const double cross = kernels::dot(model.w.values.data(), xht.values.data(),
                                          model.w.size());
        kernels::gram_tn(model.w, wtw);
        const double quad = kernels::dot(wtw.values.data(), hht.values.data(), wtw.size());
        const double obj = std::max(xnorm2 - 2.0 * cross + quad, 0.0);

        const double prev = model.objective_trace.back();
        model.objective_trace.push_back(obj);
        model.iterations = iter;

        const double rel_drop = (prev - obj) / std::max(prev, kTiny);
        if (rel_drop < rel_tolerance) break;
    }
    return model;
}

} // namespace mfrec
