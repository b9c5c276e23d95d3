#include "mfrec/sgd.hpp"

#include <cmath>
#include <vector>

#include "mfrec/errors.hpp"
#include "mfrec/rng.hpp"

namespace mfrec {

double SgdMfModel::predict_raw(std::size_t user, std::size_t item) const {
    double s = 0.0;
    const double* pu = p.row(user);
    for (std::size_t f = 0; f < r; ++f) s += pu[f] * q(f, item);
    return s;
}

SgdMfModel sgd_mf_fit(const SparseRatingMatrix& train, std::size_t r, double alpha,
                      double lambda, std::size_t epochs, std::uint64_t seed) {
    if (r < 1) throw validation_error("sgd_mf_fit: r must be >= 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error("sgd_mf_fit: alpha must be finite and >= 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw validation_error("sgd_mf_fit: lambda must be finite and >= 0");

    const std::size_t m = train.n_users, n = train.n_items;

    SgdMfModel model;
    model.r = r;
    model.alpha = alpha;
    model.lambda = lambda;
    model.epochs = epochs;
    model.seed = seed;

    Rng rng(seed);
    model.p = DenseMatrix(m, r);
    for (double& v : model.p.values) v = rng.uniform_open_closed(0.1);
    model.q = DenseMatrix(r, n);
    for (double& v : model.q.values) v = rng.uniform_open_closed(0.1);

    // Item factors kept row-major per item while training.
    DenseMatrix qt(n, r);
    for (std::size_t f = 0; f < r; ++f)
        for (std::size_t i = 0; i < n; ++i) qt(i, f) = model.q(f, i);

    struct Obs {
        std::size_t user, item;
        double rating;
    };
    std::vector<Obs> obs;
    obs.reserve(train.nnz());
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t p2 = train.row_begin(u); p2 < train.row_end(u); ++p2)
            obs.push_back({u, train.col_indices[p2], train.values[p2]});

    std::vector<std::size_t> order(obs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> pu_old(r);
    for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t oi : order) {
            const Obs& o = obs[oi];
            double* pu = model.p.row(o.user);
            double* qi = qt.row(o.item);
            double pred = 0.0;
            for (std::size_t f = 0; f < r; ++f) pred += pu[f] * qi[f];
            const double err = o.rating - pred;
            if (!std::isfinite(err))
                throw divergence_error("non-finite prediction during SGD training", epoch);
            for (std::size_t f = 0; f < r; ++f) pu_old[f] = pu[f];
            for (std::size_t f = 0; f < r; ++f) {
                pu[f] += alpha * (err * qi[f] - lambda * pu[f]);
                qi[f] += alpha * (err * pu_old[f] - lambda * qi[f]);
            }
        }
        for (double v : model.p.values)
            if (!std::isfinite(v)) throw divergence_error("non-finite user factor", epoch);
        for (double v : qt.values)
            if (!std::isfinite(v)) throw divergence_error("non-finite item factor", epoch);
    }

    for (std::size_t f = 0; f < r; ++f)
        for (std::size_t i = 0; i < n; ++i) model.q(f, i) = qt(i, f);
    return model;
}

} // namespace mfrec
