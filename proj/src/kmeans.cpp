#include "mfrec/kmeans.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "mfrec/errors.hpp"
#include "mfrec/rng.hpp"

namespace mfrec {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

struct RunResult {
    DenseMatrix centroids;
    std::vector<std::size_t> assignments;
    std::vector<double> point_dist;
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::vector<double> trace;
};

// One Lloyd run from a seeded initialization.
RunResult kmeans_once(const LatentFeatures& f, std::size_t k, std::uint64_t seed,
                      std::size_t max_iterations) {
    const std::size_t n = f.n_users, dim = f.dim;
    RunResult run;

    Rng rng(seed);
    const std::vector<std::size_t> picks = rng.sample_distinct(n, k);
    run.centroids = DenseMatrix(k, dim);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < dim; ++d) run.centroids(c, d) = f.row(picks[c])[d];

    run.assignments.assign(n, 0);
    run.point_dist.assign(n, 0.0);
    std::vector<std::size_t> prev(n, k); // k = "unassigned" marker
    std::vector<double> sums(k * dim);
    std::vector<std::size_t> counts(k);

    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        // Assignment pass. Per-point work is independent; order never matters.
        const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(static)
        for (long lp = 0; lp < ln; ++lp) {
            const std::size_t p = static_cast<std::size_t>(lp);
            const double* x = f.row(p);
            std::size_t best = 0;
            double best_d = sq_dist(x, run.centroids.row(0), dim);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(x, run.centroids.row(c), dim);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            run.assignments[p] = best;
            run.point_dist[p] = best_d;
        }
        double inertia = 0.0;
        for (std::size_t p = 0; p < n; ++p) inertia += run.point_dist[p];
        run.trace.push_back(inertia);
        run.inertia = inertia;
        run.iterations = iter;

        if (run.assignments == prev) break;
        prev = run.assignments;
        if (iter == max_iterations) break;

        // Update pass.
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t p = 0; p < n; ++p) {
            const std::size_t c = run.assignments[p];
            ++counts[c];
            const double* x = f.row(p);
            double* s = sums.data() + c * dim;
            for (std::size_t d = 0; d < dim; ++d) s[d] += x[d];
        }

        // Refill empty clusters with the farthest point of a donor cluster
        // that can spare one.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t victim = n;
            double worst = -1.0;
            for (std::size_t p = 0; p < n; ++p) {
                if (counts[run.assignments[p]] < 2) continue;
                if (run.point_dist[p] > worst) {
                    worst = run.point_dist[p];
                    victim = p;
                }
            }
            if (victim == n) throw error("kmeans: cannot refill empty cluster");
            const std::size_t from = run.assignments[victim];
            const double* x = f.row(victim);
            for (std::size_t d = 0; d < dim; ++d) {
                sums[from * dim + d] -= x[d];
                sums[c * dim + d] += x[d];
            }
            --counts[from];
            ++counts[c];
            run.assignments[victim] = c;
            run.point_dist[victim] = 0.0;
            prev = run.assignments;
        }

        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t d = 0; d < dim; ++d)
                run.centroids(c, d) = sums[c * dim + d] / static_cast<double>(counts[c]);
    }
    return run;
}

} // namespace

LatentFeatures user_latent_features(const FactorModel& model) {
    LatentFeatures f;
    if (const auto* nmf = std::get_if<NmfModel>(&model)) {
        f.n_users = nmf->w.rows;
        f.dim = nmf->w.cols;
        f.values = nmf->w.values;
    } else if (const auto* svd = std::get_if<SvdModel>(&model)) {
        f.n_users = svd->u.rows;
        f.dim = svd->k;
        f.values = svd->u.values;
        for (std::size_t u = 0; u < f.n_users; ++u)
            for (std::size_t c = 0; c < f.dim; ++c) f.row(u)[c] *= svd->s[c];
    } else {
        const auto& sgd = std::get<SgdMfModel>(model);
        f.n_users = sgd.p.rows;
        f.dim = sgd.p.cols;
        f.values = sgd.p.values;
    }
    return f;
}

ClusterModel kmeans_fit(const LatentFeatures& features, std::size_t k, std::uint64_t seed,
                        std::size_t max_iterations, std::size_t restarts) {
    const std::size_t n = features.n_users;
    if (k < 1) throw validation_error("kmeans_fit: k must be >= 1");
    if (k > n) throw validation_error("kmeans_fit: k exceeds number of points");
    if (max_iterations < 1) throw validation_error("kmeans_fit: max_iterations must be >= 1");
    if (restarts < 1) throw validation_error("kmeans_fit: restarts must be >= 1");
    for (double v : features.values)
        if (!std::isfinite(v)) throw validation_error("kmeans_fit: non-finite features");

    RunResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < restarts; ++t) {
        RunResult run = kmeans_once(features, k, mix_seed(seed, t), max_iterations);
        if (run.inertia < best.inertia) best = std::move(run);
    }

    ClusterModel model;
    model.k = k;
    model.centroids = std::move(best.centroids);
    model.assignments = std::move(best.assignments);
    model.inertia = best.inertia;
    model.iterations = best.iterations;
    model.seed = seed;
    model.inertia_trace = std::move(best.trace);
    return model;
}

std::vector<std::size_t> assign_to_clusters(const ClusterModel& model,
                                            const LatentFeatures& points) {
    if (points.dim != model.centroids.cols)
        throw validation_error("assign_to_clusters: feature dimension mismatch");
    std::vector<std::size_t> out(points.n_users);
    const long ln = static_cast<long>(points.n_users);
#pragma omp parallel for schedule(static)
    for (long lp = 0; lp < ln; ++lp) {
        const std::size_t p = static_cast<std::size_t>(lp);
        const double* x = points.row(p);
        std::size_t best = 0;
        double best_d = sq_dist(x, model.centroids.row(0), points.dim);
        for (std::size_t c = 1; c < model.k; ++c) {
            const double d = sq_dist(x, model.centroids.row(c), points.dim);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        out[p] = best;
    }
    return out;
}

void write_clusters_csv(std::ostream& out, const ClusterModel& model,
                        const std::vector<std::string>& user_ids) {
    out << "user_id,cluster\n";
    for (std::size_t u = 0; u < model.assignments.size(); ++u)
        out << user_ids[u] << ',' << model.assignments[u] << '\n';
}

} // namespace mfrec
