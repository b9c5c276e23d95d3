#ifndef MFREC_KMEANS_HPP
#define MFREC_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mfrec/dense.hpp"
#include "mfrec/model.hpp"

namespace mfrec {

// One row of latent features per user, extracted from a fitted factor model.
struct LatentFeatures {
    std::size_t n_users = 0;
    std::size_t dim = 0;
    std::vector<double> values; // row-major

    const double* row(std::size_t u) const { return values.data() + u * dim; }
    double* row(std::size_t u) { return values.data() + u * dim; }
};

// NMF -> rows of W; SVD -> rows of U scaled by the singular values;
// SGD-MF -> rows of P.
LatentFeatures user_latent_features(const FactorModel& model);

struct ClusterModel {
    std::size_t k = 0;
    DenseMatrix centroids; // k x dim
    std::vector<std::size_t> assignments;
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::vector<double> inertia_trace; // per assignment pass of the winning restart
};

// Lloyd iterations from k distinct seeded sample rows, best of `restarts`
// runs by inertia (ties broken by restart order). Empty clusters are refilled
// with the point farthest from its current centroid.
ClusterModel kmeans_fit(const LatentFeatures& features, std::size_t k, std::uint64_t seed,
                        std::size_t max_iterations = 100, std::size_t restarts = 10);

// Nearest-centroid assignment; ties go to the lowest centroid index.
std::vector<std::size_t> assign_to_clusters(const ClusterModel& model,
                                            const LatentFeatures& points);

// `user_id,cluster` rows, users in dense index order with raw ids.
void write_clusters_csv(std::ostream& out, const ClusterModel& model,
                        const std::vector<std::string>& user_ids);

} // namespace mfrec

#endif
