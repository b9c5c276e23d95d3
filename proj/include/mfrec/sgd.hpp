#ifndef MFREC_SGD_HPP
#define MFREC_SGD_HPP

#include <cstddef>
#include <cstdint>

#include "mfrec/dense.hpp"
#include "mfrec/ratings.hpp"

namespace mfrec {

// Latent-factor model R ~= P Q fitted by stochastic gradient descent over
// the observed entries with L2 regularization.
struct SgdMfModel {
    DenseMatrix p; // n_users x r
    DenseMatrix q; // r x n_items
    std::size_t r = 0;
    double alpha = 0.0;
    double lambda = 0.0;
    std::size_t epochs = 0;
    std::uint64_t seed = 0;

    std::size_t n_users() const { return p.rows; }
    std::size_t n_items() const { return q.cols; }

    double predict_raw(std::size_t user, std::size_t item) const;
};

SgdMfModel sgd_mf_fit(const SparseRatingMatrix& train, std::size_t r, double alpha,
                      double lambda, std::size_t epochs, std::uint64_t seed);

} // namespace mfrec

#endif
