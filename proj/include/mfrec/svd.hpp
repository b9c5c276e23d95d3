#ifndef MFREC_SVD_HPP
#define MFREC_SVD_HPP

#include <cstddef>
#include <vector>

#include "mfrec/dense.hpp"
#include "mfrec/ratings.hpp"

namespace mfrec {

// Truncated singular value decomposition X ~= U diag(S) Vt.
struct SvdModel {
    DenseMatrix u;         // n_users x k, orthonormal columns
    std::vector<double> s; // k singular values, non-negative, descending
    DenseMatrix vt;        // k x n_items, orthonormal rows
    std::size_t k = 0;
    FillStrategy fill;     // imputation that produced the factorized matrix

    std::size_t n_users() const { return u.rows; }
    std::size_t n_items() const { return vt.cols; }

    double predict_raw(std::size_t user, std::size_t item) const;
};

// Best rank-k approximation via the Gram-matrix eigendecomposition of the
// smaller side. Column signs are normalized so the first nonzero entry of
// each U column is positive.
SvdModel svd_truncated(const DenseMatrix& x, std::size_t k);

// U diag(S) Vt, materialized.
DenseMatrix svd_reconstruct(const SvdModel& model);

// Iterative SVD completion: impute, factorize, rewrite the missing cells
// with the rank-k reconstruction, repeat until the RMS change over missing
// cells drops below `threshold`.
struct SvdIterResult {
    SvdModel model;           // SVD fitted in the final iteration
    DenseMatrix completed;    // observed cells exact, missing cells estimated
    std::size_t iterations = 0;
    std::vector<double> delta_trace; // RMS change per iteration
    bool hit_max_iterations = false;
};

SvdIterResult svd_iterative(const SparseRatingMatrix& m, const FillStrategy& initial_fill,
                            std::size_t k, double threshold, std::size_t max_iterations);

} // namespace mfrec

#endif
