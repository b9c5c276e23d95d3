#ifndef MFREC_NMF_HPP
#define MFREC_NMF_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfrec/dense.hpp"
#include "mfrec/ratings.hpp"

namespace mfrec {

// Non-negative factorization X ~= W H fitted by multiplicative updates on
// the squared Frobenius objective.
struct NmfModel {
    DenseMatrix w; // n_users x r, entries >= 0
    DenseMatrix h; // r x n_items, entries >= 0
    std::size_t r = 0;
    FillStrategy fill;
    std::vector<double> objective_trace; // ||X - WH||_F^2; [0] is the initial value
    std::size_t iterations = 0;          // update iterations actually run
    std::uint64_t seed = 0;

    std::size_t n_users() const { return w.rows; }
    std::size_t n_items() const { return h.cols; }

    double predict_raw(std::size_t user, std::size_t item) const;
};

NmfModel nmf_fit(const DenseMatrix& x, std::size_t r, std::size_t max_iterations,
                 double rel_tolerance, std::uint64_t seed);

} // namespace mfrec

#endif
