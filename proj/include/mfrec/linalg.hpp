#ifndef MFREC_LINALG_HPP
#define MFREC_LINALG_HPP

#include <cstddef>
#include <vector>

#include "mfrec/dense.hpp"

namespace mfrec::linalg {

// Householder reduction of a symmetric matrix to tridiagonal form,
// T = Q^T A Q. The reflectors defining Q stay packed below the diagonal of
// `house`, one per column, with their scalar factors in `tau`.
struct SymTridiag {
    std::vector<double> diag; // n
    std::vector<double> sub;  // n-1
    DenseMatrix house;        // n x n working copy, reflectors below diagonal
    std::vector<double> tau;  // n-1 (tau[j] for reflector in column j)
};

SymTridiag tridiagonalize(DenseMatrix a);

// All eigenvalues of the symmetric tridiagonal matrix (diag, sub), sorted
// descending. Implicit QL iteration with shifts; values only.
std::vector<double> tridiag_eigenvalues(std::vector<double> diag, std::vector<double> sub);

// x <- Q x where Q is the orthogonal factor captured in `t`.
void apply_q(const SymTridiag& t, std::vector<double>& x);

// Top-k eigenpairs of a symmetric matrix: eigenvalues sorted descending,
// eigenvectors as the columns of `vectors` (n x k), mutually orthonormal.
// Tridiagonalize + QL eigenvalues + inverse iteration.
struct TopEigen {
    std::vector<double> values;
    DenseMatrix vectors;
};

TopEigen top_eigen_sym(DenseMatrix a, std::size_t k);

} // namespace mfrec::linalg

#endif
