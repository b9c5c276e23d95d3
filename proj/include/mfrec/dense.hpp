#ifndef MFREC_DENSE_HPP
#define MFREC_DENSE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace mfrec {

// Row-major dense matrix of doubles. Plain value type; all algorithms in
// this library exchange data through it.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // rows * cols, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    double* row(std::size_t i) { return values.data() + i * cols; }
    const double* row(std::size_t i) const { return values.data() + i * cols; }

    std::size_t size() const { return values.size(); }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double min_value() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values)
            if (v < m) m = v;
        return m;
    }

    bool operator==(const DenseMatrix& o) const {
        return rows == o.rows && cols == o.cols && values == o.values;
    }
};

} // namespace mfrec

#endif
