#ifndef MFREC_EVALUATE_HPP
#define MFREC_EVALUATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfrec/model.hpp"
#include "mfrec/ratings.hpp"

namespace mfrec {

// Seeded train/test partition of the observed entries. Both sides keep the
// source matrix's dense index spaces.
struct EvalSplit {
    struct TestEntry {
        std::size_t user;
        std::size_t item;
        double rating;
    };

    SparseRatingMatrix train;
    std::vector<TestEntry> test;
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

EvalSplit split_ratings(const SparseRatingMatrix& m, double fraction, std::uint64_t seed);

struct MetricPair {
    double rmse = 0.0;
    double mae = 0.0;
};

MetricPair error_metrics(const std::vector<double>& predicted,
                         const std::vector<double>& actual);

// Clamped predictions on the test entries, scored in the original scale.
MetricPair evaluate_model(const FactorModel& model, const EvalSplit& split,
                          const RatingScale& scale);

enum class Algorithm { nmf, svd_t, svd_i, sgd_mf };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct SweepOptions {
    std::size_t nmf_max_iterations = 1200;
    double nmf_rel_tolerance = 1e-4;
    double svdi_threshold = 1e-4;
    std::size_t svdi_max_iterations = 50;
    double sgd_alpha = 0.005;
    double sgd_lambda = 0.02;
    std::size_t sgd_epochs = 50;
    bool timing = true; // when false the seconds column is written as zero
};

struct SweepRow {
    Algorithm algorithm;
    FillStrategy fill;
    std::size_t components = 0;
    double rmse = 0.0;
    double mae = 0.0;
    double seconds = 0.0;
    std::string error; // non-empty when the fit failed; rmse/mae are NaN
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::uint64_t seed = 0;
    double fraction = 0.0;
    std::string dataset_digest;
};

// One shared split; one row per (algorithm, fill, components) combination in
// canonical order. Each combination derives its RNG seed from the master
// seed and its own coordinates, so execution order cannot matter. Fit
// failures mark the row instead of aborting the sweep.
SweepReport run_sweep(const SparseRatingMatrix& m, std::vector<Algorithm> algorithms,
                      std::vector<FillStrategy> fills, std::vector<std::size_t> components,
                      double fraction, std::uint64_t seed, const SweepOptions& options = {},
                      const std::string& dataset_digest = "");

// `algorithm,fill,components,rmse,mae,seconds` with 6 fractional digits.
void write_sweep_csv(std::ostream& out, const SweepReport& report);
void write_provenance_json(std::ostream& out, const SweepReport& report);

} // namespace mfrec

#endif
