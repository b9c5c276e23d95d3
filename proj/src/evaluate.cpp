#include "mfrec/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "mfrec/errors.hpp"
#include "mfrec/rng.hpp"

namespace mfrec {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

EvalSplit split_ratings(const SparseRatingMatrix& m, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw validation_error("split_ratings: fraction must be in [0, 1)");

    const std::size_t total = m.nnz();
    const std::size_t n_test =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));

    Rng rng(mix_seed(seed, "split"));
    std::vector<std::size_t> picks = rng.sample_distinct(total, n_test);
    std::sort(picks.begin(), picks.end());

    std::vector<bool> is_test(total, false);
    for (std::size_t p : picks) is_test[p] = true;

    EvalSplit split;
    split.fraction = fraction;
    split.seed = seed;

    SparseRatingMatrix& tr = split.train;
    tr.n_users = m.n_users;
    tr.n_items = m.n_items;
    tr.user_to_index = m.user_to_index;
    tr.item_to_index = m.item_to_index;
    tr.user_ids = m.user_ids;
    tr.item_ids = m.item_ids;
    tr.scale = m.scale;
    tr.row_offsets.assign(m.n_users + 1, 0);
    tr.col_indices.reserve(total - n_test);
    tr.values.reserve(total - n_test);
    split.test.reserve(n_test);

    for (std::size_t u = 0; u < m.n_users; ++u) {
        for (std::size_t p = m.row_begin(u); p < m.row_end(u); ++p) {
            if (is_test[p]) {
                split.test.push_back({u, m.col_indices[p], m.values[p]});
            } else {
                tr.col_indices.push_back(m.col_indices[p]);
                tr.values.push_back(m.values[p]);
            }
        }
        tr.row_offsets[u + 1] = tr.values.size();
    }
    return split;
}

MetricPair error_metrics(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.empty()) throw validation_error("error_metrics: empty input");
    if (predicted.size() != actual.size())
        throw validation_error("error_metrics: length mismatch");

    double sq = 0.0, ab = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!std::isfinite(predicted[i]) || !std::isfinite(actual[i]))
            throw validation_error("error_metrics: non-finite value");
        const double d = predicted[i] - actual[i];
        sq += d * d;
        ab += std::fabs(d);
    }
    const double n = static_cast<double>(predicted.size());
    return {std::sqrt(sq / n), ab / n};
}

MetricPair evaluate_model(const FactorModel& model, const EvalSplit& split,
                          const RatingScale& scale) {
    if (split.test.empty()) throw validation_error("evaluate_model: empty test set");
    std::vector<double> pred, truth;
    pred.reserve(split.test.size());
    truth.reserve(split.test.size());
    for (const auto& t : split.test) {
        pred.push_back(predict_rating(model, t.user, t.item, scale));
        truth.push_back(t.rating);
    }
    return error_metrics(pred, truth);
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::nmf: return "nmf";
        case Algorithm::svd_t: return "svd_t";
        case Algorithm::svd_i: return "svd_i";
        case Algorithm::sgd_mf: return "sgd_mf";
    }
    return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "nmf") return Algorithm::nmf;
    if (name == "svd_t") return Algorithm::svd_t;
    if (name == "svd_i") return Algorithm::svd_i;
    if (name == "sgd_mf") return Algorithm::sgd_mf;
    throw validation_error("unknown algorithm '" + name + "'");
}

SweepReport run_sweep(const SparseRatingMatrix& m, std::vector<Algorithm> algorithms,
                      std::vector<FillStrategy> fills, std::vector<std::size_t> components,
                      double fraction, std::uint64_t seed, const SweepOptions& options,
                      const std::string& dataset_digest) {
    if (algorithms.empty() || fills.empty() || components.empty())
        throw validation_error("run_sweep: algorithms, fills and components must be non-empty");

    std::sort(algorithms.begin(), algorithms.end());
    algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());
    std::sort(fills.begin(), fills.end(), fill_less);
    fills.erase(std::unique(fills.begin(), fills.end(),
                            [](const FillStrategy& a, const FillStrategy& b) {
                                return !fill_less(a, b) && !fill_less(b, a);
                            }),
                fills.end());
    std::sort(components.begin(), components.end());
    components.erase(std::unique(components.begin(), components.end()), components.end());

    SweepReport report;
    report.seed = seed;
    report.fraction = fraction;
    report.dataset_digest = dataset_digest;

    const EvalSplit split = split_ratings(m, fraction, seed);

    // Imputations depend only on (train, fill); share them across rows.
    struct FillCache {
        bool ready = false;
        DenseMatrix x;
    };
    std::vector<FillCache> cache(fills.size());

    for (Algorithm algo : algorithms) {
        for (std::size_t fi = 0; fi < fills.size(); ++fi) {
            const FillStrategy& fill = fills[fi];
            for (std::size_t r : components) {
                SweepRow row;
                row.algorithm = algo;
                row.fill = fill;
                row.components = r;

                const std::uint64_t derived = mix_seed(
                    mix_seed(mix_seed(seed, algorithm_name(algo)), fill_name(fill)), r);

                const double t0 = now_seconds();
                try {
                    FactorModel model = [&]() -> FactorModel {
                        switch (algo) {
                            case Algorithm::nmf: {
                                if (!cache[fi].ready) {
                                    cache[fi].x = impute_dense(split.train, fill);
                                    cache[fi].ready = true;
                                }
                                NmfModel nm = nmf_fit(cache[fi].x, r, options.nmf_max_iterations,
                                                      options.nmf_rel_tolerance, derived);
                                nm.fill = fill;
                                return nm;
                            }
                            case Algorithm::svd_t: {
                                if (!cache[fi].ready) {
                                    cache[fi].x = impute_dense(split.train, fill);
                                    cache[fi].ready = true;
                                }
                                SvdModel sm = svd_truncated(cache[fi].x, r);
                                sm.fill = fill;
                                return sm;
                            }
                            case Algorithm::svd_i: {
                                SvdIterResult it = svd_iterative(split.train, fill, r,
                                                                 options.svdi_threshold,
                                                                 options.svdi_max_iterations);
                                return it.model;
                            }
                            case Algorithm::sgd_mf:
                                return sgd_mf_fit(split.train, r, options.sgd_alpha,
                                                  options.sgd_lambda, options.sgd_epochs,
                                                  derived);
                        }
                        throw error("unreachable");
                    }();
                    const MetricPair mp = evaluate_model(model, split, m.scale);
                    row.rmse = mp.rmse;
                    row.mae = mp.mae;
                } catch (const error& ex) {
                    row.rmse = std::numeric_limits<double>::quiet_NaN();
                    row.mae = std::numeric_limits<double>::quiet_NaN();
                    row.error = ex.what();
                }
                row.seconds = options.timing ? now_seconds() - t0 : 0.0;
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    out << "algorithm,fill,components,rmse,mae,seconds\n";
    char buf[128];
    for (const SweepRow& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f", row.rmse, row.mae, row.seconds);
        out << algorithm_name(row.algorithm) << ',' << fill_name(row.fill) << ','
            << row.components << ',' << buf << '\n';
    }
}

void write_provenance_json(std::ostream& out, const SweepReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["fraction"] = report.fraction;
    j["dataset_digest"] = report.dataset_digest;
    j["rows"] = report.rows.size();
    out << j.dump(2) << '\n';
}

} // namespace mfrec
