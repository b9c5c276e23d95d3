// mfrec: batch experiments for matrix-factorization recommenders.
//
// Subcommands: sweep | train | cluster | recommend | eval. All options can
// come from a flat JSON config (--config); explicit flags win.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "mfrec/digest.hpp"
#include "mfrec/errors.hpp"
#include "mfrec/evaluate.hpp"
#include "mfrec/kernels.hpp"
#include "mfrec/kmeans.hpp"
#include "mfrec/model_io.hpp"
#include "mfrec/recommend.hpp"
#include "mfrec/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Everything a run might need, mirrored 1:1 by the JSON config keys.
struct Options {
    std::string config_path;
    std::string dataset;
    std::string format = "tsv";
    double scale_min = 1.0;
    double scale_max = 5.0;
    std::string duplicates = "error";
    std::string range_policy = "error";
    double fraction = 0.2;
    std::uint64_t seed = 42;
    std::string out = ".";
    std::vector<std::string> algorithms = {"nmf", "svd_t", "svd_i"};
    std::vector<std::string> fills = {"user_mean"};
    std::vector<std::string> components = {"2..30"};
    std::size_t nmf_max_iterations = 1200;
    double nmf_rel_tolerance = 1e-4;
    double svdi_threshold = 1e-4;
    std::size_t svdi_max_iterations = 50;
    double sgd_alpha = 0.005;
    double sgd_lambda = 0.02;
    std::size_t sgd_epochs = 50;
    std::size_t kmeans_k = 10;
    std::size_t kmeans_restarts = 10;
    std::size_t kmeans_max_iterations = 100;
    std::size_t min_support = 3;
    bool timing = true;
    std::string backend = "parallel";
    int threads = 0; // 0 = library default
    // train/cluster/recommend/eval specifics
    std::string algorithm = "nmf";
    std::string fill = "user_mean";
    std::size_t model_components = 15;
    std::string model_path;
    std::string model_out;
    std::string clusters_path;
    std::string user;
    std::size_t top_count = 10;
    bool exclude_seen = true;
};

const std::set<std::string> kConfigKeys = {
    "dataset", "format", "scale_min", "scale_max", "duplicates", "range_policy",
    "fraction", "seed", "out", "algorithms", "fills", "components",
    "nmf_max_iterations", "nmf_rel_tolerance", "svdi_threshold", "svdi_max_iterations",
    "sgd_alpha", "sgd_lambda", "sgd_epochs", "kmeans_k", "kmeans_restarts",
    "kmeans_max_iterations", "min_support", "timing", "backend", "threads",
    "algorithm", "fill", "model_components", "model", "model_out", "clusters",
    "user", "n", "exclude_seen"};

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> string_list(const json& v, const std::string& key) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (e.is_string())
                out.push_back(e.get<std::string>());
            else
                out.push_back(e.dump());
        }
        return out;
    }
    if (v.is_string()) return {v.get<std::string>()};
    throw config_error("config key '" + key + "' must be a string or array");
}

void apply_config(Options& o, const json& cfg) {
    if (!cfg.is_object()) throw config_error("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (!kConfigKeys.count(key)) throw config_error("unknown config key '" + key + "'");
        try {
            if (key == "dataset") o.dataset = value.get<std::string>();
            else if (key == "format") o.format = value.get<std::string>();
            else if (key == "scale_min") o.scale_min = value.get<double>();
            else if (key == "scale_max") o.scale_max = value.get<double>();
            else if (key == "duplicates") o.duplicates = value.get<std::string>();
            else if (key == "range_policy") o.range_policy = value.get<std::string>();
            else if (key == "fraction") o.fraction = value.get<double>();
            else if (key == "seed") o.seed = value.get<std::uint64_t>();
            else if (key == "out") o.out = value.get<std::string>();
            else if (key == "algorithms") o.algorithms = string_list(value, key);
            else if (key == "fills") o.fills = string_list(value, key);
            else if (key == "components") o.components = string_list(value, key);
            else if (key == "nmf_max_iterations") o.nmf_max_iterations = value.get<std::size_t>();
            else if (key == "nmf_rel_tolerance") o.nmf_rel_tolerance = value.get<double>();
            else if (key == "svdi_threshold") o.svdi_threshold = value.get<double>();
            else if (key == "svdi_max_iterations") o.svdi_max_iterations = value.get<std::size_t>();
            else if (key == "sgd_alpha") o.sgd_alpha = value.get<double>();
            else if (key == "sgd_lambda") o.sgd_lambda = value.get<double>();
            else if (key == "sgd_epochs") o.sgd_epochs = value.get<std::size_t>();
            else if (key == "kmeans_k") o.kmeans_k = value.get<std::size_t>();
            else if (key == "kmeans_restarts") o.kmeans_restarts = value.get<std::size_t>();
            else if (key == "kmeans_max_iterations")
                o.kmeans_max_iterations = value.get<std::size_t>();
            else if (key == "min_support") o.min_support = value.get<std::size_t>();
            else if (key == "timing") o.timing = value.get<bool>();
            else if (key == "backend") o.backend = value.get<std::string>();
            else if (key == "threads") o.threads = value.get<int>();
            else if (key == "algorithm") o.algorithm = value.get<std::string>();
            else if (key == "fill") o.fill = value.get<std::string>();
            else if (key == "model_components") o.model_components = value.get<std::size_t>();
            else if (key == "model") o.model_path = value.get<std::string>();
            else if (key == "model_out") o.model_out = value.get<std::string>();
            else if (key == "clusters") o.clusters_path = value.get<std::string>();
            else if (key == "user") o.user = value.get<std::string>();
            else if (key == "n") o.top_count = value.get<std::size_t>();
            else if (key == "exclude_seen") o.exclude_seen = value.get<bool>();
        } catch (const json::exception& ex) {
            throw config_error("config key '" + key + "': " + ex.what());
        }
    }
}

// "15" -> {15}; "2..30" -> {2,...,30}; "2,5,9" -> {2,5,9}.
std::vector<std::size_t> parse_components(const std::vector<std::string>& specs) {
    std::vector<std::size_t> out;
    for (const std::string& spec : specs) {
        std::size_t start = 0;
        while (start <= spec.size()) {
            std::size_t comma = spec.find(',', start);
            const std::string tok =
                spec.substr(start, comma == std::string::npos ? comma : comma - start);
            start = comma == std::string::npos ? spec.size() + 1 : comma + 1;
            if (tok.empty()) continue;
            const std::size_t dots = tok.find("..");
            try {
                if (dots == std::string::npos) {
                    out.push_back(static_cast<std::size_t>(std::stoull(tok)));
                } else {
                    const std::size_t lo = std::stoull(tok.substr(0, dots));
                    const std::size_t hi = std::stoull(tok.substr(dots + 2));
                    if (hi < lo) throw config_error("bad component range '" + tok + "'");
                    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
                }
            } catch (const std::invalid_argument&) {
                throw config_error("bad component value '" + tok + "'");
            } catch (const std::out_of_range&) {
                throw config_error("bad component value '" + tok + "'");
            }
        }
    }
    if (out.empty()) throw config_error("components list is empty");
    return out;
}

mfrec::RatingFormat parse_format(const std::string& f) {
    if (f == "tsv") return mfrec::RatingFormat::tsv;
    if (f == "csv") return mfrec::RatingFormat::csv;
    throw config_error("format must be tsv or csv, got '" + f + "'");
}

mfrec::DuplicatePolicy parse_duplicates(const std::string& d) {
    if (d == "error") return mfrec::DuplicatePolicy::error;
    if (d == "mean") return mfrec::DuplicatePolicy::mean;
    if (d == "last") return mfrec::DuplicatePolicy::last;
    throw config_error("duplicates must be error, mean or last");
}

mfrec::RangePolicy parse_range_policy(const std::string& p) {
    if (p == "error") return mfrec::RangePolicy::error;
    if (p == "clamp") return mfrec::RangePolicy::clamp;
    throw config_error("range policy must be error or clamp");
}

void parse_scale_flag(const std::string& s, Options& o) {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw config_error("--scale expects MIN:MAX");
    try {
        o.scale_min = std::stod(s.substr(0, colon));
        o.scale_max = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw config_error("--scale expects numeric MIN:MAX");
    }
}

void validate_common(const Options& o) {
    if (!(o.scale_min < o.scale_max)) throw config_error("scale_min must be < scale_max");
    if (!(o.fraction >= 0.0 && o.fraction < 1.0))
        throw config_error("fraction must be in [0, 1)");
    if (o.backend != "serial" && o.backend != "parallel")
        throw config_error("backend must be serial or parallel");
    if (o.threads < 0) throw config_error("threads must be >= 0");
}

void apply_runtime(const Options& o) {
    mfrec::kernels::set_backend(o.backend == "serial" ? mfrec::kernels::Backend::serial
                                                      : mfrec::kernels::Backend::parallel);
#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
}

mfrec::SparseRatingMatrix load_dataset(const Options& o) {
    if (o.dataset.empty()) throw config_error("no dataset configured");
    if (!fs::exists(o.dataset)) throw config_error("dataset path does not exist: " + o.dataset);
    const mfrec::RatingScale scale{o.scale_min, o.scale_max};
    auto triples = mfrec::load_ratings_file(o.dataset, parse_format(o.format), scale,
                                            parse_range_policy(o.range_policy));
    return mfrec::build_matrix(triples, scale, parse_duplicates(o.duplicates));
}

mfrec::SweepOptions sweep_options(const Options& o) {
    mfrec::SweepOptions s;
    s.nmf_max_iterations = o.nmf_max_iterations;
    s.nmf_rel_tolerance = o.nmf_rel_tolerance;
    s.svdi_threshold = o.svdi_threshold;
    s.svdi_max_iterations = o.svdi_max_iterations;
    s.sgd_alpha = o.sgd_alpha;
    s.sgd_lambda = o.sgd_lambda;
    s.sgd_epochs = o.sgd_epochs;
    s.timing = o.timing;
    return s;
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw mfrec::validation_error("cannot open output file: " + path.string());
    f << content;
    if (!f) throw mfrec::validation_error("failed writing output file: " + path.string());
}

int cmd_sweep(const Options& o) {
    apply_runtime(o);
    auto matrix = load_dataset(o);

    std::vector<mfrec::Algorithm> algos;
    for (const auto& a : o.algorithms) algos.push_back(mfrec::algorithm_from_name(a));
    std::vector<mfrec::FillStrategy> fills;
    for (const auto& f : o.fills) fills.push_back(mfrec::fill_from_name(f));
    const auto comps = parse_components(o.components);

    const std::string digest = mfrec::sha256_file(o.dataset);
    auto report = mfrec::run_sweep(matrix, algos, fills, comps, o.fraction, o.seed,
                                   sweep_options(o), digest);

    for (const auto& row : report.rows)
        if (!row.error.empty())
            std::cerr << "warning: " << mfrec::algorithm_name(row.algorithm) << "/"
                      << mfrec::fill_name(row.fill) << "/" << row.components
                      << " failed: " << row.error << "\n";

    std::ostringstream csv, prov;
    mfrec::write_sweep_csv(csv, report);
    mfrec::write_provenance_json(prov, report);
    write_text_file(fs::path(o.out) / "sweep.csv", csv.str());
    write_text_file(fs::path(o.out) / "provenance.json", prov.str());
    std::cout << "wrote " << (fs::path(o.out) / "sweep.csv").string() << " ("
              << report.rows.size() << " rows)\n";
    return 0;
}

mfrec::FactorModel fit_single(const Options& o, const mfrec::SparseRatingMatrix& train) {
    const mfrec::Algorithm algo = mfrec::algorithm_from_name(o.algorithm);
    const mfrec::FillStrategy fill = mfrec::fill_from_name(o.fill);
    const std::uint64_t derived = mfrec::mix_seed(
        mfrec::mix_seed(mfrec::mix_seed(o.seed, o.algorithm), mfrec::fill_name(fill)),
        o.model_components);
    switch (algo) {
        case mfrec::Algorithm::nmf: {
            auto x = mfrec::impute_dense(train, fill);
            auto m = mfrec::nmf_fit(x, o.model_components, o.nmf_max_iterations,
                                    o.nmf_rel_tolerance, derived);
            m.fill = fill;
            return m;
        }
        case mfrec::Algorithm::svd_t: {
            auto x = mfrec::impute_dense(train, fill);
            auto m = mfrec::svd_truncated(x, o.model_components);
            m.fill = fill;
            return m;
        }
        case mfrec::Algorithm::svd_i:
            return mfrec::svd_iterative(train, fill, o.model_components, o.svdi_threshold,
                                        o.svdi_max_iterations)
                .model;
        case mfrec::Algorithm::sgd_mf:
            return mfrec::sgd_mf_fit(train, o.model_components, o.sgd_alpha, o.sgd_lambda,
                                     o.sgd_epochs, derived);
    }
    throw mfrec::error("unreachable");
}

int cmd_train(const Options& o) {
    apply_runtime(o);
    auto matrix = load_dataset(o);
    auto split = mfrec::split_ratings(matrix, o.fraction, o.seed);
    auto model = fit_single(o, split.train);

    const fs::path out = o.model_out.empty() ? fs::path(o.out) / "model.json"
                                             : fs::path(o.model_out);
    std::ostringstream buf;
    mfrec::save_model(buf, model);
    write_text_file(out, buf.str());
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_cluster(const Options& o) {
    apply_runtime(o);
    if (o.model_path.empty()) throw config_error("cluster requires --model");
    if (!fs::exists(o.model_path))
        throw config_error("model path does not exist: " + o.model_path);
    auto matrix = load_dataset(o);
    auto model = mfrec::load_model_file(o.model_path);
    if (mfrec::model_n_users(model) != matrix.n_users)
        throw mfrec::validation_error("model user count does not match the dataset");

    auto features = mfrec::user_latent_features(model);
    auto cm = mfrec::kmeans_fit(features, o.kmeans_k, o.seed, o.kmeans_max_iterations,
                                o.kmeans_restarts);

    std::ostringstream csv;
    mfrec::write_clusters_csv(csv, cm, matrix.user_ids);
    write_text_file(fs::path(o.out) / "clusters.csv", csv.str());
    std::cout << "wrote " << (fs::path(o.out) / "clusters.csv").string() << " (k=" << cm.k
              << ", inertia=" << cm.inertia << ")\n";
    return 0;
}

std::vector<std::size_t> load_assignments(const std::string& path,
                                          const mfrec::SparseRatingMatrix& m) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw mfrec::validation_error("cannot open clusters file: " + path);
    std::vector<std::size_t> assign(m.n_users, 0);
    std::vector<bool> seen(m.n_users, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || lineno == 1) continue; // header
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw mfrec::parse_error("expected user_id,cluster", lineno);
        const std::string user = line.substr(0, comma);
        const auto it = m.user_to_index.find(user);
        if (it == m.user_to_index.end())
            throw mfrec::validation_error("clusters file names unknown user '" + user + "'");
        try {
            assign[it->second] = std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw mfrec::parse_error("bad cluster index", lineno);
        }
        seen[it->second] = true;
    }
    for (std::size_t u = 0; u < m.n_users; ++u)
        if (!seen[u])
            throw mfrec::validation_error("clusters file is missing user '" + m.user_ids[u] +
                                          "'");
    return assign;
}

int cmd_recommend(const Options& o) {
    apply_runtime(o);
    if (o.model_path.empty()) throw config_error("recommend requires --model");
    if (!fs::exists(o.model_path))
        throw config_error("model path does not exist: " + o.model_path);
    if (o.user.empty()) throw config_error("recommend requires --user");
    auto matrix = load_dataset(o);
    auto model = mfrec::load_model_file(o.model_path);

    std::vector<mfrec::Recommendation> recs;
    if (!o.clusters_path.empty()) {
        auto assign = load_assignments(o.clusters_path, matrix);
        recs = mfrec::cluster_top_n(assign, matrix, o.user, o.top_count, o.min_support);
    } else {
        recs = mfrec::top_n(model, matrix, o.user, o.top_count, o.exclude_seen,
                            matrix.scale);
    }

    std::ostringstream csv;
    mfrec::write_recommendations_csv(csv, recs);
    write_text_file(fs::path(o.out) / "recommendations.csv", csv.str());
    std::cout << "wrote " << (fs::path(o.out) / "recommendations.csv").string() << " ("
              << recs.size() << " items)\n";
    return 0;
}

int cmd_eval(const Options& o) {
    apply_runtime(o);
    if (o.model_path.empty()) throw config_error("eval requires --model");
    if (!fs::exists(o.model_path))
        throw config_error("model path does not exist: " + o.model_path);
    auto matrix = load_dataset(o);
    auto model = mfrec::load_model_file(o.model_path);
    auto split = mfrec::split_ratings(matrix, o.fraction, o.seed);
    const auto mp = mfrec::evaluate_model(model, split, matrix.scale);

    json j;
    j["rmse"] = mp.rmse;
    j["mae"] = mp.mae;
    j["test_entries"] = split.test.size();
    j["fraction"] = o.fraction;
    j["seed"] = o.seed;
    std::cout << j.dump(2) << "\n";
    return 0;
}

void add_common_flags(CLI::App* cmd, Options& o, std::string& scale_flag) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--dataset", o.dataset, "ratings file");
    cmd->add_option("--format", o.format, "tsv|csv");
    cmd->add_option("--scale", scale_flag, "rating scale MIN:MAX");
    cmd->add_option("--duplicates", o.duplicates, "duplicate policy: error|mean|last");
    cmd->add_option("--range-policy", o.range_policy, "out-of-range ratings: error|clamp");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--fraction", o.fraction, "test fraction in [0,1)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--backend", o.backend, "kernel backend: serial|parallel");
    cmd->add_option("--threads", o.threads, "OpenMP thread count (0 = default)");
    cmd->add_flag("--no-timing", [&o](std::int64_t) { o.timing = false; },
                  "write zeros in the seconds column");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix-factorization recommender experiments"};
    app.require_subcommand(1);

    Options o;
    std::string scale_flag;

    auto* sweep = app.add_subcommand("sweep", "parameter sweep -> sweep.csv + provenance.json");
    add_common_flags(sweep, o, scale_flag);
    sweep->add_option("--algorithms", o.algorithms, "subset of nmf svd_t svd_i sgd_mf")
        ->delimiter(',');
    sweep->add_option("--fills", o.fills,
                      "fill strategies (global_mean user_mean item_mean zero constant(X))")
        ->delimiter(',');
    sweep->add_option("--components", o.components, "component counts, e.g. 15 or 2..30")
        ->delimiter(',');
    sweep->add_option("--nmf-max-iterations", o.nmf_max_iterations, "NMF iteration cap");
    sweep->add_option("--nmf-tolerance", o.nmf_rel_tolerance, "NMF relative tolerance");
    sweep->add_option("--svdi-threshold", o.svdi_threshold, "SVD-I convergence threshold");
    sweep->add_option("--svdi-max-iterations", o.svdi_max_iterations, "SVD-I iteration cap");
    sweep->add_option("--sgd-alpha", o.sgd_alpha, "SGD learning rate");
    sweep->add_option("--sgd-lambda", o.sgd_lambda, "SGD regularization");
    sweep->add_option("--sgd-epochs", o.sgd_epochs, "SGD epochs");

    auto* train = app.add_subcommand("train", "fit one model -> model.json");
    add_common_flags(train, o, scale_flag);
    train->add_option("--algorithm", o.algorithm, "nmf|svd_t|svd_i|sgd_mf");
    train->add_option("--fill", o.fill, "fill strategy");
    train->add_option("--components", o.model_components, "component count");
    train->add_option("--model-out", o.model_out, "model output path");
    train->add_option("--nmf-max-iterations", o.nmf_max_iterations, "NMF iteration cap");
    train->add_option("--nmf-tolerance", o.nmf_rel_tolerance, "NMF relative tolerance");
    train->add_option("--svdi-threshold", o.svdi_threshold, "SVD-I convergence threshold");
    train->add_option("--svdi-max-iterations", o.svdi_max_iterations, "SVD-I iteration cap");
    train->add_option("--sgd-alpha", o.sgd_alpha, "SGD learning rate");
    train->add_option("--sgd-lambda", o.sgd_lambda, "SGD regularization");
    train->add_option("--sgd-epochs", o.sgd_epochs, "SGD epochs");

    auto* cluster = app.add_subcommand("cluster", "segment users -> clusters.csv");
    add_common_flags(cluster, o, scale_flag);
    cluster->add_option("--model", o.model_path, "fitted model JSON");
    cluster->add_option("--k", o.kmeans_k, "cluster count");
    cluster->add_option("--restarts", o.kmeans_restarts, "K-Means restarts");
    cluster->add_option("--kmeans-max-iterations", o.kmeans_max_iterations,
                        "K-Means iteration cap");

    auto* recommend = app.add_subcommand("recommend", "top-N items -> recommendations.csv");
    add_common_flags(recommend, o, scale_flag);
    recommend->add_option("--model", o.model_path, "fitted model JSON");
    recommend->add_option("--user", o.user, "raw user id");
    recommend->add_option("--n", o.top_count, "number of recommendations");
    recommend->add_option("--clusters", o.clusters_path,
                          "clusters.csv; switches to cluster-mean ranking");
    recommend->add_option("--min-support", o.min_support, "cluster ratings required per item");
    recommend->add_flag("--include-seen", [&o](std::int64_t) { o.exclude_seen = false; },
                        "keep items the user already rated");

    auto* eval = app.add_subcommand("eval", "held-out metrics -> JSON on stdout");
    add_common_flags(eval, o, scale_flag);
    eval->add_option("--model", o.model_path, "fitted model JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 2;
    }

    try {
        // Config file first, then re-parse so explicit flags override it.
        if (!o.config_path.empty()) {
            if (!fs::exists(o.config_path))
                throw config_error("config path does not exist: " + o.config_path);
            std::ifstream f(o.config_path, std::ios::binary);
            json cfg;
            try {
                f >> cfg;
            } catch (const json::exception& ex) {
                throw config_error(std::string("config parse failure: ") + ex.what());
            }
            apply_config(o, cfg);
            try {
                app.clear();
                app.parse(argc, argv);
            } catch (const CLI::ParseError& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
        }
        if (!scale_flag.empty()) parse_scale_flag(scale_flag, o);
        validate_common(o);

        if (sweep->parsed()) return cmd_sweep(o);
        if (train->parsed()) return cmd_train(o);
        if (cluster->parsed()) return cmd_cluster(o);
        if (recommend->parsed()) return cmd_recommend(o);
        if (eval->parsed()) return cmd_eval(o);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const config_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const mfrec::error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
