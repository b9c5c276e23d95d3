#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "support/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_bin() {
    const char* env = std::getenv("MFREC_CLI_BIN");
    REQUIRE_MESSAGE(env != nullptr, "MFREC_CLI_BIN must point at the mfrec binary");
    return env;
}

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "mfrec_cli_io";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd =
        cli_bin() + " " + args + " >" + out.string() + " 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// Small deterministic dataset shared by the CLI tests.
const fs::path& workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mfrec_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        mfrec::testsupport::SyntheticSpec spec;
        spec.n_users = 60;
        spec.n_items = 90;
        spec.n_ratings = 1800;
        spec.latent_rank = 4;
        spec.min_ratings_per_user = 8;
        spec.seed = 555;
        mfrec::testsupport::write_synthetic_dataset((d / "ratings.tsv").string(), spec);
        return d;
    }();
    return dir;
}

std::string dataset() { return (workdir() / "ratings.tsv").string(); }

} // namespace

TEST_CASE("cli: unknown subcommand exits 2 with usage on stderr") {
    auto r = run("frobnicate");
    CHECK(r.status == 2);
    CHECK(!r.err.empty());
    CHECK(r.out.empty());
}

TEST_CASE("cli: bad flag exits 2; missing dataset exits 2") {
    CHECK(run("sweep --definitely-not-a-flag").status == 2);
    auto r = run("sweep --dataset /nonexistent/path.tsv --out " +
                 (workdir() / "nope").string());
    CHECK(r.status == 2);
    CHECK(!fs::exists(workdir() / "nope" / "sweep.csv"));
}

TEST_CASE("cli: data errors exit 1 and write nothing") {
    const fs::path bad = workdir() / "bad.tsv";
    std::ofstream(bad) << "1\t2\tnot_a_number\n";
    auto r = run("sweep --dataset " + bad.string() + " --out " +
                 (workdir() / "bad_out").string());
    CHECK(r.status == 1);
    CHECK(!r.err.empty());
    CHECK(!fs::exists(workdir() / "bad_out" / "sweep.csv"));
}

TEST_CASE("cli: sweep writes one row per combination plus provenance") {
    const fs::path out = workdir() / "sweep_small";
    auto r = run("sweep --dataset " + dataset() +
                 " --algorithms nmf --fills user_mean --components 3,5 --seed 7 "
                 "--nmf-max-iterations 20 --no-timing --out " +
                 out.string());
    REQUIRE(r.status == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.rfind("algorithm,fill,components,rmse,mae,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3); // header + 2 rows
    CHECK(csv.find("nmf,user_mean,3,") != std::string::npos);
    CHECK(csv.find("nmf,user_mean,5,") != std::string::npos);

    const auto prov = nlohmann::json::parse(slurp(out / "provenance.json"));
    CHECK(prov.at("seed").get<std::uint64_t>() == 7);
    CHECK(prov.at("fraction").get<double>() == doctest::Approx(0.2));
    CHECK(prov.at("dataset_digest").get<std::string>().size() == 64);
}

TEST_CASE("cli: sweep is byte-deterministic and backend-independent") {
    const fs::path out1 = workdir() / "det1";
    const fs::path out2 = workdir() / "det2";
    const fs::path out3 = workdir() / "det3";
    const std::string common =
        "sweep --dataset " + dataset() +
        " --algorithms nmf,svd_t --fills user_mean --components 4 --seed 11 "
        "--nmf-max-iterations 15 --no-timing --out ";
    REQUIRE(run(common + out1.string()).status == 0);
    REQUIRE(run(common + out2.string()).status == 0);
    REQUIRE(run(common + out3.string() + " --backend serial").status == 0);

    CHECK(slurp(out1 / "sweep.csv") == slurp(out2 / "sweep.csv"));
    CHECK(slurp(out1 / "provenance.json") == slurp(out2 / "provenance.json"));
    CHECK(slurp(out1 / "sweep.csv") == slurp(out3 / "sweep.csv"));
}

TEST_CASE("cli: config file drives the run and flags win over it") {
    const fs::path cfg = workdir() / "cfg.json";
    const fs::path out = workdir() / "cfg_out";
    {
        nlohmann::json j;
        j["dataset"] = dataset();
        j["format"] = "tsv";
        j["algorithms"] = {"nmf"};
        j["fills"] = {"zero"};
        j["components"] = {"4"};
        j["seed"] = 3;
        j["nmf_max_iterations"] = 10;
        j["timing"] = false;
        j["out"] = out.string();
        std::ofstream(cfg) << j.dump(2);
    }
    auto r = run("sweep --config " + cfg.string() + " --components 6");
    REQUIRE(r.status == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.find("nmf,zero,6,") != std::string::npos); // flag override
    CHECK(csv.find(",4,") == std::string::npos);

    std::ofstream(cfg) << "{\"no_such_key\": 1}";
    CHECK(run("sweep --config " + cfg.string()).status == 2);
    std::ofstream(cfg) << "{broken";
    CHECK(run("sweep --config " + cfg.string()).status == 2);
}

TEST_CASE("cli: train, eval, cluster, recommend pipeline") {
    const fs::path out = workdir() / "pipeline";
    const std::string model = (out / "model.json").string();

    auto tr = run("train --dataset " + dataset() +
                  " --algorithm svd_t --fill user_mean --components 6 --seed 21 --out " +
                  out.string());
    REQUIRE(tr.status == 0);
    REQUIRE(fs::exists(model));

    auto ev = run("eval --dataset " + dataset() + " --model " + model + " --seed 21");
    REQUIRE(ev.status == 0);
    const auto metrics = nlohmann::json::parse(ev.out);
    CHECK(metrics.at("rmse").get<double>() > 0.0);
    CHECK(metrics.at("rmse").get<double>() < 3.0);
    CHECK(metrics.at("mae").get<double>() <= metrics.at("rmse").get<double>());

    auto cl = run("cluster --dataset " + dataset() + " --model " + model +
                  " --k 4 --seed 5 --out " + out.string());
    REQUIRE(cl.status == 0);
    const std::string clusters = slurp(out / "clusters.csv");
    CHECK(clusters.rfind("user_id,cluster\n", 0) == 0);
    CHECK(std::count(clusters.begin(), clusters.end(), '\n') == 61); // header + 60 users

    auto rec = run("recommend --dataset " + dataset() + " --model " + model +
                   " --user 1 --n 5 --out " + out.string());
    REQUIRE(rec.status == 0);
    const std::string recs = slurp(out / "recommendations.csv");
    CHECK(recs.rfind("rank,item_id,score\n", 0) == 0);
    CHECK(std::count(recs.begin(), recs.end(), '\n') == 6);

    auto crec = run("recommend --dataset " + dataset() + " --model " + model +
                    " --user 1 --n 5 --clusters " + (out / "clusters.csv").string() +
                    " --min-support 2 --out " + out.string());
    REQUIRE(crec.status == 0);

    auto missing = run("recommend --dataset " + dataset() + " --model " + model +
                       " --user not_a_user --n 5 --out " + out.string());
    CHECK(missing.status == 1);
}

TEST_CASE("cli: eval on a perfect-oracle fixture reports zero rmse") {
    // Dataset whose ratings are exactly 3.0 everywhere; a rank-1 model with
    // P=1, Q=3 reproduces every rating.
    const fs::path data = workdir() / "const.tsv";
    {
        std::ofstream f(data);
        for (int u = 1; u <= 6; ++u)
            for (int i = 1; i <= 5; ++i) f << u << '\t' << i << "\t3\t0\n";
    }
    const fs::path model = workdir() / "oracle_model.json";
    {
        nlohmann::json j;
        j["kind"] = "sgd_mf";
        j["n_users"] = 6;
        j["n_items"] = 5;
        j["components"] = 1;
        j["alpha"] = 0.0;
        j["lambda"] = 0.0;
        j["epochs"] = 0;
        j["seed"] = 0;
        j["p"] = {{"rows", 6}, {"cols", 1}, {"values", std::vector<double>(6, 1.0)}};
        j["q"] = {{"rows", 1}, {"cols", 5}, {"values", std::vector<double>(5, 3.0)}};
        std::ofstream(model) << j.dump();
    }
    auto ev = run("eval --dataset " + data.string() + " --model " + model.string() +
                  " --fraction 0.3 --seed 4");
    REQUIRE(ev.status == 0);
    const auto metrics = nlohmann::json::parse(ev.out);
    CHECK(metrics.at("rmse").get<double>() == doctest::Approx(0.0));
    CHECK(metrics.at("mae").get<double>() == doctest::Approx(0.0));
}
