#include "doctest.h"

#include <sstream>

#include "mfrec/errors.hpp"
#include "mfrec/recommend.hpp"

using namespace mfrec;

namespace {

SparseRatingMatrix small_matrix() {
    // Items appear in order i1, i2, i3 -> dense indices 0, 1, 2.
    std::vector<RatingTriple> ts;
    auto add = [&](const char* u, const char* i, double r) {
        RatingTriple t;
        t.user_raw = u;
        t.item_raw = i;
        t.rating = r;
        ts.push_back(t);
    };
    add("alice", "i1", 5.0);
    add("alice", "i2", 3.0);
    add("bob", "i2", 4.0);
    add("bob", "i3", 2.0);
    return build_matrix(ts, {1, 5});
}

// A hand-built SGD model whose raw predictions are an explicit per-item row
// vector, identical for every user: P = ones, Q = scores.
FactorModel table_model(std::size_t n_users, std::initializer_list<double> item_scores) {
    SgdMfModel m;
    m.r = 1;
    m.p = DenseMatrix(n_users, 1, 1.0);
    m.q = DenseMatrix(1, item_scores.size());
    std::size_t i = 0;
    for (double s : item_scores) m.q(0, i++) = s;
    return m;
}

} // namespace

TEST_CASE("top_n ranks by score with index tie-breaking") {
    auto m = small_matrix();
    auto model = table_model(2, {4.2, 3.9, 4.2});
    auto recs = top_n(model, m, "alice", 2, false, {1, 5});
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].item_raw == "i1"); // tie with i3 broken by lower dense index
    CHECK(recs[1].item_raw == "i3");
    CHECK(recs[0].score == doctest::Approx(4.2));
}

TEST_CASE("top_n degenerate requests") {
    auto m = small_matrix();
    auto model = table_model(2, {4.2, 3.9, 4.2});
    CHECK(top_n(model, m, "alice", 0, false, {1, 5}).empty());
    CHECK(top_n(model, m, "alice", 99, false, {1, 5}).size() == 3);
    CHECK_THROWS_AS(top_n(model, m, "carol", 1, false, {1, 5}), validation_error);
}

TEST_CASE("top_n excludes seen items") {
    auto m = small_matrix();
    auto model = table_model(2, {4.5, 4.4, 4.3});
    auto recs = top_n(model, m, "alice", 10, true, {1, 5});
    REQUIRE(recs.size() == 1); // alice rated i1, i2
    CHECK(recs[0].item_raw == "i3");

    // Scores stay within the scale.
    auto big = table_model(2, {9.0, -4.0, 3.0});
    auto clamped = top_n(big, m, "bob", 10, false, {1, 5});
    for (const auto& r : clamped) {
        CHECK(r.score >= 1.0);
        CHECK(r.score <= 5.0);
    }
}

TEST_CASE("top_n scores are non-increasing with ascending index ties") {
    auto m = small_matrix();
    auto model = table_model(2, {4.0, 4.0, 4.0});
    auto recs = top_n(model, m, "bob", 3, false, {1, 5});
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].item_raw == "i1");
    CHECK(recs[1].item_raw == "i2");
    CHECK(recs[2].item_raw == "i3");
}

TEST_CASE("cluster_top_n uses peer means with support threshold") {
    // Two users in one cluster; the peer rated i3 = 5.0.
    std::vector<RatingTriple> ts;
    auto add = [&](const char* u, const char* i, double r) {
        RatingTriple t;
        t.user_raw = u;
        t.item_raw = i;
        t.rating = r;
        ts.push_back(t);
    };
    add("u1", "i1", 4.0);
    add("u2", "i1", 4.0);
    add("u2", "i3", 5.0);
    add("u3", "i2", 1.0); // other cluster
    add("u3", "i3", 1.0);
    auto m = build_matrix(ts, {1, 5});

    const std::vector<std::size_t> assign = {0, 0, 1};
    auto recs = cluster_top_n(assign, m, "u1", 10, 1);
    REQUIRE(!recs.empty());
    CHECK(recs[0].item_raw == "i3"); // peer mean 5.0 beats anything else
    CHECK(recs[0].score == doctest::Approx(5.0));

    // With min_support 2, i3 has a single cluster rating and falls back to
    // its global mean (5+1)/2 = 3.
    auto fallback = cluster_top_n(assign, m, "u1", 10, 2);
    for (const auto& r : fallback)
        if (r.item_raw == "i3") CHECK(r.score == doctest::Approx(3.0));
}

TEST_CASE("cluster_top_n for a singleton cluster degenerates to global item means") {
    auto m = small_matrix(); // alice: i1=5, i2=3; bob: i2=4, i3=2
    const std::vector<std::size_t> assign = {0, 1};
    auto recs = cluster_top_n(assign, m, "alice", 10, 3);
    REQUIRE(recs.size() == 1); // only i3 unseen
    CHECK(recs[0].item_raw == "i3");
    CHECK(recs[0].score == doctest::Approx(2.0)); // global mean of i3

    CHECK(cluster_top_n(assign, m, "alice", 0, 1).empty());
    CHECK_THROWS_AS(cluster_top_n(assign, m, "nobody", 1, 1), validation_error);
    CHECK_THROWS_AS(cluster_top_n(std::vector<std::size_t>{0}, m, "alice", 1, 1),
                    validation_error);
}

TEST_CASE("recommendations csv format") {
    std::vector<Recommendation> recs = {{"42", 4.5}, {"7", 3.25}};
    std::ostringstream out;
    write_recommendations_csv(out, recs);
    CHECK(out.str() ==
          "rank,item_id,score\n"
          "1,42,4.500000\n"
          "2,7,3.250000\n");
}
