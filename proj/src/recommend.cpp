#include "mfrec/recommend.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "mfrec/errors.hpp"

namespace mfrec {

namespace {

std::size_t resolve_user(const SparseRatingMatrix& m, const std::string& user_raw) {
    const auto it = m.user_to_index.find(user_raw);
    if (it == m.user_to_index.end())
        throw validation_error("unknown user id '" + user_raw + "'");
    return it->second;
}

// Sort by score descending, dense index ascending, then truncate to n.
std::vector<Recommendation> rank_and_take(std::vector<std::pair<std::size_t, double>>& scored,
                                          const SparseRatingMatrix& m, std::size_t n) {
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });
    if (scored.size() > n) scored.resize(n);
    std::vector<Recommendation> out;
    out.reserve(scored.size());
    for (const auto& [idx, score] : scored) out.push_back({m.item_ids[idx], score});
    return out;
}

} // namespace

std::vector<Recommendation> top_n(const FactorModel& model, const SparseRatingMatrix& m,
                                  const std::string& user_raw, std::size_t n,
                                  bool exclude_seen, const RatingScale& scale) {
    const std::size_t user = resolve_user(m, user_raw);
    if (model_n_users(model) != m.n_users || model_n_items(model) != m.n_items)
        throw validation_error("top_n: model dimensions do not match the rating matrix");

    std::vector<bool> seen(m.n_items, false);
    if (exclude_seen)
        for (std::size_t p = m.row_begin(user); p < m.row_end(user); ++p)
            seen[m.col_indices[p]] = true;

    std::vector<std::pair<std::size_t, double>> scored;
    scored.reserve(m.n_items);
    for (std::size_t i = 0; i < m.n_items; ++i) {
        if (seen[i]) continue;
        scored.emplace_back(i, predict_rating(model, user, i, scale));
    }
    return rank_and_take(scored, m, n);
}

std::vector<Recommendation> cluster_top_n(const std::vector<std::size_t>& assignments,
                                          const SparseRatingMatrix& m,
                                          const std::string& user_raw, std::size_t n,
                                          std::size_t min_support) {
    const std::size_t user = resolve_user(m, user_raw);
    if (assignments.size() != m.n_users)
        throw validation_error("cluster_top_n: assignments do not cover every user");

    const std::size_t cluster = assignments[user];

    std::vector<double> cluster_sum(m.n_items, 0.0);
    std::vector<std::size_t> cluster_count(m.n_items, 0);
    for (std::size_t u = 0; u < m.n_users; ++u) {
        if (assignments[u] != cluster) continue;
        for (std::size_t p = m.row_begin(u); p < m.row_end(u); ++p) {
            cluster_sum[m.col_indices[p]] += m.values[p];
            ++cluster_count[m.col_indices[p]];
        }
    }

    std::vector<double> global_item_mean;
    std::vector<std::size_t> global_count;
    item_stats(m, global_item_mean, global_count);

    std::vector<bool> seen(m.n_items, false);
    for (std::size_t p = m.row_begin(user); p < m.row_end(user); ++p)
        seen[m.col_indices[p]] = true;

    std::vector<std::pair<std::size_t, double>> scored;
    scored.reserve(m.n_items);
    for (std::size_t i = 0; i < m.n_items; ++i) {
        if (seen[i]) continue;
        const bool supported = cluster_count[i] >= min_support && cluster_count[i] > 0;
        const double score = supported
                                 ? cluster_sum[i] / static_cast<double>(cluster_count[i])
                                 : global_item_mean[i];
        scored.emplace_back(i, score);
    }
    return rank_and_take(scored, m, n);
}

std::vector<Recommendation> cluster_top_n(const ClusterModel& cm, const SparseRatingMatrix& m,
                                          const std::string& user_raw, std::size_t n,
                                          std::size_t min_support) {
    return cluster_top_n(cm.assignments, m, user_raw, n, min_support);
}

void write_recommendations_csv(std::ostream& out, const std::vector<Recommendation>& recs) {
    out << "rank,item_id,score\n";
    char buf[64];
    for (std::size_t i = 0; i < recs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f", recs[i].score);
        out << (i + 1) << ',' << recs[i].item_raw << ',' << buf << '\n';
    }
}

} // namespace mfrec
