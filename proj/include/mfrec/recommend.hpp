#ifndef MFREC_RECOMMEND_HPP
#define MFREC_RECOMMEND_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mfrec/kmeans.hpp"
#include "mfrec/model.hpp"
#include "mfrec/ratings.hpp"

namespace mfrec {

struct Recommendation {
    std::string item_raw;
    double score = 0.0;
};

// Highest predicted ratings for a user, scores clamped into the scale,
// ties broken by ascending dense item index. `exclude_seen` drops items the
// user already rated.
std::vector<Recommendation> top_n(const FactorModel& model, const SparseRatingMatrix& m,
                                  const std::string& user_raw, std::size_t n,
                                  bool exclude_seen, const RatingScale& scale);

// Rank the user's unseen items by their mean rating among the user's cluster
// peers; items with fewer than `min_support` cluster ratings fall back to
// their global mean rating.
std::vector<Recommendation> cluster_top_n(const std::vector<std::size_t>& assignments,
                                          const SparseRatingMatrix& m,
                                          const std::string& user_raw, std::size_t n,
                                          std::size_t min_support);

std::vector<Recommendation> cluster_top_n(const ClusterModel& cm, const SparseRatingMatrix& m,
                                          const std::string& user_raw, std::size_t n,
                                          std::size_t min_support);

// `rank,item_id,score` with rank starting at 1.
void write_recommendations_csv(std::ostream& out, const std::vector<Recommendation>& recs);

} // namespace mfrec

#endif
