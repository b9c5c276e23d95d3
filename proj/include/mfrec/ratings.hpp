#ifndef MFREC_RATINGS_HPP
#define MFREC_RATINGS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mfrec/dense.hpp"

namespace mfrec {

// Closed rating interval, e.g. [1,5] for star ratings.
struct RatingScale {
    double min = 1.0;
    double max = 5.0;

    bool contains(double v) const { return v >= min && v <= max; }
    double clamp(double v) const { return v < min ? min : (v > max ? max : v); }
    double width() const { return max - min; }
};

// One observed (user, item, rating) record. Ids are opaque external tokens;
// the timestamp is carried through but consumed by nothing.
struct RatingTriple {
    std::string user_raw;
    std::string item_raw;
    double rating = 0.0;
    std::optional<std::int64_t> timestamp;
};

// Imputation policy for unobserved cells.
enum class FillKind { global_mean, user_mean, item_mean, zero, constant };

struct FillStrategy {
    FillKind kind = FillKind::user_mean;
    double constant = 0.0; // used only by FillKind::constant

    static FillStrategy GlobalMean() { return {FillKind::global_mean, 0.0}; }
    static FillStrategy UserMean() { return {FillKind::user_mean, 0.0}; }
    static FillStrategy ItemMean() { return {FillKind::item_mean, 0.0}; }
    static FillStrategy Zero() { return {FillKind::zero, 0.0}; }
    static FillStrategy Constant(double c) { return {FillKind::constant, c}; }
};

// Canonical wire name ("user_mean", "constant(2.5)", ...) and its inverse.
std::string fill_name(const FillStrategy& f);
FillStrategy fill_from_name(const std::string& name);

// Total order used for sweep row ordering: by kind, constants by value.
bool fill_less(const FillStrategy& a, const FillStrategy& b);

// Compressed sparse row store of the observed ratings. Row = user, column =
// item, both in dense first-appearance order; raw ids kept in both directions.
struct SparseRatingMatrix {
    std::size_t n_users = 0;
    std::size_t n_items = 0;
    std::vector<std::size_t> row_offsets; // n_users + 1
    std::vector<std::size_t> col_indices; // per row, strictly increasing
    std::vector<double> values;
    std::unordered_map<std::string, std::size_t> user_to_index;
    std::unordered_map<std::string, std::size_t> item_to_index;
    std::vector<std::string> user_ids; // dense index -> raw id
    std::vector<std::string> item_ids;
    RatingScale scale;

    std::size_t nnz() const { return values.size(); }
    std::size_t row_begin(std::size_t u) const { return row_offsets[u]; }
    std::size_t row_end(std::size_t u) const { return row_offsets[u + 1]; }

    // Observed value at (u, i) if present.
    std::optional<double> at(std::size_t u, std::size_t i) const;
};

enum class RangePolicy { error, clamp };
enum class DuplicatePolicy { error, mean, last };
enum class RatingFormat { tsv, csv };

// Parse a rating stream. TSV rows are `user<TAB>item<TAB>rating[<TAB>timestamp]`
// with no header; CSV carries a `user,item,rating[,timestamp]` header. Extra
// columns are ignored. Ratings outside `scale` either raise or clamp.
std::vector<RatingTriple> load_ratings(std::istream& in, RatingFormat format,
                                       const RatingScale& scale,
                                       RangePolicy on_out_of_range = RangePolicy::error);

std::vector<RatingTriple> load_ratings_file(const std::string& path, RatingFormat format,
                                            const RatingScale& scale,
                                            RangePolicy on_out_of_range = RangePolicy::error);

// Build the CSR matrix. Dense indices follow first appearance of each raw id;
// duplicate (user,item) pairs are resolved per policy.
SparseRatingMatrix build_matrix(const std::vector<RatingTriple>& triples,
                                const RatingScale& scale,
                                DuplicatePolicy duplicates = DuplicatePolicy::error);

enum class RescaleDirection { to_unit, from_unit };

// Affine map between `scale` and the unit interval.
double rescale(double value, const RatingScale& scale, RescaleDirection direction);

// Dense view with missing cells filled per `strategy`. Observed cells always
// carry their observed value; user/item means fall back to the global mean
// when the row/column is empty.
DenseMatrix impute_dense(const SparseRatingMatrix& m, const FillStrategy& strategy);

// Mean of all observed entries.
double global_mean(const SparseRatingMatrix& m);

// Per-item observed mean (items with no ratings get the global mean) and count.
void item_stats(const SparseRatingMatrix& m, std::vector<double>& mean,
                std::vector<std::size_t>& count);

} // namespace mfrec

#endif
