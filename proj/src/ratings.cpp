#include "mfrec/ratings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "mfrec/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfrec {

namespace {

std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && issp(s[b])) ++b;
    return s.substr(b);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

double parse_rating(const std::string& tok, std::size_t lineno) {
    const std::string t = trim(tok);
    if (t.empty()) throw parse_error("empty rating field", lineno);
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
        throw parse_error("non-numeric rating '" + t + "'", lineno);
    if (!std::isfinite(v)) throw parse_error("non-finite rating '" + t + "'", lineno);
    return v;
}

std::optional<std::int64_t> parse_timestamp(const std::string& tok) {
    const std::string t = trim(tok);
    if (t.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
    return v;
}

} // namespace

std::string fill_name(const FillStrategy& f) {
    switch (f.kind) {
        case FillKind::global_mean: return "global_mean";
        case FillKind::user_mean: return "user_mean";
        case FillKind::item_mean: return "item_mean";
        case FillKind::zero: return "zero";
        case FillKind::constant: {
            std::ostringstream os;
            os << "constant(" << f.constant << ")";
            return os.str();
        }
    }
    return "unknown";
}

FillStrategy fill_from_name(const std::string& name) {
    if (name == "global_mean") return FillStrategy::GlobalMean();
    if (name == "user_mean") return FillStrategy::UserMean();
    if (name == "item_mean") return FillStrategy::ItemMean();
    if (name == "zero") return FillStrategy::Zero();
    if (name.rfind("constant(", 0) == 0 && name.back() == ')') {
        const std::string num = name.substr(9, name.size() - 10);
        try {
            return FillStrategy::Constant(std::stod(num));
        } catch (const std::exception&) {
            throw validation_error("bad constant fill value '" + num + "'");
        }
    }
    throw validation_error("unknown fill strategy '" + name + "'");
}

bool fill_less(const FillStrategy& a, const FillStrategy& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind == FillKind::constant) return a.constant < b.constant;
    return false;
}

std::optional<double> SparseRatingMatrix::at(std::size_t u, std::size_t i) const {
    const auto b = col_indices.begin() + static_cast<std::ptrdiff_t>(row_begin(u));
    const auto e = col_indices.begin() + static_cast<std::ptrdiff_t>(row_end(u));
    const auto it = std::lower_bound(b, e, i);
    if (it == e || *it != i) return std::nullopt;
    return values[static_cast<std::size_t>(it - col_indices.begin())];
}

std::vector<RatingTriple> load_ratings(std::istream& in, RatingFormat format,
                                       const RatingScale& scale, RangePolicy on_out_of_range) {
    if (!(scale.min < scale.max) || !std::isfinite(scale.min) || !std::isfinite(scale.max))
        throw validation_error("invalid rating scale");

    std::vector<RatingTriple> out;
    const char sep = format == RatingFormat::tsv ? '\t' : ',';
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = format != RatingFormat::csv;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (!saw_header) {
            auto cols = split(line, sep);
            if (cols.size() < 3 || trim(cols[0]) != "user" || trim(cols[1]) != "item" ||
                trim(cols[2]) != "rating")
                throw parse_error("expected header 'user,item,rating[,timestamp]'", lineno);
            saw_header = true;
            continue;
        }

        auto cols = split(line, sep);
        if (cols.size() < 3)
            throw parse_error("expected at least 3 fields, got " + std::to_string(cols.size()),
                              lineno);

        RatingTriple t;
        t.user_raw = trim(cols[0]);
        t.item_raw = trim(cols[1]);
        if (t.user_raw.empty() || t.item_raw.empty())
            throw parse_error("empty user or item id", lineno);
        t.rating = parse_rating(cols[2], lineno);
        if (cols.size() > 3) t.timestamp = parse_timestamp(cols[3]);

        if (!scale.contains(t.rating)) {
            if (on_out_of_range == RangePolicy::error)
                throw validation_error("line " + std::to_string(lineno) + ": rating " +
                                       std::to_string(t.rating) + " outside scale [" +
                                       std::to_string(scale.min) + ", " +
                                       std::to_string(scale.max) + "]");
            t.rating = scale.clamp(t.rating);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<RatingTriple> load_ratings_file(const std::string& path, RatingFormat format,
                                            const RatingScale& scale, RangePolicy on_out_of_range) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open ratings file: " + path);
    return load_ratings(f, format, scale, on_out_of_range);
}

SparseRatingMatrix build_matrix(const std::vector<RatingTriple>& triples,
                                const RatingScale& scale, DuplicatePolicy duplicates) {
    if (triples.empty()) throw validation_error("cannot build a matrix from zero ratings");

    SparseRatingMatrix m;
    m.scale = scale;

    // Dense ids in first-appearance order.
    for (const auto& t : triples) {
        if (m.user_to_index.emplace(t.user_raw, m.user_ids.size()).second)
            m.user_ids.push_back(t.user_raw);
        if (m.item_to_index.emplace(t.item_raw, m.item_ids.size()).second)
            m.item_ids.push_back(t.item_raw);
    }
    m.n_users = m.user_ids.size();
    m.n_items = m.item_ids.size();

    // Bucket entries per row, keeping file order for the `last` policy.
    struct Entry {
        std::size_t item;
        std::size_t order;
        double value;
    };
    std::vector<std::vector<Entry>> rows(m.n_users);
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& t = triples[i];
        rows[m.user_to_index.at(t.user_raw)].push_back(
            {m.item_to_index.at(t.item_raw), i, t.rating});
    }

    m.row_offsets.assign(m.n_users + 1, 0);
    for (std::size_t u = 0; u < m.n_users; ++u) {
        auto& row = rows[u];
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) {
            return a.item != b.item ? a.item < b.item : a.order < b.order;
        });
        std::size_t w = 0;
        for (std::size_t r = 0; r < row.size();) {
            std::size_t s = r;
            while (s + 1 < row.size() && row[s + 1].item == row[r].item) ++s;
            if (s != r && duplicates == DuplicatePolicy::error)
                throw validation_error("duplicate rating for (user " + m.user_ids[u] + ", item " +
                                       m.item_ids[row[r].item] + ")");
            double v;
            if (duplicates == DuplicatePolicy::mean) {
                v = 0.0;
                for (std::size_t q = r; q <= s; ++q) v += row[q].value;
                v /= static_cast<double>(s - r + 1);
            } else {
                v = row[s].value; // sorted by order within equal items
            }
            row[w++] = {row[r].item, 0, v};
            r = s + 1;
        }
        row.resize(w);
        m.row_offsets[u + 1] = m.row_offsets[u] + w;
    }

    m.col_indices.reserve(m.row_offsets[m.n_users]);
    m.values.reserve(m.row_offsets[m.n_users]);
    for (const auto& row : rows) {
        for (const auto& e : row) {
            m.col_indices.push_back(e.item);
            m.values.push_back(e.value);
        }
    }
    return m;
}

double rescale(double value, const RatingScale& scale, RescaleDirection direction) {
    if (!(scale.min < scale.max) || !std::isfinite(scale.min) || !std::isfinite(scale.max))
        throw validation_error("invalid rating scale");
    if (direction == RescaleDirection::to_unit) {
        if (!scale.contains(value))
            throw validation_error("value " + std::to_string(value) + " outside scale");
        return (value - scale.min) / scale.width();
    }
    if (!(value >= 0.0 && value <= 1.0))
        throw validation_error("value " + std::to_string(value) + " outside [0,1]");
    return scale.min + value * scale.width();
}

double global_mean(const SparseRatingMatrix& m) {
    if (m.values.empty()) throw validation_error("matrix has no observed entries; no mean exists");
    double s = 0.0;
    for (double v : m.values) s += v;
    return s / static_cast<double>(m.values.size());
}

void item_stats(const SparseRatingMatrix& m, std::vector<double>& mean,
                std::vector<std::size_t>& count) {
    mean.assign(m.n_items, 0.0);
    count.assign(m.n_items, 0);
    for (std::size_t u = 0; u < m.n_users; ++u) {
        for (std::size_t p = m.row_begin(u); p < m.row_end(u); ++p) {
            mean[m.col_indices[p]] += m.values[p];
            ++count[m.col_indices[p]];
        }
    }
    const double g = global_mean(m);
    for (std::size_t i = 0; i < m.n_items; ++i)
        mean[i] = count[i] ? mean[i] / static_cast<double>(count[i]) : g;
}

DenseMatrix impute_dense(const SparseRatingMatrix& m, const FillStrategy& strategy) {
    const bool needs_mean = strategy.kind == FillKind::global_mean ||
                            strategy.kind == FillKind::user_mean ||
                            strategy.kind == FillKind::item_mean;
    if (needs_mean && m.values.empty())
        throw validation_error("matrix has no observed entries; no mean exists");
    if (strategy.kind == FillKind::constant && !m.scale.contains(strategy.constant))
        throw validation_error("constant fill value outside the rating scale");

    double gmean = 0.0;
    if (needs_mean) gmean = global_mean(m);

    std::vector<double> item_mean;
    if (strategy.kind == FillKind::item_mean) {
        std::vector<std::size_t> cnt;
        item_stats(m, item_mean, cnt);
    }

    DenseMatrix x(m.n_users, m.n_items);
    const long nu = static_cast<long>(m.n_users);
#pragma omp parallel for schedule(static)
    for (long lu = 0; lu < nu; ++lu) {
        const std::size_t u = static_cast<std::size_t>(lu);
        double fill = 0.0;
        switch (strategy.kind) {
            case FillKind::global_mean: fill = gmean; break;
            case FillKind::user_mean: {
                const std::size_t b = m.row_begin(u), e = m.row_end(u);
                if (e == b) {
                    fill = gmean;
                } else {
                    double s = 0.0;
                    for (std::size_t p = b; p < e; ++p) s += m.values[p];
                    fill = s / static_cast<double>(e - b);
                }
                break;
            }
            case FillKind::item_mean: break; // per-column, handled below
            case FillKind::zero: fill = 0.0; break;
            case FillKind::constant: fill = strategy.constant; break;
        }
        double* xr = x.row(u);
        if (strategy.kind == FillKind::item_mean) {
            for (std::size_t i = 0; i < m.n_items; ++i) xr[i] = item_mean[i];
        } else {
            for (std::size_t i = 0; i < m.n_items; ++i) xr[i] = fill;
        }
        for (std::size_t p = m.row_begin(u); p < m.row_end(u); ++p)
            xr[m.col_indices[p]] = m.values[p];
    }
    return x;
}

} // namespace mfrec
