#ifndef MFREC_MODEL_HPP
#define MFREC_MODEL_HPP

#include <string>
#include <variant>

#include "mfrec/nmf.hpp"
#include "mfrec/ratings.hpp"
#include "mfrec/sgd.hpp"
#include "mfrec/svd.hpp"

namespace mfrec {

using FactorModel = std::variant<NmfModel, SvdModel, SgdMfModel>;

std::size_t model_n_users(const FactorModel& model);
std::size_t model_n_items(const FactorModel& model);
std::string model_kind(const FactorModel& model);

// Unclamped reconstruction at (user, item).
double predict_raw(const FactorModel& model, std::size_t user, std::size_t item);

// Reconstruction clamped into the rating scale. Throws on out-of-range indices.
double predict_rating(const FactorModel& model, std::size_t user, std::size_t item,
                      const RatingScale& scale);

} // namespace mfrec

#endif
