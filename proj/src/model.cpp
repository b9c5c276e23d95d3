#include "mfrec/model.hpp"

#include "mfrec/errors.hpp"

namespace mfrec {

std::size_t model_n_users(const FactorModel& model) {
    return std::visit([](const auto& m) { return m.n_users(); }, model);
}

std::size_t model_n_items(const FactorModel& model) {
    return std::visit([](const auto& m) { return m.n_items(); }, model);
}

std::string model_kind(const FactorModel& model) {
    struct {
        std::string operator()(const NmfModel&) const { return "nmf"; }
        std::string operator()(const SvdModel&) const { return "svd"; }
        std::string operator()(const SgdMfModel&) const { return "sgd_mf"; }
    } kind;
    return std::visit(kind, model);
}

double predict_raw(const FactorModel& model, std::size_t user, std::size_t item) {
    return std::visit([&](const auto& m) { return m.predict_raw(user, item); }, model);
}

double predict_rating(const FactorModel& model, std::size_t user, std::size_t item,
                      const RatingScale& scale) {
    if (user >= model_n_users(model))
        throw validation_error("predict_rating: user index out of range");
    if (item >= model_n_items(model))
        throw validation_error("predict_rating: item index out of range");
    return scale.clamp(predict_raw(model, user, item));
}

} // namespace mfrec
