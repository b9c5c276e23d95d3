#ifndef MFREC_MODEL_IO_HPP
#define MFREC_MODEL_IO_HPP

#include <iosfwd>
#include <string>

#include "mfrec/model.hpp"

namespace mfrec {

// JSON model persistence. Factor matrices are stored as row-major arrays;
// doubles round-trip exactly, so save -> load -> predict is bit-exact.
void save_model(std::ostream& out, const FactorModel& model);
void save_model_file(const std::string& path, const FactorModel& model);

FactorModel load_model(std::istream& in);
FactorModel load_model_file(const std::string& path);

} // namespace mfrec

#endif
