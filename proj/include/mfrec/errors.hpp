#ifndef MFREC_ERRORS_HPP
#define MFREC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfrec {

// Base class for all recoverable errors raised by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (bad row arity, non-numeric rating, ...).
// Carries the 1-based line number of the offending row.
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t line)
        : error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed but invalid input: out-of-range values, bad dimensions,
// duplicate pairs under the `error` policy, unknown ids, ...
class validation_error : public error {
public:
    using error::error;
};

// SGD training produced a non-finite factor (learning rate too large).
class divergence_error : public error {
public:
    divergence_error(const std::string& msg, std::size_t epoch)
        : error("epoch " + std::to_string(epoch) + ": " + msg), epoch_(epoch) {}
    std::size_t epoch() const noexcept { return epoch_; }

private:
    std::size_t epoch_;
};

} // namespace mfrec

#endif
