#ifndef MFREC_DIGEST_HPP
#define MFREC_DIGEST_HPP

#include <cstddef>
#include <string>

namespace mfrec {

// Hex-encoded SHA-256.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_file(const std::string& path);

} // namespace mfrec

#endif
