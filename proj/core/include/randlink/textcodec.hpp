#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "randlink/matrix.hpp"

namespace randlink {

std::string base64_encode(const void* data, std::size_t size);
std::vector<std::uint8_t> base64_decode(std::string_view text); // throws io_error on bad input

/// Row-major little-endian doubles <-> base64.
std::string encode_matrix(const DenseMatrix& m);
DenseMatrix decode_matrix(std::string_view text, Eigen::Index rows, Eigen::Index cols);
std::string encode_vector(const Vector& v);
Vector decode_vector(std::string_view text, Eigen::Index size);

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);
double parse_double_strict(std::string_view s); // throws io_error on garbage

} // namespace randlink
