#include "randlink/textcodec.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>

#include "randlink/errors.hpp"

namespace randlink {

namespace {
constexpr char b64_alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::array<int, 256> build_reverse() {
    std::array<int, 256> rev;
    rev.fill(-1);
    for (int i = 0; i < 64; ++i) rev[static_cast<unsigned char>(b64_alphabet[i])] = i;
    return rev;
}
const std::array<int, 256> b64_reverse = build_reverse();
} // namespace

std::string base64_encode(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const std::uint8_t*>(data);
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= size; i += 3) {
        std::uint32_t n = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out += b64_alphabet[(n >> 18) & 63];
        out += b64_alphabet[(n >> 12) & 63];
        out += b64_alphabet[(n >> 6) & 63];
        out += b64_alphabet[n & 63];
    }
    std::size_t rem = size - i;
    if (rem == 1) {
        std::uint32_t n = bytes[i] << 16;
        out += b64_alphabet[(n >> 18) & 63];
        out += b64_alphabet[(n >> 12) & 63];
        out += "==";
    } else if (rem == 2) {
        std::uint32_t n = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out += b64_alphabet[(n >> 18) & 63];
        out += b64_alphabet[(n >> 12) & 63];
        out += b64_alphabet[(n >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0) throw io_error("base64: length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2) throw io_error("base64: misplaced padding");
                vals[j] = 0;
                ++pad;
            } else {
                if (pad > 0) throw io_error("base64: data after padding");
                vals[j] = b64_reverse[static_cast<unsigned char>(c)];
                if (vals[j] < 0) throw io_error("base64: invalid character");
            }
        }
        std::uint32_t n = (static_cast<std::uint32_t>(vals[0]) << 18) |
                          (static_cast<std::uint32_t>(vals[1]) << 12) |
                          (static_cast<std::uint32_t>(vals[2]) << 6) |
                          static_cast<std::uint32_t>(vals[3]);
        out.push_back(static_cast<std::uint8_t>((n >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((n >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(n & 0xff));
    }
    return out;
}

namespace {

std::string encode_doubles(const double* values, std::size_t count) {
    static_assert(std::endian::native == std::endian::little,
                  "serialization assumes little-endian doubles");
    return base64_encode(values, count * sizeof(double));
}

std::vector<double> decode_doubles(std::string_view text, std::size_t expected) {
    std::vector<std::uint8_t> bytes = base64_decode(text);
    if (bytes.size() != expected * sizeof(double))
        throw io_error("matrix payload: got " + std::to_string(bytes.size()) +
                       " bytes, expected " + std::to_string(expected * sizeof(double)));
    std::vector<double> values(expected);
    std::memcpy(values.data(), bytes.data(), bytes.size());
    return values;
}

} // namespace

std::string encode_matrix(const DenseMatrix& m) {
    std::vector<double> row_major(static_cast<std::size_t>(m.size()));
    std::size_t at = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) row_major[at++] = m(r, c);
    return encode_doubles(row_major.data(), row_major.size());
}

DenseMatrix decode_matrix(std::string_view text, Eigen::Index rows, Eigen::Index cols) {
    std::vector<double> values =
        decode_doubles(text, static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    DenseMatrix m(rows, cols);
    std::size_t at = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = values[at++];
    return m;
}

std::string encode_vector(const Vector& v) {
    return encode_doubles(v.data(), static_cast<std::size_t>(v.size()));
}

Vector decode_vector(std::string_view text, Eigen::Index size) {
    std::vector<double> values = decode_doubles(text, static_cast<std::size_t>(size));
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = values[static_cast<std::size_t>(i)];
    return v;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : data) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return std::string(buf);
}

std::string format_double(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        auto [ptr, ec] = std::from_chars(buf, buf + std::strlen(buf), back);
        (void)ptr;
        if (ec == std::errc{} && back == v) return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double_strict(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw io_error("not a number: '" + std::string(s) + "'");
    return v;
}

} // namespace randlink
