#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace randlink {

/// Flat dotted-key config/report format: one `key = value` per line,
/// '#' comments, blank lines ignored. Keys keep file order.
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path);   // io_error on missing file
    static KeyValueFile parse_text(std::string_view text, const std::string& origin = "<text>");

    bool has(const std::string& key) const;
    const std::vector<std::string>& keys() const { return order_; }

    /// Typed getters throw usage_error on missing key or bad value.
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma lists plus lo:hi[:step] ranges, e.g. "-6:12:2" or "1,2,5".
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    void set(const std::string& key, std::string value);

    /// Keys under "prefix." that are never read back are reported by
    /// unknown_keys so the CLI can reject typos.
    void mark_known(const std::string& key) const;
    std::vector<std::string> unknown_keys() const;

    std::string origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    mutable std::map<std::string, bool> touched_;
    std::string origin_;
};

} // namespace randlink
