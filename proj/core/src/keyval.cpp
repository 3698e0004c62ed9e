#include "randlink/keyval.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "randlink/errors.hpp"
#include "randlink/textcodec.hpp"

namespace randlink {

namespace {
std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}
} // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

KeyValueFile KeyValueFile::parse_text(std::string_view text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            throw usage_error(origin + ":" + std::to_string(line_no) + ": empty key");
        if (kv.values_.count(key))
            throw usage_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv.values_.emplace(key, std::move(value));
        kv.order_.push_back(std::move(key));
    }
    return kv;
}

bool KeyValueFile::has(const std::string& key) const {
    mark_known(key);
    return values_.count(key) != 0;
}

std::string KeyValueFile::get_string(const std::string& key) const {
    mark_known(key);
    auto it = values_.find(key);
    if (it == values_.end())
        throw usage_error(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    mark_known(key);
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& key) const {
    std::string s = get_string(key);
    try {
        return parse_double_strict(s);
    } catch (const io_error&) {
        throw usage_error(origin_ + ": key '" + key + "': not a number: '" + s + "'");
    }
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    mark_known(key);
    return values_.count(key) ? get_double(key) : fallback;
}

long long KeyValueFile::get_int(const std::string& key) const {
    std::string s = get_string(key);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw usage_error(origin_ + ": key '" + key + "': not an integer: '" + s + "'");
    return v;
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) const {
    mark_known(key);
    return values_.count(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueFile::get_uint(const std::string& key, std::uint64_t fallback) const {
    mark_known(key);
    if (!values_.count(key)) return fallback;
    std::string s = get_string(key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw usage_error(origin_ + ": key '" + key + "': not an unsigned integer: '" + s + "'");
    return v;
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
    mark_known(key);
    if (!values_.count(key)) return fallback;
    std::string s = get_string(key);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw usage_error(origin_ + ": key '" + key + "': not a boolean: '" + s + "'");
}

std::vector<int> KeyValueFile::get_int_list(const std::string& key,
                                            const std::vector<int>& fallback) const {
    mark_known(key);
    if (!values_.count(key)) return fallback;
    std::string s = get_string(key);
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string piece =
            trim(std::string_view(s).substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos));
        pos = comma == std::string::npos ? s.size() + 1 : comma + 1;
        if (piece.empty()) continue;

        auto parse_one = [&](std::string_view t) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
                throw usage_error(origin_ + ": key '" + key + "': not an integer: '" +
                                  std::string(t) + "'");
            return v;
        };

        size_t colon = piece.find(':');
        if (colon == std::string::npos) {
            out.push_back(parse_one(piece));
            continue;
        }
        size_t colon2 = piece.find(':', colon + 1);
        int lo = parse_one(std::string_view(piece).substr(0, colon));
        int hi, step = 1;
        if (colon2 == std::string::npos) {
            hi = parse_one(std::string_view(piece).substr(colon + 1));
        } else {
            hi = parse_one(std::string_view(piece).substr(colon + 1, colon2 - colon - 1));
            step = parse_one(std::string_view(piece).substr(colon2 + 1));
        }
        if (step <= 0)
            throw usage_error(origin_ + ": key '" + key + "': range step must be positive");
        for (int v = lo; v <= hi; v += step) out.push_back(v);
    }
    if (out.empty())
        throw usage_error(origin_ + ": key '" + key + "': empty list");
    return out;
}

void KeyValueFile::set(const std::string& key, std::string value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = std::move(value);
}

void KeyValueFile::mark_known(const std::string& key) const {
    touched_[key] = true;
}

std::vector<std::string> KeyValueFile::unknown_keys() const {
    std::vector<std::string> out;
    for (const auto& key : order_)
        if (!touched_.count(key)) out.push_back(key);
    return out;
}

} // namespace randlink
