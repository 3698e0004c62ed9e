#pragma once

#include <stdexcept>
#include <string>

namespace randlink {

/// Bad command lines, malformed config files, unknown method ids.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing or unreadable files, malformed serialized artifacts.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite data, singular systems, divergent iterations.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace randlink
