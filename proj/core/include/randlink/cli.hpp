#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace randlink {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

/// Command-line values that override config-file keys.
struct CliOverrides {
    std::optional<std::string> method;
    std::optional<std::uint64_t> seed;
    std::optional<int> k;
    std::optional<std::string> combine;
};

int cmd_train(const std::string& config_path, const std::optional<std::string>& out,
              const CliOverrides& overrides);
int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::optional<std::string>& label_column, bool has_header,
                const std::optional<std::string>& out);
int cmd_cv(const std::string& config_path, const std::optional<std::string>& out,
           const CliOverrides& overrides, bool json);
int cmd_grid(const std::string& config_path, const std::optional<std::string>& out,
             const CliOverrides& overrides, bool json);
int cmd_compare(const std::vector<std::string>& report_paths,
                const std::optional<std::string>& matrix_path, double alpha, double f_critical,
                const std::optional<std::string>& out, bool json);
int cmd_bench(const std::string& config_path, const CliOverrides& overrides,
              const std::optional<std::string>& out);

/// Maps exceptions from `fn` to the exit-code contract, printing the
/// diagnostic to stderr.
int run_guarded(const char* command, int (*fn)(void*), void* ctx);

template <typename Fn>
int guarded(const char* command, Fn&& fn) {
    struct Ctx {
        Fn* fn;
    } ctx{&fn};
    return run_guarded(command, [](void* p) { return (*static_cast<Ctx*>(p)->fn)(); }, &ctx);
}

} // namespace randlink
