#pragma once

// Front-end operations behind the `weingarten` executable. Both return the
// process exit code and write human-readable diagnostics to `log`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace weingarten {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int invalid = 2;
}  // namespace exit_code

/// Runs every scenario in `configs`. With one config the outputs land in
/// `out_dir`; with several, in `out_dir/<config stem>`. Up to `jobs` runs
/// execute concurrently. The result is the largest per-scenario exit code.
///
/// Files: series.csv, final_profile.csv, summary.json.
int run_command(const std::vector<std::filesystem::path>& configs,
                const std::filesystem::path& out_dir, std::size_t jobs, std::ostream& log);

int run_command(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                std::ostream& log);

int check_command(const std::string& function, int n, int k, std::size_t samples,
                  std::uint64_t seed, bool allow_nonvanishing, std::ostream& log);

}  // namespace weingarten
