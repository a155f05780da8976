#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace chromatope::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kIoError = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "CHROMATOPE_OUT";

/// Settings shared by all commands. Values come from defaults, then the
/// config file, then flags.
struct RunConfig {
  std::filesystem::path out = "chromatope-out";
  std::size_t resolution = 0;  // 0 selects the per-dimension default
  std::string t = "1/4";       // truncation parameter
  int level = 2;               // fractal level
};

/// Reads key=value lines (keys: out, res, t, level); '#' starts a comment.
/// Throws InvalidArgument on unknown keys or malformed values.
void apply_config_file(RunConfig& config, const std::filesystem::path& file);

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

struct ManifestEntry {
  std::string path;  // relative to the gallery root, '/' separated
  std::string sha256;
};

/// Reads a manifest written by the figures command.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file);

}  // namespace chromatope::cli
