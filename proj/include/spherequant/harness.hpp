#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sq::harness {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCapExceeded = 3;

/// Flat "key = value" config. '#' starts a comment; keys are unique; every
/// subcommand validates its keys against a schema and rejects unknown ones.
class RunConfig {
public:
  static RunConfig parse(std::string_view text);
  static RunConfig parse_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  // unknown keys and missing required keys are config errors
  void check_schema(const std::set<std::string>& allowed,
                    const std::vector<std::string>& required) const;

private:
  std::map<std::string, std::string> values_;
};

struct CliOptions {
  std::string config_path;
  std::string out_path;  // overrides config "out"; "-" or empty means stdout
  std::string format;    // overrides config "format"; "csv" or "json"
  bool check = false;
};

// Dispatches quantize | sweep | kms | resolvent and maps failures onto the
// exit-code contract: 0 ok, 1 failed check, 2 input error, 3 cap exceeded.
int run_command(const std::string& command, const CliOptions& options);

}  // namespace sq::harness
