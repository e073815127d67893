#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dyson::io {

std::uint64_t fnv1a64(std::string_view data);
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

struct Artifact {
  std::string name;
  std::uint64_t hash = 0;
  std::size_t bytes = 0;
};

/// Reproducibility record written next to the artifacts of one run.
struct Manifest {
  std::string command;
  std::string input;
  std::uint64_t input_hash = 0;
  /// Hash of the input after overrides, as actually used.
  std::uint64_t spec_hash = 0;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<Artifact> artifacts;
  int threads = 1;
  double wall_seconds = 0.0;
  int exit_code = 0;
  std::string status;

  std::string to_json() const;
};

/// Writes the file and records it in the manifest.
void emit(Manifest& m, const std::filesystem::path& dir, const std::string& name, std::string_view contents);

/// Thread cap from DYSON_THREADS, or 0 when unset or invalid.
int threads_from_env();

}  // namespace dyson::io
