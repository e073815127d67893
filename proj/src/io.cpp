#include "dyson/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <gmp.h>

#include "json.hpp"

namespace dyson::io {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("short write to '" + path.string() + "'");
}

void emit(Manifest& m, const std::filesystem::path& dir, const std::string& name, std::string_view contents) {
  write_file(dir / name, contents);
  m.artifacts.push_back(Artifact{name, fnv1a64(contents), contents.size()});
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["input"] = input;
  doc["input_fnv1a64"] = hex64(input_hash);
  doc["spec_fnv1a64"] = hex64(spec_hash);
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [k, v] : settings) s[k] = v;
  doc["settings"] = s;
  doc["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) doc["artifacts"].push_back({{"name", a.name}, {"fnv1a64", hex64(a.hash)}, {"bytes", a.bytes}});
#ifndef DYSON_VERSION
#define DYSON_VERSION "unknown"
#endif
  doc["versions"] = {{"dyson", DYSON_VERSION},
                     {"gmp", gmp_version},
                     {"compiler", __VERSION__},
                     {"cxx_standard", __cplusplus},
#ifdef _OPENMP
                     {"openmp", _OPENMP}
#else
                     {"openmp", 0}
#endif
  };
  doc["threads"] = threads;
  doc["wall_time_seconds"] = wall_seconds;
  doc["status"] = status;
  doc["exit_code"] = exit_code;
  return doc.dump(2) + "\n";
}

int threads_from_env() {
  const char* v = std::getenv("DYSON_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) return 0;
  return static_cast<int>(n);
}

}  // namespace dyson::io
