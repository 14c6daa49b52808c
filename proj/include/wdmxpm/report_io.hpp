#pragma once

#include <cstdint>
#include <string>

#include "wdmxpm/signal.hpp"

namespace wdmxpm {

// Provenance block embedded in every output file. The timestamp line is
// the only non-deterministic content; determinism checks strip lines
// beginning with "# timestamp:".
struct ExperimentManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string tool_version;
  std::string timestamp;
};

ExperimentManifest make_manifest(const std::string& command,
                                 const std::string& config_path,
                                 std::uint64_t seed,
                                 const std::string& out_dir);

std::string manifest_header(const ExperimentManifest& m);

// Columnar text signal file: '#' header lines carrying the grid and the
// manifest, then one "t Re Im" row per sample. Round-trips samples exactly
// (17 significant digits).
void write_signal_text(const std::string& path, const SignalGrid& s,
                       const ExperimentManifest* manifest = nullptr);
SignalGrid read_signal_text(const std::string& path);

// Binary dump: fixed magic, grid header, then raw little-endian doubles.
// Round-trips bit exactly.
void write_signal_binary(const std::string& path, const SignalGrid& s);
SignalGrid read_signal_binary(const std::string& path);

// Writes text content to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wdmxpm
