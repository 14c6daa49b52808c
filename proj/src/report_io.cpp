#include "wdmxpm/report_io.hpp"

#include <cstdint>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wdmxpm/version.hpp"

namespace wdmxpm {

namespace {

constexpr char kBinaryMagic[8] = {'W', 'D', 'M', 'X', 'P', 'M', 'S', 'G'};

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
#if defined(_WIN32)
  gmtime_s(&tm, &t);
#else
  gmtime_r(&t, &tm);
#endif
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

ExperimentManifest make_manifest(const std::string& command,
                                 const std::string& config_path,
                                 std::uint64_t seed,
                                 const std::string& out_dir) {
  ExperimentManifest m;
  m.command = command;
  m.config_path = config_path;
  m.seed = seed;
  m.out_dir = out_dir;
  m.tool_version = kVersion;
  m.timestamp = now_utc();
  return m;
}

std::string manifest_header(const ExperimentManifest& m) {
  std::ostringstream os;
  os << "# tool: wdmxpm " << m.tool_version << "\n";
  os << "# command: " << m.command << "\n";
  os << "# config: " << m.config_path << "\n";
  os << "# seed: " << m.seed << "\n";
  os << "# out: " << m.out_dir << "\n";
  os << "# timestamp: " << m.timestamp << "\n";
  return os.str();
}

void write_signal_text(const std::string& path, const SignalGrid& s,
                       const ExperimentManifest* manifest) {
  if (s.samples.size() != s.grid.n_time)
    throw std::invalid_argument(
        "write_signal_text: sample count does not match grid");
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(17);
  out << "# wdmxpm signal\n";
  if (manifest) out << manifest_header(*manifest);
  out << "# t_window: " << s.grid.t_window << "\n";
  out << "# n_time: " << s.grid.n_time << "\n";
  out << "# n_zsteps: " << s.grid.n_zsteps << "\n";
  out << "# channel_index: " << s.channel_index << "\n";
  out << "# columns: t Re Im\n";
  for (std::size_t j = 0; j < s.samples.size(); ++j)
    out << s.grid.time_at(j) << " " << s.samples[j].real() << " "
        << s.samples[j].imag() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

SignalGrid read_signal_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  SignalGrid s;
  bool have_window = false, have_ntime = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "t_window:") {
        hs >> s.grid.t_window;
        have_window = true;
      } else if (key == "n_time:") {
        hs >> s.grid.n_time;
        have_ntime = true;
      } else if (key == "n_zsteps:") {
        hs >> s.grid.n_zsteps;
      } else if (key == "channel_index:") {
        hs >> s.channel_index;
      }
      continue;
    }
    std::istringstream row(line);
    double t, re, im;
    if (!(row >> t >> re >> im))
      throw std::runtime_error("bad signal row in " + path + ": " + line);
    s.samples.emplace_back(re, im);
  }
  if (!have_window || !have_ntime)
    throw std::runtime_error("signal file missing grid header: " + path);
  if (s.samples.size() != s.grid.n_time)
    throw std::runtime_error("signal file row count does not match n_time: " +
                             path);
  return s;
}

void write_signal_binary(const std::string& path, const SignalGrid& s) {
  if (s.samples.size() != s.grid.n_time)
    throw std::invalid_argument(
        "write_signal_binary: sample count does not match grid");
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  const std::uint32_t version = 1;
  const std::uint64_t n_time = s.grid.n_time;
  const std::uint64_t n_zsteps = s.grid.n_zsteps;
  const std::int32_t channel = s.channel_index;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&s.grid.t_window),
            sizeof(s.grid.t_window));
  out.write(reinterpret_cast<const char*>(&n_time), sizeof(n_time));
  out.write(reinterpret_cast<const char*>(&n_zsteps), sizeof(n_zsteps));
  out.write(reinterpret_cast<const char*>(&channel), sizeof(channel));
  out.write(reinterpret_cast<const char*>(s.samples.data()),
            static_cast<std::streamsize>(s.samples.size() * sizeof(cdouble)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

SignalGrid read_signal_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kBinaryMagic, sizeof(magic)) != 0)
    throw std::runtime_error("not a wdmxpm binary signal file: " + path);
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (version != 1)
    throw std::runtime_error("unsupported signal file version: " + path);
  SignalGrid s;
  std::uint64_t n_time = 0, n_zsteps = 0;
  std::int32_t channel = 0;
  in.read(reinterpret_cast<char*>(&s.grid.t_window), sizeof(s.grid.t_window));
  in.read(reinterpret_cast<char*>(&n_time), sizeof(n_time));
  in.read(reinterpret_cast<char*>(&n_zsteps), sizeof(n_zsteps));
  in.read(reinterpret_cast<char*>(&channel), sizeof(channel));
  if (!in) throw std::runtime_error("truncated signal file: " + path);
  s.grid.n_time = static_cast<std::size_t>(n_time);
  s.grid.n_zsteps = static_cast<std::size_t>(n_zsteps);
  s.channel_index = channel;
  s.samples.resize(s.grid.n_time);
  in.read(reinterpret_cast<char*>(s.samples.data()),
          static_cast<std::streamsize>(s.samples.size() * sizeof(cdouble)));
  if (!in) throw std::runtime_error("truncated signal file: " + path);
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wdmxpm
