#include "wdmxpm/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wdmxpm {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> validate(const LinkConfig& link, const SimGrid& grid) {
  std::vector<std::string> errs;
  if (!(link.beta2 > 0.0)) errs.push_back("beta2 must be positive");
  if (!(link.gamma >= 0.0)) errs.push_back("gamma must be nonnegative");
  if (!(link.alpha >= 0.0)) errs.push_back("alpha must be nonnegative");
  if (!(link.length_km > 0.0)) errs.push_back("length_km must be positive");
  if (!(link.group_velocity > 0.0))
    errs.push_back("group_velocity must be positive");
  if (link.n_channels < 2) errs.push_back("n_channels must be at least 2");
  if (link.n_channels % 2 != 0) errs.push_back("n_channels must be even");
  if (!(link.channel_spacing > 0.0))
    errs.push_back("channel_spacing must be positive");
  if (!(link.channel_power > 0.0))
    errs.push_back("channel_power must be positive");
  if (!(grid.t_window > 0.0)) errs.push_back("t_window must be positive");
  if (grid.n_time < 8) errs.push_back("n_time must be at least 8");
  if (!is_power_of_two(grid.n_time))
    errs.push_back("n_time must be a power of two");
  if (grid.n_zsteps < 1) errs.push_back("n_zsteps must be at least 1");
  return errs;
}

void require_valid(const LinkConfig& link, const SimGrid& grid) {
  const auto errs = validate(link, grid);
  if (errs.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errs) msg += " " + e + ";";
  throw std::invalid_argument(msg);
}

std::string serialize_config(const LinkConfig& link, const SimGrid& grid) {
  std::ostringstream out;
  out << "beta2 = " << fmt_double(link.beta2) << "\n"
      << "gamma = " << fmt_double(link.gamma) << "\n"
      << "alpha = " << fmt_double(link.alpha) << "\n"
      << "length_km = " << fmt_double(link.length_km) << "\n"
      << "group_velocity = " << fmt_double(link.group_velocity) << "\n"
      << "n_channels = " << link.n_channels << "\n"
      << "channel_spacing = " << fmt_double(link.channel_spacing) << "\n"
      << "channel_power = " << fmt_double(link.channel_power) << "\n"
      << "t_window = " << fmt_double(grid.t_window) << "\n"
      << "n_time = " << grid.n_time << "\n"
      << "n_zsteps = " << grid.n_zsteps << "\n";
  return out.str();
}

Scenario parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = 0, b = line.size();
    while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
    if (a == b) continue;
    const std::string entry = line.substr(a, b - a);
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    std::string key = entry.substr(0, eq);
    std::string val = entry.substr(eq + 1);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
      key.pop_back();
    std::size_t v = 0;
    while (v < val.size() && std::isspace(static_cast<unsigned char>(val[v])))
      ++v;
    val.erase(0, v);
    if (key.empty()) throw std::runtime_error("config line " +
                                              std::to_string(lineno) +
                                              ": empty key");
    if (kv.count(key))
      throw std::runtime_error("config: duplicate key: " + key);
    kv[key] = val;
  }

  static const char* kKnown[] = {
      "beta2",          "gamma",          "alpha",     "length_km",
      "group_velocity", "n_channels",     "channel_spacing",
      "channel_power",  "t_window",       "n_time",    "n_zsteps"};
  for (const auto& [key, _] : kv) {
    bool known = false;
    for (const char* k : kKnown) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) throw std::runtime_error("config: unknown key: " + key);
  }
  for (const char* k : kKnown) {
    if (!kv.count(k))
      throw std::runtime_error(std::string("config: missing key: ") + k);
  }

  auto as_double = [&](const char* key) {
    const std::string& s = kv.at(key);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("config: bad value for ") + key +
                               ": " + s);
    }
    if (pos != s.size())
      throw std::runtime_error(std::string("config: bad value for ") + key +
                               ": " + s);
    return v;
  };
  auto as_size = [&](const char* key) {
    const double v = as_double(key);
    if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw std::runtime_error(std::string("config: bad value for ") + key +
                               ": " + kv.at(key));
    return static_cast<std::size_t>(v);
  };

  Scenario s;
  s.link.beta2 = as_double("beta2");
  s.link.gamma = as_double("gamma");
  s.link.alpha = as_double("alpha");
  s.link.length_km = as_double("length_km");
  s.link.group_velocity = as_double("group_velocity");
  s.link.n_channels = static_cast<int>(as_size("n_channels"));
  s.link.channel_spacing = as_double("channel_spacing");
  s.link.channel_power = as_double("channel_power");
  s.grid.t_window = as_double("t_window");
  s.grid.n_time = as_size("n_time");
  s.grid.n_zsteps = as_size("n_zsteps");
  return s;
}

void write_config_file(const std::string& path, const LinkConfig& link,
                       const SimGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << serialize_config(link, grid);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Scenario read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace wdmxpm
