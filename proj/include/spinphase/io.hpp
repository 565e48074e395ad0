#pragma once

// File formats and CLI-facing helpers.
//
// State files are JSON documents with an explicit spin count and the
// amplitudes as [re, im] pairs in basis order:
//   { "n_spins": 2, "amplitudes": [[0.7071, 0.0], [0, 0], [0, 0], [0.7071, 0.0]] }
// A "manifest" object written by the tool is ignored on input.  States
// whose norm is off by less than 1e-6 are renormalized; anything worse is
// rejected.
//
// Data files (CSV, grids) start with '#'-prefixed manifest lines; numbers
// are printed with 12 significant digits and a locale-independent decimal
// point.

#include <charconv>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinphase/coherent.hpp"
#include "spinphase/state.hpp"
#include "spinphase/states.hpp"
#include "spinphase/version.hpp"

namespace spinphase {

inline constexpr double kStateFileNormTolerance = 1e-6;

struct RunManifest {
  std::string command;
  std::string parameters;
  std::optional<std::uint64_t> seed;
  std::string version = kVersion;
  std::string timestamp;  // UTC, ISO 8601
};

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline RunManifest make_manifest(std::string command, std::string parameters,
                                 std::optional<std::uint64_t> seed = std::nullopt) {
  RunManifest m;
  m.command = std::move(command);
  m.parameters = std::move(parameters);
  m.seed = seed;
  m.timestamp = utc_timestamp();
  return m;
}

inline std::string manifest_comment_block(const RunManifest& m) {
  std::ostringstream out;
  out << "# spinphase " << m.version << "\n";
  out << "# command: " << m.command << "\n";
  if (!m.parameters.empty()) out << "# parameters: " << m.parameters << "\n";
  if (m.seed) out << "# seed: " << *m.seed << "\n";
  out << "# timestamp: " << m.timestamp << "\n";
  return out.str();
}

// 12 significant digits, '.' decimal point regardless of locale.
inline std::string format_number(double x, int significant = 12) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_state_file(const std::filesystem::path& path,
                             const PureState& state,
                             const RunManifest* manifest = nullptr) {
  nlohmann::json doc;
  doc["n_spins"] = state.n_spins();
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : state.amplitudes())
    amps.push_back({a.real(), a.imag()});
  doc["amplitudes"] = std::move(amps);
  if (manifest) {
    nlohmann::json m;
    m["version"] = manifest->version;
    m["command"] = manifest->command;
    m["parameters"] = manifest->parameters;
    if (manifest->seed) m["seed"] = *manifest->seed;
    m["timestamp"] = manifest->timestamp;
    doc["manifest"] = std::move(m);
  }
  atomic_write(path, doc.dump(2) + "\n");
}

inline PureState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("state file parse error: " + std::string(e.what()));
  }
  if (!doc.contains("n_spins") || !doc["n_spins"].is_number_integer())
    throw std::runtime_error("state file: missing integer field n_spins");
  const int n = doc["n_spins"].get<int>();
  if (n < 1 || n > 30) throw std::runtime_error("state file: n_spins out of range");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
    throw std::runtime_error("state file: missing amplitudes array");
  const auto& arr = doc["amplitudes"];
  if (arr.size() != (std::size_t{1} << n))
    throw std::runtime_error("state file: amplitudes must have length 2^n_spins");
  std::vector<Complex> amps;
  amps.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw std::runtime_error("state file: each amplitude must be a [re, im] pair");
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  if (std::abs(std::sqrt(norm_sq) - 1.0) > kStateFileNormTolerance)
    throw std::runtime_error("state file: state norm deviates from 1 by more than 1e-6");
  return PureState(n, std::move(amps));  // renormalizes the small residue
}

// Named state sources: "ghz:N", "w:N", "bell", or
// "product:theta,phi;theta,phi;..." with angles in radians.
inline PureState make_named_state(const std::string& name) {
  auto parse_count = [&](const std::string& text) {
    int n = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || n < 1)
      throw std::invalid_argument("named state: bad spin count in '" + name + "'");
    return n;
  };
  if (name == "bell") return bell_state();
  if (name.rfind("ghz:", 0) == 0) return ghz_state(parse_count(name.substr(4)));
  if (name.rfind("w:", 0) == 0) return w_state(parse_count(name.substr(2)));
  if (name.rfind("product:", 0) == 0) {
    std::vector<BlochAngles> angles;
    std::istringstream spins(name.substr(8));
    std::string item;
    while (std::getline(spins, item, ';')) {
      const auto comma = item.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("named state: product needs theta,phi pairs");
      try {
        angles.push_back({std::stod(item.substr(0, comma)),
                          std::stod(item.substr(comma + 1))});
      } catch (const std::exception&) {
        throw std::invalid_argument("named state: bad angle in '" + name + "'");
      }
    }
    if (angles.empty())
      throw std::invalid_argument("named state: product needs at least one spin");
    return coherent_state(PhasePoint(std::move(angles)));
  }
  throw std::invalid_argument("unknown named state: '" + name + "'");
}

inline bool looks_like_named_state(const std::string& source) {
  return source == "bell" || source.rfind("ghz:", 0) == 0 ||
         source.rfind("w:", 0) == 0 || source.rfind("product:", 0) == 0;
}

// A state source is either a named factory or a path to a state file.
inline PureState load_state_source(const std::string& source) {
  if (looks_like_named_state(source)) return make_named_state(source);
  // A colon-form source that is not a file on disk is a mistyped factory
  // name, not a data error.
  if (source.find(':') != std::string::npos &&
      source.find('/') == std::string::npos &&
      !std::filesystem::exists(source))
    throw std::invalid_argument("unknown named state: '" + source + "'");
  return read_state_file(source);
}

}  // namespace spinphase
