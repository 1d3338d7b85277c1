#include "orbitns/state_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"

namespace orbitns {

using nlohmann::json;

std::string state_to_json(const TruncatedState& u) {
  const int n = u.truncation();
  json modes = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode k = lattice_mode(i, n);
    const Vec3c& v = u.at_index(i);
    modes.push_back({{"k", {k[0], k[1], k[2]}},
                     {"re", {v[0].real(), v[1].real(), v[2].real()}},
                     {"im", {v[0].imag(), v[1].imag(), v[2].imag()}}});
  }
  json doc = {{"N", n}, {"modes", std::move(modes)}};
  return doc.dump() + "\n";
}

namespace {

std::array<double, 3> read_triple(const json& entry, const char* key, const std::string& where) {
  if (!entry.contains(key) || !entry[key].is_array() || entry[key].size() != 3)
    throw ValidationError(where + ": field '" + key + "' must be an array of 3 numbers");
  std::array<double, 3> out{};
  for (std::size_t j = 0; j < 3; ++j) {
    const json& x = entry[key][j];
    if (!x.is_number()) throw ValidationError(where + ": field '" + key + "' has a non-numeric entry");
    out[j] = x.get<double>();
  }
  return out;
}

}  // namespace

TruncatedState state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed state document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("N") || !doc["N"].is_number_integer())
    throw ValidationError("state document needs an integer field 'N'");
  const auto n = doc["N"].get<std::int64_t>();
  if (n < 1 || n > 64) throw ValidationError("state truncation N must be in [1, 64]");
  if (!doc.contains("modes") || !doc["modes"].is_array())
    throw ValidationError("state document needs an array field 'modes'");

  TruncatedState u(static_cast<int>(n));
  std::vector<bool> present(u.size(), false);
  for (const json& entry : doc["modes"]) {
    if (!entry.is_object() || !entry.contains("k") || !entry["k"].is_array() ||
        entry["k"].size() != 3)
      throw ValidationError("mode entry needs 'k' as an array of 3 integers");
    Mode k;
    for (std::size_t j = 0; j < 3; ++j) {
      if (!entry["k"][j].is_number_integer())
        throw ValidationError("mode entry needs 'k' as an array of 3 integers");
      k[j] = entry["k"][j].get<int>();
    }
    const std::string where = "mode " + to_label(k);
    if (!in_lattice(k, static_cast<int>(n)))
      throw ValidationError(where + " is outside the truncated lattice");
    const std::size_t idx = lattice_index(k, static_cast<int>(n));
    if (present[idx]) throw ValidationError(where + " appears more than once");
    present[idx] = true;
    const auto re = read_triple(entry, "re", where);
    const auto im = read_triple(entry, "im", where);
    for (std::size_t j = 0; j < 3; ++j) u.at_index(idx)[j] = Complex(re[j], im[j]);
  }
  for (std::size_t i = 0; i < present.size(); ++i)
    if (!present[i])
      throw ValidationError("mode " + to_label(lattice_mode(i, static_cast<int>(n))) +
                            " is missing from the state document");
  validate_state(u);
  return u;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TruncatedState read_state(const std::filesystem::path& path) {
  return state_from_json(read_text(path));
}

void write_state(const std::filesystem::path& path, const TruncatedState& u) {
  write_text_atomic(path, state_to_json(u));
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace orbitns
