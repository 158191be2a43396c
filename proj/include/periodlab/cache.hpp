#pragma once

// On-disk cache of reduction tables, one JSON file per (level, weight).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "periodlab/error.hpp"
#include "periodlab/relations.hpp"

namespace periodlab {

/// Reads "1", "zeta(3,-1)" or "phi(1,3)" back into an index of `level`.
inline MZVIndex parse_index_string(const std::string& text, int level) {
  if (text == "1") return MZVIndex({}, {}, level);
  bool phi = text.rfind("phi(", 0) == 0;
  std::size_t open = text.find('(');
  if ((!phi && text.rfind("zeta(", 0) != 0) || text.back() != ')') throw ParseError("bad index '" + text + "'", 0);
  std::vector<int> ex, tw;
  std::size_t i = open + 1;
  while (i < text.size() - 1) {
    std::size_t end = text.find_first_of(",)", i);
    int n = std::stoi(text.substr(i, end - i));
    ex.push_back(std::abs(n));
    tw.push_back(phi || n < 0 ? -1 : 1);
    i = end + 1;
  }
  if (ex.empty()) throw ParseError("empty index '" + text + "'", open);
  return MZVIndex(std::move(ex), std::move(tw), level);
}

inline constexpr int kCacheFormatVersion = 1;

inline nlohmann::json table_to_json(const ReductionTable& t) {
  nlohmann::json j;
  j["format_version"] = kCacheFormatVersion;
  j["level"] = t.level;
  j["weight"] = t.weight;
  j["basis"] = nlohmann::json::array();
  for (const auto& b : t.basis) j["basis"].push_back(b.to_string());
  j["rows"] = nlohmann::json::array();
  for (const auto& [idx, row] : t.rows) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [pos, c] : row) coeffs.push_back({pos, to_pq_string(c)});
    j["rows"].push_back({{"index", idx.to_string()}, {"coeffs", coeffs}});
  }
  return j;
}

inline ReductionTable table_from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != kCacheFormatVersion)
    throw std::runtime_error("unsupported cache format version");
  ReductionTable t;
  t.level = j.at("level").get<int>();
  t.weight = j.at("weight").get<std::size_t>();
  for (const auto& b : j.at("basis")) t.basis.push_back(parse_index_string(b.get<std::string>(), t.level));
  for (const auto& r : j.at("rows")) {
    std::vector<std::pair<std::size_t, BigRational>> row;
    for (const auto& c : r.at("coeffs"))
      row.emplace_back(c.at(0).get<std::size_t>(), parse_rational(c.at(1).get<std::string>()));
    t.rows[parse_index_string(r.at("index").get<std::string>(), t.level)] = std::move(row);
  }
  return t;
}

/// PERIODLAB_CACHE_DIR, else $XDG_CACHE_HOME/periodlab, else ~/.cache/periodlab.
inline std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("PERIODLAB_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "periodlab";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "periodlab";
  return std::filesystem::temp_directory_path() / "periodlab";
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::size_t weight, int level) {
  return dir / ("table-L" + std::to_string(level) + "-W" + std::to_string(weight) + ".json");
}

/// A TableStore backed by files in `dir`. Unreadable or stale files are
/// ignored and rebuilt; write failures are not fatal.
inline TableStore directory_store(std::filesystem::path dir) {
  TableStore s;
  s.load = [dir](std::size_t weight, int level) -> std::optional<ReductionTable> {
    std::ifstream in(cache_file(dir, weight, level));
    if (!in) return std::nullopt;
    try {
      ReductionTable t = table_from_json(nlohmann::json::parse(in));
      if (t.weight != weight || t.level != level) return std::nullopt;
      return t;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  s.save = [dir](const ReductionTable& t) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto path = cache_file(dir, t.weight, t.level);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << table_to_json(t).dump();
    }
    std::filesystem::rename(tmp, path, ec);
  };
  return s;
}

}  // namespace periodlab
