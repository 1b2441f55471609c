#pragma once

// On-disk series cache, content-addressed by SHA-256 of the canonical request string.

#include "bps/qseries.hpp"
#include "bps/serialize.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace bps {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class SeriesStore {
 public:
  explicit SeriesStore(std::filesystem::path root) : root_(std::move(root)) {}

  /// --cache-dir wins over BPS_CACHE_DIR; no store when neither is set.
  static std::optional<SeriesStore> open(const std::string& flag) {
    if (!flag.empty()) return SeriesStore(flag);
    if (const char* env = std::getenv("BPS_CACHE_DIR"); env && *env) return SeriesStore(env);
    return std::nullopt;
  }

  static std::string key_of(const std::string& module, const std::string& op, const std::string& params,
                            const Rational& cutoff) {
    return sha256_hex(module + "\n" + op + "\n" + params + "\n" + to_string(cutoff) + "\nv" + std::to_string(format_version));
  }

  std::filesystem::path path_of(const std::string& key) const { return root_ / key.substr(0, 2) / (key + ".json"); }

  std::optional<QSeries> load(const std::string& key) const {
    std::ifstream in(path_of(key));
    if (!in) return std::nullopt;
    try {
      Json j = Json::parse(in);
      if (j.at("version").get<int>() != format_version || j.at("key").get<std::string>() != key) return std::nullopt;
      return qseries_from_json(j.at("value"));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const std::string& key, const QSeries& s) const {
    namespace fs = std::filesystem;
    fs::path target = path_of(key);
    fs::create_directories(target.parent_path());
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(rd());
    {
      std::ofstream out(tmp);
      out << Json{{"version", format_version}, {"key", key}, {"value", to_json(s)}}.dump() << "\n";
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, target);
  }

  template <class F>
  QSeries get_or_compute(const std::string& key, F&& make) const {
    if (auto hit = load(key)) return *hit;
    QSeries s = make();
    store(key, s);
    return s;
  }

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace bps
