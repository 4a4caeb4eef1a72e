#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

namespace wilfkit {

inline constexpr const char* kEngineVersion = "wilfkit-1.0";

struct CountCacheRecord {
  std::string set;      // S | B | I | SI
  std::string pattern;  // normalized word, space separated
  int n = 0;
  uint64_t count = 0;
  std::string version;
  uint64_t millis = 0;
};

/// Append-only, line-oriented count cache: one record per line,
/// "set,pattern,n,count,version,millis". Corrupt lines are skipped with a
/// warning; records from other engine versions are ignored on lookup.
class CountCache {
 public:
  explicit CountCache(std::filesystem::path dir);

  std::optional<uint64_t> lookup(const std::string& set, const std::string& pattern, int n) const;
  void store(const CountCacheRecord& rec);

  std::filesystem::path file() const { return file_; }

 private:
  using Key = std::tuple<std::string, std::string, int>;
  std::filesystem::path file_;
  std::map<Key, uint64_t> entries_;
  mutable std::mutex mu_;
};

}  // namespace wilfkit
