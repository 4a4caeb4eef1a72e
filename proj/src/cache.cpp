#include "wilfkit/cache.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wilfkit {

namespace {

bool parse_line(const std::string& line, CountCacheRecord* rec) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',')
      fields.push_back(std::move(cur)), cur.clear();
    else
      cur.push_back(c);
  }
  fields.push_back(std::move(cur));
  if (fields.size() != 6) return false;
  rec->set = fields[0];
  rec->pattern = fields[1];
  auto to_u64 = [](const std::string& s, uint64_t* out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  uint64_t n = 0;
  if (!to_u64(fields[2], &n) || !to_u64(fields[3], &rec->count) || !to_u64(fields[5], &rec->millis))
    return false;
  rec->n = static_cast<int>(n);
  rec->version = fields[4];
  return true;
}

}  // namespace

CountCache::CountCache(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "counts.txt";
  std::ifstream in(file_);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CountCacheRecord rec;
    if (!parse_line(line, &rec)) {
      std::cerr << "warning: skipping corrupt cache line " << lineno << " in " << file_ << "\n";
      continue;
    }
    if (rec.version != kEngineVersion) continue;
    Key key{rec.set, rec.pattern, rec.n};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, rec.count);
    } else if (it->second != rec.count) {
      throw std::logic_error("cache " + file_.string() + " holds conflicting counts for " +
                             rec.set + "," + rec.pattern + ",n=" + std::to_string(rec.n));
    }
  }
}

std::optional<uint64_t> CountCache::lookup(const std::string& set, const std::string& pattern,
                                           int n) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(Key{set, pattern, n});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CountCache::store(const CountCacheRecord& rec) {
  std::lock_guard lock(mu_);
  Key key{rec.set, rec.pattern, rec.n};
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    if (it->second != rec.count)
      throw std::logic_error("refusing to store conflicting count for " + rec.set + "," +
                             rec.pattern + ",n=" + std::to_string(rec.n));
    return;  // immutable once written
  }
  entries_.emplace(key, rec.count);
  std::ofstream out(file_, std::ios::app);
  out << rec.set << ',' << rec.pattern << ',' << rec.n << ',' << rec.count << ','
      << (rec.version.empty() ? kEngineVersion : rec.version) << ',' << rec.millis << '\n';
}

}  // namespace wilfkit
