#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "wilfkit/cache.hpp"

using namespace wilfkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("wilfkit-cache-test-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("store and lookup round trip") {
  TempDir tmp;
  CountCache cache(tmp.path);
  CHECK_FALSE(cache.lookup("SI", "1 2 3", 5).has_value());
  cache.store({"SI", "1 2 3", 5, 42, kEngineVersion, 7});
  auto hit = cache.lookup("SI", "1 2 3", 5);
  REQUIRE(hit.has_value());
  CHECK(*hit == 42);

  // persisted across instances
  CountCache fresh(tmp.path);
  hit = fresh.lookup("SI", "1 2 3", 5);
  REQUIRE(hit.has_value());
  CHECK(*hit == 42);
}

TEST_CASE("file format is line oriented") {
  TempDir tmp;
  {
    CountCache cache(tmp.path);
    cache.store({"I", "1 2", 4, 9, kEngineVersion, 3});
  }
  std::ifstream in(tmp.path / "counts.txt");
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == std::string("I,1 2,4,9,") + kEngineVersion + ",3");
}

TEST_CASE("idempotent stores, conflicting counts rejected") {
  TempDir tmp;
  CountCache cache(tmp.path);
  cache.store({"B", "1", 3, 10, kEngineVersion, 1});
  cache.store({"B", "1", 3, 10, kEngineVersion, 99});  // same key, same count: fine
  CHECK_THROWS_AS(cache.store({"B", "1", 3, 11, kEngineVersion, 1}), std::logic_error);
}

TEST_CASE("other versions and corrupt lines are ignored") {
  TempDir tmp;
  fs::create_directories(tmp.path);
  {
    std::ofstream out(tmp.path / "counts.txt");
    out << "SI,1 2,4,100,ancient-0.1,5\n";
    out << "this is not a record\n";
    out << "SI,1 2,4\n";
    out << "SI,1 2,4,77," << kEngineVersion << ",5\n";
  }
  CountCache cache(tmp.path);
  auto hit = cache.lookup("SI", "1 2", 4);
  REQUIRE(hit.has_value());
  CHECK(*hit == 77);  // only the current-version record survives
}
