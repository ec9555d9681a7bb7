#include "blc/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace blc {
namespace {

std::uint64_t fnv1a(const std::vector<Element>& data, std::uint64_t order, std::uint64_t basis) {
  std::uint64_t h = basis;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(order);
  for (auto v : data) mix(v);
  return h;
}

class FileLock {
 public:
  explicit FileLock(const std::string& path) : fd_(::open(path.c_str(), O_RDWR | O_CREAT, 0644)) {
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool ok() const { return fd_ >= 0; }

 private:
  int fd_;
};

}  // namespace

std::string cache_key(const FiniteGroup& g) {
  auto table = g.canonical_table();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(fnv1a(table, g.order(), 14695981039346656037ULL)),
                static_cast<unsigned long long>(fnv1a(table, g.order(), 0x9e3779b97f4a7c15ULL)));
  return buf;
}

std::string content_digest(std::string_view text) {
  std::vector<Element> bytes(text.begin(), text.end());
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(fnv1a(bytes, text.size(), 14695981039346656037ULL)),
                static_cast<unsigned long long>(fnv1a(bytes, text.size(), 0x9e3779b97f4a7c15ULL)));
  return buf;
}

std::string default_cache_dir() {
  if (const char* d = std::getenv("BLC_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/blc";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/blc";
  return ".blc-cache";
}

std::vector<Subgroup> SubgroupCache::get(const GroupPtr& g, const GroupLimits& limits) {
  if (!enabled_) return all_subgroups(g, limits);
  namespace fs = std::filesystem;
  using nlohmann::json;

  std::error_code ec;
  fs::create_directories(dir_, ec);
  const std::string key = cache_key(*g);
  const std::string path = dir_ + "/" + key + ".json";
  FileLock lock(dir_ + "/" + key + ".lock");

  // The file stores members in the identity-first relabeling used by the key.
  std::vector<Element> to_canon(g->order()), from_canon(g->order());
  {
    Element next = 1;
    for (std::size_t x = 0; x < g->order(); ++x) {
      to_canon[x] = (x == g->identity()) ? 0 : next++;
      from_canon[to_canon[x]] = static_cast<Element>(x);
    }
  }
  const auto table = g->canonical_table();

  if (lock.ok()) {
    std::ifstream in(path);
    if (in) {
      try {
        json j = json::parse(in);
        if (j.at("table").get<std::vector<Element>>() == table) {
          std::vector<Subgroup> out;
          for (const auto& s : j.at("subgroups")) {
            ElementSet set(g->order());
            for (auto c : s.get<std::vector<Element>>()) set.insert(from_canon.at(c));
            out.emplace_back(g, std::move(set));
          }
          std::sort(out.begin(), out.end(), canonical_less);
          ++hits_;
          return out;
        }
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  }

  ++misses_;
  auto subs = all_subgroups(g, limits);
  if (!lock.ok()) return subs;
  json j;
  j["order"] = g->order();
  j["table"] = table;
  j["subgroups"] = json::array();
  for (const auto& s : subs) {
    std::vector<Element> c;
    for (auto x : s.members()) c.push_back(to_canon[x]);
    std::sort(c.begin(), c.end());
    j["subgroups"].push_back(c);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  fs::rename(tmp, path, ec);
  return subs;
}

}  // namespace blc
