#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blc/group.hpp"

namespace blc {

/// Content hash (32 hex chars) of the identity-first Cayley table. Equal
/// tables give equal keys; isomorphic groups with different labelings may not.
std::string cache_key(const FiniteGroup& g);

/// Same hash over arbitrary bytes (used for datum digests in reports).
std::string content_digest(std::string_view text);

/// $BLC_CACHE_DIR, else $XDG_CACHE_HOME/blc, else $HOME/.cache/blc.
std::string default_cache_dir();

/// On-disk subgroup lattices, one JSON file per group digest. The stored
/// table is compared on load, so a hash collision is a miss, not a wrong
/// answer. Reads and writes hold an flock on a sibling lock file.
class SubgroupCache {
 public:
  explicit SubgroupCache(std::string dir, bool enabled = true) : dir_(std::move(dir)), enabled_(enabled) {}

  std::vector<Subgroup> get(const GroupPtr& g, const GroupLimits& limits = {});

  bool enabled() const { return enabled_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  bool enabled_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace blc
