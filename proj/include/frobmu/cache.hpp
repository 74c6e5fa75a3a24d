#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "frobmu/curves.hpp"

namespace frobmu {

// Disk-backed count cache: one JSON object, curve spec string -> {n: count},
// counts stored as decimal strings. Writes are atomic (temp file + rename).
// A malformed file is rebuilt from scratch with a warning on stderr.
class CacheStore : public CountCache {
 public:
  explicit CacheStore(std::string path);

  std::optional<std::uint64_t> get(const std::string& curve_key, unsigned n) override;
  void put(const std::string& curve_key, unsigned n, std::uint64_t count) override;

  const std::string& path() const { return path_; }
  bool was_corrupt() const { return corrupt_; }

 private:
  void flush() const;

  std::string path_;
  nlohmann::json data_;
  bool corrupt_ = false;
};

CountRecord cache_get_or_count(CacheStore& store, const CurveSpec& spec, unsigned n,
                               const CountOptions& opts = {});

}  // namespace frobmu
