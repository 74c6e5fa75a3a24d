#include "frobmu/cache.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace frobmu {

CacheStore::CacheStore(std::string path) : path_(std::move(path)), data_(nlohmann::json::object()) {
  std::ifstream in(path_);
  if (!in.good()) return;  // no cache yet
  try {
    in >> data_;
    if (!data_.is_object()) throw nlohmann::json::parse_error::create(101, 0, "not an object", nullptr);
  } catch (const nlohmann::json::exception&) {
    std::cerr << "warning: " << errc_name(Errc::CacheCorrupt) << ": cache file " << path_
              << " is malformed, rebuilding from scratch\n";
    data_ = nlohmann::json::object();
    corrupt_ = true;
  }
}

std::optional<std::uint64_t> CacheStore::get(const std::string& curve_key, unsigned n) {
  auto it = data_.find(curve_key);
  if (it == data_.end()) return std::nullopt;
  auto jt = it->find(std::to_string(n));
  if (jt == it->end()) return std::nullopt;
  try {
    return std::stoull(jt->get<std::string>());
  } catch (...) {
    return std::nullopt;
  }
}

void CacheStore::put(const std::string& curve_key, unsigned n, std::uint64_t count) {
  data_[curve_key][std::to_string(n)] = std::to_string(count);
  flush();
}

void CacheStore::flush() const {
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << data_.dump(1) << "\n";
    if (!out.good()) {
      std::remove(tmp.c_str());
      return;  // cache is best effort; counting still works
    }
  }
  std::rename(tmp.c_str(), path_.c_str());
}

CountRecord cache_get_or_count(CacheStore& store, const CurveSpec& spec, unsigned n,
                               const CountOptions& opts) {
  std::string key = spec.spec_string();
  if (auto hit = store.get(key, n)) {
    BigInt tr = BigInt::ui_pow_ui(spec.base()->q(), n) + BigInt(1) -
                BigInt(static_cast<unsigned long>(*hit));
    return CountRecord{n, *hit, tr.to_slong()};
  }
  CountRecord rec = count_points(spec, n, opts);
  store.put(key, n, rec.count);
  return rec;
}

}  // namespace frobmu
