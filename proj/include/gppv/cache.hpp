#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gppv/serialize.hpp"

namespace gppv {

std::uint64_t fnv1a64(std::string_view bytes);

/// On-disk store of report bytes. An entry file holds a one-line header
/// with the key and a checksum of the payload, then the payload itself.
/// Writes go to a temporary file that is renamed into place.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  /// GPPV_CACHE_DIR if set and nonempty, else `fallback` (empty: no cache)
  static std::optional<Cache> open(const std::string& fallback);

  const std::filesystem::path& dir() const { return dir_; }

  /// hex digest of the canonical dump of {"graph", "op", "params"}
  static std::string key(const Json& graph, const std::string& op, const Json& params);

  /// nullopt on a miss; a corrupt entry is a miss and sets *corrupt
  std::optional<std::string> get(const std::string& key, bool* corrupt = nullptr) const;
  void put(const std::string& key, const std::string& value) const;

  struct Lookup {
    std::string value;
    bool hit = false;
    bool corrupt = false;       // entry existed but failed its checksum (overwritten)
    bool self_checked = false;  // a hit was recomputed
    bool self_check_ok = true;  // the recomputation matched the stored bytes
  };
  /// get, or compute and put. With self_check a hit is recomputed and
  /// compared; a mismatch overwrites the entry with the new bytes.
  Lookup get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                        bool self_check = false) const;

 private:
  std::filesystem::path path_for(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace gppv
