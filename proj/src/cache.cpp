#include "gppv/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gppv {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw Error("cache: cannot create directory " + dir_.string());
}

std::optional<Cache> Cache::open(const std::string& fallback) {
  const char* env = std::getenv("GPPV_CACHE_DIR");
  std::string d = (env && *env) ? std::string(env) : fallback;
  if (d.empty()) return std::nullopt;
  return Cache(d);
}

std::string Cache::key(const Json& graph, const std::string& op, const Json& params) {
  Json j{{"graph", graph}, {"op", op}, {"params", params}};
  return hex64(fnv1a64(dump_canonical(j)));
}

fs::path Cache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<std::string> Cache::get(const std::string& key, bool* corrupt) const {
  if (corrupt) *corrupt = false;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string all = ss.str();
  const auto nl = all.find('\n');
  bool bad = nl == std::string::npos;
  std::string payload;
  if (!bad) {
    payload = all.substr(nl + 1);
    const std::string header = all.substr(0, nl);
    bad = header != key + " " + hex64(fnv1a64(payload));
  }
  if (bad) {
    if (corrupt) *corrupt = true;
    return std::nullopt;
  }
  return payload;
}

void Cache::put(const std::string& key, const std::string& value) const {
  const fs::path target = path_for(key);
  const fs::path tmp = dir_ / (key + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out << key << ' ' << hex64(fnv1a64(value)) << '\n' << value;
    out.flush();
    if (!out) throw Error("cache: short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cache: cannot rename into " + target.string());
  }
}

Cache::Lookup Cache::get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                                    bool self_check) const {
  Lookup r;
  if (auto v = get(key, &r.corrupt)) {
    r.hit = true;
    r.value = *v;
    if (!self_check) return r;
    r.self_checked = true;
    std::string again = compute();
    r.self_check_ok = again == r.value;
    if (!r.self_check_ok) {
      std::cerr << "warning: cache entry " << key << " does not match its recomputation; overwritten\n";
      put(key, again);
      r.value = again;
    }
    return r;
  }
  if (r.corrupt) std::cerr << "warning: cache entry " << key << " is corrupt; recomputing\n";
  r.value = compute();
  put(key, r.value);
  return r;
}

}  // namespace gppv
