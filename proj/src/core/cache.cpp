#include "core/cache.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coops {

namespace {

constexpr const char* kCacheVersion = "coops-cache-1";

std::string entry_path(const std::string& key) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
    return cache_dir() + "/" + hex + ".json";
}

}  // namespace

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_dir() {
    if (const char* env = std::getenv("COOPS_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/coops";
    return ".coops-cache";
}

std::optional<std::string> cache_get(const std::string& key) {
    std::ifstream f(entry_path(key));
    if (!f.good()) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    nlohmann::json j = nlohmann::json::parse(ss.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (j.value("version", "") != kCacheVersion || j.value("key", "") != key) return std::nullopt;
    if (!j.contains("payload") || !j["payload"].is_string()) return std::nullopt;
    return j["payload"].get<std::string>();
}

bool cache_put(const std::string& key, const std::string& payload) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir(), ec);
    if (ec) return false;
    nlohmann::json j;
    j["version"] = kCacheVersion;
    j["key"] = key;
    j["payload"] = payload;
    std::string path = entry_path(key);
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f.good()) return false;
        f << j.dump();
        if (!f.good()) return false;
    }
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

}  // namespace coops
