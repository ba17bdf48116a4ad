#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace coops {

uint64_t fnv1a64(const std::string& s);

// COOPS_CACHE_DIR if set, else ~/.cache/coops.
std::string cache_dir();

// Content-addressed text store, keyed by a descriptor string that must
// include everything the payload depends on (prime, module, window, engine,
// format). Entries are versioned JSON files; a version or key mismatch is a
// miss. Both calls are best-effort: I/O problems read as a miss / no-op.
std::optional<std::string> cache_get(const std::string& key);
bool cache_put(const std::string& key, const std::string& payload);

}  // namespace coops
