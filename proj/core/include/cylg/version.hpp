#pragma once

namespace cylg {

// Bumped whenever cache file layout changes; stale caches are discarded.
const char* version_string();

}  // namespace cylg
