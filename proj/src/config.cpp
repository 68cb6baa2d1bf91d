#include "convolab/config.hpp"

#include <cstdlib>
#include <string>

namespace convolab {

namespace {

Config from_environment() {
  Config cfg;
  if (const char* env = std::getenv("CONVOLAB_MAX_ORDER")) {
    try {
      const long v = std::stol(env);
      if (v > 0) cfg.limits.max_group_order = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // ignore malformed overrides
    }
  }
  return cfg;
}

Config& mutable_config() {
  static Config cfg = from_environment();
  return cfg;
}

}  // namespace

const Config& config() { return mutable_config(); }

void set_config(const Config& cfg) { mutable_config() = cfg; }

}  // namespace convolab
