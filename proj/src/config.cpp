#include "qwmix/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "qwmix/error.hpp"

namespace qwmix {

namespace {

std::size_t cap_from_env() {
  if (const char* v = std::getenv("QWMIX_STATE_CAP")) {
    try {
      auto parsed = std::stoull(v);
      if (parsed > 0) return static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
    }
  }
  return kDefaultStateCap;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{cap_from_env()};
  return cap;
}

}  // namespace

std::size_t state_cap() { return cap_storage().load(); }

void set_state_cap(std::size_t cap) { cap_storage().store(cap); }

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw DimensionCap(n, cap);
}

}  // namespace qwmix
