#include "measurekit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace measurekit {

int worker_count() {
  if (const char* env = std::getenv("MEASUREKIT_WORKERS")) {
    try {
      const int n = std::stoi(env);
      return n >= 1 ? n : 1;
    } catch (...) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

}  // namespace measurekit
