#include "conedyn/parallel.hpp"

#include <cstdlib>
#include <string>

namespace conedyn {

int thread_cap() {
  const char* env = std::getenv("CONEDYN_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace conedyn
