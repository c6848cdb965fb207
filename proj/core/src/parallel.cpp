#include "exkit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace exkit {

unsigned default_thread_count()
{
    const char* env = std::getenv("EXCURSION_KIT_THREADS");
    if (!env) return 1;
    try {
        const long n = std::stol(env);
        return n > 0 ? static_cast<unsigned>(n) : 1;
    } catch (...) {
        return 1;
    }
}

} // namespace exkit
