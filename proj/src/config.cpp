#include "inq/config.hpp"

#include <cstdlib>
#include <string>

namespace inq {

static int read_cap() {
    const char* env = std::getenv("INQML_CAP");
    if (!env) return 16;
    try {
        int v = std::stoi(env);
        if (v < 1) return 1;
        if (v > 24) return 24;
        return v;
    } catch (...) {
        return 16;
    }
}

int world_cap() {
    static const int cap = read_cap();
    return cap;
}

void require_within_cap(int n_worlds) {
    if (n_worlds > world_cap())
        throw CapExceeded("world count " + std::to_string(n_worlds) +
                          " exceeds cap " + std::to_string(world_cap()) +
                          " (set INQML_CAP to raise)");
}

}  // namespace inq
