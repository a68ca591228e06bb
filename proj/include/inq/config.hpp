#ifndef INQ_CONFIG_HPP
#define INQ_CONFIG_HPP

#include <stdexcept>

namespace inq {

// Closure, the `full` encoding policy and state closure enumerate up to
// 2^|W| information states, so the world count is capped. The default cap
// is 16 worlds; the INQML_CAP environment variable overrides it (1..24).
int world_cap();

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_within_cap(int n_worlds);

}  // namespace inq

#endif
