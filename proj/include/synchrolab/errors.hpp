#pragma once

#include <stdexcept>
#include <string>

namespace synchrolab {

// Thrown when an exact computation is requested above its configured
// size limit (subset BFS, brute-force enumeration, deletion-contraction).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace synchrolab
