// errors.hpp: Exception types shared by the analytic layers and the engine

#pragma once

#include <stdexcept>
#include <string>

namespace qrim {

// Both collision coefficients vanish (or the population map does not contract),
// so no fixed point or limit cycle exists.
class FrozenDynamics : public std::runtime_error {
public:
    explicit FrozenDynamics(const std::string& what) : std::runtime_error(what) {}
};

class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qrim
