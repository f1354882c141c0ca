#pragma once

#include <stdexcept>
#include <string>

namespace mcd {

// Thrown when a runtime check of an algorithm invariant fails. The message
// names the violated property so a failing run is diagnosable from the log.
class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// Thrown by the exact solver when the instance exceeds its resource guard.
class instance_too_large : public std::runtime_error {
public:
    explicit instance_too_large(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcd
