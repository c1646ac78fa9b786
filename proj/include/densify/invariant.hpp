#pragma once

#include <stdexcept>
#include <string>

namespace densify {

// Raised when an internal postcondition that the constructions guarantee
// fails to hold; always active, also in release builds.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void invariant(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace densify
