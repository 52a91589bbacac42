#pragma once

#include <stdexcept>
#include <string>

namespace lcb {

// Bad input: wrong sizes, out-of-domain parameters, malformed config.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed quantity failed a check that must hold mathematically
// (non-integer Molien coefficient, nonzero linear term, ...).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lcb
