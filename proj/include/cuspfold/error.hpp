#pragma once

#include <stdexcept>
#include <string>

namespace cuspfold {

// Every contract violation in the library surfaces as this type; the message
// is the stable, user-facing reason string.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cuspfold
