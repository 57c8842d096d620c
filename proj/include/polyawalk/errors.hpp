#pragma once

#include <stdexcept>
#include <string>

namespace polyawalk {

// Exit-code mapping used by the CLI: InvariantError -> 1, InputError -> 2,
// ResourceError -> 3.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computed quantity violated an identity that must hold exactly.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace polyawalk
