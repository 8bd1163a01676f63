#pragma once

#include <stdexcept>
#include <string>

namespace ltem {

/// Exception carrying a module-specific error code next to the message.
template <class Code>
class CodedError : public std::runtime_error {
public:
    CodedError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

}  // namespace ltem
