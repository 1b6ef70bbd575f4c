#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stralg {

// Every recoverable failure carries a short stable code (e.g. "NotPrime",
// "SyntaxError", "BudgetExceeded") so the CLI can map it to an exit class
// and machine-readable reports can key on it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

    // 2 = malformed input, 3 = precondition violation, 4 = guard tripped
    int exit_class() const noexcept {
        if (code_ == "SyntaxError" || code_ == "UnknownPath" || code_ == "DecodeFailure")
            return 2;
        if (code_ == "ExplosionGuard" || code_ == "BudgetExceeded")
            return 4;
        return 3;
    }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

} // namespace stralg
