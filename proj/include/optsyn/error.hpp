#pragma once

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace optsyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed formula, spec, partition or strategy text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          message(msg), line(line), column(column) {}
    std::string message;  ///< without the position suffix
    std::size_t line;
    std::size_t column;
};

/// An explicit construction exceeded its configured state (or objective) cap.
struct ResourceLimitError : Error {
    using Error::Error;
};

struct TimeoutError : Error {
    TimeoutError() : Error("wall-clock budget exhausted") {}
};

/// Cooperative wall-clock budget, polled inside long-running loops.
class Budget {
public:
    Budget() = default;
    explicit Budget(std::chrono::milliseconds limit)
        : deadline_(std::chrono::steady_clock::now() + limit), enabled_(true) {}

    void check() const {
        if (enabled_ && std::chrono::steady_clock::now() > deadline_) throw TimeoutError();
    }
    bool enabled() const { return enabled_; }

private:
    std::chrono::steady_clock::time_point deadline_{};
    bool enabled_ = false;
};

inline void poll(const Budget* budget) {
    if (budget) budget->check();
}

}  // namespace optsyn
