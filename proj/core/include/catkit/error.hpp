#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace catkit {

enum class ErrorKind {
    usage,
    validation,
    size_cap,
    missing_limit,
    precondition,
    quotient_not_finite,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Enumeration budget shared by every operation that materialises a finite structure.
struct Limits {
    std::size_t max_items = 50'000;
    std::size_t max_closure_arrows = 10'000;

    void check(std::size_t count, std::string_view what) const {
        if (count > max_items)
            throw Error(ErrorKind::size_cap, "size cap exceeded while enumerating " + std::string(what) +
                                                 " (" + std::to_string(count) + " > " +
                                                 std::to_string(max_items) + ")");
    }
};

// A pass/fail outcome with the first violation found.
struct CheckReport {
    bool ok = true;
    std::string violation;

    static CheckReport pass() { return {}; }
    static CheckReport fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const noexcept { return ok; }
};

}  // namespace catkit
