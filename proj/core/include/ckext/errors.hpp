#pragma once

#include <stdexcept>
#include <string>

namespace ckext {

/** Raised when assembling g or h fails, e.g. an oracle returns a
 *  non-finite value inside an interval the constants must cover. */
class construction_error : public std::runtime_error {
public:
    explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

/** Raised when a derivative of h beyond its guaranteed smoothness is requested. */
class order_exceeded : public std::invalid_argument {
public:
    explicit order_exceeded(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace ckext
