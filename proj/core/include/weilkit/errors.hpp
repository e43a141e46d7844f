#pragma once

#include <stdexcept>
#include <string>

namespace weilkit {

// Every recoverable failure inside the library is reported through this type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace weilkit
