#pragma once

#include <stdexcept>
#include <string>

namespace cubehom
{
    /// Malformed or out-of-range input (bad vertex id, self-loop, wrong file format, ...).
    class InputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// The request is valid but exceeds a size cap of the implementation.
    class CapabilityError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// An operation was called with arguments violating its documented precondition.
    class PreconditionError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };
}
