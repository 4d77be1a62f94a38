#pragma once

#include <stdexcept>
#include <string>

namespace starkms
{

// Operands live in different phase spaces, backends or truncation contexts.
class context_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the domain of an operation (non-integrable, non-real, ...).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A documented precondition does not hold.
class precondition_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Requested λ-order exceeds the truncation order of the context.
class truncation_bound_error : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

class unsupported_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace starkms
