#pragma once

#include <stdexcept>
#include <string>

namespace ffpm {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands from different fields, mismatched arities, malformed inputs.
class SpecError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in finite field") {}
};

// A documented precondition of an operation does not hold.
class ContractError : public Error {
public:
    using Error::Error;
};

// The coprimality hypothesis |Phi^{-1}(0)| != 0 mod p fails.
class HypothesisError : public Error {
public:
    using Error::Error;
};

// A desk-scale enumeration limit would be exceeded.
class GuardError : public Error {
public:
    using Error::Error;
};

// An internal identity failed; indicates a bug, never an input problem.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ffpm
