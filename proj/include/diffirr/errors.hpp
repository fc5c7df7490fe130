#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffirr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arithmetic
class DivisionByZero : public Error { public: using Error::Error; };
class FieldMismatch : public Error { public: using Error::Error; };
class InvalidField : public Error { public: using Error::Error; };

// Text front end. Parse-type errors all map to the CLI exit code 2.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};
class UnknownSymbol : public ParseError { public: using ParseError::ParseError; };
class NonIntegerExponent : public ParseError { public: using ParseError::ParseError; };

// Operators
class DivisionByZeroOperator : public Error { public: using Error::Error; };
class ZeroOperator : public Error { public: using Error::Error; };
class OrderZero : public Error { public: using Error::Error; };
class BadDimension : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };
class NotADivisor : public Error { public: using Error::Error; };

// Constructions outside the supported range map to exit code 3.
class Unsupported : public Error { public: using Error::Error; };
class UnsupportedDegree : public Unsupported { public: using Unsupported::Unsupported; };
class UnsupportedOrder : public Unsupported { public: using Unsupported::Unsupported; };
class UnsupportedOrderGap : public Unsupported { public: using Unsupported::Unsupported; };
class NoCyclicVectorFound : public Unsupported { public: using Unsupported::Unsupported; };
class IncompleteSearch : public Unsupported { public: using Unsupported::Unsupported; };
class BadOrder : public Unsupported { public: using Unsupported::Unsupported; };

/// Specialization hit a vanishing denominator or leading coefficient.
class NotWellDefined : public Error { public: using Error::Error; };

class IoError : public Error { public: using Error::Error; };

}  // namespace diffirr
