#ifndef KAT_ERROR_HPP
#define KAT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AlphabetError : public Error {
public:
    using Error::Error;
};

/// A sequence of elements that is not a mixed string.
class StringError : public Error {
public:
    enum class Kind { alternation_violation, incomplete_interior_test };

    StringError(Kind kind, std::size_t index, const std::string& what)
        : Error(what), kind_(kind), index_(index) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t index() const noexcept { return index_; }

private:
    Kind kind_;
    std::size_t index_;
};

/// Expression, type, program or automaton text that could not be read.
class ParseError : public Error {
public:
    enum class Kind { syntax_error, unknown_identifier };

    ParseError(Kind kind, std::size_t position, const std::string& what)
        : Error(what + " at position " + std::to_string(position)),
          kind_(kind), position_(position) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

/// Raised for ill-typed expressions and for operations applied outside their typing precondition.
class TypeError : public Error {
public:
    enum class Kind { untypeable, type_mismatch };

    TypeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class StateCapExceeded : public Error {
public:
    explicit StateCapExceeded(std::size_t cap)
        : Error("state cap of " + std::to_string(cap) + " exceeded"), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace kat

#endif
