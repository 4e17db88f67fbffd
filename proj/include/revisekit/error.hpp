#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revisekit {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One predicate used with two different arities.
class ArityMismatch : public Error {
public:
    ArityMismatch(std::string predicate, std::size_t first, std::size_t second)
        : Error("predicate '" + predicate + "' used with arity " + std::to_string(first) +
                " and arity " + std::to_string(second)),
          predicate_(std::move(predicate)), first_(first), second_(second) {}

    const std::string& predicate() const noexcept { return predicate_; }
    std::size_t first_arity() const noexcept { return first_; }
    std::size_t second_arity() const noexcept { return second_; }

private:
    std::string predicate_;
    std::size_t first_;
    std::size_t second_;
};

/// A rule with variables was grounded against a signature without constants.
class EmptyUniverse : public Error {
public:
    using Error::Error;
};

/// Malformed formula or base: non-ground fact, rule that is not range restricted,
/// duplicate element or label.
class InvalidFormula : public Error {
public:
    using Error::Error;
};

/// Consequences are undefined for an inconsistent base.
class InconsistentBase : public Error {
public:
    using Error::Error;
};

/// A configured size limit was exceeded.
class CapExceeded : public Error {
public:
    CapExceeded(std::string what, std::size_t count, std::size_t cap)
        : Error(what + " count " + std::to_string(count) + " exceeds cap " + std::to_string(cap)),
          count_(count), cap_(cap) {}

    std::size_t count() const noexcept { return count_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t count_;
    std::size_t cap_;
};

/// Selection was asked to choose from an empty candidate list.
class NoCandidates : public Error {
public:
    using Error::Error;
};

class NonDeterministicStrategy : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
};

} // namespace revisekit
