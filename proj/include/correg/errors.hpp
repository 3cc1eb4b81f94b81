#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace correg {

// Base class for all data and usage errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document; `line` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A provided ALIGNMENT row disagrees with its TOKENS (or with its group).
class AlignmentMismatch : public Error {
public:
    AlignmentMismatch(std::int64_t row_id, const std::string& what)
        : Error("row " + std::to_string(row_id) + ": " + what), row_id_(row_id) {}
    std::int64_t row_id() const { return row_id_; }

private:
    std::int64_t row_id_;
};

class InvalidSample : public Error {
public:
    using Error::Error;
};

class UnknownDoculect : public Error {
public:
    explicit UnknownDoculect(const std::string& doculect)
        : Error("unknown doculect: " + doculect) {}
};

class InvalidSegment : public Error {
public:
    using Error::Error;
};

class EmptyCognateSet : public Error {
public:
    using Error::Error;
};

class InconsistentReport : public Error {
public:
    using Error::Error;
};

class UnknownMember : public Error {
public:
    using Error::Error;
};

class TooSmall : public Error {
public:
    using Error::Error;
};

class InjectionImpossible : public Error {
public:
    explicit InjectionImpossible(std::int64_t cogid)
        : Error("cognate set " + std::to_string(cogid) +
                ": inventory too small for a class-preserving replacement"),
          cogid_(cogid) {}
    std::int64_t cogid() const { return cogid_; }

private:
    std::int64_t cogid_;
};

}  // namespace correg
