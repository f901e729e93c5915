#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdom {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments to a builder or analysis (n = 1, a <= 0, ...). CLI exit code 2.
class DomainError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class SyntaxError : public ParseError {
public:
    SyntaxError(std::size_t offset, std::string found, std::vector<std::string> expected);

    const std::string& found() const noexcept { return found_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::string found_;
    std::vector<std::string> expected_;
};

class UnknownFunction : public ParseError {
public:
    UnknownFunction(std::size_t offset, std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A polynomial handed to the transform vector carries a degree-1 term.
class TruncationError : public DomainError {
public:
    using DomainError::DomainError;
};

// The series engine met a construct it cannot expand with exact rationals.
class NotExpandable : public Error {
public:
    explicit NotExpandable(std::string construct);
    const std::string& construct() const noexcept { return construct_; }

private:
    std::string construct_;
};

}  // namespace fracdom
