#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpack {

// Invalid physical input. Carries the name of the offending field.
class DomainError : public std::domain_error
{
public:
    DomainError(std::string field, const std::string &what)
        : std::domain_error(field + ": " + what), field_(std::move(field))
    {
    }

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char *field, const std::string &what)
{
    if (!ok) {
        throw DomainError(field, what);
    }
}

} // namespace detail

} // namespace qpack
