#ifndef TENSION_ERRORS_HPP
#define TENSION_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tension {

/// Base class of every error thrown by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Malformed formula or story text. Carries the offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what_arg, std::size_t position)
        : Error(what_arg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A default base that admits no tolerance stratification.
class InconsistentDefaultBase : public Error {
public:
    using Error::Error;
};

/// The preferred-subbase search retained more partial selections than the
/// configured cap. Truncating instead would corrupt skeptical inference, so
/// this is an error, never a silent cutoff.
class ExplosionLimit : public Error {
public:
    using Error::Error;
};

/// Curiosity-intensity precondition failed.
class NotCurious : public Error {
public:
    using Error::Error;
};

/// Surprise-intensity precondition failed.
class NotSurprised : public Error {
public:
    using Error::Error;
};

/// A surprise whose blame cannot be pinned on any single default rule.
class NoViolatedRule : public Error {
public:
    using Error::Error;
};

/// Invalid story file. Carries the 1-based line of the offending entry.
class StoryError : public Error {
public:
    StoryError(const std::string& what_arg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace tension

#endif
