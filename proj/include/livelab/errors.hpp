#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace livelab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name) : Error("unbound variable '" + name + "'") {}
};

class DomainUnknown : public Error {
public:
    explicit DomainUnknown(const std::string& name) : Error("unknown domain '" + name + "'") {}
};

class TimeOutOfRange : public Error {
public:
    explicit TimeOutOfRange(long long t) : Error("time " + std::to_string(t) + " is outside the trace") {}
};

class TypeMismatch : public Error {
public:
    using Error::Error;
};

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

class SyntaxError : public Error {
public:
    SyntaxError(SourceSpan span, std::vector<std::string> expected, const std::string& found);
    const SourceSpan& span() const { return span_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    SourceSpan span_;
    std::vector<std::string> expected_;
};

class UnknownDomain : public Error {
public:
    explicit UnknownDomain(const std::string& name) : Error("unknown domain '" + name + "'") {}
};

class UnboundParameter : public Error {
public:
    explicit UnboundParameter(const std::string& name) : Error("unbound parameter '" + name + "'") {}
};

class MissingParameter : public Error {
public:
    explicit MissingParameter(const std::string& what) : Error("missing parameter: " + what) {}
};

class InvalidQuorumSystem : public Error {
public:
    using Error::Error;
};

class ActionNotEnabled : public Error {
public:
    using Error::Error;
};

class CannotRealize : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NoConsensusPath : public Error {
public:
    using Error::Error;
};

class NoWitnessShipped : public Error {
public:
    using Error::Error;
};

class TraceFormatError : public Error {
public:
    using Error::Error;
};

} // namespace livelab
