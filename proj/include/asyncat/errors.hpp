#pragma once

#include <stdexcept>
#include <string>

namespace asyncat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& msg, int l, int c)
        : Error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l), column(c) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct ScopingError : ValidationError {
    std::string condition;
    ScopingError(const std::string& cond, const std::string& msg)
        : ValidationError("scoping violation (" + cond + "): " + msg), condition(cond) {}
};

struct ChopMismatch : Error {
    using Error::Error;
};
struct NoScope : Error {
    NoScope() : Error("no current call scope") {}
};
struct MalformedTrace : Error {
    using Error::Error;
};
struct MalformedConfiguration : Error {
    using Error::Error;
};
struct BoundExceeded : Error {
    using Error::Error;
};
struct TooManyTraces : Error {
    using Error::Error;
};
struct UnboundLogicVar : Error {
    explicit UnboundLogicVar(const std::string& v) : Error("unbound logic variable " + v) {}
};
struct UnboundProgramVar : Error {
    explicit UnboundProgramVar(const std::string& v) : Error("unbound program variable " + v) {}
};
struct HavocPresent : Error {
    HavocPresent() : Error("update contains a havoc prefix") {}
};
struct ScheduleError : Error {
    using Error::Error;
};

}  // namespace asyncat
