#pragma once

#include <stdexcept>
#include <string>

namespace eggbeater {

enum class ErrorKind {
    InvalidArgument,
    Parse,
    NoRoot,
    IllConditioned,
    NonConvergence,
    EscapedBox,
    SingularJacobian,
    NonRegularCrossing,
    SignCondition,
    Precondition,
    NotFound,
    IncompleteCensus,
    Rejected,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    // Numerical failures as opposed to bad input.
    bool numerical() const {
        switch (kind_) {
        case ErrorKind::NoRoot:
        case ErrorKind::IllConditioned:
        case ErrorKind::NonConvergence:
        case ErrorKind::EscapedBox:
        case ErrorKind::SingularJacobian:
        case ErrorKind::NonRegularCrossing:
        case ErrorKind::SignCondition:
        case ErrorKind::NotFound:
        case ErrorKind::IncompleteCensus:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorKind::Parse, "at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace eggbeater
