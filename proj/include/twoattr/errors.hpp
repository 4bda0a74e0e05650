#pragma once

#include <stdexcept>
#include <string>

namespace twoattr {

// Values double as CLI exit codes.
enum class ErrorKind { Validation = 2, Budget = 3, Internal = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(ErrorKind::Budget, msg) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};

}  // namespace twoattr
