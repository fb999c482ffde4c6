#pragma once

#include <stdexcept>
#include <string>

namespace litrunc {

// Exit codes of the command-line tool map 1:1 onto these.
enum class ErrorKind { Domain = 1, Resource = 2, Io = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

struct DomainError : Error {
    DomainError(std::string module, const std::string& what)
        : Error(ErrorKind::Domain, std::move(module), what) {}
};

struct ResourceError : Error {
    ResourceError(std::string module, const std::string& what)
        : Error(ErrorKind::Resource, std::move(module), what) {}
};

struct IoError : Error {
    IoError(std::string module, const std::string& what)
        : Error(ErrorKind::Io, std::move(module), what) {}
};

// Bracketing failed: both ends of the search interval have the same sign.
struct NoRootError : DomainError {
    NoRootError(std::string module, const std::string& what, double lo, double flo, double hi, double fhi)
        : DomainError(std::move(module), what + " [f(" + std::to_string(lo) + ")=" + std::to_string(flo) +
                                             ", f(" + std::to_string(hi) + ")=" + std::to_string(fhi) + "]"),
          lo(lo), flo(flo), hi(hi), fhi(fhi) {}
    double lo, flo, hi, fhi;
};

// Quadrature stopped before reaching the requested tolerance.
struct QuadratureError : DomainError {
    QuadratureError(std::string module, const std::string& what, double achieved)
        : DomainError(std::move(module), what + " (achieved abs error " + std::to_string(achieved) + ")"),
          achieved(achieved) {}
    double achieved;
};

} // namespace litrunc
