#ifndef HCG_ERRORS_HPP
#define HCG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hcg {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& w = "division by zero") : Error(w) {}
};

struct LevelMismatch : Error {
    explicit LevelMismatch(const std::string& w = "cyclotomic level mismatch") : Error(w) {}
};

struct NotCoprime : Error {
    explicit NotCoprime(const std::string& w = "argument not coprime to level") : Error(w) {}
};

struct IndeterminateLimit : Error {
    explicit IndeterminateLimit(const std::string& w = "indeterminate limit (0 - 0)") : Error(w) {}
};

struct UnsolvableAtom : Error {
    explicit UnsolvableAtom(const std::string& w = "no unit-exponent parameter to solve atom") : Error(w) {}
};

struct AdmissibilityViolation : Error {
    explicit AdmissibilityViolation(const std::string& w = "face has a coordinate identically 0 or infinity") : Error(w) {}
};

struct VariantMismatch : Error {
    explicit VariantMismatch(const std::string& w = "construction variant incompatible with n") : Error(w) {}
};

struct ParityViolation : Error {
    explicit ParityViolation(const std::string& w = "parity mismatch") : Error(w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w = "argument outside domain") : Error(w) {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(const std::string& w = "dimension not supported by this method") : Error(w) {}
};

struct InvalidSubgroup : Error {
    explicit InvalidSubgroup(const std::string& w = "generators do not define a unit subgroup") : Error(w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w = "parse error") : Error(w) {}
};

} // namespace hcg

#endif
