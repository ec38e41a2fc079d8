#ifndef STIEFEL_ERROR_HPP
#define STIEFEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stiefel {

enum class ErrorCode {
    Dimension,
    NonFinite,
    RankDeficient,
    NotOrthonormal,
    NotRotation,
    NumericalRankLoss,
    InternalRankLoss,
    Domain,
    ZeroVector,
    Parse,
    InternalConsistency,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Dimension: return "DimensionError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotRotation: return "NotRotation";
    case ErrorCode::NumericalRankLoss: return "NumericalRankLoss";
    case ErrorCode::InternalRankLoss: return "InternalRankLoss";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

/// Base of every exception thrown by the library. `code()` lets callers
/// (the CLI in particular) branch on the failure class without RTTI ladders.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorCode::Dimension, what) {}
};

class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& what) : Error(ErrorCode::NonFinite, what) {}
};

/// Validation-time rank failure: the singular-value ratio is at or below tol_rank.
class RankDeficientError : public Error {
public:
    RankDeficientError(const std::string& what, double ratio)
        : Error(ErrorCode::RankDeficient, what), ratio_(ratio) {}
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

class NotOrthonormalError : public Error {
public:
    NotOrthonormalError(const std::string& what, double deviation)
        : Error(ErrorCode::NotOrthonormal, what), deviation_(deviation) {}
    /// max-abs entry of rawᵀraw - I
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class NotRotationError : public Error {
public:
    explicit NotRotationError(const std::string& what) : Error(ErrorCode::NotRotation, what) {}
};

/// Computation-time rank failure: an input that passed validation collapsed
/// under roundoff during orthonormalization.
class NumericalRankLossError : public Error {
public:
    NumericalRankLossError(const std::string& what, std::size_t column)
        : Error(ErrorCode::NumericalRankLoss, what), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class InternalRankLossError : public Error {
public:
    explicit InternalRankLossError(const std::string& what)
        : Error(ErrorCode::InternalRankLoss, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(const std::string& what) : Error(ErrorCode::ZeroVector, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class InternalConsistencyError : public Error {
public:
    explicit InternalConsistencyError(const std::string& what)
        : Error(ErrorCode::InternalConsistency, what) {}
};

} // namespace stiefel

#endif // STIEFEL_ERROR_HPP
