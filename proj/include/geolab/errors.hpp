#pragma once

#include <stdexcept>
#include <string>

namespace geolab {

enum class ErrorKind {
    DivisionByZero,
    NegativeRadicand,
    TowerDepthExceeded,
    PrecisionCapExceeded,
    DomainViolation,
    NonFinite,
    IdenticalCircles,
    EmptyIntersection,
    CollinearPoints,
    DuplicatePoints,
    SyntaxError,
    DuplicateName,
    UnknownReference,
    ForwardReference,
    CyclicDefinition,
    UnknownObject,
    NotFree,
    DegenerateConfig,
    NotCongruent,
    NotIntersecting,
    ShapeMismatch,
    UnsupportedNode,
    DenominatorMayVanish,
    BadArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace geolab
