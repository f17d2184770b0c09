#include "geolab/errors.hpp"

namespace geolab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::NegativeRadicand: return "NegativeRadicand";
        case ErrorKind::TowerDepthExceeded: return "TowerDepthExceeded";
        case ErrorKind::PrecisionCapExceeded: return "PrecisionCapExceeded";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::IdenticalCircles: return "IdenticalCircles";
        case ErrorKind::EmptyIntersection: return "EmptyIntersection";
        case ErrorKind::CollinearPoints: return "CollinearPoints";
        case ErrorKind::DuplicatePoints: return "DuplicatePoints";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::UnknownReference: return "UnknownReference";
        case ErrorKind::ForwardReference: return "ForwardReference";
        case ErrorKind::CyclicDefinition: return "CyclicDefinition";
        case ErrorKind::UnknownObject: return "UnknownObject";
        case ErrorKind::NotFree: return "NotFree";
        case ErrorKind::DegenerateConfig: return "DegenerateConfig";
        case ErrorKind::NotCongruent: return "NotCongruent";
        case ErrorKind::NotIntersecting: return "NotIntersecting";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::UnsupportedNode: return "UnsupportedNode";
        case ErrorKind::DenominatorMayVanish: return "DenominatorMayVanish";
        case ErrorKind::BadArgument: return "BadArgument";
    }
    return "UnknownError";
}

} // namespace geolab
