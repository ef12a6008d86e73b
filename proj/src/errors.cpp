#include "eggbeater/errors.hpp"

namespace eggbeater {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::EscapedBox: return "EscapedBox";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NonRegularCrossing: return "NonRegularCrossing";
    case ErrorKind::SignCondition: return "SignCondition";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::IncompleteCensus: return "IncompleteCensus";
    case ErrorKind::Rejected: return "Rejected";
    }
    return "Error";
}

}  // namespace eggbeater
