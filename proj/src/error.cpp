#include "stree/error.hpp"

namespace stree {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::DegeneratePoint: return "DegeneratePoint";
    case Errc::DegenerateDirection: return "DegenerateDirection";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::InvalidTolerances: return "InvalidTolerances";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ParseError: return "ParseError";
    case Errc::NotConnectedYet: return "NotConnectedYet";
    case Errc::EmptyUndoStack: return "EmptyUndoStack";
    case Errc::InvalidPhase: return "InvalidPhase";
    case Errc::MalformedAction: return "MalformedAction";
    case Errc::UnknownSession: return "UnknownSession";
    }
    return "Unknown";
}

} // namespace stree
