#pragma once

#include <stdexcept>
#include <string>

namespace mmp {

enum class Errc {
    ParseError,
    NotMinusOne,
    CollapsedToNothing,
    NotABracket,
    NotT0,
    ContainsBracket,
    ContainsMinusOne,
    NotFlankedByBrackets,
    ShapeMismatch,
    InvalidSite,
    ResultNotT0,
    BrokenT0,
    InvalidMResolution,
    FlipBlocked,
    MoveNotApplicable,
    NotAFlipPair,
    NotAPath,
    Unsupported,
    Internal,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ParseError: return "ParseError";
        case Errc::NotMinusOne: return "NotMinusOne";
        case Errc::CollapsedToNothing: return "CollapsedToNothing";
        case Errc::NotABracket: return "NotABracket";
        case Errc::NotT0: return "NotT0";
        case Errc::ContainsBracket: return "ContainsBracket";
        case Errc::ContainsMinusOne: return "ContainsMinusOne";
        case Errc::NotFlankedByBrackets: return "NotFlankedByBrackets";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::InvalidSite: return "InvalidSite";
        case Errc::ResultNotT0: return "ResultNotT0";
        case Errc::BrokenT0: return "BrokenT0";
        case Errc::InvalidMResolution: return "InvalidMResolution";
        case Errc::FlipBlocked: return "FlipBlocked";
        case Errc::MoveNotApplicable: return "MoveNotApplicable";
        case Errc::NotAFlipPair: return "NotAFlipPair";
        case Errc::NotAPath: return "NotAPath";
        case Errc::Unsupported: return "Unsupported";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mmp

// Always-on internal invariant check; a failure indicates a bug in this
// library, never bad input.
#define MMP_ASSERT(cond, msg) \
    do {                      \
        if (!(cond)) ::mmp::fail(::mmp::Errc::Internal, msg); \
    } while (0)
