#pragma once

#include <stdexcept>
#include <string>

namespace treeh2 {

/// Every failure the library reports, as a stable machine-checkable code.
enum class Errc {
    // graph construction
    DuplicateEdge,
    SelfLoop,
    NonpositiveWeight,
    IdOutOfRange,
    // metrics
    NTooSmall,
    NotUndirected,
    NotConnected,
    LyapunovSolveFailed,
    NotTree,
    NonUnitWeights,
    // tree families
    InvalidParameters,
    // enumeration
    NTooLarge,
    InvalidDiameter,
    // ordering moves
    HypothesesViolated,
    NotCaterpillar,
    SingleBouquet,
    IsCaterpillar,
    IsTerminal,
    WrongShape,
    // simulation
    UnstableStep,
    // CLI / IO
    UnknownFlag,
    BadInputFile,
    SizeGuardExceeded,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::NonpositiveWeight: return "NonpositiveWeight";
        case Errc::IdOutOfRange: return "IdOutOfRange";
        case Errc::NTooSmall: return "NTooSmall";
        case Errc::NotUndirected: return "NotUndirected";
        case Errc::NotConnected: return "NotConnected";
        case Errc::LyapunovSolveFailed: return "LyapunovSolveFailed";
        case Errc::NotTree: return "NotTree";
        case Errc::NonUnitWeights: return "NonUnitWeights";
        case Errc::InvalidParameters: return "InvalidParameters";
        case Errc::NTooLarge: return "NTooLarge";
        case Errc::InvalidDiameter: return "InvalidDiameter";
        case Errc::HypothesesViolated: return "HypothesesViolated";
        case Errc::NotCaterpillar: return "NotCaterpillar";
        case Errc::SingleBouquet: return "SingleBouquet";
        case Errc::IsCaterpillar: return "IsCaterpillar";
        case Errc::IsTerminal: return "IsTerminal";
        case Errc::WrongShape: return "WrongShape";
        case Errc::UnstableStep: return "UnstableStep";
        case Errc::UnknownFlag: return "UnknownFlag";
        case Errc::BadInputFile: return "BadInputFile";
        case Errc::SizeGuardExceeded: return "SizeGuardExceeded";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace treeh2
