#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlab {

enum class Errc {
    NotPrime,
    SizeCapExceeded,
    OrderNotDividing,
    NoRoot,
    DegeneratePair,
    SingularBranch,
    SingularPoint,
    FieldTooSmall,
    PreconditionViolated,
    FieldConstructionTooLarge,
    FieldLacksRoot,
    ExcludedCase,
    SeriesTruncationTooShort,
    CharTwo,
    CharDividesN,
    InvariantViolated,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::SizeCapExceeded: return "SizeCapExceeded";
        case Errc::OrderNotDividing: return "OrderNotDividing";
        case Errc::NoRoot: return "NoRoot";
        case Errc::DegeneratePair: return "DegeneratePair";
        case Errc::SingularBranch: return "SingularBranch";
        case Errc::SingularPoint: return "SingularPoint";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::FieldConstructionTooLarge: return "FieldConstructionTooLarge";
        case Errc::FieldLacksRoot: return "FieldLacksRoot";
        case Errc::ExcludedCase: return "ExcludedCase";
        case Errc::SeriesTruncationTooShort: return "SeriesTruncationTooShort";
        case Errc::CharTwo: return "CharTwo";
        case Errc::CharDividesN: return "CharDividesN";
        case Errc::InvariantViolated: return "InvariantViolated";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

/// Throws InvariantViolated with `name` when `ok` is false.
inline void require(bool ok, const std::string& name) {
    if (!ok) throw Error(Errc::InvariantViolated, name);
}

}  // namespace hlab
