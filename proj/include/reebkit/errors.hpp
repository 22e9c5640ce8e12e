#ifndef REEBKIT_ERRORS_HPP
#define REEBKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reebkit {

// Every toolkit error carries a stable code string (for CLI reports) and a
// severity kind: Validation errors map to exit code 2, Numeric errors (an
// internal cross-check disagreed) map to exit code 3 and are never downgraded.
class Error : public std::runtime_error {
public:
    enum class Kind { Validation, Numeric };

    Error(Kind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    Kind kind_;
    std::string code_;
};

#define REEBKIT_DEFINE_ERROR(NAME, KIND)                                   \
    struct NAME : Error {                                                  \
        explicit NAME(const std::string& what)                             \
            : Error(Error::Kind::KIND, #NAME, what) {}                     \
    }

REEBKIT_DEFINE_ERROR(NonSymplectic, Validation);
REEBKIT_DEFINE_ERROR(NotALoop, Validation);
REEBKIT_DEFINE_ERROR(InsufficientResolution, Validation);
REEBKIT_DEFINE_ERROR(DegenerateEndpoint, Validation);
REEBKIT_DEFINE_ERROR(UnknownModel, Validation);
REEBKIT_DEFINE_ERROR(InvalidParams, Validation);
REEBKIT_DEFINE_ERROR(NotContact, Validation);
REEBKIT_DEFINE_ERROR(SingularSystem, Validation);
REEBKIT_DEFINE_ERROR(DegenerateFrame, Validation);
REEBKIT_DEFINE_ERROR(NoConvergence, Validation);
REEBKIT_DEFINE_ERROR(DegenerateSection, Validation);
REEBKIT_DEFINE_ERROR(FrameNotSymplectic, Validation);
REEBKIT_DEFINE_ERROR(SplittingUnavailable, Validation);
REEBKIT_DEFINE_ERROR(NotTransverse, Validation);
REEBKIT_DEFINE_ERROR(DomainExit, Validation);
REEBKIT_DEFINE_ERROR(UnboundedDomain, Validation);
REEBKIT_DEFINE_ERROR(BadInput, Validation);

REEBKIT_DEFINE_ERROR(MethodDisagreement, Numeric);
REEBKIT_DEFINE_ERROR(OracleDisagreement, Numeric);

#undef REEBKIT_DEFINE_ERROR

} // namespace reebkit

#endif // REEBKIT_ERRORS_HPP
