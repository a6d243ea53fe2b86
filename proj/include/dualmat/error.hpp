#pragma once

#include <stdexcept>
#include <string>

namespace dualmat {

// Error categories. The CLI maps validation errors (parse_error, shape_mismatch)
// to exit code 2 and mathematical failures to exit code 1.
enum class errc {
    not_appreciable,
    shape_mismatch,
    convergence_failure,
    not_index_one,
    inverse_not_exists,
    singular_standard_part,
    tolerance_breach,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_appreciable: return "NotAppreciable";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::convergence_failure: return "ConvergenceFailure";
        case errc::not_index_one: return "NotIndexOne";
        case errc::inverse_not_exists: return "InverseNotExists";
        case errc::singular_standard_part: return "SingularStandardPart";
        case errc::tolerance_breach: return "ToleranceBreach";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

inline bool is_validation_error(errc c) {
    return c == errc::parse_error || c == errc::shape_mismatch;
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

struct NotAppreciable : Error {
    explicit NotAppreciable(const std::string& w) : Error(errc::not_appreciable, w) {}
};
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& w) : Error(errc::shape_mismatch, w) {}
};
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& w) : Error(errc::convergence_failure, w) {}
};
struct NotIndexOne : Error {
    explicit NotIndexOne(const std::string& w) : Error(errc::not_index_one, w) {}
};
struct InverseNotExists : Error {
    explicit InverseNotExists(const std::string& w) : Error(errc::inverse_not_exists, w) {}
};
struct SingularStandardPart : Error {
    explicit SingularStandardPart(const std::string& w) : Error(errc::singular_standard_part, w) {}
};
struct ToleranceBreach : Error {
    explicit ToleranceBreach(const std::string& w) : Error(errc::tolerance_breach, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(errc::parse_error, w) {}
};

}  // namespace dualmat
