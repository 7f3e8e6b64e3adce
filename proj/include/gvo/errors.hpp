// Error taxonomy shared by the whole library. The categories map 1:1 onto
// the C API status codes and the CLI exit codes.
#ifndef GVO_ERRORS_HPP
#define GVO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gvo {

enum class ErrorKind {
    usage = 1,    // bad arguments, invalid configuration values
    data = 2,     // malformed files, inconsistent inputs
    numeric = 3,  // degenerate geometry, failed numerics
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& what)
        : Error(ErrorKind::usage, what) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& what)
        : Error(ErrorKind::data, what) {}
};

struct DegenerateRotationError : Error {
    explicit DegenerateRotationError(const std::string& what)
        : Error(ErrorKind::numeric, what) {}
};

struct DegenerateFrameError : Error {
    explicit DegenerateFrameError(const std::string& what)
        : Error(ErrorKind::numeric, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what)
        : Error(ErrorKind::numeric, what) {}
};

struct SceneSpecError : Error {
    explicit SceneSpecError(const std::string& what)
        : Error(ErrorKind::data, what) {}
};

struct FittingError : Error {
    explicit FittingError(const std::string& what)
        : Error(ErrorKind::numeric, what) {}
};

}  // namespace gvo

#endif
