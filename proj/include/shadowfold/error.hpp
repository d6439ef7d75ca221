#pragma once

#include <stdexcept>
#include <string>

namespace shadowfold {

enum class ErrorCode {
    parse,             // malformed space file or point syntax
    invalid_argument,  // bad parameter (non-positive length, unknown edge, ...)
    domain,            // operation undefined on this input (angle at the apex, ...)
    range,             // outside a validity region (exp past a branch vertex, ...)
    hypothesis,        // a check was invoked outside its hypothesis regime
    io,                // file system failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace shadowfold
