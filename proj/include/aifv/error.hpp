#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aifv {

enum class ErrorCode {
    Parse,
    Semantic,
    AlphabetMismatch,
    NotExtendable,
    NotRegular,
    NotInF1,
    NotInF2,
    AmbiguousChain,
    NonTerminatingRecursion,
    StepLimitExceeded,
    NotInExpectedClass,
    WrongTableCount,
    NoConsistentCompletion,
    EmptySpace,
    Internal,
};

std::string_view to_string(ErrorCode code);

// Domain error. `line` is set only for parse/semantic errors from text input.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, int line = 0);

    ErrorCode code() const noexcept { return code_; }
    int line() const noexcept { return line_; }

private:
    ErrorCode code_;
    int line_;
};

}  // namespace aifv
