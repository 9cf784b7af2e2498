#pragma once

#include <stdexcept>
#include <string>

namespace topocrit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TOPOCRIT_ERROR(Name)                \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

TOPOCRIT_ERROR(ZeroGap);
TOPOCRIT_ERROR(GaugeSingularity);
TOPOCRIT_ERROR(FlatDegenerate);
TOPOCRIT_ERROR(AtCriticality);
TOPOCRIT_ERROR(PoorFit);
TOPOCRIT_ERROR(WindowTouchesCriticality);
TOPOCRIT_ERROR(EmptyGrid);
TOPOCRIT_ERROR(InsufficientDecade);
TOPOCRIT_ERROR(QuantizationFailure);
TOPOCRIT_ERROR(OracleMismatch);
TOPOCRIT_ERROR(InvalidArgument);

#undef TOPOCRIT_ERROR

}  // namespace topocrit
