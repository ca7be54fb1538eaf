#pragma once

#include <stdexcept>
#include <string>

namespace latentgeom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteInput : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DegenerateAngle : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct MissingGroup : Error {
    using Error::Error;
};

struct DivergenceDetected : Error {
    DivergenceDetected(const std::string& what, long step_arg) : Error(what), step(step_arg) {}
    long step;
};

struct CheckpointMissing : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace latentgeom
