#pragma once

#include <stdexcept>
#include <string>

namespace bellbox {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WrongScenario : Error {
    using Error::Error;
};
struct ScenarioMismatch : Error {
    using Error::Error;
};
struct WeightError : Error {
    using Error::Error;
};
struct CorrelatorInfeasible : Error {
    using Error::Error;
};
struct InvalidBox : Error {
    using Error::Error;
};
struct InvalidPovm : Error {
    using Error::Error;
};
struct InvalidState : Error {
    using Error::Error;
};
struct InvalidModel : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct AnchorInfeasible : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// Parse failure in a box expression or config file; keeps a 1-based column
// so the CLI can point at the offending character.
struct ParseError : Error {
    ParseError(const std::string& what, int column_)
        : Error(what + " (column " + std::to_string(column_) + ")"), column(column_) {}
    int column;
};

}  // namespace bellbox
