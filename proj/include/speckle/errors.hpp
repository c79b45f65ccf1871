#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speckle {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes.

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed bytes in an external container (IDX, SPKC, SPKN).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint or corpus does not match the spec it is being used with.
struct ArtifactMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class DivergedTrainingError : public std::runtime_error {
public:
    DivergedTrainingError(std::size_t epoch, const std::string& what)
        : std::runtime_error(what), epoch_(epoch) {}

    std::size_t epoch() const { return epoch_; }

private:
    std::size_t epoch_;
};

}  // namespace speckle
