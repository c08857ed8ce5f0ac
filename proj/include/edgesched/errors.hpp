#pragma once

#include <stdexcept>
#include <string>

namespace edgesched {

/// Instance exceeds the exact solver's enumeration guard.
struct InstanceTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No feasible solution exists (or none could be constructed).
struct InfeasibleInstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A node carries more requests than it has 1-MHz bandwidth units.
struct RepairInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Greedy decode could not place a request on any node with spare capacity.
struct InfeasibleDecodeError : std::runtime_error {
    InfeasibleDecodeError(const std::string& msg, int request)
        : std::runtime_error(msg), request_id(request) {}
    int request_id;
};

/// Training loss became non-finite.
struct TrainingDivergedError : std::runtime_error {
    TrainingDivergedError(const std::string& msg, int at_epoch)
        : std::runtime_error(msg), epoch(at_epoch) {}
    int epoch;
};

/// Corrupt, truncated or version-mismatched model file.
struct ModelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration (missing keys, unusable normalization constants, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace edgesched
