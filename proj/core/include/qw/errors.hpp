#pragma once

#include <stdexcept>

namespace qw {

// Log-profile of the distribution is not concave; no Gaussian width exists.
struct NotGaussianError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Too few sites above the support threshold to fit.
struct InsufficientSupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No spectral peak rises far enough above the noise floor.
struct NoOscillationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qw
