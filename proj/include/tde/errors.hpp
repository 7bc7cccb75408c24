#ifndef TDE_ERRORS_HPP
#define TDE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tde {

/// Malformed or out-of-contract input. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical result that violates an invariant (non-real energy, degenerate
/// mass, ...). The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tde

#endif
