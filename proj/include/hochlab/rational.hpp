#ifndef HOCHLAB_RATIONAL_HPP
#define HOCHLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hochlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when a caller hands an operation arguments outside its domain.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal contract is violated (a result that must hold
/// mathematically does not); always indicates a bug or a bad input model.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when a requested computation exceeds a configured budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int sign_of_parity(long long e) { return (e % 2 == 0) ? 1 : -1; }

/// a / b in lowest terms.
inline Rational ratio(const Integer& a, const Integer& b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace hochlab

#endif
