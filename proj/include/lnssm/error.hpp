#pragma once

#include <stdexcept>
#include <string>

namespace lnssm {

// Invalid argument outside a function's mathematical domain (x <= 0 for a
// lognormal density, negative variance, ...). Raised eagerly; the library
// never encodes domain failures as NaN or -inf sentinels.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical failure during an otherwise valid computation (overflowing
// exp arguments, degenerate particle weights, non-finite likelihoods).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files or configuration.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_domain(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

inline void require_data(bool ok, const std::string& msg) {
    if (!ok) throw data_error(msg);
}

}  // namespace lnssm
