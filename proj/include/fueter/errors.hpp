#ifndef FUETER_ERRORS_HPP
#define FUETER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fueter {

/** Base class for all library errors. */
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Invalid parameter domain (e.g. k < 2, odd grid size). */
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/** Operator/field shape mismatch. */
struct shape_error : error {
    explicit shape_error(const std::string& msg) : error(msg) {}
};

/** Index outside its admissible range. */
struct range_error : error {
    explicit range_error(const std::string& msg) : error(msg) {}
};

/** Error carrying the measured size of the violated quantity. */
struct measured_error : error {
    double measured;
    measured_error(const std::string& msg, double value)
        : error(msg + " (measured " + std::to_string(value) + ")"), measured(value) {}
};

/** Right-hand side fails the compatibility condition D1 f = 0. */
struct compatibility_error : measured_error {
    using measured_error::measured_error;
};

/** Right-hand side has a component in the harmonic space. */
struct orthogonality_error : measured_error {
    using measured_error::measured_error;
};

/** Torus right-hand side has a nonzero mean mode. */
struct mean_mode_error : measured_error {
    using measured_error::measured_error;
};

/** A positivity/invertibility property guaranteed by ellipticity failed. */
struct ellipticity_error : error {
    explicit ellipticity_error(const std::string& msg) : error(msg) {}
};

/** An exactness property of the complex failed numerically. */
struct exactness_error : error {
    explicit exactness_error(const std::string& msg) : error(msg) {}
};

/** A bound that holds by theory was violated numerically. */
struct theory_violation : error {
    explicit theory_violation(const std::string& msg) : error(msg) {}
};

/** Iterative or factorization-based solver failed to converge. */
struct solver_error : error {
    explicit solver_error(const std::string& msg) : error(msg) {}
};

/** File or stream I/O failure. */
struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

} // namespace fueter

#endif // FUETER_ERRORS_HPP
