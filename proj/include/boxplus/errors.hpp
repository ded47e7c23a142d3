#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace boxplus {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// A combinatorial size guard was exceeded (n!-scale enumeration would blow up).
struct GuardExceeded : Error {
    using Error::Error;
};

// |A|_p = 0 at a specific order p; the order-p Cramer formula does not apply.
struct SingularAtOrderP : Error {
    using Error::Error;
};

// |A|_inf = 0; the limit Cramer formula does not apply (the order-p system may
// still be solvable, callers can fall back to the order-p oracle).
struct SingularInLimit : Error {
    using Error::Error;
};

struct DegenerateHyperplane : Error {
    using Error::Error;
};

struct InvalidCoefficients : Error {
    using Error::Error;
};

struct NegativeCoordinate : Error {
    using Error::Error;
};

struct NotDisjoint : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct CertificateFailure : Error {
    CertificateFailure(const std::string& what, std::vector<mpq_class> point)
        : Error(what), failing_point(std::move(point)) {}
    std::vector<mpq_class> failing_point;
};

}  // namespace boxplus
