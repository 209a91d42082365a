#ifndef NOVIKOV_ERRORS_HPP
#define NOVIKOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace novikov {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live over different ground rings.
struct ring_mismatch_error : error {
    using error::error;
};

/// Operation not defined over the given ring (e.g. determinant over a
/// twisted ring, rational functions over a group ring).
struct unsupported_ring_error : error {
    using error::error;
};

/// A rational function cannot be expanded as a power series because the
/// lowest denominator coefficient is not a unit.
struct expansion_error : error {
    using error::error;
};

/// A chain map required to be a degreewise split injection is not one.
struct embedding_error : error {
    using error::error;
};

/// The operator 1 + d*psi + psi*d of a would-be chain isotopy is not
/// invertible.
struct isotopy_error : error {
    using error::error;
};

/// Boundary complexes of adjacent cobordism pieces do not match.
struct glue_error : error {
    using error::error;
};

/// Cobordism pieces fed to a handle exchange have incompatible shapes.
struct shape_error : error {
    using error::error;
};

/// Malformed scenario text or element grammar; carries a position hint.
struct parse_error : error {
    using error::error;
};

/// Input data failed the chain-condition validation; the message carries
/// the full report.
struct validation_error : error {
    using error::error;
};

/// A theorem-level identity failed on valid input.  Always a bug.
struct internal_check_error : error {
    using error::error;
};

} // namespace novikov

#endif
