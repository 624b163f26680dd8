#pragma once

#include <stdexcept>
#include <string>

namespace cbifree {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Size guard on lattice/diagram enumeration.
struct cap_exceeded_error : error {
    using error::error;
};

// A distribution or table lacks a required entry.
struct missing_moment_error : error {
    using error::error;
};

struct incomplete_table_error : error {
    using error::error;
};

// Möbius function requested outside a refinement interval.
struct not_comparable_error : error {
    using error::error;
};

struct degree_mismatch_error : error {
    using error::error;
};

// Free-product evaluation would leave the truncated space.
struct truncation_overflow_error : error {
    using error::error;
};

struct invariant_violation_error : error {
    using error::error;
};

struct mixed_face_group_error : error {
    using error::error;
};

struct alphabet_collision_error : error {
    using error::error;
};

struct schema_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

}  // namespace cbifree
