#pragma once

#include <memory>
#include <string>

#include "frobmu/curves.hpp"
#include "frobmu/fields.hpp"

namespace frobmu {

// "p^m" or "p^m/[c0,...,cm]" (modulus constant term first).
std::shared_ptr<const Field> parse_field_spec(const std::string& s);

// "elliptic p^m[/mod] a=[..] b=[..]" or "hyperelliptic p^m[/mod] f=[..]".
// Element coefficients are scalars for m = 1 and nested [..] lists otherwise.
// Malformed syntax throws std::invalid_argument (usage error, not domain).
CurveSpec parse_curve_spec(const std::string& s);

}  // namespace frobmu
