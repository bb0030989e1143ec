#pragma once

#include <string_view>

#include "campanato/analytic_map.hpp"

namespace campanato {

// Parses the closed map-expression grammar
//
//   atom = mobius(c) | monomial(n) | affine(c,c) | blaschke([c,...]) |
//          blaschke([c,...], u) | testfn(c,p) | scale(c) | const(c) | poly([c,...])
//   expr = atom | compose(expr,expr) | sum(expr,expr) | diff(expr,expr) | prod(expr,expr)
//
// into an AnalyticMap node tree.  Complex literals take the forms 1.5,
// -2e-3, 0.5+0.25i, 1e-3-2i, and 0.7i; whitespace is ignored between
// tokens.  pretty() output parses back to a structurally identical tree.
//
// Throws ParseError (with the offending offset) for malformed text,
// ArityError for a known form with the wrong argument count, and lets the
// factory validation errors (e.g. a Moebius parameter outside the disk, a
// compose whose inner map is not a certified self-map) propagate unchanged.
AnalyticMap parse_symbol(std::string_view text);

}  // namespace campanato
