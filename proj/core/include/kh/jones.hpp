#pragma once

#include "kh/diagram.hpp"
#include "kh/laurent.hpp"

namespace kh {

// Unnormalized Jones polynomial via the Kauffman bracket state sum, in the
// convention where the unknot evaluates to q + q^-1. Deliberately independent
// of the cube machinery: it enumerates the 2^n states with its own circle
// counter and serves as the cross-check oracle for the graded Euler
// characteristic.
LaurentPolynomial jones(const LinkDiagram& d);

}  // namespace kh
