#pragma once

// Function literals for scenario configs.
//
// R^{2n}:  rationals (1/2, 0.25, 3e-2), i, q p (n = 1), q1..qn p1..pn, H0,
//          exp(<polynomial without constant term>), + - * / (by constants), ^k, ( ).
// T²:      rationals, i, e(k1,k2), cos(<linear form>), sin(<linear form>),
//          + - * / (by constants), ^k, ( ); linear forms are integer
//          combinations of t1, t2 such as 2*t1 - t2.

#include <map>
#include <string>

#include "starkms/exppoly.hpp"
#include "starkms/fourier.hpp"
#include "starkms/nullspace.hpp"

namespace starkms
{

using TrigPoly = std::map<Mode, GaussRational>;

ExpPolyFunction parse_exppoly(const std::string &text, std::size_t n);
// Throws precondition_error if the expression has exponential factors.
PolyFunction parse_poly(const std::string &text, std::size_t n);
TrigPoly parse_trig(const std::string &text);

FourierFunction to_fourier(const TrigPoly &f, int band);
int trig_band(const TrigPoly &f);

} // namespace starkms
