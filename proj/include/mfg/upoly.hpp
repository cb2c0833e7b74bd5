#pragma once

#include <vector>

#include "mfg/field.hpp"

namespace mfg {

/// Dense univariate polynomial over a Field, coefficients from the constant
/// term upward. Normalized: no trailing zeros (the zero polynomial is empty).
using UPoly = std::vector<Scalar>;

namespace upoly {

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
/// a = q b + r with deg r < deg b.
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly mod(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& p);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic
/// Returns g = gcd(a, b) and s, t with s a + t b = g.
UPoly xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);
UPoly derivative(const UPoly& p);
bool is_squarefree(const UPoly& p);
/// (a * b) mod m and a^e mod m.
UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m);

/// Monic irreducible factors of a squarefree polynomial over QQ or GF(p).
/// Throws on extension fields or non-squarefree input.
std::vector<UPoly> factor_squarefree(const UPoly& p);
bool is_irreducible(const UPoly& p);

}  // namespace upoly
}  // namespace mfg
