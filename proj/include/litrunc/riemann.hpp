#pragma once

namespace litrunc {

// Moebius function by trial factorisation.
int mobius(unsigned r);

// R(n) = sum_r mu(r)/r li(n^(1/r)) over r <= floor(log2 n), stopping after
// `terms` nonzero-mu terms. The default 5 keeps r = 1, 2, 3, 5, 6.
double riemann_r(double n, int terms = 5);

} // namespace litrunc
