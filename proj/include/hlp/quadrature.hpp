#pragma once

// Gaussian quadrature rules on [-1, 1].

#include <vector>

namespace hlp {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss–Legendre rule (Newton iteration on P_n); cached per thread.
const QuadRule& gauss_legendre(int n);

// n-point Gauss–Jacobi rule for the weight (1−x)^alpha (1+x)^beta,
// alpha, beta > −1 (Golub–Welsch eigen-decomposition); cached per thread.
const QuadRule& gauss_jacobi(int n, double alpha, double beta);

}  // namespace hlp
