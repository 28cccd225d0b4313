#include "hlp/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <tuple>

#include "hlp/error.hpp"
#include "hlp/special.hpp"

namespace hlp {

namespace {

QuadRule make_legendre(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) {
                // one more derivative evaluation at the converged node
                double q0 = 1.0, q1 = x;
                for (int k = 2; k <= n; ++k) {
                    double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                dp = n * (x * q1 - q0) / (x * x - 1.0);
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

QuadRule make_jacobi(int n, double a, double b) {
    if (!(a > -1.0) || !(b > -1.0))
        throw DomainError(fmt::format("Gauss-Jacobi exponents must exceed -1 (got {}, {})", a, b));
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + ab;
        J(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            int j = k + 1;
            double sj = 2.0 * j + ab;
            double v = (j == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                                : 4.0 * j * (j + a) * (j + b) * (j + ab) / (sj * sj * (sj + 1.0) * (sj - 1.0));
            J(k, j) = J(j, k) = std::sqrt(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + lgamma_fn(a + 1.0) + lgamma_fn(b + 1.0) - lgamma_fn(ab + 2.0));
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    thread_local std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
    return it->second;
}

const QuadRule& gauss_jacobi(int n, double alpha, double beta) {
    thread_local std::map<std::tuple<int, double, double>, QuadRule> cache;
    auto key = std::make_tuple(n, alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_jacobi(n, alpha, beta)).first;
    return it->second;
}

}  // namespace hlp
