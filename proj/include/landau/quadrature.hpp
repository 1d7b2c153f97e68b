#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace landau::quad {

/// Gauss–Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule (Newton iteration on P_n). Thread-safe after first use
/// of each order.
const GaussRule &gauss_legendre(int n);

/// Composite Gauss–Legendre on [a, b] with `panels` panels of an `order`-point
/// rule. `grade_a` / `grade_b` switch on geometric panel grading (ratio 0.15)
/// towards that endpoint, for integrable endpoint singularities.
double integrate(const std::function<double(double)> &f, double a, double b, int panels,
                 int order = 10, bool grade_a = false, bool grade_b = false);

/// Integral over [a, ∞) of f, mapped by s = a + u/(1-u); the integrand must
/// decay at least like s^{-1-eps}.
double integrate_to_infinity(const std::function<double(double)> &f, double a, int panels,
                             int order = 10);

/// Vector-valued integrand over a d-dimensional box: writes `ncomp` values.
using VectorIntegrand = std::function<void(std::span<const double> z, std::span<double> out)>;

struct CubatureOptions {
    double rel_tol = 1e-8;
    int max_depth = 24;
    int order = 5; ///< Gauss points per axis on each box
};

/// Adaptive tensor-Gauss cubature by recursive bisection of every axis.
/// A box is accepted when the parent and summed-children estimates agree to
/// `rel_tol` in max-norm over components, or at `max_depth`.
void adaptive_box(const VectorIntegrand &f, std::span<const double> lo, std::span<const double> hi,
                  int ncomp, std::span<double> result, const CubatureOptions &opts = {});

/// Integral over a box that has a (possibly singular) homogeneous integrand:
/// component c is homogeneous of degree `degrees[c]` about the origin, with
/// degrees[c] + d > 0. Handles boxes containing the origin by splitting into
/// orthants and using I(B) = R(B) / (1 - 2^{-(d+p)}) on each origin-cornered
/// orthant, where R(B) is the integral over B minus its corner half-box.
void homogeneous_box(const VectorIntegrand &f, std::span<const double> degrees,
                     std::span<const double> lo, std::span<const double> hi, int ncomp,
                     std::span<double> result, const CubatureOptions &opts = {});

} // namespace landau::quad
