#pragma once

#include <functional>

namespace mima {

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

/// tanh-sinh (double-exponential) rule on (0, 1); handles integrable endpoint
/// singularities such as |log u|^p. t_max controls how deep into the endpoint
/// layers the rule reaches: 1 - u ~ exp(-(pi/2) sinh t_max).
double tanh_sinh_01(const std::function<double(double)>& f, double t_max = 6.5,
                    double h = 1.0 / 64.0);

}  // namespace mima
