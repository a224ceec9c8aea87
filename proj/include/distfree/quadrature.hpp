#pragma once

#include <functional>

namespace distfree {

/// Adaptive Simpson rule on [a, b] to absolute tolerance `abs_tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10,
                        int max_depth = 48);

}  // namespace distfree
