#pragma once

#include <array>
#include <cstddef>

namespace crofton {

// Composite 20-point Gauss-Legendre quadrature on [a, b].
template <class F>
double gauss_legendre(F&& f, double a, double b, int panels = 64) {
    // Nodes/weights for [-1, 1], positive half (symmetric).
    static constexpr std::array<double, 10> xs = {
        0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
        0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
        0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
        0.9931285991850949};
    static constexpr std::array<double, 10> ws = {
        0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
        0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
        0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
        0.0176140071391521};
    double h = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        double half = 0.5 * h;
        double acc = 0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            acc += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
        total += half * acc;
    }
    return total;
}

// Bisection root finder; f(lo) and f(hi) must have opposite signs.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-12) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace crofton
