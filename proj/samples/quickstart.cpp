// Compares log-sum-exp with the quadratic smoothing at small d and prints the
// partition-sum lower bound they are measured against.

#include <cmath>
#include <iostream>

#include "maxsmooth/maxsmooth.hpp"

int main() {
    using namespace maxsmooth;
    std::cout.precision(6);
    for (std::size_t d : {2, 3, 4, 8}) {
        const auto lower = gamma(d);
        const auto lse = SmoothingKind::centered_lse(d);
        const auto quad = SmoothingKind::quadratic_paper(d);
        std::cout << "d=" << d << "  gamma=" << lower.value << "  centered-lse gap=" << gap_bound(lse)
                  << "  quadratic gap=" << gap_bound(quad) << '\n';
    }

    const Point x{1.0, 0.0, -0.5};
    const auto e = lse_value_grad(x);
    std::cout << "\nlse(1, 0, -0.5) = " << e.value << "  softmax = (";
    for (std::size_t i = 0; i < e.gradient.dim(); ++i) std::cout << (i ? ", " : "") << e.gradient[i];
    std::cout << ")\n";
}
