#pragma once

#include <span>

#include "expsum/errors.hpp"
#include "expsum/phase.hpp"

namespace expsum {

// Neumaier compensated accumulation, per component. After k unit-modulus
// additions the accumulated error stays below 4*k*eps in each component.
struct CompensatedAccumulator {
    double sum_re = 0.0, sum_im = 0.0;
    double comp_re = 0.0, comp_im = 0.0;
    u64 count = 0;

    void add(Complex z) {
        add_component(sum_re, comp_re, z.real());
        add_component(sum_im, comp_im, z.imag());
        ++count;
    }

    // Merging sums over disjoint ranges: add sums and compensations.
    void merge(const CompensatedAccumulator& o) {
        add_component(sum_re, comp_re, o.sum_re);
        add_component(sum_im, comp_im, o.sum_im);
        add_component(sum_re, comp_re, o.comp_re);
        add_component(sum_im, comp_im, o.comp_im);
        count += o.count;
    }

    Complex value() const { return {sum_re + comp_re, sum_im + comp_im}; }

private:
    static void add_component(double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
};

// Single-pass compensated sum; throws on a non-finite term, naming its index.
Complex stream_sum(std::span<const Complex> terms);

} // namespace expsum
