#pragma once

#include "expsum/multfun.hpp"

namespace expsum {

// D^2(f, g; y, x) = sum_{y < p <= x} (1 - Re(f(p) conj(g(p)))) / p.
// Character-backed prime values combine through exact integer angles, so
// f = g gives literal zero terms. Terms are accumulated over primes ascending
// in fixed 2^16-aligned blocks; the serial and parallel kernels produce
// identical doubles.
double distance_squared(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y, u64 x,
                        const FactorTable& table);
double distance(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y, u64 x,
                const FactorTable& table);
double distance_squared_parallel(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y,
                                 u64 x, const FactorTable& table);

// D(f, chi(n) n^{it}; 1, x).
double distance_to_twisted_character(const MultiplicativeFunctionSpec& f, const DirichletCharacter& chi, double t,
                                     u64 x, const FactorTable& table);

// F(Q) = sum_{p <= x, p !| Q} (f(p) conj(chi(p)) p^{-it} - 1) / p.
Complex mean_value_F(const MultiplicativeFunctionSpec& f, const DirichletCharacter& chi, double t, u64 Q, u64 x,
                     const FactorTable& table);

// Logarithmic autocorrelation at shift h with phase twist alpha:
//   phased    = (1/log x) sum_{n <= x} f(n)e(n a) conj(f(n+h)e((n+h)a)) / n
//   plain     = (1/log x) sum_{n <= x} f(n) conj(f(n+h)) / n
// The phase identity gives phased = e(-h a) * plain; deviation records the
// numerical gap between the two routes.
struct LogCorrelation {
    Complex phased;
    Complex plain;
    Complex phase_factor; // e(-h alpha)
    double deviation;
};
LogCorrelation log_correlation(const MultiplicativeFunctionSpec& f, const PhaseAngle& alpha, u64 h, u64 x,
                               const FactorTable& table);

} // namespace expsum
