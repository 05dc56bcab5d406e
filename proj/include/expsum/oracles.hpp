#pragma once

#include "expsum/multfun.hpp"

namespace expsum {
// Brute-force reference implementations for tests. Deliberately slow and
// simple: trial division, term-by-term sums, fresh powering per term. These
// must not call the sieve or streaming fast paths they are used to check.
namespace oracles {

// f(n) by trial-division factorization; no sieve, no caching.
Complex naive_eval(const MultiplicativeFunctionSpec& spec, u64 n);

// sum_{j <= n} chi(j) e(j alpha) j^{it}, term by term, compensated.
Complex direct_char_sum(const DirichletCharacter& chi, const PhaseAngle& alpha, double t, u64 n);

// P(z) = sum_{0 <= n < m} chi(n) z^n with z^n re-powered from scratch per term.
Complex naive_P(const DirichletCharacter& chi, Complex z);

} // namespace oracles
} // namespace expsum
