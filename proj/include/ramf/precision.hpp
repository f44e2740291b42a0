#pragma once

#include "ramf/real.hpp"

namespace ramf {

// Shared precision/truncation policy threaded through every numerical operation.
//
// series_tol governs when an infinite series may stop; quad_tol is the absolute
// tolerance handed to quadrature; y_cutoff is the height at which vertical-line
// integrals of exponentially decaying integrands are truncated. y_cutoff is sized
// so that exp(-2 pi y) * y^40 still sits below series_tol, leaving room for the
// polynomially growing factors (t^(w-1), kernel polynomials) that ride on top of
// the exponential decay in every integral this library meets.
struct PrecisionContext {
    long precision_bits;
    long q_truncation;
    Real series_tol;
    Real quad_tol;
    double y_cutoff;

    explicit PrecisionContext(long bits = 256, long q_trunc = 64)
        : precision_bits(bits),
          q_truncation(q_trunc),
          series_tol(Real::pow2(-(bits - 16), 64)),
          quad_tol(Real::pow2(-(bits - 64), 64)),
          y_cutoff(solve_cutoff(bits)) {
        if (bits < 64 || bits > (1L << 22))
            throw domain_error("PrecisionContext: precision_bits must be in [64, 2^22]");
        if (q_trunc < 4)
            throw domain_error("PrecisionContext: q_truncation must be at least 4");
    }

    // Precision used internally by kernels; results are rounded back to precision_bits.
    long working_bits() const { return precision_bits + 64; }

    // Honors RAMF_PRECISION_BITS when set; falls back to the 256-bit default.
    static PrecisionContext from_env();

private:
    static double solve_cutoff(long bits);
};

} // namespace ramf
