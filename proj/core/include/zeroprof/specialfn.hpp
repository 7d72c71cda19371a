#pragma once

#include <complex>

#include "zeroprof/numeric.hpp"

namespace zeroprof::specialfn {

using ComplexValue = std::complex<double>;

enum class CutSide { upper, lower };

/// Principal branch W_0 on [-1/e, inf), Halley iteration to a fixed point.
double lambert_w0(double x);
/// Same at the precision of x.
BigFloat lambert_w0(const BigFloat& x);

/// Principal branch on the plane slit along (-inf, -1/e].
ComplexValue lambert_w0_complex(ComplexValue z);

/// Boundary value W_0(x +- i0) for x < -1/e.
ComplexValue lambert_w0_cut(double x, CutSide side = CutSide::upper);
/// Same boundary value given log(-x) > -1, for |x| beyond the double range.
ComplexValue lambert_w0_cut_log(double log_neg_x, CutSide side = CutSide::upper);

/// Partial sum of e^{W_0(z)} = 1 + sum_{k>=0} (-k)^k/(k+1)! z^{k+1}.
ComplexValue exp_w0_series(ComplexValue z, int terms);

/// W_0' = W/(z(1+W)), with the limit 1 at z = 0.
double lambert_w0_derivative(double x);

}  // namespace zeroprof::specialfn
