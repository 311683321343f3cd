#pragma once

#include "tropwall/lattice.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tw {

using cplx = std::complex<double>;

struct QuadratureSpec {
    double tolerance = 1e-12;
    std::size_t max_refinements = 12;
};

struct IntegralResult {
    cplx value;
    double est_error = 0;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// psi_c(zeta) = exp(pi R (zeta^{-1} c + zeta conj(c)))
cplx psi_sf(cplx c, cplx zeta, double R);

// int over R_{<0} e^{i psi} c of dz/z (z + zeta)/(z - zeta) psi_c(z), via z = -e^{s + i psi} c
IntegralResult basic_integral(cplx c, double psi, cplx zeta, double R, const QuadratureSpec& q = {});
// the same integrand over |psi| < eps at |z| = e^{log_radius} |c|
IntegralResult arc_integral(cplx c, cplx zeta, double log_radius, double eps, double R = 1, const QuadratureSpec& q = {});

// log|I| = a + rate R + power log R, least squares
struct DecayFit {
    double log_amplitude = 0;
    double rate = 0;
    double power = 0;
    double max_residual = 0;
};
DecayFit fit_decay(const std::vector<double>& R, const std::vector<double>& log_abs);

struct BesselReport {
    cplx c;
    cplx zeta;
    std::vector<double> R;
    std::vector<IntegralResult> values;
    DecayFit fit;
    // C_R = |I| 2 pi R |c| e^{2 pi R |c|}; the bound constant is their maximum
    std::vector<double> bound_ratio;
    double bound_constant = 0;
    double ratio_growth_power = 0;  // slope of log C_R against log R
    std::string csv() const;
};
BesselReport bessel_check(cplx c, cplx zeta, const std::vector<double>& R, double psi = 0, const QuadratureSpec& q = {});

struct PlemeljReport {
    Charge gp;
    Charge alpha;
    cplx zeta0;
    double R = 0;
    cplx limit_cw;   // approached from the clockwise side
    cplx limit_ccw;
    cplx numeric_jump;    // degree-one coefficient of Phi(ccw side) / Phi(cw side)
    cplx algebraic_jump;  // degree-one coefficient of (1 - sigma psi(zeta0))^{Omega <gp, alpha>}
    double discrepancy = 0;
    double est_error = 0;
    std::string csv() const;
};
// First-order jump of Phi(psi^0)_alpha across l_gp at zeta0 = -e^{log_radius} Z(gp)/|Z(gp)|.
PlemeljReport plemelj_check(const Charge& gp, const Charge& alpha, const CentralChargeConfig& config, double R,
                            double log_radius, int omega = 1, int kappa = 1, const QuadratureSpec& q = {});

// Two-vertex chain gamma -> eta with the rho kernel (1/(4 pi i)) (z' + z)/(z' - z):
// i1 with both rays at Z+, i2 with both rays moved to Z-, i3 the residue term on l-(gamma+eta);
// the exponents use Z+ throughout.
struct ResidueReport {
    cplx i1;
    cplx i2;
    cplx i3;
    double discrepancy = 0;  // |i1 - i2 - i3|
    double est_error = 0;
    std::string csv() const;
};
ResidueReport residue_check(const CentralChargeConfig& plus, const CentralChargeConfig& minus, cplx zeta, double R,
                            const QuadratureSpec& q = {});

struct OneLoopReport {
    cplx z_total;   // Z^0(gamma + eta)
    cplx zeta;
    std::vector<double> R;
    std::vector<IntegralResult> values;
    DecayFit fit;
    double expected_rate = 0;  // -2 pi |Z^0(gamma + eta)|
    double reflection_error = 0;  // max |I(conj) - conj(I)|
    std::string csv() const;
};
// The residue integral on l^0_{gamma+eta} at a critical configuration.
OneLoopReport one_loop_jump_asymptotics(const CentralChargeConfig& critical, cplx zeta, const std::vector<double>& R,
                                        const QuadratureSpec& q = {});

cplx to_complex(const ComplexQ& z);

}  // namespace tw
