#include "tropwall/numeric.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace tw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// exp(e), or 0 once the real part has underflowed
cplx safe_exp(cplx e) {
    if (std::isnan(e.real()) || e.real() < -700) return 0;
    if (e.real() > 700) throw NumericalFailure("integrand overflow");
    return std::exp(e);
}

template <class F>
IntegralResult integrate_line(F f, const QuadratureSpec& q) {
    boost::math::quadrature::sinh_sinh<double> ss(q.max_refinements);
    double err = 0, l1 = 0;
    cplx v = ss.integrate(f, q.tolerance, &err, &l1);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !std::isfinite(err))
        throw NumericalFailure("quadrature did not converge");
    return {v, err};
}

// int ds (z + zeta)/(z - zeta) psi_Z(z) along z = e^{s + i theta}
IntegralResult ray_integral(double theta, cplx zeta, cplx Z, double R, const QuadratureSpec& q) {
    if (std::abs(zeta) > 0) {
        double d = std::remainder(std::arg(zeta) - theta, 2 * kPi);
        if (std::abs(d) < 1e-9) throw std::invalid_argument("zeta lies on the integration ray");
    }
    auto f = [&](double s) -> cplx {
        cplx z = std::exp(cplx(s, theta));
        if (!std::isfinite(z.real())) return 0;
        cplx w = safe_exp(kPi * R * (Z / z + z * std::conj(Z)));
        if (w == cplx(0)) return 0;
        return (z + zeta) / (z - zeta) * w;
    };
    return integrate_line(f, q);
}

double arg_minus(cplx c) { return std::arg(-c); }

cplx rho(cplx zeta, cplx zp) { return (zp + zeta) / (zp - zeta) / (4.0 * kPi * kI); }

}  // namespace

cplx to_complex(const ComplexQ& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

cplx psi_sf(cplx c, cplx zeta, double R) { return safe_exp(kPi * R * (c / zeta + zeta * std::conj(c))); }

IntegralResult basic_integral(cplx c, double psi, cplx zeta, double R, const QuadratureSpec& q) {
    if (c == cplx(0)) throw std::invalid_argument("basic_integral: c must be nonzero");
    if (R <= 0) throw std::invalid_argument("basic_integral: R must be positive");
    if (std::abs(psi) >= kPi / 2) throw std::invalid_argument("basic_integral: |psi| must be below pi/2");
    return ray_integral(arg_minus(c) + psi, zeta, c, R, q);
}

IntegralResult arc_integral(cplx c, cplx zeta, double log_radius, double eps, double R, const QuadratureSpec& q) {
    if (eps < 0 || eps >= kPi / 2) throw std::invalid_argument("arc_integral: eps out of range");
    if (eps == 0) return {0, 0};
    auto f = [&](double psi) -> cplx {
        cplx z = -std::exp(cplx(log_radius, psi)) * c;
        cplx w = safe_exp(kPi * R * (c / z + z * std::conj(c)));
        if (w == cplx(0)) return 0;
        return kI * (z + zeta) / (z - zeta) * w;
    };
    // the ray itself must stay clear of zeta
    for (double psi : {-eps, 0.0, eps}) {
        cplx z = -std::exp(cplx(log_radius, psi)) * c;
        if (std::abs(z - zeta) < 1e-12) throw std::invalid_argument("arc_integral: zeta on the arc");
    }
    boost::math::quadrature::tanh_sinh<double> ts(q.max_refinements);
    double err = 0, l1 = 0;
    cplx v = ts.integrate(f, -eps, eps, q.tolerance, &err, &l1);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalFailure("arc quadrature did not converge");
    return {v, err};
}

DecayFit fit_decay(const std::vector<double>& R, const std::vector<double>& log_abs) {
    if (R.size() != log_abs.size() || R.size() < 3) throw std::invalid_argument("fit_decay: need at least three points");
    Eigen::MatrixXd A(R.size(), 3);
    Eigen::VectorXd b(R.size());
    for (size_t i = 0; i < R.size(); ++i) {
        A(i, 0) = 1;
        A(i, 1) = R[i];
        A(i, 2) = std::log(R[i]);
        b(i) = log_abs[i];
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    DecayFit fit{x(0), x(1), x(2), (A * x - b).cwiseAbs().maxCoeff()};
    return fit;
}

namespace {

std::string rows_csv(const std::vector<double>& R, const std::vector<IntegralResult>& v) {
    std::ostringstream os;
    os.precision(12);
    os << "R,value_re,value_im,est_error\n";
    for (size_t i = 0; i < R.size(); ++i)
        os << R[i] << ',' << v[i].value.real() << ',' << v[i].value.imag() << ',' << v[i].est_error << '\n';
    return os.str();
}

}  // namespace

BesselReport bessel_check(cplx c, cplx zeta, const std::vector<double>& R, double psi, const QuadratureSpec& q) {
    BesselReport rep{c, zeta, R, {}, {}, {}, 0, 0};
    std::vector<double> la, lr, lc;
    for (double r : R) {
        auto v = basic_integral(c, psi, zeta, r, q);
        rep.values.push_back(v);
        la.push_back(std::log(std::abs(v.value)));
        double ratio = std::abs(v.value) * 2 * kPi * r * std::abs(c) * std::exp(2 * kPi * r * std::abs(c));
        rep.bound_ratio.push_back(ratio);
        rep.bound_constant = std::max(rep.bound_constant, ratio);
        lr.push_back(std::log(r));
        lc.push_back(std::log(ratio));
    }
    rep.fit = fit_decay(R, la);
    Eigen::MatrixXd A(R.size(), 2);
    Eigen::VectorXd b(R.size());
    for (size_t i = 0; i < R.size(); ++i) A(i, 0) = 1, A(i, 1) = lr[i], b(i) = lc[i];
    rep.ratio_growth_power = A.colPivHouseholderQr().solve(b)(1);
    return rep;
}

std::string BesselReport::csv() const {
    std::ostringstream os;
    os << rows_csv(R, values);
    os << "# rate," << fit.rate << ",expected," << -2 * kPi * std::abs(c) << "\n";
    os << "# prefactor_power," << fit.power << "\n";
    os << "# bound_constant," << bound_constant << ",ratio_growth_power," << ratio_growth_power << "\n";
    return os.str();
}

PlemeljReport plemelj_check(const Charge& gp, const Charge& alpha, const CentralChargeConfig& config, double R,
                            double log_radius, int omega, int kappa, const QuadratureSpec& q) {
    const double theta = 0.3;
    cplx Z = to_complex(config.Z(gp));
    cplx zeta0 = -std::exp(log_radius) * Z / std::abs(Z);  // log_radius = 0 sits at the saddle of psi
    PlemeljReport rep{gp, alpha, zeta0, R, {}, {}, {}, {}, 0, 0};
    // rotating the contour off zeta0 gives the one-sided limits
    auto cw = ray_integral(arg_minus(Z) + theta, zeta0, Z, R, q);
    auto ccw = ray_integral(arg_minus(Z) - theta, zeta0, Z, R, q);
    rep.limit_cw = cw.value / (4.0 * kPi * kI);
    rep.limit_ccw = ccw.value / (4.0 * kPi * kI);
    double p = static_cast<double>(omega) * pairing(gp, alpha, kappa);
    rep.numeric_jump = -p * (rep.limit_ccw - rep.limit_cw);
    rep.algebraic_jump = -p * psi_sf(Z, zeta0, R);
    rep.est_error = (cw.est_error + ccw.est_error) / (4 * kPi);
    double scale = std::abs(rep.algebraic_jump);
    rep.discrepancy = std::abs(rep.numeric_jump - rep.algebraic_jump) / (scale > 0 ? scale : 1);
    return rep;
}

std::string PlemeljReport::csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "gp,alpha,R,zeta0_re,zeta0_im,numeric_re,numeric_im,algebraic_re,algebraic_im,discrepancy,est_error\n";
    os << gp.str() << ',' << alpha.str() << ',' << R << ',' << zeta0.real() << ',' << zeta0.imag() << ','
       << numeric_jump.real() << ',' << numeric_jump.imag() << ',' << algebraic_jump.real() << ','
       << algebraic_jump.imag() << ',' << discrepancy << ',' << est_error << '\n';
    return os.str();
}

ResidueReport residue_check(const CentralChargeConfig& plus, const CentralChargeConfig& minus, cplx zeta, double R,
                            const QuadratureSpec& q) {
    cplx zg = to_complex(plus.z_gamma), ze = to_complex(plus.z_eta);
    double tg_plus = arg_minus(zg), te_plus = arg_minus(ze);
    double tg_minus = arg_minus(to_complex(minus.z_gamma)), te_minus = arg_minus(to_complex(minus.z_eta));
    double tsum_minus = arg_minus(to_complex(minus.z_gamma + minus.z_eta));
    QuadratureSpec inner = q;
    inner.tolerance = std::max(q.tolerance, 1e-11);
    double err = 0;
    auto chain = [&](double t_outer, double t_inner) {
        auto f = [&](double s) -> cplx {
            cplx zi = std::exp(cplx(s, t_outer));
            if (!std::isfinite(zi.real())) return 0;
            cplx w = safe_exp(kPi * R * (zg / zi + zi * std::conj(zg)));
            if (w == cplx(0)) return 0;
            auto in = ray_integral(t_inner, zi, ze, R, inner);
            err = std::max(err, in.est_error);
            return rho(zeta, zi) * w * in.value / (4.0 * kPi * kI);
        };
        return integrate_line(f, q);
    };
    auto a = chain(tg_plus, te_plus);
    auto b = chain(tg_minus, te_minus);
    auto c = ray_integral(tsum_minus, zeta, zg + ze, R, q);
    ResidueReport rep;
    rep.i1 = a.value;
    rep.i2 = b.value;
    rep.i3 = c.value / (4.0 * kPi * kI);
    rep.discrepancy = std::abs(rep.i1 - rep.i2 - rep.i3);
    rep.est_error = a.est_error + b.est_error + c.est_error + err;
    return rep;
}

std::string ResidueReport::csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "term,value_re,value_im\n";
    os << "i1," << i1.real() << ',' << i1.imag() << '\n';
    os << "i2," << i2.real() << ',' << i2.imag() << '\n';
    os << "i3," << i3.real() << ',' << i3.imag() << '\n';
    os << "# discrepancy," << discrepancy << ",est_error," << est_error << '\n';
    return os.str();
}

OneLoopReport one_loop_jump_asymptotics(const CentralChargeConfig& critical, cplx zeta, const std::vector<double>& R,
                                        const QuadratureSpec& q) {
    cplx z = to_complex(critical.z_gamma + critical.z_eta);
    OneLoopReport rep{z, zeta, R, {}, {}, -2 * kPi * std::abs(z), 0};
    std::vector<double> la;
    for (double r : R) {
        auto v = basic_integral(z, 0, zeta, r, q);
        v.value /= 4.0 * kPi * kI;
        v.est_error /= 4 * kPi;
        rep.values.push_back(v);
        la.push_back(std::log(std::abs(v.value)));
        // reflected configuration: conj(Z), conj(zeta); the 1/(4 pi i) prefactor flips sign under conjugation
        auto w = basic_integral(std::conj(z), 0, std::conj(zeta), r, q);
        cplx reflected = w.value / (-4.0 * kPi * kI);
        rep.reflection_error = std::max(rep.reflection_error, std::abs(reflected - std::conj(v.value)) / std::abs(v.value));
    }
    rep.fit = fit_decay(R, la);
    return rep;
}

std::string OneLoopReport::csv() const {
    std::ostringstream os;
    os << rows_csv(R, values);
    os << "# rate," << fit.rate << ",expected," << expected_rate << "\n";
    os << "# prefactor_power," << fit.power << "\n";
    os << "# reflection_error," << reflection_error << "\n";
    return os.str();
}

}  // namespace tw
