#include "surfhps/sph_harm.hpp"

#include <cmath>

namespace surfhps {

// Normalized associated Legendre recurrence in terms of
//   S_lm(th) = N_l^m P_l^m(cos th),  N_l^m = sqrt((2l+1)/(4pi) (l-m)!/(l+m)!),
// evaluated without forming factorials.  The sin(th)^m factor in S_mm is kept
// explicit; it underflows gracefully near the poles where the m != 0
// harmonics vanish anyway.
double real_spherical_harmonic(int l, int m, const Vec3& x) {
    require(l >= 0, ErrorCode::InvalidArgument, "spherical harmonic degree must be >= 0");
    const int am = std::abs(m);
    require(am <= l, ErrorCode::InvalidArgument, "spherical harmonic order |m| must be <= l");

    const double r = x.norm();
    require(r > 0.0, ErrorCode::InvalidArgument, "cannot evaluate spherical harmonic at the origin");
    const double ct = x[2] / r;                       // cos(theta)
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double rho = std::hypot(x[0], x[1]);        // r*sin(theta)
    // cos(phi), sin(phi); at the poles phi is arbitrary but st = 0 kills m != 0.
    const double cp = (rho > 0.0) ? x[0] / rho : 1.0;
    const double sp = (rho > 0.0) ? x[1] / rho : 0.0;

    // Diagonal start: S_00 = sqrt(1/4pi); S_mm = -of-convention-free positive
    // prefactor sqrt((2m+1)/(2m)) * sin(th) * S_(m-1)(m-1) (no Condon-Shortley).
    double smm = std::sqrt(1.0 / (4.0 * M_PI));
    for (int k = 1; k <= am; ++k)
        smm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;

    double plm = smm;  // S_(am,am)
    if (l > am) {
        double pl1 = smm;                                  // S_(l-1,m)
        double pl = std::sqrt(2.0 * am + 3.0) * ct * smm;  // S_(am+1,m)
        for (int ll = am + 2; ll <= l; ++ll) {
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
            const double b = std::sqrt((double(ll - 1) * (ll - 1) - double(am) * am) /
                                       (4.0 * double(ll - 1) * (ll - 1) - 1.0));
            const double next = a * (ct * pl - b * pl1);
            pl1 = pl;
            pl = next;
        }
        plm = pl;
    }

    if (m == 0) return plm;

    // Chebyshev-style recurrence for cos(m phi) / sin(m phi).
    double cm = cp, sm = sp;
    for (int k = 2; k <= am; ++k) {
        const double c2 = cm * cp - sm * sp;
        const double s2 = sm * cp + cm * sp;
        cm = c2;
        sm = s2;
    }
    const double azimuth = (m > 0) ? cm : sm;
    return std::sqrt(2.0) * plm * azimuth;
}

std::function<double(const Vec3&)> sph_harm_fn(int l, int m) {
    return [l, m](const Vec3& x) { return real_spherical_harmonic(l, m, x); };
}

}  // namespace surfhps
