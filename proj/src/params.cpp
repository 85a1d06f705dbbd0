#include "satsec/params.hpp"

#include <string>

#include "satsec/errors.hpp"

namespace satsec {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void RfLinkParams::validate() const {
    require(m_R >= 1 && m_E >= 1, "rf: m_R and m_E must be integers >= 1");
    require(positive_finite(Omega_R) && positive_finite(Omega_E), "rf: Omega_R and Omega_E must be > 0");
    require(L >= 2, "rf: L must be >= 2");
    require(positive_finite(N_R) && positive_finite(N_E), "rf: N_R and N_E must be > 0");
}

void FsoLinkParams::validate() const {
    require(positive_finite(a) && positive_finite(b), "fso: a and b must be > 0");
    require(positive_finite(xi), "fso: xi must be > 0");
    require(r == 1 || r == 2, "fso: r must be 1 (HD) or 2 (IM/DD)");
    require(std::isfinite(zeta) && zeta > 0.0 && zeta <= 1.0, "fso: zeta must lie in (0, 1]");
    require(std::isfinite(L_r_dB), "fso: L_r_dB must be finite");
    require(positive_finite(f_c), "fso: f_c must be > 0");
    require(positive_finite(sigma_d_sq), "fso: sigma_d_sq must be > 0");
    require(positive_finite(P_R), "fso: P_R must be > 0");
}

void GeometryParams::validate() const {
    require(positive_finite(R_S), "geometry: R_S must be > 0");
    require(std::isfinite(H_min) && H_min >= 0.0 && H_min <= R_S, "geometry: need 0 <= H_min <= R_S");
    require(std::isfinite(Psi_D) && Psi_D >= 0.0 && Psi_D < kPi / 2, "geometry: need 0 <= Psi_D < pi/2");
    require(positive_finite(R_earth), "geometry: R_earth must be > 0");
    require(std::isfinite(H_D) && H_D > R_S, "geometry: H_D must exceed R_S");
    require(positive_finite(eta1), "geometry: eta1 must be > 0");
}

void CachingParams::validate() const {
    require(M >= 1 && M <= N, "cache: need 1 <= M <= N");
    require(std::isfinite(alpha) && alpha >= 0.0, "cache: alpha must be >= 0");
}

void SystemParams::validate() const {
    require(positive_finite(P_S), "system: P_S must be > 0");
    require(positive_finite(C_th), "system: C_th must be > 0");
    require(std::isfinite(gamma_hold) && gamma_hold >= 0.0, "system: gamma_hold must be >= 0");
    require(std::isfinite(gamma_out) && gamma_out >= 0.0, "system: gamma_out must be >= 0");
    require(K >= 1, "system: K must be >= 1");
    rf.validate();
    fso.validate();
    geo.validate();
    cache.validate();
}

}  // namespace satsec
