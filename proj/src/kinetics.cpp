#include "surfhps/kinetics.hpp"

namespace surfhps {

void turing_rhs(const TuringParams& p, const VecX& u1, const VecX& u2, VecX& f1, VecX& f2) {
    require(u1.size() == u2.size(), ErrorCode::InvalidArgument,
            "turing_rhs: species vectors must have equal length");
    const auto& a = u1.array();
    const auto& b = u2.array();
    f1 = (p.alpha * a * (1.0 - p.r1 * b.square()) + b * (1.0 - p.r2 * a)).matrix();
    f2 = (p.beta * b + p.alpha * p.r1 * a * b.square() + a * (p.gamma + p.r2 * b)).matrix();
}

void coupled_rhs(const CoupledParams& p, const std::vector<VecX>& species,
                 std::vector<VecX>& rhs) {
    require(species.size() == 4, ErrorCode::InvalidArgument,
            "coupled_rhs expects four species (u1, u2, v1, v2)");
    rhs.resize(4);
    const VecX& u1 = species[0];
    const VecX& u2 = species[1];
    const VecX& v1 = species[2];
    const VecX& v2 = species[3];

    // The driving pair evolves by its own standalone kinetics.
    turing_rhs(p.u, u1, u2, rhs[0], rhs[1]);
    // The driven pair gets its own kinetics plus the coupling terms.
    turing_rhs(p.v, v1, v2, rhs[2], rhs[3]);
    rhs[2] += (p.q1 * u1.array() + p.q2 * u1.array() * v2.array() +
               p.q3 * u1.array() * v2.array().square())
                  .matrix();
    rhs[3] -= (p.q2 * u2.array() * v1.array() + p.q3 * u2.array().square() * v1.array()).matrix();
}

std::vector<double> turing_diffusions(const TuringParams& p) {
    return {p.delta_u1, p.delta_u2};
}

std::vector<double> coupled_diffusions(const CoupledParams& p) {
    return {p.u.delta_u1, p.u.delta_u2, p.v.delta_u1, p.v.delta_u2};
}

}  // namespace surfhps
