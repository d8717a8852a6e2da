#pragma once

// Shared algebra fixtures for the test suites. Handles are built with enough
// confluence headroom for dimension counts to weight 6 and the witness
// searches used in the tests.

#include "ncfilt/zoo.hpp"

namespace fixtures {

using namespace ncfilt;

inline AlphabetPtr staging(const std::vector<std::string>& names) {
    std::vector<GeneratorInfo> gens;
    for (const auto& n : names) gens.push_back({n, 1, 0, 0});
    return std::make_shared<Alphabet>(Alphabet::with_default_precedence(std::move(gens)));
}

// Weyl algebra via the Ore construction: [y, x] = 1, rule yx -> xy + 1.
inline Presentation weyl_presentation() {
    auto st = staging({"x", "y"});
    std::vector<std::vector<Poly>> delta(2);
    delta[1].push_back(Poly::constant(st, Scalar::integer(1)));
    return iterated_ore({"x", "y"}, delta, ScalarDomain::rational());
}

inline AlgebraHandle weyl_handle(unsigned bound = 12) {
    return AlgebraHandle::build(weyl_presentation(), bound);
}

// Commutative polynomial plane k[x,y] as a quantum plane at q = 1.
inline Presentation kxy_presentation() {
    return gl2_family(Gl2Kind::QuantumPlane, Scalar::integer(1));
}

inline AlgebraHandle kxy_handle(unsigned bound = 12) {
    return AlgebraHandle::build(kxy_presentation(), bound);
}

inline Presentation quantum_plane_z3() {
    return gl2_family(Gl2Kind::QuantumPlane, mk_root_of_unity(3));
}

inline Presentation quantum_weyl_z3() {
    return gl2_family(Gl2Kind::QuantumWeyl, mk_root_of_unity(3));
}

// U(pl(1|1)): even x1 (central), x2; odd y1, y2 with
// [x2,y1] = y1, [x2,y2] = -y2, [y1,y2] = x1.
inline Presentation pl11_presentation(ScalarDomain dom = ScalarDomain::rational()) {
    const std::size_t n = 4;
    Scalar zero = Scalar::zero(dom), one = Scalar::one(dom);
    std::vector<std::vector<std::vector<Scalar>>> c(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, zero)));
    c[1][2][2] = one;  // [x2, y1] = y1
    c[2][1][2] = -one; // [y1, x2] = -y1
    c[1][3][3] = -one; // [x2, y2] = -y2
    c[3][1][3] = one;  // [y2, x2] = y2
    c[2][3][0] = one;  // [y1, y2] = x1
    c[3][2][0] = one;  // [y2, y1] = x1  (odd-odd bracket is symmetric)
    return enveloping_super({"x1", "x2", "y1", "y2"}, {0, 0, 1, 1}, c, dom);
}

inline Presentation qweyl1(const Scalar& gamma) {
    const ScalarDomain dom = gamma.domain();
    return quantized_weyl(1, {{Scalar::one(dom)}}, {gamma}, dom);
}

// n = 2 instance over Q(zeta_3) with q_12 = gamma_1 = gamma_2 = zeta_3.
inline Presentation qweyl2_z3() {
    ScalarDomain dom = ScalarDomain::cyclotomic(3);
    Scalar one = Scalar::one(dom), z = mk_root_of_unity(3);
    return quantized_weyl(2, {{one, z}, {z.inverse(), one}}, {z, z}, dom);
}

// down-up with roots (zeta_3, zeta_3^2): alpha = -1, beta = -1.
inline Presentation downup_z3(const Scalar& gamma_val) {
    Scalar r = mk_root_of_unity(3), s = r.pow(2);
    return down_up((r + s), -(r * s), gamma_val, std::make_pair(r, s));
}

inline Presentation sympl_m2() {
    return symplectic_reflection_rank1(2, Scalar::integer(0), {Scalar::integer(1)});
}

} // namespace fixtures
