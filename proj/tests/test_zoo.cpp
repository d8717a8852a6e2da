#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures_common.hpp"

using namespace ncfilt;
using namespace fixtures;

namespace {

Poly word_poly(const AlgebraHandle& h, std::initializer_list<const char*> names) {
    Word w;
    for (const char* n : names) {
        int i = h.alphabet()->index_of(n);
        REQUIRE(i >= 0);
        w.push_back(static_cast<GenIndex>(i));
    }
    return Poly::monomial(h.alphabet(), w, Scalar::one(h.domain()));
}

} // namespace

TEST_CASE("U(pl(1|1)) reproduces the published relations") {
    AlgebraHandle h = AlgebraHandle::build(pl11_presentation(), 12);
    REQUIRE(h.confluent());

    Poly x1 = word_poly(h, {"x1"}), x2 = word_poly(h, {"x2"});
    Poly y1 = word_poly(h, {"y1"}), y2 = word_poly(h, {"y2"});

    // y1 y2 + y2 y1 = x1
    CHECK(h.normal_form(free_mul(y1, y2) + free_mul(y2, y1) - x1).is_zero());
    // x2 y1 - y1 x2 = y1
    CHECK(h.normal_form(free_mul(x2, y1) - free_mul(y1, x2) - y1).is_zero());
    // x2 y2 - y2 x2 = -y2
    CHECK(h.normal_form(free_mul(x2, y2) - free_mul(y2, x2) + y2).is_zero());
    // y1^2 = y2^2 = 0
    CHECK(h.normal_form(free_mul(y1, y1)).is_zero());
    CHECK(h.normal_form(free_mul(y2, y2)).is_zero());
    // x1 is central
    for (GenIndex g = 0; g < h.alphabet()->size(); ++g) {
        Poly xg = h.gen(g);
        CHECK(h.normal_form(free_mul(x1, xg) - free_mul(xg, x1)).is_zero());
    }
    // PBW dimension of F_1: {1, x1, x2, y1, y2}
    CHECK(h.dim_upto(1) == 5);
}

TEST_CASE("abelian even Lie algebra gives commuting generators") {
    ScalarDomain dom = ScalarDomain::rational();
    Scalar zero = Scalar::zero(dom);
    std::vector<std::vector<std::vector<Scalar>>> c(
        2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2, zero)));
    Presentation p = enveloping_super({"a", "b"}, {0, 0}, c, dom);
    REQUIRE(p.relations().size() == 1);
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    CHECK(h.dim_upto(2) == 6); // commutative polynomial counts
}

TEST_CASE("structure constants violating the grading are rejected") {
    ScalarDomain dom = ScalarDomain::rational();
    Scalar zero = Scalar::zero(dom), one = Scalar::one(dom);
    std::vector<std::vector<std::vector<Scalar>>> c(
        3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, zero)));
    c[0][1][2] = one;  // [even, even] hitting an odd generator
    c[1][0][2] = -one;
    CHECK_THROWS_AS(enveloping_super({"a", "b", "z"}, {0, 0, 1}, c, dom), AxiomViolation);
}

TEST_CASE("random perturbations of pl(1|1) are rejected or genuinely valid") {
    ScalarDomain dom = ScalarDomain::rational();
    const std::size_t n = 4;
    std::vector<unsigned> par{0, 0, 1, 1};
    std::mt19937_64 rng(0x5EED5);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> bump(1, 3);

    // independent brute-force axiom checker, written directly from the axioms
    auto brute_valid = [&](const std::vector<std::vector<std::vector<Scalar>>>& c) {
        auto sgn = [&](std::size_t a, std::size_t b) { return (par[a] & par[b]) ? -1 : 1; };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t p = 0; p < n; ++p) {
                    if (!c[i][j][p].is_zero() && par[p] != ((par[i] + par[j]) & 1u))
                        return false;
                    Scalar rhs = -c[j][i][p];
                    if (sgn(i, j) < 0) rhs = -rhs;
                    if (!(c[i][j][p] == rhs)) return false;
                }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t q = 0; q < n; ++q) {
                        Scalar acc = Scalar::zero(dom);
                        for (std::size_t p = 0; p < n; ++p) {
                            Scalar t1 = c[j][k][p] * c[i][p][q];
                            if (sgn(i, k) < 0) t1 = -t1;
                            Scalar t2 = c[k][i][p] * c[j][p][q];
                            if (sgn(j, i) < 0) t2 = -t2;
                            Scalar t3 = c[i][j][p] * c[k][p][q];
                            if (sgn(k, j) < 0) t3 = -t3;
                            acc = acc + t1 + t2 + t3;
                        }
                        if (!acc.is_zero()) return false;
                    }
        return true;
    };

    Scalar zero = Scalar::zero(dom), one = Scalar::one(dom);
    std::vector<std::vector<std::vector<Scalar>>> base(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, zero)));
    base[1][2][2] = one;
    base[2][1][2] = -one;
    base[1][3][3] = -one;
    base[3][1][3] = one;
    base[2][3][0] = one;
    base[3][2][0] = one;
    REQUIRE(brute_valid(base));

    int rejected = 0, accepted = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto c = base;
        c[idx(rng)][idx(rng)][idx(rng)] =
            c[idx(rng)][idx(rng)][idx(rng)] + Scalar::integer(bump(rng));
        bool threw = false;
        try {
            enveloping_super({"x1", "x2", "y1", "y2"}, par, c, dom);
        } catch (const AxiomViolation&) {
            threw = true;
        }
        if (threw) {
            ++rejected;
        } else {
            ++accepted;
            CHECK(brute_valid(c));
        }
    }
    CHECK(rejected + accepted == 120);
    CHECK(rejected > 0);
}

TEST_CASE("iterated Ore: constant derivation gives the Weyl algebra") {
    Presentation p = weyl_presentation();
    CHECK(p.alphabet()->gen(1).weight == 1); // floor case
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.system().rules().size() == 1);
    CHECK(h.system().rules()[0].lhs == Word{1, 0});
    // rule yx -> xy + 1
    Poly expect(p.alphabet(), p.domain());
    expect.add_term({0, 1}, Scalar::integer(1));
    expect.add_term({}, Scalar::integer(1));
    CHECK(h.system().rules()[0].rhs == expect);
    for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == (n + 1) * (n + 2) / 2);
}

TEST_CASE("iterated Ore: delta(x) = x gives U of the solvable Lie algebra") {
    auto st = staging({"x", "y"});
    std::vector<std::vector<Poly>> delta(2);
    delta[1].push_back(Poly::generator(st, 0, ScalarDomain::rational()));
    Presentation p = iterated_ore({"x", "y"}, delta, ScalarDomain::rational());
    CHECK(p.alphabet()->gen(1).weight == 1);
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    // yx -> xy + x
    Poly expect(p.alphabet(), p.domain());
    expect.add_term({0, 1}, Scalar::integer(1));
    expect.add_term({0}, Scalar::integer(1));
    CHECK(h.system().rules()[0].rhs == expect);
}

TEST_CASE("iterated Ore: delta(x) = x^2 raises the weight of y") {
    auto st = staging({"x", "y"});
    std::vector<std::vector<Poly>> delta(2);
    delta[1].push_back(Poly::monomial(st, {0, 0}, Scalar::integer(1)));
    Presentation p = iterated_ore({"x", "y"}, delta, ScalarDomain::rational());
    CHECK(p.alphabet()->gen(1).weight == 2);
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    CHECK(h.confluent());
}

TEST_CASE("iterated Ore rejects maps that fail the Leibniz compatibility") {
    auto st = staging({"x", "y", "z"});
    ScalarDomain dom = ScalarDomain::rational();
    std::vector<std::vector<Poly>> delta(3);
    delta[1].push_back(Poly::constant(st, Scalar::integer(1))); // d_y(x) = 1
    delta[2].push_back(Poly::generator(st, 0, dom));            // d_z(x) = x
    delta[2].push_back(Poly::zero(st, dom));                    // d_z(y) = 0
    CHECK_THROWS_AS(iterated_ore({"x", "y", "z"}, delta, dom), NotADerivation);
}

TEST_CASE("quantized Weyl n=1 with gamma = 1 is the Weyl algebra") {
    Presentation p = qweyl1(Scalar::integer(1));
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == (n + 1) * (n + 2) / 2);
    // xy = 1 + yx holds
    Poly x = word_poly(h, {"x1"}), y = word_poly(h, {"y1"});
    Poly lhs = free_mul(x, y);
    Poly rhs = h.constant(Scalar::integer(1)) + free_mul(y, x);
    CHECK(h.normal_form(lhs - rhs).is_zero());
}

TEST_CASE("quantized Weyl parameter validation") {
    ScalarDomain dom = ScalarDomain::cyclotomic(3);
    Scalar one = Scalar::one(dom), z = mk_root_of_unity(3);
    // q_{12} q_{21} != 1
    CHECK_THROWS_AS(quantized_weyl(2, {{one, z}, {z, one}}, {one, one}, dom),
                    InvalidQMatrix);
    CHECK_THROWS_AS(quantized_weyl(2, {{z, z}, {z.inverse(), z}}, {one, one}, dom),
                    InvalidQMatrix);
    CHECK_THROWS_AS(
        quantized_weyl(2, {{one, z}, {z.inverse(), one}}, {one, Scalar::zero(dom)}, dom),
        ZeroParameter);
}

TEST_CASE("quantized Weyl n=2 weights follow deg(x_i) = deg(y_i) = i") {
    Presentation p = qweyl2_z3();
    CHECK(p.alphabet()->gen(0).weight == 1);
    CHECK(p.alphabet()->gen(2).weight == 2);
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    // PBW monomials x1^a y1^b x2^c y2^d: count a+b+2c+2d <= n
    auto pbw = [](unsigned n) {
        std::size_t cnt = 0;
        for (unsigned a = 0; a <= n; ++a)
            for (unsigned b = 0; a + b <= n; ++b)
                for (unsigned cc = 0; a + b + 2 * cc <= n; ++cc)
                    for (unsigned d = 0; a + b + 2 * cc + 2 * d <= n; ++d) ++cnt;
        return cnt;
    };
    for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == pbw(n));
}

TEST_CASE("down-up with (alpha,beta,gamma) = (0,1,0)") {
    Presentation p = down_up(Scalar::integer(0), Scalar::integer(1), Scalar::integer(0));
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    Poly d = word_poly(h, {"d"}), u = word_poly(h, {"u"});
    // d^2 u = u d^2 and d u^2 = u^2 d
    CHECK(h.normal_form(free_mul(free_mul(d, d), u) - free_mul(u, free_mul(d, d)))
              .is_zero());
    CHECK(h.normal_form(free_mul(d, free_mul(u, u)) - free_mul(free_mul(u, u), d))
              .is_zero());
}

TEST_CASE("down-up rejects beta = 0 and inconsistent roots") {
    CHECK_THROWS_AS(down_up(Scalar::integer(1), Scalar::integer(0), Scalar::integer(0)),
                    BetaZero);
    CHECK_THROWS_AS(
        down_up(Scalar::integer(1), Scalar::integer(1), Scalar::integer(0),
                std::make_pair(Scalar::integer(1), Scalar::integer(1))),
        RootsInconsistent);
}

TEST_CASE("down-up accepts the cube-root pair (zeta_3, zeta_3^2)") {
    Presentation p = downup_z3(Scalar::zero(ScalarDomain::cyclotomic(3)));
    REQUIRE(p.provenance());
    CHECK(p.provenance()->params.at("r") == "zeta(3)");
    ScalarDomain dom = ScalarDomain::cyclotomic(3);
    // alpha = zeta_3 + zeta_3^2 = -1, beta = -1
    Scalar alpha = mk_root_of_unity(3) + mk_root_of_unity(3).pow(2);
    CHECK(alpha == Scalar::integer(-1).embed_in(dom));
    AlgebraHandle h = AlgebraHandle::build(p, 14);
    CHECK(h.confluent());
}

TEST_CASE("gl-dim-2 family relations") {
    ScalarDomain q3 = ScalarDomain::cyclotomic(3);
    Scalar z = mk_root_of_unity(3);

    Presentation qp = gl2_family(Gl2Kind::QuantumPlane, z);
    REQUIRE(qp.relations().size() == 1);
    {
        Poly expect(qp.alphabet(), q3);
        expect.add_term({0, 1}, Scalar::one(q3));
        expect.add_term({1, 0}, -z);
        CHECK(qp.relations()[0] == expect);
    }

    Presentation j = gl2_family(Gl2Kind::Jordan);
    {
        Poly expect(j.alphabet(), j.domain());
        expect.add_term({1, 0}, Scalar::integer(1));
        expect.add_term({0, 1}, Scalar::integer(-1));
        expect.add_term({1, 1}, Scalar::integer(1));
        CHECK(j.relations()[0] == expect);
    }

    Presentation dj = gl2_family(Gl2Kind::DeformedJordan);
    {
        Poly expect(dj.alphabet(), dj.domain());
        expect.add_term({1, 0}, Scalar::integer(1));
        expect.add_term({0, 1}, Scalar::integer(-1));
        expect.add_term({1, 1}, Scalar::integer(1));
        expect.add_term({}, Scalar::integer(1));
        CHECK(dj.relations()[0] == expect);
    }

    CHECK_THROWS_AS(gl2_family(Gl2Kind::QuantumPlane), ZeroParameter);
    CHECK_THROWS_AS(gl2_family(Gl2Kind::QuantumWeyl, Scalar::integer(0)), ZeroParameter);
}

TEST_CASE("all zoo constructors pass the PBW confluence gate at bound 6") {
    std::vector<Presentation> fixtures_list;
    fixtures_list.push_back(weyl_presentation());
    fixtures_list.push_back(qweyl1(Scalar::integer(1)));
    fixtures_list.push_back(quantum_plane_z3());
    fixtures_list.push_back(gl2_family(Gl2Kind::Jordan));
    fixtures_list.push_back(quantum_weyl_z3());
    fixtures_list.push_back(gl2_family(Gl2Kind::DeformedJordan));
    fixtures_list.push_back(pl11_presentation());
    fixtures_list.push_back(qweyl2_z3());
    fixtures_list.push_back(downup_z3(Scalar::zero(ScalarDomain::cyclotomic(3))));
    fixtures_list.push_back(sympl_m2());
    for (const auto& p : fixtures_list) {
        RewriteSystem rs = orient(p.relations(), p.alphabet(), p.domain());
        ConfluenceReport r = check_confluence(rs, 6);
        INFO((p.provenance() ? p.provenance()->family : std::string("?")));
        CHECK(r.state == ConfluenceState::Confluent);
    }
}

TEST_CASE("symplectic reflection rank 1, m = 2") {
    Presentation p = sympl_m2();
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    // normal words of weight <= 1: {1, g, x, y, xg, yg}
    CHECK(h.dim_upto(1) == 6);
    Poly x = word_poly(h, {"x"}), y = word_poly(h, {"y"}), g = word_poly(h, {"g"});
    CHECK(h.normal_form(free_mul(g, g) - h.constant(Scalar::integer(1))).is_zero());
    CHECK(h.normal_form(free_mul(g, x) + free_mul(x, g)).is_zero());
    CHECK(h.normal_form(free_mul(x, y) - free_mul(y, x) - g).is_zero());
}

TEST_CASE("symplectic reflection rank 1, m = 3 over Q(zeta_3)") {
    ScalarDomain q3 = ScalarDomain::cyclotomic(3);
    Presentation p = symplectic_reflection_rank1(
        3, Scalar::one(q3), {Scalar::one(q3), mk_root_of_unity(3)});
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    // normal words x^a y^b g^i with i < 3
    CHECK(h.dim_upto(0) == 3);
    CHECK(h.dim_upto(1) == 9);
    CHECK(h.dim_upto(2) == 18);
}

TEST_CASE("iterated Ore tower of length 3: U(Heisenberg)") {
    auto st = staging({"x", "y", "z"});
    ScalarDomain dom = ScalarDomain::rational();
    std::vector<std::vector<Poly>> delta(3);
    delta[1].push_back(Poly::zero(st, dom));          // d_y(x) = 0
    delta[2].push_back(Poly::zero(st, dom));          // d_z(x) = 0
    delta[2].push_back(Poly::generator(st, 0, dom));  // d_z(y) = x
    Presentation p = iterated_ore({"x", "y", "z"}, delta, dom);
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    for (unsigned n = 0; n <= 6; ++n)
        CHECK(h.dim_upto(n) == (n + 1) * (n + 2) * (n + 3) / 6);
}

TEST_CASE("symplectic reflection rank 1, m = 1 collapses g to the identity") {
    Presentation p = symplectic_reflection_rank1(1, Scalar::integer(1), {});
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    REQUIRE(h.confluent());
    // Weyl dimensions: the redundant g reduces to 1
    for (unsigned n = 0; n <= 5; ++n) CHECK(h.dim_upto(n) == (n + 1) * (n + 2) / 2);
}

TEST_CASE("tensor product: k[x] (x) k[y] = k[x,y]") {
    auto ax = std::make_shared<Alphabet>(Alphabet::with_default_precedence({{"x", 1, 0, 0}}));
    auto ay = std::make_shared<Alphabet>(Alphabet::with_default_precedence({{"y", 1, 0, 0}}));
    Presentation px(ax, ScalarDomain::rational(), {});
    Presentation py(ay, ScalarDomain::rational(), {});
    Presentation t = tensor_product(px, py);
    AlgebraHandle h = AlgebraHandle::build(t, 12);
    for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == (n + 1) * (n + 2) / 2);
}

TEST_CASE("tensor product: Weyl (x) Weyl is the second Weyl algebra") {
    Presentation t = tensor_product(weyl_presentation(), weyl_presentation());
    CHECK(t.alphabet()->size() == 4);
    AlgebraHandle h = AlgebraHandle::build(t, 8);
    REQUIRE(h.confluent());
    CHECK(h.dim_upto(2) == 15); // C(2+4, 4)
}

TEST_CASE("tensor product: quantum plane (x) k[z] dimensions") {
    auto az = std::make_shared<Alphabet>(Alphabet::with_default_precedence({{"z", 1, 0, 0}}));
    Presentation pz(az, ScalarDomain::cyclotomic(3), {});
    Presentation t = tensor_product(quantum_plane_z3(), pz);
    AlgebraHandle h = AlgebraHandle::build(t, 12);
    CHECK(h.dim_upto(2) - h.dim_upto(1) == 6); // {xx, xy, yy, xz, yz, zz}
}

TEST_CASE("tensor product rejects mixed domains and odd generators") {
    auto az = std::make_shared<Alphabet>(Alphabet::with_default_precedence({{"z", 1, 0, 0}}));
    Presentation pz(az, ScalarDomain::rational(), {});
    CHECK_THROWS_AS(tensor_product(quantum_plane_z3(), pz), DomainMismatch);
    CHECK_THROWS_AS(tensor_product(pl11_presentation(), pz), SuperTensorUnsupported);
}

TEST_CASE("associated graded of down-up drops gamma") {
    Scalar a = Scalar::integer(2), b = Scalar::integer(-1), g = Scalar::integer(1);
    AlgebraHandle h = AlgebraHandle::build(down_up(a, b, g), 12);
    Presentation gr = associated_graded(h);
    CHECK(gr == down_up(a, b, Scalar::integer(0)));
    CHECK_FALSE(gr == down_up(a, b, g));
}

TEST_CASE("associated graded of the quantized Weyl algebra is a quantum plane") {
    Presentation p = qweyl1(mk_root_of_unity(3));
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    Presentation gr = associated_graded(h);
    REQUIRE(gr.relations().size() == 1);
    for (const auto& [w, c] : gr.relations()[0].terms()) CHECK_FALSE(w.empty());
    // xy - zeta_3 yx
    Poly expect(gr.alphabet(), gr.domain());
    expect.add_term({0, 1}, Scalar::one(gr.domain()));
    expect.add_term({1, 0}, -mk_root_of_unity(3));
    CHECK(gr.relations()[0] == expect);
}

TEST_CASE("associated graded of the Weyl algebra is the polynomial plane") {
    AlgebraHandle h = weyl_handle();
    Presentation gr = associated_graded(h);
    REQUIRE(gr.relations().size() == 1);
    Poly expect(gr.alphabet(), gr.domain());
    expect.add_term({1, 0}, Scalar::integer(1));
    expect.add_term({0, 1}, Scalar::integer(-1));
    CHECK(gr.relations()[0] == expect);
}

TEST_CASE("associated graded is idempotent and preserves dimensions") {
    std::vector<Presentation> ps;
    ps.push_back(weyl_presentation());
    ps.push_back(qweyl1(mk_root_of_unity(3)));
    ps.push_back(downup_z3(Scalar::one(ScalarDomain::cyclotomic(3))));
    ps.push_back(pl11_presentation());
    ps.push_back(sympl_m2());
    ps.push_back(gl2_family(Gl2Kind::DeformedJordan));
    for (const auto& p : ps) {
        INFO((p.provenance() ? p.provenance()->family : std::string("?")));
        AlgebraHandle h = AlgebraHandle::build(p, 12);
        Presentation gr = associated_graded(h);
        AlgebraHandle gh = AlgebraHandle::build(gr, 12);
        for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == gh.dim_upto(n));
        Presentation grgr = associated_graded(gh);
        CHECK(gr == grgr);
    }
}

TEST_CASE("order_and_reduce on the Weyl algebra at p = 2") {
    AlgebraHandle h = weyl_handle();
    ReducedAlgebra red = order_and_reduce(h, 2);
    CHECK(red.order.generators.empty());
    CHECK(red.handle.confluent());
    for (unsigned n = 0; n <= 6; ++n) CHECK(red.handle.dim_upto(n) == h.dim_upto(n));
}

TEST_CASE("order_and_reduce maps zeta_3 to 2 over F_7") {
    AlgebraHandle h = AlgebraHandle::build(quantum_plane_z3(), 12);
    ReducedAlgebra red = order_and_reduce(h, 7);
    REQUIRE(red.order.generators.size() == 1);
    CHECK(red.order.generators[0].name == "zeta(3)");
    REQUIRE(red.handle.presentation().relations().size() == 1);
    Poly expect(h.alphabet(), ScalarDomain::prime_field(7));
    expect.add_term({0, 1}, Scalar::fp(7, 1));
    expect.add_term({1, 0}, Scalar::fp(7, cpp_int(-2)));
    CHECK(red.handle.presentation().relations()[0] == expect);
    CHECK_THROWS_AS(order_and_reduce(h, 3), NoRootOfUnity);
}

TEST_CASE("order generators of the quantized Weyl algebra are {zeta_3}") {
    Presentation p = qweyl1(mk_root_of_unity(3));
    OrderSpec spec = order_generators(p.coefficient_set());
    REQUIRE(spec.generators.size() == 1);
    CHECK(spec.generators[0].name == "zeta(3)");
    CHECK(spec.verify(p.domain()));
    // with integral gamma the coefficient subring is just Z
    OrderSpec trivial = order_generators(qweyl1(Scalar::integer(2)).coefficient_set());
    CHECK(trivial.generators.empty());
}

TEST_CASE("central witnesses in the Weyl algebra: x^p and y^p") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        AlgebraHandle h = weyl_handle(static_cast<unsigned>(2 * p));
        ReducedAlgebra red = order_and_reduce(h, p);
        for (GenIndex g : {GenIndex(0), GenIndex(1)}) {
            auto w = central_witness(red.handle, g, 1);
            REQUIRE(w.has_value());
            CHECK(w->ansatz == WitnessAnsatz::PPower);
            REQUIRE(w->terms.size() == 1);
            CHECK(w->terms[0].first == p);
            CHECK(verify_central_witness(red.handle, *w));
            // oracle: direct commutator expansion without the solver
            Poly z = red.handle.normal_form(
                Poly::monomial(h.alphabet(), word_pow(g, static_cast<unsigned>(p)),
                               Scalar::one(red.handle.domain())));
            for (GenIndex j = 0; j < h.alphabet()->size(); ++j) {
                Poly gj = red.handle.gen(j);
                CHECK(red.handle.normal_form(free_mul(z, gj) - free_mul(gj, z)).is_zero());
            }
        }
    }
}

TEST_CASE("central witness on the commutative plane over F_2 is x^2") {
    AlgebraHandle h = kxy_handle();
    ReducedAlgebra red = order_and_reduce(h, 2);
    auto w = central_witness(red.handle, 0, 1);
    REQUIRE(w.has_value());
    CHECK(w->ansatz == WitnessAnsatz::PPower);
    REQUIRE(w->terms.size() == 1);
    CHECK(w->terms[0].first == 2);
}

TEST_CASE("central witnesses for down-up over F_7 with roots (zeta_3, zeta_3^2)") {
    Presentation p = downup_z3(Scalar::zero(ScalarDomain::cyclotomic(3)));
    AlgebraHandle h = AlgebraHandle::build(p, 14);
    ReducedAlgebra red = order_and_reduce(h, 7);
    for (GenIndex g : {GenIndex(0), GenIndex(1)}) {
        INFO("generator " << p.alphabet()->gen(g).name);
        auto w = central_witness(red.handle, g, 1);
        REQUIRE(w.has_value());
        // no p-polynomial in d or u is central here; the power search finds
        // the cube (the roots have order 3)
        CHECK(w->ansatz == WitnessAnsatz::Power);
        REQUIRE(w->terms.size() == 1);
        CHECK(w->terms[0].first == 3);
        CHECK(verify_central_witness(red.handle, *w));
    }
}

TEST_CASE("central witnesses for quantized Weyl n=2 over F_7: cubes throughout") {
    Presentation p = qweyl2_z3();
    AlgebraHandle h = AlgebraHandle::build(p, 28); // weight-2 generators at p = 7
    ReducedAlgebra red = order_and_reduce(h, 7);
    for (GenIndex g = 0; g < 4; ++g) {
        auto w = central_witness(red.handle, g, 1);
        REQUIRE(w.has_value());
        CHECK(w->ansatz == WitnessAnsatz::Power);
        REQUIRE(w->terms.size() == 1);
        CHECK(w->terms[0].first == 3); // q and gamma have order 3
        CHECK(verify_central_witness(red.handle, *w));
    }
}

TEST_CASE("congeniality report for quantized Weyl (gamma = zeta_3), primes 7 and 13") {
    Presentation p = qweyl1(mk_root_of_unity(3));
    AlgebraHandle h = AlgebraHandle::build(p, 12);
    CongenialityConditions rep = congeniality_report(h, {7, 13}, 6);
    CHECK(rep.local_finite);
    CHECK(rep.order_ok);
    REQUIRE(rep.order.generators.size() == 1);
    CHECK(rep.order.generators[0].name == "zeta(3)");
    CHECK(rep.gr_order_ok);
    CHECK(rep.growth_slope == Catch::Approx(2.0).margin(0.2));
    CHECK(rep.poly_growth_evidence);
    REQUIRE(rep.primes.size() == 2);
    for (const auto& cp : rep.primes) {
        INFO("p = " << cp.p);
        CHECK(cp.pass);
        CHECK(cp.witnesses.size() == 2);
    }
    CHECK(rep.pass);
}

TEST_CASE("congeniality report for the Weyl algebra at primes 2, 3, 5") {
    AlgebraHandle h = weyl_handle(12);
    CongenialityConditions rep = congeniality_report(h, {2, 3, 5}, 6);
    CHECK(rep.pass);
    for (const auto& cp : rep.primes)
        for (const auto& [name, w] : cp.witnesses) {
            CHECK(w.ansatz == WitnessAnsatz::PPower);
            REQUIRE(w.terms.size() == 1);
            CHECK(w.terms[0].first == cp.p);
        }
}

TEST_CASE("congeniality (5) for down-up over F_7") {
    Presentation p = downup_z3(Scalar::zero(ScalarDomain::cyclotomic(3)));
    AlgebraHandle h = AlgebraHandle::build(p, 14);
    CongenialityConditions rep = congeniality_report(h, {7}, 6);
    REQUIRE(rep.primes.size() == 1);
    CHECK(rep.primes[0].pass);
    CHECK(rep.primes[0].witnesses.size() == 2);
    CHECK(rep.local_finite);
    CHECK(rep.order_ok);
    CHECK(rep.gr_order_ok);
}

TEST_CASE("reduction refuses p = 2 in the presence of odd generators") {
    AlgebraHandle h = AlgebraHandle::build(pl11_presentation(), 8);
    CHECK_THROWS_AS(order_and_reduce(h, 2), DomainMismatch);
    ReducedAlgebra red = order_and_reduce(h, 5);
    CHECK(red.handle.confluent());
}

TEST_CASE("reduction commutes with associated graded") {
    std::vector<std::pair<Presentation, std::uint64_t>> cases;
    cases.emplace_back(weyl_presentation(), 5);
    cases.emplace_back(qweyl1(mk_root_of_unity(3)), 7);
    cases.emplace_back(downup_z3(Scalar::one(ScalarDomain::cyclotomic(3))), 7);
    cases.emplace_back(pl11_presentation(), 5);
    cases.emplace_back(sympl_m2(), 5);
    for (auto& [p, prime] : cases) {
        INFO((p.provenance() ? p.provenance()->family : "?") << " mod " << prime);
        AlgebraHandle h = AlgebraHandle::build(p, 12);
        // route 1: reduce then gr
        ReducedAlgebra red = order_and_reduce(h, prime);
        Presentation gr_of_red = associated_graded(red.handle);
        // route 2: gr then reduce
        Presentation gr = associated_graded(h);
        AlgebraHandle gh = AlgebraHandle::build(gr, 12);
        ReducedAlgebra red_of_gr = order_and_reduce(gh, prime);
        CHECK(gr_of_red == red_of_gr.handle.presentation());
    }
}

TEST_CASE("the Weyl algebra as a quotient of U(Heisenberg)") {
    // U(h) with [y,x] = z, z central, plus the extra relation z = 1
    auto a = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x", 1, 0, 0}, {"y", 1, 0, 0}, {"z", 1, 0, 0}}));
    ScalarDomain dom = ScalarDomain::rational();
    const Scalar one = Scalar::one(dom);
    std::vector<Poly> rels;
    rels.push_back(detail::make_poly(a, dom, {{{1, 0}, one}, {{0, 1}, -one}, {{2}, -one}}));
    rels.push_back(detail::make_poly(a, dom, {{{2, 0}, one}, {{0, 2}, -one}}));
    rels.push_back(detail::make_poly(a, dom, {{{2, 1}, one}, {{1, 2}, -one}}));
    rels.push_back(detail::make_poly(a, dom, {{{2}, one}, {{}, -one}}));
    AlgebraHandle h = AlgebraHandle::build(Presentation(a, dom, rels), 12);
    REQUIRE(h.confluent());
    AlgebraHandle w = weyl_handle();
    for (unsigned n = 0; n <= 6; ++n) CHECK(h.dim_upto(n) == w.dim_upto(n));
}
