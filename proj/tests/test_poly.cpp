/* Copyright 2026 The tminus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <catch2/catch_amalgamated.hpp>

#include "tminus/poly.hpp"

using namespace tminus;

namespace {

// Enumerate all polynomials of degree <= max_deg (including zero).
std::vector<Pol> all_pols_up_to(const FqField& fld, int max_deg) {
    std::vector<Pol> out;
    std::int64_t total = 1;
    for (int i = 0; i <= max_deg; ++i) total *= fld.q();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t v = idx;
        std::vector<FqElem> c;
        for (int i = 0; i <= max_deg; ++i) {
            c.push_back(fld.element(v % fld.q()));
            v /= fld.q();
        }
        out.push_back(Pol::from_coeffs(fld, std::move(c)));
    }
    return out;
}

std::vector<Pol> monic_pols_of_degree(const FqField& fld, int deg) {
    std::vector<Pol> out;
    std::int64_t total = 1;
    for (int i = 0; i < deg; ++i) total *= fld.q();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t v = idx;
        std::vector<FqElem> c;
        for (int i = 0; i < deg; ++i) {
            c.push_back(fld.element(v % fld.q()));
            v /= fld.q();
        }
        c.push_back(fld.one());
        out.push_back(Pol::from_coeffs(fld, std::move(c)));
    }
    return out;
}

}  // namespace

TEST_CASE("deg^-") {
    FqField f3(3, 1);
    REQUIRE(Pol::zero(f3).deg() == kNegInfDeg);
    REQUIRE(Pol::one(f3).deg() == 0);
    REQUIRE((Pol::t_inv(f3, 3) + Pol::one(f3)).deg() == 3);
}

TEST_CASE("multiplication") {
    FqField f3(3, 1);
    FqField f2(2, 1);

    Pol a = Pol::t_inv(f3, 2) + Pol::from_coeffs(f3, {f3.from_int(2)});
    REQUIRE(a * Pol::one(f3) == a);

    // (t^-1 + 1)^2 = t^-2 + 1 over F_2
    Pol b = Pol::t_inv(f2, 1) + Pol::one(f2);
    REQUIRE(b * b == Pol::t_inv(f2, 2) + Pol::one(f2));

    REQUIRE(Pol::t_inv(f3, 1) * Pol::t_inv(f3, 2) == Pol::t_inv(f3, 3));
}

TEST_CASE("degree is additive under multiplication") {
    FqField f4(2, 2);
    Rng rng(7);
    auto random_pol = [&](int maxd) {
        std::vector<FqElem> c;
        for (int i = 0; i <= maxd; ++i) c.push_back(f4.element(static_cast<std::int64_t>(rng.below(4))));
        return Pol::from_coeffs(f4, std::move(c));
    };
    for (int trial = 0; trial < 200; ++trial) {
        Pol a = random_pol(rng.range(0, 6)), b = random_pol(rng.range(0, 6));
        if (a.is_zero() || b.is_zero()) continue;
        REQUIRE((a * b).deg() == a.deg() + b.deg());
    }
}

TEST_CASE("divmod and gcd") {
    FqField f3(3, 1);
    Pol t1 = Pol::t_inv(f3, 1);

    // gcd(a, 0) = monic scalar multiple of a
    Pol a = Pol::monomial(f3, f3.from_int(2), 2) + Pol::one(f3);
    REQUIRE(gcd(a, Pol::zero(f3)) == a.monic());

    // t^-2 + 2 = (t^-1 + 1)(t^-1 + 2) over F_3
    Pol lhs = Pol::t_inv(f3, 2) + Pol::constant(f3, f3.from_int(2));
    Pol rhs = t1 + Pol::one(f3);
    REQUIRE(gcd(lhs, rhs) == rhs);

    REQUIRE(gcd(t1, t1 + Pol::one(f3)) == Pol::one(f3));

    REQUIRE_THROWS_AS(gcd(Pol::zero(f3), Pol::zero(f3)), DomainError);
    REQUIRE_THROWS_AS(Pol::divmod(a, Pol::zero(f3)), DomainError);

    // divmod reconstruction on random pairs
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<FqElem> ca, cb;
        for (int i = 0; i <= rng.range(0, 8); ++i) ca.push_back(f3.element(rng.range(0, 2)));
        for (int i = 0; i <= rng.range(0, 5); ++i) cb.push_back(f3.element(rng.range(0, 2)));
        Pol pa = Pol::from_coeffs(f3, ca), pb = Pol::from_coeffs(f3, cb);
        if (pb.is_zero()) continue;
        auto [q, r] = Pol::divmod(pa, pb);
        REQUIRE(q * pb + r == pa);
        if (!r.is_zero()) REQUIRE(r.deg() < pb.deg());
    }
}

TEST_CASE("substitute_affine examples") {
    FqField f3(3, 1);
    Pol f = Pol::t_inv(f3, 2) + Pol::monomial(f3, f3.from_int(2), 1);

    REQUIRE(substitute_affine(f, FieldAut::identity(f3)) == f);

    // over F_3 with (id, 1, 1): t^-2 -> t^-2 + 2t^-1 + 1
    FieldAut shift(GaloisElement{0}, f3.one(), f3.one());
    REQUIRE(substitute_affine(Pol::t_inv(f3, 2), shift) ==
            Pol::t_inv(f3, 2) + Pol::monomial(f3, f3.from_int(2), 1) + Pol::one(f3));

    // over F_9 with (Frob, 1, 0): x t^-1 -> 2x t^-1
    FqField f9(3, 2);
    FieldAut frob(GaloisElement{1}, f9.one(), f9.zero());
    REQUIRE(substitute_affine(Pol::monomial(f9, f9.gen(), 1), frob) ==
            Pol::monomial(f9, f9.from_coeffs({0, 2}), 1));
}

TEST_CASE("substitute_affine is a degree-preserving ring automorphism") {
    FqField f9(3, 2);
    Rng rng(23);
    auto random_pol = [&](int maxd) {
        std::vector<FqElem> c;
        for (int i = 0; i <= maxd; ++i) c.push_back(f9.element(static_cast<std::int64_t>(rng.below(9))));
        return Pol::from_coeffs(f9, std::move(c));
    };
    auto random_aut = [&] {
        FqElem alpha = f9.element(1 + static_cast<std::int64_t>(rng.below(8)));
        FqElem beta = f9.element(static_cast<std::int64_t>(rng.below(9)));
        return FieldAut(GaloisElement{rng.range(0, 1)}, alpha, beta);
    };
    for (int trial = 0; trial < 100; ++trial) {
        FieldAut tau = random_aut();
        Pol a = random_pol(rng.range(0, 5)), b = random_pol(rng.range(0, 5));
        REQUIRE(substitute_affine(a + b, tau) == substitute_affine(a, tau) + substitute_affine(b, tau));
        REQUIRE(substitute_affine(a * b, tau) == substitute_affine(a, tau) * substitute_affine(b, tau));
        REQUIRE(substitute_affine(Pol::one(f9), tau) == Pol::one(f9));
        if (!a.is_zero()) REQUIRE(substitute_affine(a, tau).deg() == a.deg());
    }
}

TEST_CASE("FieldAut composition and inverse") {
    FqField f9(3, 2);
    Rng rng(29);
    auto random_aut = [&] {
        FqElem alpha = f9.element(1 + static_cast<std::int64_t>(rng.below(8)));
        FqElem beta = f9.element(static_cast<std::int64_t>(rng.below(9)));
        return FieldAut(GaloisElement{rng.range(0, 1)}, alpha, beta);
    };
    auto random_pol = [&](int maxd) {
        std::vector<FqElem> c;
        for (int i = 0; i <= maxd; ++i) c.push_back(f9.element(static_cast<std::int64_t>(rng.below(9))));
        return Pol::from_coeffs(f9, std::move(c));
    };
    for (int trial = 0; trial < 100; ++trial) {
        FieldAut t1 = random_aut(), t2 = random_aut();
        Pol f = random_pol(4);
        REQUIRE(substitute_affine(f, compose(t2, t1)) == substitute_affine(substitute_affine(f, t1), t2));
        FieldAut inv = t1.inverse();
        REQUIRE(compose(inv, t1).is_identity());
        REQUIRE(compose(t1, inv).is_identity());
        REQUIRE(substitute_affine(substitute_affine(f, t1), inv) == f);
    }
}

TEST_CASE("factorize examples") {
    FqField f3(3, 1);
    Pol t1 = Pol::t_inv(f3, 1);

    // t^-2 = (t^-1)^2
    auto fact = factorize(Pol::t_inv(f3, 2));
    REQUIRE(fact.factors.size() == 1);
    REQUIRE(fact.factors[0] == std::pair{t1, 2});

    // t^-2 + 1 is irreducible over F_3
    auto irr = factorize(Pol::t_inv(f3, 2) + Pol::one(f3));
    REQUIRE(irr.factors.size() == 1);
    REQUIRE(irr.factors[0].second == 1);

    // t^-3 - t^-1 = t^-1 (t^-1 + 1)(t^-1 + 2)
    auto split = factorize(Pol::t_inv(f3, 3) - t1);
    REQUIRE(split.factors.size() == 3);
    for (const auto& [u, m] : split.factors) {
        REQUIRE(m == 1);
        REQUIRE(u.deg() == 1);
    }
    REQUIRE(split.product() == Pol::t_inv(f3, 3) - t1);

    REQUIRE_THROWS_AS(factorize(Pol::zero(f3)), DomainError);
}

TEST_CASE("factorize then re-multiply is the identity, exhaustively") {
    FqField f3(3, 1);
    Rng rng(101);
    for (const auto& a : all_pols_up_to(f3, 4)) {
        if (a.is_zero()) continue;
        auto fact = factorize(a, rng);
        REQUIRE(fact.product() == a);
        for (const auto& [u, m] : fact.factors) {
            REQUIRE(u.lead() == f3.one());
            // irreducibility: no root and no smaller-degree monic divisor
            for (int dd = 1; dd <= u.deg() / 2; ++dd)
                for (const auto& v : monic_pols_of_degree(f3, dd))
                    REQUIRE(!u.divisible_by(v));
        }
    }
}

TEST_CASE("factorize handles p-th powers and mixed multiplicities") {
    FqField f2(2, 1);
    Pol t1 = Pol::t_inv(f2, 1);
    Pol u = t1 + Pol::one(f2);
    // (t^-1)^4 (t^-1+1)^2: derivative vanishes
    Pol a = t1.pow(4) * u.pow(2);
    auto fact = factorize(a);
    REQUIRE(fact.factors.size() == 2);
    REQUIRE(fact.multiplicity_of(t1) == 4);
    REQUIRE(fact.multiplicity_of(u) == 2);

    FqField f9(3, 2);
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        // random product of small factors with random multiplicities
        Pol prod = Pol::one(f9);
        for (int k = 0; k < 3; ++k) {
            std::vector<FqElem> c;
            for (int i = 0; i <= rng.range(1, 2); ++i) c.push_back(f9.element(static_cast<std::int64_t>(rng.below(9))));
            Pol f = Pol::from_coeffs(f9, std::move(c));
            if (f.is_zero() || f.deg() < 1) continue;
            prod = prod * f.pow(rng.range(1, 4));
        }
        if (prod.deg() < 1) continue;
        auto fact2 = factorize(prod, rng);
        REQUIRE(fact2.product() == prod);
    }
}

TEST_CASE("q_separable_split") {
    FqField f3(3, 1);
    Pol t1 = Pol::t_inv(f3, 1);

    // already separable
    auto [s0, c0] = q_separable_split(t1, 3);
    REQUIRE(s0 == t1);
    REQUIRE(c0 == Pol::one(f3));

    // pure cube
    auto [s1, c1] = q_separable_split(Pol::t_inv(f3, 3), 3);
    REQUIRE(s1 == Pol::one(f3));
    REQUIRE(c1 == t1);

    // t^-4 (t^-1+1)^3 -> a' = t^-1, c = t^-1 (t^-1 + 1)
    Pol u = t1 + Pol::one(f3);
    auto [s2, c2] = q_separable_split(t1.pow(4) * u.pow(3), 3);
    REQUIRE(s2 == t1);
    REQUIRE(c2 == t1 * u);

    REQUIRE_THROWS_AS(q_separable_split(t1, 2), ParameterError);
    REQUIRE_THROWS_AS(q_separable_split(Pol::zero(f3), 3), DomainError);
}

TEST_CASE("q_separable_split invariant: a' separable and a' c^Q = a") {
    FqField f3(3, 1);
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FqElem> c;
        for (int i = 0; i <= rng.range(0, 9); ++i) c.push_back(f3.element(rng.range(0, 2)));
        Pol a = Pol::from_coeffs(f3, std::move(c));
        if (a.is_zero()) continue;
        int Q = rng.coin() ? 3 : 9;
        auto [sep, cc] = q_separable_split(a, Q, rng);
        REQUIRE(sep * cc.pow(Q) == a);
        REQUIRE(is_q_separable(sep, Q, rng));
        REQUIRE((cc.is_zero() || cc.is_one() || cc.lead() == f3.one()));
    }
}

TEST_CASE("eth_power_ratio_test examples") {
    FqField f3(3, 1);
    Pol t1 = Pol::t_inv(f3, 1);
    Pol a = t1.pow(2) + Pol::one(f3);

    REQUIRE(eth_power_ratio_test(a, a, 3));
    REQUIRE(eth_power_ratio_test(Pol::t_inv(f3, 3) * a, a, 3));
    REQUIRE(!eth_power_ratio_test(t1, Pol::one(f3), 3));
    REQUIRE_THROWS_AS(eth_power_ratio_test(Pol::zero(f3), a, 3), DomainError);
    REQUIRE_THROWS_AS(eth_power_ratio_test(a, a, 6), ParameterError);
}

TEST_CASE("eth_power_ratio_test agrees with brute-force witness search") {
    // For all monic a, b of degree <= 4 over F_3 with e = 3: the support
    // criterion must match the existence of nonzero u, v with a u^3 = b v^3.
    // If a u^3 = b v^3 has any solution it has one with monic u, v and
    // deg v = deg u + (deg a - deg b)/3, and u = b, v = (a b^2)^{1/3} works,
    // so searching monic u, v of degree <= 4 is complete in this range.
    FqField f3(3, 1);
    std::vector<Pol> monics;
    for (int dd = 0; dd <= 4; ++dd)
        for (const auto& u : monic_pols_of_degree(f3, dd)) monics.push_back(u);

    // Precomputed table of cubes of monic polynomials, for the "is q a
    // cube" step. Cube candidates q have deg <= 16, so roots have deg <= 5.
    auto key_of = [](const Pol& f) {
        std::vector<std::int64_t> k;
        for (int i = 0; i <= f.deg(); ++i) k.push_back(f.coeff(i).index());
        return k;
    };
    std::vector<std::vector<std::int64_t>> cube_keys;
    for (int dd = 0; dd <= 5; ++dd)
        for (const auto& v : monic_pols_of_degree(f3, dd)) cube_keys.push_back(key_of(v.pow(3)));
    std::sort(cube_keys.begin(), cube_keys.end());

    std::vector<Pol> cubes_of_monics;
    for (const auto& u : monics) cubes_of_monics.push_back(u.pow(3));

    auto brute = [&](const Pol& a, const Pol& b) {
        // deg(a u^3) = deg(b v^3) forces deg a = deg b (mod 3).
        if ((a.deg() - b.deg()) % 3 != 0) return false;
        for (std::size_t i = 0; i < monics.size(); ++i) {
            Pol lhs = a * cubes_of_monics[i];
            if (lhs.deg() < b.deg() || (lhs.deg() - b.deg()) % 3 != 0) continue;
            auto [q, r] = Pol::divmod(lhs, b);
            if (!r.is_zero()) continue;
            if (std::binary_search(cube_keys.begin(), cube_keys.end(), key_of(q))) return true;
        }
        return false;
    };

    int checked = 0;
    for (const auto& a : monics) {
        for (const auto& b : monics) {
            bool expect = brute(a, b);
            REQUIRE(eth_power_ratio_test(a, b, 3) == expect);
            ++checked;
        }
    }
    REQUIRE(checked == 121 * 121);
}

TEST_CASE("RatF canonical form") {
    FqField f3(3, 1);
    Pol t1 = Pol::t_inv(f3, 1);
    Pol u = t1 + Pol::one(f3);

    RatF a(t1 * u, u * u);  // reduces to t^-1 / (t^-1 + 1)
    REQUIRE(a.num() == t1);
    REQUIRE(a.den() == u);

    // denominator normalized monic
    RatF b(t1, Pol::monomial(f3, f3.from_int(2), 1));
    REQUIRE(b.den().lead() == f3.one());

    REQUIRE_THROWS_AS(RatF(t1, Pol::zero(f3)), DomainError);
    REQUIRE(RatF(Pol::zero(f3), u) == RatF::zero(f3));
}

TEST_CASE("RatF arithmetic properties") {
    FqField f3(3, 1);
    Rng rng(333);
    auto random_ratf = [&] {
        std::vector<FqElem> cn, cd;
        for (int i = 0; i <= rng.range(0, 3); ++i) cn.push_back(f3.element(rng.range(0, 2)));
        for (int i = 0; i <= rng.range(0, 3); ++i) cd.push_back(f3.element(rng.range(0, 2)));
        Pol den = Pol::from_coeffs(f3, cd);
        if (den.is_zero()) den = Pol::one(f3);
        return RatF(Pol::from_coeffs(f3, cn), den);
    };
    for (int trial = 0; trial < 300; ++trial) {
        RatF a = random_ratf(), b = random_ratf(), c = random_ratf();
        REQUIRE(a + b == b + a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a - a == RatF::zero(f3));
        if (!a.is_zero()) {
            REQUIRE(a * a.inverse() == RatF::one(f3));
            REQUIRE(a.den().lead() == f3.one());
            REQUIRE(gcd(a.num(), a.den()).is_one());
        }
    }
}

TEST_CASE("pth_root") {
    FqField f9(3, 2);
    Pol a = Pol::t_inv(f9, 1) + Pol::constant(f9, f9.gen());
    Pol cube = a.frobenius_power(3);
    auto root = cube.pth_root();
    REQUIRE(root.has_value());
    REQUIRE(*root == a);
    REQUIRE(!(Pol::t_inv(f9, 1)).pth_root().has_value());
}
