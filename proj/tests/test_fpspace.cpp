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
#include <set>

#include "tminus/fpspace.hpp"

using namespace tminus;

namespace {

FpVec random_vec(int n, int p, Rng& rng) {
    FpVec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(p)));
    return v;
}

// Independent rank oracle: plain Gaussian elimination without the pivot
// bookkeeping of the library routine.
int rank_oracle(std::vector<FpVec> rows, int p) {
    int rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols; ++col) {
        std::size_t sel = static_cast<std::size_t>(-1);
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel == static_cast<std::size_t>(-1)) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            while (rows[r][col] != 0) {
                for (std::size_t cc = 0; cc < ncols; ++cc)
                    rows[r][cc] = static_cast<std::uint8_t>((rows[r][cc] + rows[static_cast<std::size_t>(rank)][cc]) % p);
            }
        }
        ++rank;
    }
    return rank;
}

// Enumerate every vector of a span (p^dim combinations).
std::set<FpVec> enumerate_span(const std::vector<FpVec>& basis, int n, int p) {
    std::set<FpVec> out;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        FpVec v(static_cast<std::size_t>(n), 0);
        std::int64_t t = idx;
        for (const auto& b : basis) {
            int c = static_cast<int>(t % p);
            t /= p;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = static_cast<std::uint8_t>((v[j] + c * b[j]) % p);
        }
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("embed") {
    FqField f3(3, 1);
    Window w(4, f3);
    REQUIRE(w.dim() == 5);

    REQUIRE(embed(Pol::zero(f3), w) == FpVec{0, 0, 0, 0, 0});
    REQUIRE(embed(Pol::one(f3), w) == FpVec{1, 0, 0, 0, 0});

    FqField f9(3, 2);
    Window w9(1, f9);
    REQUIRE(embed(Pol::monomial(f9, f9.gen(), 1), w9) == FpVec{0, 0, 0, 1});

    REQUIRE_THROWS_AS(embed(Pol::t_inv(f3, 7), w), WindowError);

    // linear + injective round trip
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        FpVec v = random_vec(w.dim(), 3, rng);
        REQUIRE(embed(unembed(v, w), w) == v);
    }
}

TEST_CASE("span_rref basics") {
    FqField f3(3, 1);
    Window w(5, f3);

    REQUIRE(FpSubspace::span({}, w).dim() == 0);

    FpVec v{1, 2, 0, 0, 1, 0};
    REQUIRE(FpSubspace::span({v, v}, w).dim() == 1);

    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FpVec> vecs{random_vec(6, 3, rng), random_vec(6, 3, rng), random_vec(6, 3, rng)};
        auto s = FpSubspace::span(vecs, w);
        REQUIRE(s.dim() == rank_oracle(vecs, 3));
    }
}

TEST_CASE("span_rref is idempotent") {
    FqField f2(2, 1);
    Window w(7, f2);
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FpVec> vecs;
        for (int i = 0; i < 5; ++i) vecs.push_back(random_vec(8, 2, rng));
        auto s = FpSubspace::span(vecs, w);
        auto s2 = FpSubspace::span(s.basis(), w);
        REQUIRE(s == s2);
    }
}

TEST_CASE("membership agrees with exhaustive span enumeration") {
    Rng rng(23);
    for (auto [p, n] : {std::pair{2, 8}, {3, 6}, {2, 12}, {3, 12}}) {
        FqField fld(p, 1);
        Window w(n - 1, fld);
        std::vector<FpVec> gens;
        for (int i = 0; i < 4; ++i) gens.push_back(random_vec(n, p, rng));
        auto s = FpSubspace::span(gens, w);
        auto all = enumerate_span(s.basis(), n, p);
        for (int trial = 0; trial < 200; ++trial) {
            FpVec v = random_vec(n, p, rng);
            REQUIRE(s.contains(v) == (all.count(v) > 0));
        }
        for (const auto& v : all) REQUIRE(s.contains(v));
    }
}

TEST_CASE("sum and intersection") {
    FqField f2(2, 1);
    Window w(7, f2);

    auto U = FpSubspace::span({FpVec{1, 0, 0, 0, 0, 0, 0, 0}, FpVec{0, 1, 0, 0, 0, 0, 0, 0}}, w);
    auto Z = FpSubspace::zero(w);
    REQUIRE(subspace_sum(U, Z) == U);
    REQUIRE(subspace_intersect(U, U) == U);

    // coordinate-complementary spaces
    auto V = FpSubspace::span({FpVec{0, 0, 1, 0, 0, 0, 0, 0}, FpVec{0, 0, 0, 1, 0, 0, 0, 0},
                               FpVec{0, 0, 0, 0, 1, 0, 0, 0}, FpVec{0, 0, 0, 0, 0, 1, 0, 0},
                               FpVec{0, 0, 0, 0, 0, 0, 1, 0}, FpVec{0, 0, 0, 0, 0, 0, 0, 1}},
                              w);
    REQUIRE(subspace_sum(U, V).dim() == 8);
    REQUIRE(subspace_intersect(U, V).dim() == 0);

    // dim(U+W) + dim(U ^ W) = dim U + dim W, checked against enumeration
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FpVec> gu, gw;
        for (int i = 0; i < 3; ++i) gu.push_back(random_vec(8, 2, rng));
        for (int i = 0; i < 3; ++i) gw.push_back(random_vec(8, 2, rng));
        auto A = FpSubspace::span(gu, w), B = FpSubspace::span(gw, w);
        auto S = subspace_sum(A, B), I = subspace_intersect(A, B);
        REQUIRE(S.dim() + I.dim() == A.dim() + B.dim());

        auto ea = enumerate_span(A.basis(), 8, 2);
        auto eb = enumerate_span(B.basis(), 8, 2);
        std::set<FpVec> inter;
        for (const auto& v : ea)
            if (eb.count(v)) inter.insert(v);
        REQUIRE(enumerate_span(I.basis(), 8, 2) == inter);
        for (const auto& v : ea) REQUIRE(S.contains(v));
        for (const auto& v : eb) REQUIRE(S.contains(v));
    }
}

TEST_CASE("codim_in_window") {
    FqField f3(3, 1);
    Window w(2, f3);
    REQUIRE(FpSubspace::full(w).codim() == 0);
    REQUIRE(FpSubspace::zero(w).codim() == 3);
    // kernel of one nonzero functional
    auto ker = FpSubspace::span(nullspace({FpVec{1, 2, 0}}, 3, 3), w);
    REQUIRE(ker.codim() == 1);
}

TEST_CASE("tail model") {
    FqField f3(3, 1);

    SECTION("k = 0 is the whole window") {
        auto spec = TailSubspaceSpec::full(f3);
        Window w(6, f3);
        REQUIRE(spec.realize(w) == FpSubspace::full(w));
    }

    SECTION("single constraint: coefficient of t^0 vanishes") {
        TailSubspaceSpec spec(0, f3, {FpVec{1}});
        Window w(4, f3);
        auto V = spec.realize(w);
        REQUIRE(V.dim() == 4);
        for (int j = 1; j <= 4; ++j) REQUIRE(V.contains(Pol::t_inv(f3, j)));
        REQUIRE(!V.contains(Pol::one(f3)));
        REQUIRE(spec.contains(Pol::t_inv(f3, 9)));
    }

    SECTION("two random independent constraints: codim 2, rank oracle") {
        Rng rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            FpVec c1 = random_vec(3, 3, rng), c2 = random_vec(3, 3, rng);
            if (rank_oracle({c1, c2}, 3) != 2) continue;
            TailSubspaceSpec spec(2, f3, {c1, c2});
            Window w(6, f3);
            auto V = spec.realize(w);
            REQUIRE(V.codim() == 2);
            REQUIRE(V.codim() == rank_oracle({c1, c2}, 3));
        }
    }

    SECTION("dependent constraints rejected") {
        REQUIRE_THROWS_AS(TailSubspaceSpec(0, f3, {FpVec{1}, FpVec{2}}), ParameterError);
    }

    SECTION("window below depth rejected") {
        TailSubspaceSpec spec(3, f3, {FpVec{1, 0, 0, 2}});
        REQUIRE_THROWS_AS(spec.realize(Window(2, f3)), WindowError);
    }

    SECTION("window consistency of the tail model") {
        Rng rng(43);
        for (int trial = 0; trial < 20; ++trial) {
            FpVec c = random_vec(9, 3, rng);
            bool zero = true;
            for (auto x : c) zero &= (x == 0);
            if (zero) continue;
            TailSubspaceSpec spec(2, f3, {FpVec(c.begin(), c.begin() + 3)});
            Window big(8, f3), small(5, f3);
            auto restricted = spec.realize(big).restrict_to_degree(5);
            REQUIRE(restricted == spec.realize(small));
        }
    }
}

TEST_CASE("restrict_to_degree") {
    FqField f3(3, 1);
    Window w(5, f3);
    // span{1 + t^-4, t^-1} restricted to degree <= 3 is span{t^-1}
    auto S = FpSubspace::span_pols({Pol::one(f3) + Pol::t_inv(f3, 4), Pol::t_inv(f3, 1)}, w);
    auto R = S.restrict_to_degree(3);
    REQUIRE(R.dim() == 1);
    REQUIRE(R.contains(Pol::t_inv(f3, 1)));

    // restriction always sits inside the original
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<FpVec> gens;
        for (int i = 0; i < 4; ++i) gens.push_back(random_vec(6, 3, rng));
        auto X = FpSubspace::span(gens, w);
        auto XR = X.restrict_to_degree(2);
        for (const auto& pol : XR.pol_basis()) REQUIRE(X.contains(embed(pol, w)));
        // membership in restriction == membership + support bound
        auto all = enumerate_span(X.basis(), 6, 3);
        int in_low = 0;
        for (const auto& v : all) {
            bool low = v[3] == 0 && v[4] == 0 && v[5] == 0;
            if (low) ++in_low;
            if (low) REQUIRE(XR.contains(FpVec(v.begin(), v.begin() + 3)));
        }
        std::int64_t expect = 1;
        for (int i = 0; i < XR.dim(); ++i) expect *= 3;
        REQUIRE(expect == in_low);
    }
}
