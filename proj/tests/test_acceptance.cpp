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

// Acceptance suite: each test case runs one criterion end to end at its
// stated instance count and tolerance (all tolerances are zero: the
// arithmetic is exact) and prints one PASS/FAIL line.

#include <catch2/catch_amalgamated.hpp>
#include <chrono>
#include <iostream>

#include "tminus/harness.hpp"

using namespace tminus;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "[ACCEPTANCE] " << criterion << " " << name << ": " << (pass ? "PASS" : "FAIL")
              << " (" << detail << ")\n";
}

Pol random_pol(const FqField& fld, int maxd, Rng& rng) {
    std::vector<FqElem> c;
    for (int i = 0; i <= maxd; ++i)
        c.push_back(fld.element(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(fld.q())))));
    return Pol::from_coeffs(fld, std::move(c));
}

RatF random_ratf(const FqField& fld, Rng& rng, int nd = 3, int dd = 2) {
    Pol den = random_pol(fld, dd, rng);
    if (den.is_zero()) den = Pol::one(fld);
    return RatF(random_pol(fld, nd, rng), den);
}

// 3x3 upper-triangular oracle for G2.
struct G2Matrix {
    RatF ye, z, y;
};
G2Matrix g2_matrix(const G2Group& grp, const G2Elem& g) { return {g.y.pow(grp.e), g.z, g.y}; }
G2Matrix g2_matrix_mul(const G2Matrix& a, const G2Matrix& b) {
    return {a.ye + b.ye, a.z + b.z + a.ye * b.y, a.y + b.y};
}
G2Matrix g2_matrix_inv(const G2Matrix& a) {
    // block inverse of the unitriangular matrix
    return {-a.ye, a.ye * a.y - a.z, -a.y};
}
bool g2_matrix_eq(const G2Matrix& a, const G2Matrix& b) {
    return a.ye == b.ye && a.z == b.z && a.y == b.y;
}

// (m+2)x(m+2) oracle for H; corner identified via w = (z + B(v,v))/2.
struct HeisMatrix {
    std::vector<RatF> x, y;
    RatF w;
};
HeisMatrix heis_matrix(const HeisGroup& grp, const HeisElem& g) {
    const int m = grp.form.m;
    std::vector<RatF> x(g.v.begin(), g.v.begin() + m), y(g.v.begin() + m, g.v.end());
    RatF b = RatF::zero(grp.fld);
    for (int i = 0; i < m; ++i) b = b + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    RatF half = RatF(Pol::constant(grp.fld, grp.fld.from_int(2))).inverse();
    return {std::move(x), std::move(y), (g.z + b) * half};
}
HeisMatrix heis_matrix_mul(const HeisMatrix& a, const HeisMatrix& b) {
    HeisMatrix r;
    r.w = a.w + b.w;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        r.x.push_back(a.x[i] + b.x[i]);
        r.y.push_back(a.y[i] + b.y[i]);
        r.w = r.w + a.x[i] * b.y[i];
    }
    return r;
}
bool heis_matrix_eq(const HeisMatrix& a, const HeisMatrix& b) {
    return a.x == b.x && a.y == b.y && a.w == b.w;
}

}  // namespace

TEST_CASE("criterion 1: bracket/group oracle equivalence") {
    Timer timer;
    int checked = 0, agreed = 0;

    // G2 against the 3x3 oracle: q in {3, 9}, 500 pairs each.
    for (int d : {1, 2}) {
        FqField fld(3, d);
        G2Group grp(3, fld);
        Rng rng(1000 + d);
        for (int i = 0; i < 500; ++i) {
            G2Elem a{random_ratf(fld, rng), random_ratf(fld, rng)};
            G2Elem b{random_ratf(fld, rng), random_ratf(fld, rng)};
            bool ok = g2_matrix_eq(g2_matrix(grp, g2_mul(grp, a, b)),
                                   g2_matrix_mul(g2_matrix(grp, a), g2_matrix(grp, b)));
            // commutator against matrix arithmetic
            G2Matrix ma = g2_matrix(grp, a), mb = g2_matrix(grp, b);
            G2Matrix comm = g2_matrix_mul(g2_matrix_mul(ma, mb),
                                          g2_matrix_mul(g2_matrix_inv(ma), g2_matrix_inv(mb)));
            ok = ok && g2_matrix_eq(g2_matrix(grp, g2_commutator(grp, a, b)), comm);
            ++checked;
            agreed += ok ? 1 : 0;
        }
    }

    // Heisenberg against the (m+2)x(m+2) oracle: m in {1,2}, q in {3,9}.
    for (int m : {1, 2}) {
        for (int d : {1, 2}) {
            FqField fld(3, d);
            HeisGroup grp(SymplecticForm(m), fld);
            Rng rng(2000 + 10 * m + d);
            for (int i = 0; i < 250; ++i) {
                auto rand_elem = [&] {
                    std::vector<RatF> v;
                    for (int k = 0; k < 2 * m; ++k) v.push_back(random_ratf(fld, rng, 2, 1));
                    return HeisElem{std::move(v), random_ratf(fld, rng, 2, 1)};
                };
                HeisElem a = rand_elem(), b = rand_elem();
                bool ok = heis_matrix_eq(heis_matrix(grp, heis_mul(grp, a, b)),
                                         heis_matrix_mul(heis_matrix(grp, a), heis_matrix(grp, b)));
                ++checked;
                agreed += ok ? 1 : 0;
            }
        }
    }

    double sec = timer.seconds();
    bool pass = agreed == checked && sec < 10.0;
    report(1, "group law vs matrix oracles", pass,
           std::to_string(agreed) + "/" + std::to_string(checked) + ", " + std::to_string(sec) + " s");
    REQUIRE(agreed == checked);
    REQUIRE(sec < 10.0);
}

TEST_CASE("criterion 2: finite-codimension dichotomy audit") {
    Timer timer;
    ExperimentConfig cfg;
    cfg.p = 3;
    cfg.d = 1;
    cfg.e = 3;
    cfg.tail_k = 2;
    cfg.trials = 50;
    cfg.seed = 20260801;
    auto rep = run_suite("prop-ab", cfg);

    int positives = 0, negatives = 0, matched = 0, max_window = 0;
    for (const auto& r : rep.records) {
        if (r.inputs.at("expect_positive").get<bool>())
            ++positives;
        else
            ++negatives;
        if (r.pass) ++matched;
        max_window = std::max(max_window, r.outputs.at("window").get<int>());
    }
    double sec = timer.seconds();
    bool pass = matched == 50 && positives == 25 && negatives == 25 && max_window <= 120 && sec < 120.0;
    report(2, "predicted = measured for <a,V>+<b,V> in <V,V>", pass,
           std::to_string(matched) + "/50, windows <= " + std::to_string(max_window) + ", " +
               std::to_string(sec) + " s");
    REQUIRE(positives == 25);
    REQUIRE(negatives == 25);
    REQUIRE(matched == 50);
    REQUIRE(max_window <= 120);
    REQUIRE(sec < 120.0);
}

TEST_CASE("criterion 3: ideal witness identity and containment") {
    Timer timer;
    ExperimentConfig cfg;
    cfg.trials = 25;
    cfg.Qs = {3, 9};
    cfg.seed = 3;
    auto rep = run_suite("ideal-witness", cfg);
    double sec = timer.seconds();
    bool pass = rep.all_pass() && rep.records.size() == 25 && sec < 60.0;
    report(3, "codimension-2k ideal witness", pass,
           std::to_string(rep.passed()) + "/25, " + std::to_string(sec) + " s");
    REQUIRE(rep.records.size() == 25);
    REQUIRE(rep.all_pass());
    REQUIRE(sec < 60.0);
}

TEST_CASE("criterion 4: codimension formula bound") {
    ExperimentConfig cfg;
    cfg.trials = 30;
    cfg.tail_k = 2;
    cfg.Qs = {3, 9};
    cfg.seed = 4;
    auto rep = run_suite("codim-formula", cfg);
    bool pass = rep.all_pass() && rep.records.size() == 30;
    int min_x = 1 << 30, max_x = -(1 << 30);
    for (const auto& r : rep.records) {
        min_x = std::min(min_x, r.outputs.at("X").get<int>());
        max_x = std::max(max_x, r.outputs.at("X").get<int>());
    }
    report(4, "measured codim = main + S + X with 0 <= X <= bound", pass,
           std::to_string(rep.passed()) + "/30, X in [" + std::to_string(min_x) + ", " +
               std::to_string(max_x) + "]");
    REQUIRE(rep.records.size() == 30);
    REQUIRE(rep.all_pass());
}

TEST_CASE("criterion 5: Frobenius-power monotonicity containment") {
    ExperimentConfig cfg;
    cfg.trials = 20;
    cfg.seed = 5;
    auto rep = run_suite("frobenius-mono", cfg);
    bool pass = rep.all_pass() && rep.records.size() == 20;
    report(5, "bracket-space containment under a -> a^{e^n}", pass,
           std::to_string(rep.passed()) + "/20");
    REQUIRE(rep.records.size() == 20);
    REQUIRE(rep.all_pass());
}

TEST_CASE("criterion 6: non-separable element count bound") {
    Timer timer;
    int cells = 0, within = 0;
    for (int p : {2, 3}) {
        FqField fld(p, 1);
        for (int Q : {p * p, p * p * p}) {
            for (int m = 1; m <= 8; ++m) {
                auto res = qseparable_count_audit(fld, Q, m);
                ++cells;
                within += res.pass ? 1 : 0;
            }
        }
    }
    double sec = timer.seconds();
    bool pass = cells == within && sec < 30.0;
    report(6, "exhaustive count <= q^{m+2}/(q^{Q-1}-1)", pass,
           std::to_string(within) + "/" + std::to_string(cells) + " cells, " + std::to_string(sec) +
               " s");
    REQUIRE(cells == 32);
    REQUIRE(within == cells);
    REQUIRE(sec < 30.0);
}

TEST_CASE("criterion 7: gcd-codimension affine bounds") {
    ExperimentConfig cfg;
    cfg.trials = 40;
    cfg.tail_k = 1;
    cfg.seed = 7;
    auto rep = run_suite("gcd-bounds", cfg);
    bool pass = rep.all_pass() && rep.records.size() == 40 && rep.fitted.contains("C");
    report(7, "measured codim two-sided affine in deg gcd", pass,
           std::to_string(rep.passed()) + "/40, fitted C = " + rep.fitted.at("C").dump());
    REQUIRE(rep.records.size() == 40);
    REQUIRE(rep.fitted.at("C").get<int>() >= 1);
    REQUIRE(rep.all_pass());
}

TEST_CASE("criterion 8: G2 rigidity round trip") {
    Timer timer;
    ExperimentConfig cfg;
    cfg.p = 3;
    cfg.d = 2;  // q = 9, so sigma, alpha, beta all vary
    cfg.e = 3;
    cfg.trials = 100;
    cfg.seed = 8;
    auto rep = run_suite("g2-roundtrip", cfg);
    int recovered = 0, rejected = 0;
    for (const auto& r : rep.records) {
        recovered += r.outputs.at("recovered").get<bool>() ? 1 : 0;
        rejected += r.outputs.at("corruption_rejected").get<bool>() ? 1 : 0;
    }
    double sec = timer.seconds();
    bool pass = recovered == 100 && rejected == 100 && sec < 10.0;
    report(8, "solve_affine + split_central exact recovery", pass,
           "recovered " + std::to_string(recovered) + "/100, rejected " + std::to_string(rejected) +
               "/100, " + std::to_string(sec) + " s");
    REQUIRE(recovered == 100);
    REQUIRE(rejected == 100);
    REQUIRE(sec < 10.0);
}

TEST_CASE("criterion 9: Heisenberg round trip") {
    int total = 0, good = 0, overlap = 0;
    struct Combo {
        int m, p, d, trials;
    };
    for (const Combo combo : {Combo{1, 3, 2, 13}, {1, 5, 1, 12}, {2, 3, 2, 13}, {2, 5, 1, 12}}) {
        ExperimentConfig cfg;
        cfg.p = combo.p;
        cfg.d = combo.d;
        cfg.e = combo.p;
        cfg.m = combo.m;
        cfg.Qs = {combo.p};
        cfg.trials = combo.trials;
        cfg.seed = 900 + static_cast<std::uint64_t>(combo.m * 10 + combo.p);
        auto rep = run_suite("heis-roundtrip", cfg);
        for (const auto& r : rep.records) {
            ++total;
            good += r.pass ? 1 : 0;
            overlap += r.outputs.at("overlap_consistent").get<bool>() ? 1 : 0;
        }
    }
    bool pass = total == 50 && good == 50 && overlap == 50;
    report(9, "heis_recover exact recovery with overlap consistency", pass,
           std::to_string(good) + "/" + std::to_string(total) + ", overlaps " +
               std::to_string(overlap) + "/" + std::to_string(total));
    REQUIRE(total == 50);
    REQUIRE(good == 50);
    REQUIRE(overlap == 50);
}

TEST_CASE("criterion 10: H_p decompose-transport-solve-recompose") {
    int total = 0, good = 0;
    for (int m : {1, 2}) {
        ExperimentConfig cfg;
        cfg.p = 3;
        cfg.d = 1;
        cfg.e = 3;
        cfg.m = m;
        cfg.trials = 10;
        cfg.seed = 1000 + static_cast<std::uint64_t>(m);
        auto rep = run_suite("hp-roundtrip", cfg);
        total += static_cast<int>(rep.records.size());
        good += rep.passed();
    }
    bool pass = total == 20 && good == 20;
    report(10, "H_p product decomposition and Frobenius transport", pass,
           std::to_string(good) + "/" + std::to_string(total));
    REQUIRE(total == 20);
    REQUIRE(good == 20);
}
