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

#pragma once

#include <json.hpp>

#include "tminus/groups.hpp"
#include "tminus/rigidity.hpp"

namespace tminus::serde {

using json = nlohmann::ordered_json;

// --- field and scalars ------------------------------------------------------

inline json to_json(const FqField& fld) {
    return json{{"p", fld.p()}, {"d", fld.d()}, {"modulus", fld.modulus()}};
}

inline FqField field_from_json(const json& j) {
    FqField fld(j.at("p").get<int>(), j.at("d").get<int>());
    if (j.contains("modulus") && j.at("modulus").get<std::vector<int>>() != fld.modulus())
        throw ParameterError("field_from_json: modulus does not match the deterministic choice");
    return fld;
}

inline json to_json(const FqElem& a) {
    std::vector<int> c;
    for (int i = 0; i < a.field().d(); ++i) c.push_back(a.coeff(i));
    return json(c);
}

inline FqElem fq_from_json(const json& j, const FqField& fld) {
    return fld.from_coeffs(j.get<std::vector<int>>());
}

inline json to_json(const Pol& a) {
    json out = json::array();
    for (int i = 0; i <= a.deg(); ++i) out.push_back(to_json(a.coeff(i)));
    return out;
}

inline Pol pol_from_json(const json& j, const FqField& fld) {
    std::vector<FqElem> c;
    for (const auto& cj : j) c.push_back(fq_from_json(cj, fld));
    return Pol::from_coeffs(fld, std::move(c));
}

inline json to_json(const RatF& a) { return json{{"num", to_json(a.num())}, {"den", to_json(a.den())}}; }

inline RatF ratf_from_json(const json& j, const FqField& fld) {
    return RatF(pol_from_json(j.at("num"), fld), pol_from_json(j.at("den"), fld));
}

inline json to_json(const FieldAut& tau) {
    return json{{"sigma", tau.sigma().power}, {"alpha", to_json(tau.alpha())}, {"beta", to_json(tau.beta())}};
}

inline FieldAut fieldaut_from_json(const json& j, const FqField& fld) {
    return FieldAut(GaloisElement{j.at("sigma").get<int>()}, fq_from_json(j.at("alpha"), fld),
                    fq_from_json(j.at("beta"), fld));
}

// --- subspaces --------------------------------------------------------------

inline json to_json(const FpSubspace& s) {
    json rows = json::array();
    for (const auto& row : s.basis()) rows.push_back(std::vector<int>(row.begin(), row.end()));
    return json{{"window", json{{"N", s.window().N}}}, {"basis", rows}};
}

inline FpSubspace subspace_from_json(const json& j, const FqField& fld) {
    Window w(j.at("window").at("N").get<int>(), fld);
    std::vector<FpVec> rows;
    for (const auto& row : j.at("basis")) {
        auto ints = row.get<std::vector<int>>();
        rows.emplace_back(ints.begin(), ints.end());
    }
    return FpSubspace::span(std::move(rows), w);
}

inline json to_json(const TailSubspaceSpec& spec) {
    json rows = json::array();
    for (const auto& row : spec.constraints) rows.push_back(std::vector<int>(row.begin(), row.end()));
    return json{{"D", spec.D}, {"constraints", rows}};
}

inline TailSubspaceSpec tailspec_from_json(const json& j, const FqField& fld) {
    std::vector<FpVec> cons;
    for (const auto& row : j.at("constraints")) {
        auto ints = row.get<std::vector<int>>();
        cons.emplace_back(ints.begin(), ints.end());
    }
    return TailSubspaceSpec(j.at("D").get<int>(), fld, std::move(cons));
}

// --- group elements ---------------------------------------------------------

inline json to_json(const G2Elem& g) { return json{{"y", to_json(g.y)}, {"z", to_json(g.z)}}; }

inline G2Elem g2_from_json(const json& j, const FqField& fld) {
    return {ratf_from_json(j.at("y"), fld), ratf_from_json(j.at("z"), fld)};
}

inline json to_json(const HeisElem& g) {
    json v = json::array();
    for (const auto& x : g.v) v.push_back(to_json(x));
    return json{{"v", v}, {"z", to_json(g.z)}};
}

inline HeisElem heis_from_json(const json& j, const FqField& fld) {
    std::vector<RatF> v;
    for (const auto& x : j.at("v")) v.push_back(ratf_from_json(x, fld));
    return {std::move(v), ratf_from_json(j.at("z"), fld)};
}

inline json to_json(const HpElem& g) {
    json x = json::array(), y = json::array();
    for (const auto& c : g.x) x.push_back(to_json(c));
    for (const auto& c : g.y) y.push_back(to_json(c));
    return json{{"x", x}, {"y", y}, {"z", to_json(g.z)}};
}

inline HpElem hp_from_json(const json& j, const FqField& fld) {
    std::vector<RatF> x, y;
    for (const auto& c : j.at("x")) x.push_back(ratf_from_json(c, fld));
    for (const auto& c : j.at("y")) y.push_back(ratf_from_json(c, fld));
    return {std::move(x), std::move(y), ratf_from_json(j.at("z"), fld)};
}

inline json to_json(const RatMat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline RatMat ratmat_from_json(const json& j, const FqField& fld) {
    int rows = static_cast<int>(j.size());
    int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
    RatMat m(rows, cols, fld);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = ratf_from_json(j.at(r).at(c), fld);
    return m;
}

// --- solver decks and certificates ------------------------------------------

inline json g2_deck_to_json(const FqField& fld, int e, const LinearMapSample& ls,
                            const std::vector<std::pair<G2Elem, G2Elem>>& group_samples) {
    json basis = json::array(), images = json::array(), gs = json::array();
    for (const auto& f : ls.domain) basis.push_back(to_json(f));
    for (const auto& f : ls.images) images.push_back(to_json(f));
    for (const auto& [g, img] : group_samples)
        gs.push_back(json{{"gamma", to_json(g)}, {"image", to_json(img)}});
    return json{{"schema", "tminus.g2deck.v1"}, {"field", to_json(fld)}, {"e", e},
                {"basis", basis},               {"images", images},      {"group_samples", gs}};
}

inline json heis_deck_to_json(const FqField& fld, int m,
                              const std::vector<std::pair<HeisElem, HeisElem>>& samples) {
    json s = json::array();
    for (const auto& [g, img] : samples) s.push_back(json{{"g", to_json(g)}, {"image", to_json(img)}});
    return json{{"schema", "tminus.heisdeck.v1"}, {"field", to_json(fld)}, {"m", m}, {"samples", s}};
}

inline json hp_deck_to_json(const FqField& fld, int m,
                            const std::vector<std::pair<HpElem, HpElem>>& samples) {
    json s = json::array();
    for (const auto& [g, img] : samples) s.push_back(json{{"g", to_json(g)}, {"image", to_json(img)}});
    return json{{"schema", "tminus.hpdeck.v1"}, {"field", to_json(fld)}, {"m", m}, {"samples", s}};
}

inline json to_json(const Inconsistent& inc) {
    return json{{"ok", false}, {"reason", inc.reason}, {"residual", inc.residual}};
}

inline json to_json(const AffineRecovery& rec) {
    return json{{"ok", true},
                {"a", to_json(rec.a)},
                {"tau", to_json(rec.tau)},
                {"galois_ambiguous", rec.galois_ambiguous}};
}

inline json to_json(const HeisRecovery& rec) {
    json zeta = json::array();
    for (const auto& z : rec.zeta) zeta.push_back(to_json(z));
    return json{{"ok", true},       {"T", to_json(rec.T)},     {"c_T", to_json(rec.c_T)},
                {"tau", to_json(rec.tau)}, {"zeta", zeta},
                {"galois_ambiguous", rec.galois_ambiguous}};
}

inline json to_json(const HpRecovery& rec) {
    json a_part = json::array();
    for (const auto& [z, img] : rec.a_part)
        a_part.push_back(json{{"z", to_json(z)}, {"image_z", to_json(img)}});
    json out = to_json(rec.heis);
    out["a_part"] = a_part;
    out["prime_indices"] = rec.prime_indices;
    out["a_indices"] = rec.a_indices;
    return out;
}

inline json to_json(const CodimReport& rep) {
    json out{{"codim", rep.codim},   {"input_cap", rep.input_cap}, {"window", rep.window},
             {"stable", rep.stable}, {"step_values", rep.step_values}};
    if (rep.witness_degree) out["witness_degree"] = *rep.witness_degree;
    return out;
}

}  // namespace tminus::serde
