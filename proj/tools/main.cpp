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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tminus/harness.hpp"

using namespace tminus;
using serde::json;

namespace {

std::vector<CapStep> parse_schedule(const std::string& text) {
    std::vector<CapStep> steps;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw UsageError("schedule entries must look like D:N");
        steps.push_back(CapStep{std::stoi(part.substr(0, colon)), std::stoi(part.substr(colon + 1))});
    }
    return steps;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

json solve_g2_deck(const json& deck) {
    FqField fld = serde::field_from_json(deck.at("field"));
    int e = deck.at("e").get<int>();
    BracketForm form(e, fld);
    G2Group grp(e, fld);
    LinearMapSample ls;
    for (const auto& f : deck.at("basis")) ls.domain.push_back(serde::pol_from_json(f, fld));
    for (const auto& f : deck.at("images")) ls.images.push_back(serde::pol_from_json(f, fld));
    AffineResult res = solve_affine(ls, form);
    if (std::holds_alternative<Inconsistent>(res)) {
        json out = serde::to_json(std::get<Inconsistent>(res));
        out["schema"] = "tminus.g2recovery.v1";
        return out;
    }
    const auto& rec = std::get<AffineRecovery>(res);
    json out = serde::to_json(rec);
    out["schema"] = "tminus.g2recovery.v1";
    if (deck.contains("group_samples") && !deck.at("group_samples").empty()) {
        std::vector<std::pair<G2Elem, G2Elem>> samples;
        for (const auto& s : deck.at("group_samples"))
            samples.emplace_back(serde::g2_from_json(s.at("gamma"), fld),
                                 serde::g2_from_json(s.at("image"), fld));
        StandardAutG2 phi(rec.tau, rec.a, rec.a.den());
        try {
            auto zeta = split_central(samples, phi, grp);
            json zj = json::array();
            for (const auto& z : zeta) zj.push_back(serde::to_json(z));
            out["zeta"] = zj;
        } catch (const Error& err) {
            out["ok"] = false;
            out["reason"] = err.what();
        }
    }
    return out;
}

json solve_heis_deck(const json& deck) {
    FqField fld = serde::field_from_json(deck.at("field"));
    int m = deck.at("m").get<int>();
    HeisGroup grp(SymplecticForm(m), fld);
    std::vector<std::pair<HeisElem, HeisElem>> samples;
    for (const auto& s : deck.at("samples"))
        samples.emplace_back(serde::heis_from_json(s.at("g"), fld),
                             serde::heis_from_json(s.at("image"), fld));
    HeisResult res = heis_recover(samples, grp);
    json out = std::holds_alternative<Inconsistent>(res)
                   ? serde::to_json(std::get<Inconsistent>(res))
                   : serde::to_json(std::get<HeisRecovery>(res));
    out["schema"] = "tminus.heisrecovery.v1";
    return out;
}

json solve_hp_deck(const json& deck) {
    FqField fld = serde::field_from_json(deck.at("field"));
    int m = deck.at("m").get<int>();
    HpGroup grp(m, fld);
    std::vector<std::pair<HpElem, HpElem>> samples;
    for (const auto& s : deck.at("samples"))
        samples.emplace_back(serde::hp_from_json(s.at("g"), fld),
                             serde::hp_from_json(s.at("image"), fld));
    HpResult res = hp_recover(samples, grp);
    json out = std::holds_alternative<Inconsistent>(res)
                   ? serde::to_json(std::get<Inconsistent>(res))
                   : serde::to_json(std::get<HpRecovery>(res));
    out["schema"] = "tminus.hprecovery.v1";
    return out;
}

/// Full solver decks with embedded ground truth, for `gen`.
json generate_deck(const std::string& kind, const ExperimentConfig& cfg) {
    const FqField fld = cfg.field();
    Rng rng(cfg.seed);
    using namespace harness_detail;
    if (kind == "g2-deck") {
        BracketForm form = cfg.form();
        G2Group grp(cfg.e, fld);
        FieldAut tau = random_fieldaut(fld, rng);
        Pol a = random_pol_nonzero(fld, 3, rng);
        LinearTwist twist = LinearTwist::random(fld, rng);
        std::vector<Pol> basis;
        for (int j = 0; j <= 4; ++j)
            for (int di = 0; di < fld.d(); ++di) {
                std::vector<int> coords(static_cast<std::size_t>(fld.d()), 0);
                coords[static_cast<std::size_t>(di)] = 1;
                basis.push_back(Pol::monomial(fld, fld.from_coeffs(coords), j));
            }
        auto samples = make_standard_lambda(tau, a, basis, form);
        auto phi = StandardAutG2::from_pol(tau, a);
        std::vector<std::pair<G2Elem, G2Elem>> gsamples;
        std::vector<G2Elem> gens;
        for (int k = 0; k < 3; ++k)
            gens.push_back({RatF(random_pol(fld, 3, rng)), RatF(random_pol(fld, 2, rng))});
        gens.push_back(g2_mul(grp, gens[0], gens[1]));
        for (const auto& g : gens) {
            G2Elem img = g2_apply_standard(grp, phi, g);
            img.z = img.z + twist(g.y);
            gsamples.emplace_back(g, img);
        }
        json deck = serde::g2_deck_to_json(fld, cfg.e, samples.linear, gsamples);
        deck["truth"] = json{{"tau", serde::to_json(tau)}, {"a", serde::to_json(a)},
                             {"twist", twist.to_json()}};
        return deck;
    }
    if (kind == "heis-deck" || kind == "hp-deck") {
        HeisGroup grp(SymplecticForm(cfg.m), fld);
        RatMat T = random_conformal(grp.form, fld, rng);
        FieldAut tau = random_fieldaut(fld, rng);
        LinearTwist fx = LinearTwist::random(fld, rng), fy = LinearTwist::random(fld, rng);
        StandardAutHeis phi(T, tau, grp.form, integrality_certificate(T, fld));
        auto deck_samples = build_heis_deck(grp, phi, fx, fy, rng);
        json truth{{"T", serde::to_json(T)},
                   {"c_T", serde::to_json(phi.c_T)},
                   {"tau", serde::to_json(tau)},
                   {"fx", fx.to_json()},
                   {"fy", fy.to_json()}};
        if (kind == "heis-deck") {
            json deck = serde::heis_deck_to_json(fld, cfg.m, deck_samples);
            deck["truth"] = truth;
            return deck;
        }
        HpGroup hp(cfg.m, fld);
        std::vector<std::pair<HpElem, HpElem>> hp_samples;
        for (const auto& [g, img] : deck_samples)
            hp_samples.emplace_back(frobenius_transport(grp, hp, g), frobenius_transport(grp, hp, img));
        FqElem gamma = random_fq_nonzero(fld, rng);
        for (int j = 1; j <= 4; ++j) {
            if (j % cfg.p == 0) continue;
            HpElem g{std::vector<RatF>(static_cast<std::size_t>(cfg.m), RatF::zero(fld)),
                     std::vector<RatF>(static_cast<std::size_t>(cfg.m), RatF::zero(fld)),
                     RatF(Pol::t_inv(fld, j))};
            HpElem img = g;
            img.z = img.z * RatF(Pol::constant(fld, gamma));
            hp_samples.emplace_back(g, img);
        }
        json deck = serde::hp_deck_to_json(fld, cfg.m, hp_samples);
        truth["a_scalar"] = serde::to_json(gamma);
        deck["truth"] = truth;
        return deck;
    }
    return generate_instances(kind, cfg, cfg.seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic, codimension audits and rigidity solvers for unipotent groups over F_q((t))"};
    app.require_subcommand(1);
    app.fallthrough();

    ExperimentConfig cfg;
    std::string schedule_text, json_out, csv_out;
    app.add_option("--p", cfg.p, "field characteristic (prime)");
    app.add_option("--d", cfg.d, "extension degree of F_q over F_p");
    app.add_option("--e", cfg.e, "bracket exponent, a power of p");
    app.add_option("--m", cfg.m, "Heisenberg half-dimension");
    app.add_option("--seed", cfg.seed, "base seed; instance i uses seed + i");
    app.add_option("--schedule", schedule_text, "cap schedule D1:N1,D2:N2,...");
    app.add_option("--json-out", json_out, "write the JSON/JSONL result here");

    auto* verify = app.add_subcommand("verify", "run an audit suite and report pass/fail");
    std::string suite;
    verify->add_option("suite", suite, "one of: " + [] {
                           std::string s;
                           for (const auto& n : suite_names()) s += n + " ";
                           return s;
                       }())
        ->required();
    verify->add_option("--trials", cfg.trials, "instance count");
    verify->add_option("--k", cfg.tail_k, "max tail codimension exercised");
    verify->add_option("--Q", cfg.Qs, "coset exponents (powers of p)");
    verify->add_option("--qsep-max-m", cfg.qsep_max_m, "max degree for the separability count");
    verify->add_option("--csv-out", csv_out, "write the per-instance table as CSV");

    auto* solve = app.add_subcommand("solve", "recover standard parameters from a sample deck");
    std::string target, deck_path;
    solve->add_option("target", target, "g2 | heis | hp")->required();
    solve->add_option("--in", deck_path, "deck JSON file")->required();

    auto* gen = app.add_subcommand("gen", "generate instance lists or solver decks");
    std::string kind;
    gen->add_option("kind", kind, "suite name, or g2-deck | heis-deck | hp-deck")->required();
    gen->add_option("--trials", cfg.trials, "instance count");
    gen->add_option("--k", cfg.tail_k, "max tail codimension exercised");
    gen->add_option("--Q", cfg.Qs, "coset exponents (powers of p)");

    auto* report = app.add_subcommand("report", "merge JSONL reports into one summary");
    std::vector<std::string> merge_files;
    report->add_option("--merge", merge_files, "JSONL report files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!schedule_text.empty()) cfg.schedule_override = parse_schedule(schedule_text);

        if (*verify) {
            SuiteReport rep = run_suite(suite, cfg);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw UsageError("cannot open output file: " + json_out);
                rep.write_jsonl(out);
            }
            if (!csv_out.empty()) {
                std::ofstream out(csv_out);
                if (!out) throw UsageError("cannot open output file: " + csv_out);
                rep.write_csv(out);
            }
            std::cout << rep.summary().dump(2) << "\n";
            std::cout << (rep.all_pass() ? "PASS" : "FAIL") << " " << suite << ": " << rep.passed()
                      << "/" << rep.records.size() << "\n";
            return rep.all_pass() ? 0 : 1;
        }

        if (*solve) {
            json deck = load_json_file(deck_path);
            json result;
            if (target == "g2")
                result = solve_g2_deck(deck);
            else if (target == "heis")
                result = solve_heis_deck(deck);
            else if (target == "hp")
                result = solve_hp_deck(deck);
            else
                throw UsageError("solve target must be g2, heis or hp");
            if (!json_out.empty())
                write_json_file(json_out, result);
            else
                std::cout << result.dump(2) << "\n";
            return result.value("ok", false) ? 0 : 1;
        }

        if (*gen) {
            json out = generate_deck(kind, cfg);
            if (!json_out.empty())
                write_json_file(json_out, out);
            else
                std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*report) {
            json suites = json::object();
            std::size_t total = 0, passed = 0;
            for (const auto& path : merge_files) {
                std::ifstream in(path);
                if (!in) throw UsageError("cannot open report file: " + path);
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    json j = json::parse(line);
                    if (j.value("summary", false)) continue;
                    std::string s = j.at("suite").get<std::string>();
                    if (!suites.contains(s)) suites[s] = json{{"total", 0}, {"passed", 0}};
                    suites[s]["total"] = suites[s]["total"].get<int>() + 1;
                    ++total;
                    if (j.at("pass").get<bool>()) {
                        suites[s]["passed"] = suites[s]["passed"].get<int>() + 1;
                        ++passed;
                    }
                }
            }
            json merged{{"files", merge_files}, {"suites", suites}, {"total", total},
                        {"passed", passed},     {"all_pass", total == passed}};
            if (!json_out.empty())
                write_json_file(json_out, merged);
            else
                std::cout << merged.dump(2) << "\n";
            return total == passed ? 0 : 1;
        }
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 2;
    } catch (const HypothesisError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
