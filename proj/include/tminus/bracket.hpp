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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tminus/fpspace.hpp"

namespace tminus {

/// The F_p-bilinear form <a,b> = a^e b - a b^e on F^-, e a power of p.
/// e <= 2 is legal for plain arithmetic; the audits that sit under an
/// "e > 2" assumption refuse it explicitly.
struct BracketForm {
    int e;
    FqField fld;

    BracketForm(int ee, FqField f) : e(ee), fld(std::move(f)) {
        if (e < 1 || !is_power_of(fld.p(), e))
            throw ParameterError("BracketForm: e must be a positive power of p");
    }
};

inline Pol bracket(const Pol& a, const Pol& b, const BracketForm& form) {
    if (a.field() != form.fld || b.field() != form.fld)
        throw ParameterError("bracket: mismatched field parameters");
    return a.frobenius_power(form.e) * b - a * b.frobenius_power(form.e);
}

/// The F_p-subspace a (F^-)^Q intersected with a window: spanned by
/// a g^Q t^-jQ for g in a basis of F_q over F_p, deg a + jQ <= N. The set
/// is a subspace because x -> x^Q is additive in characteristic p.
inline FpSubspace power_coset_space(const Pol& a, int Q, const Window& w) {
    if (a.is_zero()) throw DomainError("power_coset_space: zero representative");
    if (Q < 1 || !is_power_of(w.fld.p(), Q))
        throw ParameterError("power_coset_space: Q must be a positive power of p");
    if (a.deg() > w.N) throw WindowError("power_coset_space: deg a exceeds the window");
    const FqField& fld = w.fld;
    std::vector<Pol> gens;
    for (int j = 0; a.deg() + j * Q <= w.N; ++j) {
        for (int i = 0; i < fld.d(); ++i) {
            std::vector<int> c(static_cast<std::size_t>(fld.d()), 0);
            c[static_cast<std::size_t>(i)] = 1;
            FqElem basis_elem = fld.from_coeffs(c);
            gens.push_back(a.shift_scale(basis_elem.pow(Q), j * Q));
        }
    }
    return FpSubspace::span_pols(gens, w);
}

/// Span of pairwise brackets of two generator lists inside a window.
inline FpSubspace bracket_space(const std::vector<Pol>& left, const std::vector<Pol>& right,
                                const BracketForm& form, const Window& w) {
    std::vector<FpVec> rows;
    rows.reserve(left.size() * right.size());
    for (const auto& u : left) {
        for (const auto& v : right) {
            Pol br = bracket(u, v, form);
            if (!br.is_zero() && br.deg() > w.N)
                throw WindowError("bracket_space: window too small for generator brackets");
            rows.push_back(embed(br, w));
        }
    }
    return FpSubspace::span(std::move(rows), w);
}

inline FpSubspace bracket_space(const FpSubspace& left, const FpSubspace& right,
                                const BracketForm& form, const Window& w) {
    return bracket_space(left.pol_basis(), right.pol_basis(), form, w);
}

/// One generating family on the left of a bracket space over the modeled V:
/// Q == 0 denotes the single element rep; Q >= 1 denotes rep (F^-)^Q ^ V.
struct SpanTermSpec {
    Pol rep;
    int Q = 0;
};

enum class CodimAmbient {
    kWindow,      // codimension inside the truncation of F^-
    kBracketOfV,  // codimension inside <V, V>
};

/// Target space: sum over terms of < term , V >, measured inside the
/// chosen ambient.
struct CodimProblem {
    TailSubspaceSpec tail;
    std::vector<SpanTermSpec> terms;
    CodimAmbient ambient = CodimAmbient::kWindow;
};

struct CapStep {
    int D;  // generator degree cap
    int N;  // window for span computations
};

struct CapSchedule {
    std::vector<CapStep> steps;
};

/// The stock schedule: two steps at D = 6 and 9, windows 4(e+1)D.
inline CapSchedule default_schedule(int e) {
    return CapSchedule{{CapStep{6, 4 * (e + 1) * 6}, CapStep{9, 4 * (e + 1) * 9}}};
}

/// A schedule whose reference window (e+1)D covers at least min_reach, with
/// computation windows (e^2+1)D sized for the asymmetric caps (D, eD).
inline CapSchedule make_schedule(int e, int min_reach, int step_gap = 3) {
    int d1 = (min_reach + e) / (e + 1);
    if (d1 < 6) d1 = 6;
    int d2 = d1 + step_gap;
    return CapSchedule{{CapStep{d1, (e * e + 1) * d1}, CapStep{d2, (e * e + 1) * d2}}};
}

/// Finite evidence for a "finite codimension" claim. The measured value is
/// the codimension of the capped span inside the ambient, both restricted
/// to the fixed reference window R = min((e+1) D1, N1/2) of the first
/// step. Growth is probed separately: at the last step's caps the same
/// codimension is measured in the larger reference R + 3e. stable is set
/// only if the fixed-window value agreed across the last two schedule
/// steps AND the growth probe matched, or an ideal witness certifies every
/// degree above witness_degree.
struct CodimReport {
    int codim = -1;
    int input_cap = 0;
    int window = 0;
    bool stable = false;
    std::optional<int> witness_degree;
    std::vector<int> step_values;
    int reference = 0;
    int probe_reference = 0;
    int probe_value = -1;
};

struct IdealWitness {
    Pol b;
    bool verified = false;
    int witness_degree = 0;
};

/// The ideal witness of the codimension bound: b = c^{e^2} - c, and for
/// every y in F^-,
///     < a c^Q, y > - < a, c^{Q/e} y > = a^e b^{Q/e} y,
/// so the two bracket families cover the whole ideal a^e b^{Q/e} F^-. The
/// check runs the identity on every basis monomial that fits the window.
inline IdealWitness ideal_witness(const Pol& a, const Pol& c, int Q, const BracketForm& form,
                                  const Window& w) {
    if (a.is_zero()) throw DomainError("ideal_witness: a must be nonzero");
    if (c.is_constant()) throw DomainError("ideal_witness: c must not be constant");
    if (form.e < 2) throw ParameterError("ideal_witness: requires e >= 2");
    if (Q <= 1 || !is_power_of(form.fld.p(), Q) || Q % form.e != 0)
        throw ParameterError("ideal_witness: Q must be a power of p divisible by e");
    const int e = form.e;
    Pol b = c.frobenius_power(e * e) - c;
    Pol ideal_gen = a.frobenius_power(e) * b.frobenius_power(Q / e);
    Pol cQ = c.frobenius_power(Q);
    Pol cQe = c.frobenius_power(Q / e);
    Pol acQ = a * cQ;
    IdealWitness out{b, true, ideal_gen.deg()};
    const FqField& fld = form.fld;
    for (int j = 0; ideal_gen.deg() + j <= w.N; ++j) {
        for (int i = 0; i < fld.d(); ++i) {
            std::vector<int> coords(static_cast<std::size_t>(fld.d()), 0);
            coords[static_cast<std::size_t>(i)] = 1;
            Pol y = Pol::monomial(fld, fld.from_coeffs(coords), j);
            Pol lhs = bracket(acQ, y, form) - bracket(a, cQe * y, form);
            if (lhs != ideal_gen * y) {
                out.verified = false;
                return out;
            }
        }
    }
    return out;
}

namespace detail {

/// Search for a witness c for the term a (F^-)^Q ^ V: nonconstant, of
/// degree <= k+1, with a c^Q in V. The conditions "a c^Q in V" are k linear
/// constraints on the coefficients of c, so candidates come from a kernel.
inline std::optional<Pol> find_witness_c(const Pol& a, int Q, const TailSubspaceSpec& tail) {
    const FqField& fld = a.field();
    const int k = tail.k();
    const int cdeg = k + 1;
    const int n = fld.d() * (cdeg + 1);
    // Row r of the system: functional r applied to a * (basis monomial)^Q.
    std::vector<FpVec> rows(tail.constraints.size(), FpVec(static_cast<std::size_t>(n), 0));
    for (int j = 0; j <= cdeg; ++j) {
        for (int i = 0; i < fld.d(); ++i) {
            std::vector<int> coords(static_cast<std::size_t>(fld.d()), 0);
            coords[static_cast<std::size_t>(i)] = 1;
            Pol mono = Pol::monomial(fld, fld.from_coeffs(coords), j);
            Pol img = a * mono.frobenius_power(Q);
            for (std::size_t r = 0; r < tail.constraints.size(); ++r) {
                int acc = 0;
                for (int jj = 0; jj <= tail.D; ++jj)
                    for (int ii = 0; ii < fld.d(); ++ii)
                        acc += tail.constraints[r][static_cast<std::size_t>(jj * fld.d() + ii)] *
                               img.coeff(jj).coeff(ii);
                rows[r][static_cast<std::size_t>(j * fld.d() + i)] = static_cast<std::uint8_t>(acc % fld.p());
            }
        }
    }
    std::vector<FpVec> kernel = nullspace(std::move(rows), n, fld.p());
    // Enumerate kernel combinations until one is nonconstant.
    const int p = fld.p();
    std::int64_t total = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        total *= p;
        if (total > 100000) {
            total = 100000;
            break;
        }
    }
    Window cwin(cdeg, fld);
    for (std::int64_t idx = 1; idx < total; ++idx) {
        FpVec v(static_cast<std::size_t>(n), 0);
        std::int64_t t = idx;
        for (const auto& kv : kernel) {
            int coeff = static_cast<int>(t % p);
            t /= p;
            if (coeff == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = static_cast<std::uint8_t>((v[j] + coeff * kv[j]) % p);
        }
        Pol c = unembed(v, cwin);
        if (!c.is_constant()) return c;
    }
    return std::nullopt;
}

struct StepSpaces {
    FpSubspace target;
    FpSubspace ambient;
};

inline StepSpaces build_step(const CodimProblem& problem, const BracketForm& form, int D, int N) {
    const FqField& fld = form.fld;
    const int e = form.e;
    Window win(N, fld);
    int right_cap = std::min(e * D, (N - D) / e);
    if (right_cap < D) right_cap = D;
    FpSubspace v_left = problem.tail.realize(Window(D, fld));
    std::vector<Pol> right_gens = problem.tail.realize(Window(right_cap, fld)).pol_basis();

    std::vector<FpVec> target_rows;
    for (const auto& term : problem.terms) {
        std::vector<Pol> left_gens;
        if (term.Q == 0) {
            left_gens.push_back(term.rep);
        } else {
            FpSubspace coset = power_coset_space(term.rep, term.Q, Window(D, fld));
            left_gens = subspace_intersect(coset, v_left).pol_basis();
        }
        for (const auto& u : left_gens)
            for (const auto& v : right_gens) target_rows.push_back(embed(bracket(u, v, form), win));
    }
    FpSubspace target = FpSubspace::span(std::move(target_rows), win);

    if (problem.ambient == CodimAmbient::kWindow)
        return {std::move(target), FpSubspace::full(win)};
    FpSubspace ambient = bracket_space(v_left.pol_basis(), right_gens, form, win);
    return {std::move(target), std::move(ambient)};
}

}  // namespace detail

/// Measure the codimension of the problem's target space with caps growing
/// along the schedule, in each step's reference window. See CodimReport.
inline CodimReport stabilized_codim(const CodimProblem& problem, const BracketForm& form,
                                    const CapSchedule& schedule, bool seek_witness = true) {
    const int e = form.e;
    if (schedule.steps.size() < 2) throw ParameterError("stabilized_codim: schedule needs >= 2 steps");
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto& st = schedule.steps[i];
        if (st.N < (e + 1) * st.D) throw ParameterError("stabilized_codim: step needs N >= (e+1) D");
        if (st.D < problem.tail.D)
            throw ParameterError("stabilized_codim: step cap below the tail constraint depth");
        if (i > 0 && (st.D <= schedule.steps[i - 1].D || st.N < schedule.steps[i - 1].N))
            throw ParameterError("stabilized_codim: caps must increase and windows must not shrink");
    }
    for (const auto& term : problem.terms) {
        if (term.rep.is_zero()) throw DomainError("stabilized_codim: zero term representative");
        if (term.rep.deg() > schedule.steps.front().D)
            throw ParameterError("stabilized_codim: term representative exceeds first cap");
        if (problem.ambient == CodimAmbient::kBracketOfV && !problem.tail.contains(term.rep))
            throw ParameterError("stabilized_codim: term representative lies outside V");
    }

    CodimReport report;
    const CapStep& first = schedule.steps.front();
    const CapStep& last = schedule.steps.back();
    report.reference = std::min((e + 1) * first.D, first.N / 2);
    report.probe_reference = std::min(report.reference + 3 * e, last.N / 2);
    for (std::size_t s = 0; s < schedule.steps.size(); ++s) {
        const auto& st = schedule.steps[s];
        detail::StepSpaces spaces = detail::build_step(problem, form, st.D, st.N);
        FpSubspace t_low = spaces.target.restrict_to_degree(report.reference);
        FpSubspace a_low = spaces.ambient.restrict_to_degree(report.reference);
        report.step_values.push_back(a_low.dim() - t_low.dim());
        report.input_cap = st.D;
        report.window = st.N;
        if (s + 1 == schedule.steps.size()) {
            FpSubspace t_probe = spaces.target.restrict_to_degree(report.probe_reference);
            FpSubspace a_probe = spaces.ambient.restrict_to_degree(report.probe_reference);
            report.probe_value = a_probe.dim() - t_probe.dim();
        }
    }
    report.codim = report.step_values.back();
    std::size_t n = report.step_values.size();
    report.stable = report.step_values[n - 1] == report.step_values[n - 2] &&
                    report.probe_value == report.codim;

    if (seek_witness) {
        // A verified witness certifies the whole tail of the ideal, which
        // upgrades (or establishes) stability for coset problems.
        for (const auto& term : problem.terms) {
            if (term.Q <= 1 || term.Q % e != 0 || e < 2) continue;
            if (!problem.tail.contains(term.rep)) continue;
            auto c = detail::find_witness_c(term.rep, term.Q, problem.tail);
            if (!c) continue;
            IdealWitness wit = ideal_witness(term.rep, *c, term.Q, form, Window(last.N, form.fld));
            if (wit.verified) {
                report.witness_degree = wit.witness_degree;
                if (wit.witness_degree < report.reference) report.stable = true;
                break;
            }
        }
    }
    return report;
}

struct PropAbResult {
    bool predicted = false;
    bool measured = false;
    CodimReport report;
};

/// Audit of the finite-codimension dichotomy for <a,V> + <b,V> inside
/// <V,V>: finite codimension iff a/b is an e-th power in F. predicted runs
/// the exact support criterion; measured runs the stabilized codimension.
inline PropAbResult prop_ab_audit(const Pol& a, const Pol& b, const TailSubspaceSpec& spec,
                                  const BracketForm& form, const CapSchedule& schedule) {
    if (form.e <= 2)
        throw HypothesisError("prop_ab_audit: requires e > 2 (the e = p = 2 case is unresolved)");
    if (a.is_zero() || b.is_zero()) throw DomainError("prop_ab_audit: zero input");
    if (!spec.contains(a) || !spec.contains(b))
        throw ParameterError("prop_ab_audit: a and b must lie in the modeled V");
    // a/b in F_q (scalar ratio) violates the hypothesis of the dichotomy.
    if (a.deg() == b.deg() && a * b.lead() == b * a.lead())
        throw HypothesisError("prop_ab_audit: a/b lies in F_q");
    PropAbResult out;
    out.predicted = eth_power_ratio_test(a, b, form.e);
    CodimProblem problem{spec, {SpanTermSpec{a, 0}, SpanTermSpec{b, 0}}, CodimAmbient::kBracketOfV};
    out.report = stabilized_codim(problem, form, schedule, false);
    out.measured = out.report.stable;
    return out;
}

struct CodimFormulaResult {
    int measured = 0;
    int main_term = 0;
    int S = 0;
    int X = 0;
    int bound = 0;
    bool pass = false;
    CodimReport report;
};

/// Audit of the codimension formula for < a(F^-)^Q ^ V , V > in F^-:
///     measured = d (e-1) deg a + S + X,  0 <= X <= d e (k+1) Q + 3k,
/// with S = d * deg of the largest c with c^e | a.
inline CodimFormulaResult codim_formula_audit(const Pol& a, const TailSubspaceSpec& spec, int Q,
                                              const BracketForm& form, const CapSchedule& schedule,
                                              Rng& rng) {
    if (form.e <= 2) throw HypothesisError("codim_formula_audit: requires e > 2");
    if (a.is_zero()) throw DomainError("codim_formula_audit: a must be nonzero");
    if (!spec.contains(a)) throw DomainError("codim_formula_audit: a must lie in the modeled V");
    if (Q <= 1 || !is_power_of(form.e, Q))
        throw ParameterError("codim_formula_audit: Q must be a power of e, > 1");
    const int d = form.fld.d();
    const int k = spec.k();
    CodimFormulaResult out;
    Factorization fact = factorize(a, rng);
    int s_deg = 0;
    for (const auto& [u, m] : fact.factors) s_deg += (m / form.e) * u.deg();
    out.S = d * s_deg;
    out.main_term = d * (form.e - 1) * a.deg();
    CodimProblem problem{spec, {SpanTermSpec{a, Q}}, CodimAmbient::kWindow};
    out.report = stabilized_codim(problem, form, schedule);
    out.measured = out.report.codim;
    out.X = out.measured - out.main_term - out.S;
    out.bound = d * form.e * (k + 1) * Q + 3 * k;
    out.pass = 0 <= out.X && out.X <= out.bound;
    return out;
}

/// Audit of the containment <a,F^-> + <1,F^-> inside <a^{e^n},F^-> +
/// <1,F^->, truncated: left generated at cap D, right at the cap e^n(D +
/// deg a) that the chain of rewriting identities needs.
inline bool frobenius_monotonicity_audit(const Pol& a, int n, const BracketForm& form,
                                         const CapSchedule& schedule) {
    if (n < 0) throw ParameterError("frobenius_monotonicity_audit: n must be >= 0");
    if (a.is_zero()) throw DomainError("frobenius_monotonicity_audit: a must be nonzero");
    if (n == 0 || a.is_constant()) return true;  // identical spaces
    const FqField& fld = form.fld;
    const int e = form.e;
    const CapStep& st = schedule.steps.back();
    const int D = st.D;
    int en = 1;
    for (int i = 0; i < n; ++i) en *= e;
    const int right_cap = en * (D + a.deg());
    Pol a_pow = a.frobenius_power(en);
    const int max_bracket = std::max(e * a_pow.deg() + right_cap, a_pow.deg() + e * right_cap);
    const int N = st.N >= max_bracket ? st.N : max_bracket;
    Window win(N, fld);

    std::vector<Pol> low_monos, high_monos;
    for (int j = 0; j <= D; ++j)
        for (int i = 0; i < fld.d(); ++i) {
            std::vector<int> c(static_cast<std::size_t>(fld.d()), 0);
            c[static_cast<std::size_t>(i)] = 1;
            low_monos.push_back(Pol::monomial(fld, fld.from_coeffs(c), j));
        }
    for (int j = 0; j <= right_cap; ++j)
        for (int i = 0; i < fld.d(); ++i) {
            std::vector<int> c(static_cast<std::size_t>(fld.d()), 0);
            c[static_cast<std::size_t>(i)] = 1;
            high_monos.push_back(Pol::monomial(fld, fld.from_coeffs(c), j));
        }

    std::vector<FpVec> right_rows;
    Pol one = Pol::one(fld);
    for (const auto& y : high_monos) {
        right_rows.push_back(embed(bracket(a_pow, y, form), win));
        right_rows.push_back(embed(bracket(one, y, form), win));
    }
    FpSubspace right = FpSubspace::span(std::move(right_rows), win);

    for (const auto& y : low_monos) {
        if (!right.contains(bracket(a, y, form))) return false;
        if (!right.contains(bracket(one, y, form))) return false;
    }
    return true;
}

struct GcdCodimResult {
    int measured = 0;
    int gcd_deg = 0;
    CodimReport report;
};

/// Codimension of <a1(F^-)^Q ^ V, V> + <a2(F^-)^Q ^ V, V> inside <V,V>,
/// against the degree of gcd(a1, a2). The affine constant is fitted by the
/// caller across instances.
inline GcdCodimResult gcd_codim_audit(const Pol& a1, const Pol& a2, const TailSubspaceSpec& spec,
                                      int Q, const BracketForm& form, const CapSchedule& schedule) {
    if (form.e <= 2) throw HypothesisError("gcd_codim_audit: requires e > 2");
    if (a1.is_zero() || a2.is_zero()) throw DomainError("gcd_codim_audit: zero input");
    if (!spec.contains(a1) || !spec.contains(a2))
        throw ParameterError("gcd_codim_audit: inputs must lie in the modeled V");
    GcdCodimResult out;
    out.gcd_deg = gcd(a1, a2).deg();
    CodimProblem problem{spec, {SpanTermSpec{a1, Q}, SpanTermSpec{a2, Q}}, CodimAmbient::kBracketOfV};
    out.report = stabilized_codim(problem, form, schedule);
    out.measured = out.report.codim;
    return out;
}

struct QsepCountResult {
    std::int64_t count = 0;
    std::int64_t bound_num = 0;  // q^{m+2}
    std::int64_t bound_den = 0;  // q^{Q-1} - 1
    bool pass = false;
};

/// Exhaustive count of the degree-m elements of F^- that are divisible by
/// a nonconstant Q-th power, against the bound q^{m+2} / (q^{Q-1} - 1).
inline QsepCountResult qseparable_count_audit(const FqField& fld, int Q, int m) {
    if (Q <= 1 || !is_power_of(fld.p(), Q))
        throw ParameterError("qseparable_count_audit: Q must be a power of p, > 1");
    if (m < 1) throw ParameterError("qseparable_count_audit: m must be >= 1");
    const std::int64_t q = fld.q();
    double size = 1;
    for (int i = 0; i <= m; ++i) size *= static_cast<double>(q);
    if (size > 2e7)
        throw ResourceError("qseparable_count_audit: q^(m+1) exceeds the enumeration threshold 2e7");

    QsepCountResult out;
    out.bound_num = 1;
    for (int i = 0; i < m + 2; ++i) out.bound_num *= q;
    out.bound_den = 1;
    for (int i = 0; i < Q - 1; ++i) out.bound_den *= q;
    out.bound_den -= 1;

    // Divisibility by a nonconstant Q-th power is equivalent to
    // divisibility by u^Q for some monic nonconstant u, deg u <= m/Q.
    std::vector<Pol> qth_powers;
    for (int du = 1; du * Q <= m; ++du) {
        std::int64_t total = 1;
        for (int i = 0; i < du; ++i) total *= q;
        for (std::int64_t idx = 0; idx < total; ++idx) {
            std::int64_t v = idx;
            std::vector<FqElem> c;
            for (int i = 0; i < du; ++i) {
                c.push_back(fld.element(v % q));
                v /= q;
            }
            c.push_back(fld.one());
            qth_powers.push_back(Pol::from_coeffs(fld, std::move(c)).frobenius_power(Q));
        }
    }

    if (!qth_powers.empty()) {
        std::int64_t lower = 1;
        for (int i = 0; i < m; ++i) lower *= q;
        // all a with deg exactly m: coefficient index in [lower*1, lower*q)
        // top digit nonzero
        for (std::int64_t top = 1; top < q; ++top) {
            for (std::int64_t rest = 0; rest < lower; ++rest) {
                std::int64_t v = rest;
                std::vector<FqElem> c;
                for (int i = 0; i < m; ++i) {
                    c.push_back(fld.element(v % q));
                    v /= q;
                }
                c.push_back(fld.element(top));
                Pol a = Pol::from_coeffs(fld, std::move(c));
                for (const auto& uq : qth_powers) {
                    if (a.divisible_by(uq)) {
                        ++out.count;
                        break;
                    }
                }
            }
        }
    }
    out.pass = out.count * out.bound_den <= out.bound_num;
    return out;
}

}  // namespace tminus
