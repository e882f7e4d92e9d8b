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

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tminus/bracket.hpp"
#include "tminus/groups.hpp"

namespace tminus {

/// An F_p-linear map sampled on an explicit finite basis of a slice of V1.
struct LinearMapSample {
    std::vector<Pol> domain;
    std::vector<Pol> images;
};

/// Sampled values of the induced map on bracket values.
struct BracketMapSample {
    std::vector<std::pair<Pol, Pol>> pairs;
    std::vector<Pol> images;
};

/// A solver's refusal: what failed, and which sample indices witness it.
struct Inconsistent {
    std::string reason;
    std::vector<std::size_t> residual;
};

/// Parameters of a recovered affine-Frobenius map f -> a tau(f). residual
/// is empty on success. galois_ambiguous flags data fixed by several sigma
/// (e.g. everything in F_p); the least Frobenius power is reported then.
struct AffineRecovery {
    RatF a;
    FieldAut tau;
    bool galois_ambiguous = false;
};

using AffineResult = std::variant<AffineRecovery, Inconsistent>;

struct StandardLambdaSamples {
    LinearMapSample linear;
    BracketMapSample brackets;
};

/// Sample the standard map f -> a tau(f) on a basis, with the induced
/// bracket map carrying the multiplier a^{e+1}.
inline StandardLambdaSamples make_standard_lambda(const FieldAut& tau, const Pol& a,
                                                  const std::vector<Pol>& basis,
                                                  const BracketForm& form) {
    if (a.is_zero()) throw ParameterError("make_standard_lambda: a must be nonzero");
    StandardLambdaSamples out;
    out.linear.domain = basis;
    for (const auto& f : basis) out.linear.images.push_back(a * substitute_affine(f, tau));
    Pol mult = a.pow(form.e + 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            out.brackets.pairs.emplace_back(basis[i], basis[j]);
            out.brackets.images.push_back(mult * substitute_affine(bracket(basis[i], basis[j], form), tau));
        }
    }
    return out;
}

/// Does lambda_* <a,b> = < lambda^*(a), lambda^*(b) > hold on every
/// recorded pair? Exact comparison.
inline bool check_bracket_compat(const LinearMapSample& ls, const BracketMapSample& bs,
                                 const BracketForm& form) {
    auto index_of = [&](const Pol& f) -> std::size_t {
        for (std::size_t i = 0; i < ls.domain.size(); ++i)
            if (ls.domain[i] == f) return i;
        throw ParameterError("check_bracket_compat: pair element not in the sampled domain");
    };
    if (bs.pairs.size() != bs.images.size())
        throw ParameterError("check_bracket_compat: pair/image length mismatch");
    for (std::size_t k = 0; k < bs.pairs.size(); ++k) {
        const auto& [u, w] = bs.pairs[k];
        if (u == w) {
            if (!bs.images[k].is_zero()) return false;
            continue;
        }
        Pol expect = bracket(ls.images[index_of(u)], ls.images[index_of(w)], form);
        if (bs.images[k] != expect) return false;
    }
    return true;
}

/// Recover (a, sigma, alpha, beta) with lambda^*(f) = a sigma(f(alpha t^-1
/// + beta)) from a sampled basis containing 1 and t^-1, or refuse with the
/// residual list. The candidate a is the image of 1; each sigma in the
/// Galois group is tried against the full sample.
inline AffineResult solve_affine(const LinearMapSample& ls, const BracketForm& form) {
    if (form.e <= 2)
        throw HypothesisError("solve_affine: requires e > 2 (the e = 1 case is abelian, e = p = 2 unresolved)");
    if (ls.domain.size() != ls.images.size() || ls.domain.empty())
        throw ParameterError("solve_affine: malformed sample");
    const FqField& fld = form.fld;
    {
        int max_deg = 0;
        for (const auto& f : ls.domain) max_deg = std::max(max_deg, std::max(f.deg(), 0));
        Window w(max_deg, fld);
        if (FpSubspace::span_pols(ls.domain, w).dim() != static_cast<int>(ls.domain.size()))
            throw ParameterError("solve_affine: domain basis must be F_p-independent");
    }
    Pol one = Pol::one(fld), tinv = Pol::t_inv(fld, 1);
    std::size_t i1 = ls.domain.size(), it = ls.domain.size();
    for (std::size_t i = 0; i < ls.domain.size(); ++i) {
        if (ls.domain[i] == one) i1 = i;
        if (ls.domain[i] == tinv) it = i;
    }
    if (i1 == ls.domain.size() || it == ls.domain.size())
        throw ParameterError("solve_affine: domain basis must contain 1 and t^-1");

    const Pol& a_hat = ls.images[i1];
    if (a_hat.is_zero()) return Inconsistent{"image of 1 is zero", {i1}};
    RatF ratio = RatF(ls.images[it]) / RatF(a_hat);
    if (!ratio.is_polynomial() || ratio.to_pol().deg() != 1)
        return Inconsistent{"image(t^-1)/image(1) is not of degree 1", {it}};
    FqElem c1 = ratio.to_pol().coeff(1), c0 = ratio.to_pol().coeff(0);

    std::vector<FieldAut> consistent;
    std::vector<std::size_t> best_residual;
    for (const auto& sigma : enumerate_galois(fld)) {
        int inv_power = (fld.d() - sigma.power % fld.d()) % fld.d();
        FqElem alpha = c1.frobenius(inv_power), beta = c0.frobenius(inv_power);
        if (alpha.is_zero()) continue;
        FieldAut cand(sigma, alpha, beta);
        std::vector<std::size_t> residual;
        for (std::size_t j = 0; j < ls.domain.size(); ++j) {
            if (ls.images[j] != a_hat * substitute_affine(ls.domain[j], cand)) residual.push_back(j);
        }
        if (residual.empty())
            consistent.push_back(cand);
        else if (best_residual.empty() || residual.size() < best_residual.size())
            best_residual = std::move(residual);
    }
    if (consistent.empty()) return Inconsistent{"no Galois candidate matches every sample", best_residual};
    AffineRecovery rec{RatF(a_hat), consistent.front(), consistent.size() > 1};
    return rec;
}

/// Q-th root in F^- for Q a power of p.
inline std::optional<Pol> qth_root(const Pol& a, int Q) {
    if (!is_power_of(a.field().p(), Q)) throw ParameterError("qth_root: Q must be a power of p");
    Pol r = a;
    while (Q > 1) {
        auto step = r.pth_root();
        if (!step) return std::nullopt;
        r = *step;
        Q /= a.field().p();
    }
    return r;
}

/// The coset-rescaling reduction: turn samples of lambda^* on a1 W^Q into
/// samples of the induced mu^* on W, via lambda^*(a1 w^Q) = a2 mu^*(w)^Q.
/// This is how a caller whose slice omits 1 and t^-1 normalizes before
/// solve_affine.
inline LinearMapSample reduce_by_coset(const LinearMapSample& ls, const Pol& a1, const Pol& a2, int Q) {
    if (a1.is_zero() || a2.is_zero()) throw DomainError("reduce_by_coset: zero coset representative");
    LinearMapSample out;
    for (std::size_t i = 0; i < ls.domain.size(); ++i) {
        auto [qd, rd] = Pol::divmod(ls.domain[i], a1);
        if (!rd.is_zero()) throw DomainError("reduce_by_coset: domain sample not divisible by a1");
        auto w = qth_root(qd, Q);
        if (!w) throw DomainError("reduce_by_coset: domain sample is not a Q-th power multiple");
        auto [qi, ri] = Pol::divmod(ls.images[i], a2);
        if (!ri.is_zero()) throw DomainError("reduce_by_coset: image sample not divisible by a2");
        auto wi = qth_root(qi, Q);
        if (!wi) throw DomainError("reduce_by_coset: image sample is not a Q-th power multiple");
        out.domain.push_back(*w);
        out.images.push_back(*wi);
    }
    return out;
}

/// Split sampled images of a G2 isomorphism into standard part and central
/// twist: zeta(gamma) = phi(gamma)^-1 lambda(gamma), which must be central,
/// and a homomorphism on every product present among the samples.
inline std::vector<G2Elem> split_central(const std::vector<std::pair<G2Elem, G2Elem>>& samples,
                                         const StandardAutG2& phi, const G2Group& grp) {
    std::vector<G2Elem> zeta;
    zeta.reserve(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        G2Elem quotient =
            g2_mul(grp, g2_inv(grp, g2_apply_standard(grp, phi, samples[k].first)), samples[k].second);
        if (!quotient.y.is_zero())
            throw DecompositionError("split_central: non-central quotient at sample " + std::to_string(k));
        zeta.push_back(std::move(quotient));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            G2Elem prod = g2_mul(grp, samples[i].first, samples[j].first);
            for (std::size_t k = 0; k < samples.size(); ++k) {
                if (samples[k].first != prod) continue;
                G2Elem expect = g2_mul(grp, zeta[i], zeta[j]);
                if (zeta[k] != expect)
                    throw DecompositionError("split_central: central part is not a homomorphism on the pair (" +
                                             std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    return zeta;
}

/// Recovered standard Heisenberg data: lambda(g) = phi_{T,tau}(g) zeta(g),
/// with zeta the per-sample central z-value.
struct HeisRecovery {
    RatMat T;
    RatF c_T;
    FieldAut tau;
    std::vector<RatF> zeta;
    bool galois_ambiguous = false;
};

using HeisResult = std::variant<HeisRecovery, Inconsistent>;

/// Certificate b with b T integral, from the denominators of T.
inline Pol integrality_certificate(const RatMat& T, const FqField& fld) {
    Pol b = Pol::one(fld);
    for (int i = 0; i < T.rows(); ++i) {
        for (int j = 0; j < T.cols(); ++j) {
            const Pol& den = T.at(i, j).den();
            if (den.is_one()) continue;
            b = b * (den / gcd(b, den));
        }
    }
    return b;
}

namespace detail {

inline bool ratf_vec_is_zero(const std::vector<RatF>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Key for deduplicating exact RatF values in small maps.
inline std::string ratf_key(const RatF& x) { return x.str(); }

}  // namespace detail

/// Recover (T, c_T, tau) and the central twist from sampled generator
/// images of a Heisenberg isomorphism. The deck must contain scaled pairs
/// determining tau on t^-1 (and on a field generator when d > 1),
/// noncentral samples spanning F^{2m}, and a pair with nonzero symplectic
/// pairing. Central samples are read as derived-subgroup data: their images
/// are forced, and the constancy of lambda(z)/tau(z) across them is the
/// central-ratio check.
inline HeisResult heis_recover(const std::vector<std::pair<HeisElem, HeisElem>>& samples,
                               const HeisGroup& grp) {
    const FqField& fld = grp.fld;
    const int dim = grp.form.dim();
    if (samples.empty()) throw SampleError("heis_recover: empty deck");

    std::vector<std::size_t> noncentral, central;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (detail::ratf_vec_is_zero(samples[i].first.v))
            central.push_back(i);
        else
            noncentral.push_back(i);
    }

    // Spanning check over F.
    RatMat vmat(dim, static_cast<int>(noncentral.size()), fld);
    for (std::size_t c = 0; c < noncentral.size(); ++c)
        for (int r = 0; r < dim; ++r) vmat.at(r, static_cast<int>(c)) = samples[noncentral[c]].first.v[static_cast<std::size_t>(r)];
    if (vmat.rank() != dim) throw RankError("heis_recover: sample projections do not span F^{2m}");

    // tau_v data from parallel projection pairs.
    std::map<std::string, std::pair<RatF, RatF>> tau_values;  // key -> (a, tau(a))
    for (std::size_t ii : noncentral) {
        const auto& vi = samples[ii].first.v;
        const auto& wi = samples[ii].second.v;
        if (detail::ratf_vec_is_zero(wi))
            return Inconsistent{"image projection of a noncentral sample vanishes", {ii}};
        std::size_t k0 = 0;
        while (vi[k0].is_zero()) ++k0;
        std::size_t k1 = 0;
        while (wi[k1].is_zero()) ++k1;
        for (std::size_t jj : noncentral) {
            if (jj == ii) continue;
            const auto& vj = samples[jj].first.v;
            RatF a = vj[k0] / vi[k0];
            bool parallel = true;
            for (std::size_t k = 0; k < vi.size() && parallel; ++k) parallel = vj[k] == a * vi[k];
            if (!parallel) continue;
            const auto& wj = samples[jj].second.v;
            RatF r = wj[k1] / wi[k1];
            for (std::size_t k = 0; k < wi.size(); ++k) {
                if (wj[k] != r * wi[k])
                    return Inconsistent{"scaled pair maps to a non-parallel image", {ii, jj}};
            }
            auto key = detail::ratf_key(a);
            auto found = tau_values.find(key);
            if (found == tau_values.end())
                tau_values.emplace(key, std::make_pair(a, r));
            else if (found->second.second != r)
                return Inconsistent{"tau_v values disagree on an overlap", {ii, jj}};
        }
    }

    // Match tau against the standard affine-Frobenius family.
    RatF t1 = RatF(Pol::t_inv(fld, 1));
    auto t1_it = tau_values.find(detail::ratf_key(t1));
    if (t1_it == tau_values.end())
        throw SampleError("heis_recover: deck lacks a t^-1-scaled pair to evaluate tau");
    const RatF& tau_t1 = t1_it->second.second;
    if (!tau_t1.is_polynomial() || tau_t1.to_pol().deg() != 1)
        return Inconsistent{"tau(t^-1) is not an affine polynomial of degree 1", {}};
    FqElem c1 = tau_t1.to_pol().coeff(1), c0 = tau_t1.to_pol().coeff(0);

    GaloisElement sigma{0};
    if (fld.d() > 1) {
        RatF gen = RatF(Pol::constant(fld, fld.gen()));
        auto gen_it = tau_values.find(detail::ratf_key(gen));
        if (gen_it == tau_values.end())
            throw SampleError("heis_recover: deck lacks a field-generator-scaled pair to pin sigma");
        const RatF& tau_gen = gen_it->second.second;
        if (!tau_gen.is_polynomial() || !tau_gen.to_pol().is_constant())
            return Inconsistent{"tau of a field constant is not constant", {}};
        FqElem target = tau_gen.to_pol().coeff(0);
        bool found = false;
        for (int power = 0; power < fld.d(); ++power) {
            if (fld.gen().frobenius(power) == target) {
                sigma = GaloisElement{power};
                found = true;
                break;
            }
        }
        if (!found) return Inconsistent{"tau on the field generator is not a Galois image", {}};
    }
    int inv_power = (fld.d() - sigma.power % fld.d()) % fld.d();
    FqElem alpha = c1.frobenius(inv_power), beta = c0.frobenius(inv_power);
    if (alpha.is_zero()) return Inconsistent{"recovered alpha is zero", {}};
    FieldAut tau(sigma, alpha, beta);

    // Every observed tau_v value must agree with the standard tau.
    for (const auto& [key, av] : tau_values) {
        if (apply(tau, av.first) != av.second)
            return Inconsistent{"tau_v data does not match the affine-Frobenius family", {}};
    }

    // Central ratio C = tau(c_T) from bracket pairings of noncentral pairs.
    std::optional<RatF> C;
    std::vector<std::size_t> c_witness;
    for (std::size_t a = 0; a < noncentral.size(); ++a) {
        for (std::size_t b = a + 1; b < noncentral.size(); ++b) {
            std::size_t ii = noncentral[a], jj = noncentral[b];
            RatF pairing = grp.form.apply(samples[ii].first.v, samples[jj].first.v);
            if (pairing.is_zero()) continue;
            RatF got = grp.form.apply(samples[ii].second.v, samples[jj].second.v) / apply(tau, pairing);
            if (!C) {
                C = got;
                c_witness = {ii, jj};
            } else if (*C != got) {
                return Inconsistent{"central ratio differs between bracket pairs", {ii, jj}};
            }
        }
    }
    if (!C) throw SampleError("heis_recover: every sampled pair has vanishing symplectic pairing");
    if (C->is_zero()) return Inconsistent{"central ratio is zero", c_witness};
    FieldAut tau_inv = tau.inverse();
    RatF c_T = apply(tau_inv, *C);

    // Central samples: forced images s = C tau(z).
    for (std::size_t ii : central) {
        if (!detail::ratf_vec_is_zero(samples[ii].second.v))
            return Inconsistent{"central sample has a noncentral image", {ii}};
        if (samples[ii].second.z != *C * apply(tau, samples[ii].first.z))
            return Inconsistent{"central sample violates the constant central ratio", {ii}};
    }

    // Linear extension T from 2m independent projections.
    std::vector<std::size_t> chosen;
    {
        for (std::size_t c = 0; c < noncentral.size() && static_cast<int>(chosen.size()) < dim; ++c) {
            std::vector<std::size_t> attempt = chosen;
            attempt.push_back(noncentral[c]);
            RatMat m(dim, static_cast<int>(attempt.size()), fld);
            for (std::size_t cc = 0; cc < attempt.size(); ++cc)
                for (int r = 0; r < dim; ++r) m.at(r, static_cast<int>(cc)) = samples[attempt[cc]].first.v[static_cast<std::size_t>(r)];
            if (m.rank() == static_cast<int>(attempt.size())) chosen = std::move(attempt);
        }
    }
    RatMat V(dim, dim, fld), W(dim, dim, fld);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            V.at(r, c) = samples[chosen[static_cast<std::size_t>(c)]].first.v[static_cast<std::size_t>(r)];
            W.at(r, c) = apply(tau_inv, samples[chosen[static_cast<std::size_t>(c)]].second.v[static_cast<std::size_t>(r)]);
        }
    }
    RatMat T = W * V.inverse();

    // Verify T against every noncentral sample.
    for (std::size_t ii : noncentral) {
        std::vector<RatF> expect = T.apply(samples[ii].first.v);
        for (std::size_t k = 0; k < expect.size(); ++k) {
            if (apply(tau, expect[k]) != samples[ii].second.v[k])
                return Inconsistent{"projected map is not tau-semilinear on the samples", {ii}};
        }
    }

    // Conformal identity with the recovered factor.
    try {
        if (conformal_factor(T, grp.form, fld) != c_T)
            return Inconsistent{"conformal factor of T differs from the recovered c_T", {}};
    } catch (const ConformalError&) {
        return Inconsistent{"recovered T is not conformally symplectic", {}};
    } catch (const DomainError&) {
        return Inconsistent{"recovered T is singular", {}};
    }

    // Central twist per sample, and the homomorphism law on sampled products.
    StandardAutHeis phi(T, tau, grp.form, integrality_certificate(T, fld));
    std::vector<RatF> zeta;
    zeta.reserve(samples.size());
    for (const auto& [g, img] : samples) {
        HeisElem q = heis_mul(grp, heis_inv(grp, heis_apply_standard(grp, phi, g)), img);
        if (!detail::ratf_vec_is_zero(q.v))
            return Inconsistent{"standard part does not account for a sample projection", {}};
        zeta.push_back(q.z);
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            HeisElem prod = heis_mul(grp, samples[i].first, samples[j].first);
            for (std::size_t k = 0; k < samples.size(); ++k) {
                if (!(samples[k].first == prod)) continue;
                if (zeta[k] != zeta[i] + zeta[j])
                    return Inconsistent{"central twist fails the homomorphism law", {i, j, k}};
            }
        }
    }

    HeisRecovery rec{std::move(T), std::move(c_T), tau, std::move(zeta), false};
    return rec;
}

/// Recovered data for an isomorphism of H_p lattices: the H'_p part solved
/// through the Frobenius transport, plus the sampled abelian correspondence
/// on the central complement A.
struct HpRecovery {
    HeisRecovery heis;
    std::vector<std::pair<RatF, RatF>> a_part;  // (z_A, image z) per A-sample
    std::vector<std::size_t> prime_indices;
    std::vector<std::size_t> a_indices;
};

using HpResult = std::variant<HpRecovery, Inconsistent>;

/// Decompose H_p samples into the H'_p x A product form, transport the
/// H'_p part to the Heisenberg group, solve there, and verify that the
/// recovered data reproduces every sampled image exactly.
inline HpResult hp_recover(const std::vector<std::pair<HpElem, HpElem>>& samples, const HpGroup& grp) {
    HeisGroup heis_grp(SymplecticForm(grp.m), grp.fld);
    std::vector<std::pair<HeisElem, HeisElem>> transported;
    std::vector<std::size_t> prime_idx, a_idx;
    std::vector<std::pair<RatF, RatF>> a_part;

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [g, img] = samples[i];
        if (hp_in_prime_part(grp, g)) {
            if (!hp_in_prime_part(grp, img))
                throw DecompositionError("hp_recover: image of an H'_p sample leaves H'_p (index " +
                                         std::to_string(i) + ")");
            transported.emplace_back(frobenius_transport_inverse(grp, heis_grp, g),
                                     frobenius_transport_inverse(grp, heis_grp, img));
            prime_idx.push_back(i);
        } else if (hp_in_central_complement(grp, g)) {
            for (const auto& c : img.x)
                if (!c.is_zero())
                    throw DecompositionError("hp_recover: image of a central sample is not central (index " +
                                             std::to_string(i) + ")");
            for (const auto& c : img.y)
                if (!c.is_zero())
                    throw DecompositionError("hp_recover: image of a central sample is not central (index " +
                                             std::to_string(i) + ")");
            a_part.emplace_back(g.z, img.z);
            a_idx.push_back(i);
        } else {
            throw DecompositionError("hp_recover: sample does not respect the product decomposition (index " +
                                     std::to_string(i) + ")");
        }
    }

    HeisResult inner = heis_recover(transported, heis_grp);
    if (std::holds_alternative<Inconsistent>(inner)) return std::get<Inconsistent>(inner);
    HeisRecovery rec = std::get<HeisRecovery>(std::move(inner));

    // Recompose: the recovered standard pair and twist must reproduce each
    // H'_p image through the transport.
    StandardAutHeis phi(rec.T, rec.tau, heis_grp.form, integrality_certificate(rec.T, grp.fld));
    for (std::size_t k = 0; k < prime_idx.size(); ++k) {
        HeisElem mapped = heis_apply_standard(heis_grp, phi, transported[k].first);
        mapped.z = mapped.z + rec.zeta[k];
        if (!(frobenius_transport(heis_grp, grp, mapped) == samples[prime_idx[k]].second))
            return Inconsistent{"recomposition fails to reproduce a sampled image", {prime_idx[k]}};
    }

    HpRecovery out{std::move(rec), std::move(a_part), std::move(prime_idx), std::move(a_idx)};
    return out;
}

}  // namespace tminus
