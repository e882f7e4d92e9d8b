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

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "tminus/fq.hpp"
#include "tminus/rng.hpp"

namespace tminus {

/// deg of the zero polynomial. A sentinel, never a value to do arithmetic
/// with; compare against it explicitly.
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min();

/// Element of F^- = F_q[t^-1]. Coefficient i is the coefficient of t^-i,
/// stored low degree first and trimmed, so the zero polynomial is the empty
/// sequence and otherwise the last coefficient is nonzero.
class Pol {
  public:
    Pol() = default;

    static Pol zero(const FqField& fld) { return Pol(fld, {}); }
    static Pol one(const FqField& fld) { return constant(fld, fld.one()); }

    static Pol constant(const FqField& fld, const FqElem& c) { return Pol(fld, {c}); }

    /// c * t^-j
    static Pol monomial(const FqField& fld, const FqElem& c, int j) {
        if (j < 0) throw ParameterError("Pol::monomial: negative degree");
        std::vector<FqElem> v(static_cast<std::size_t>(j) + 1, fld.zero());
        v.back() = c;
        return Pol(fld, std::move(v));
    }

    /// t^-j
    static Pol t_inv(const FqField& fld, int j) { return monomial(fld, fld.one(), j); }

    static Pol from_coeffs(const FqField& fld, std::vector<FqElem> c) { return Pol(fld, std::move(c)); }

    const FqField& field() const { return fld_; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == fld_.one(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// deg^-: index of the top nonzero coefficient; kNegInfDeg for zero.
    int deg() const { return c_.empty() ? kNegInfDeg : static_cast<int>(c_.size()) - 1; }

    FqElem coeff(int j) const {
        if (j < 0 || j >= static_cast<int>(c_.size())) return fld_.zero();
        return c_[static_cast<std::size_t>(j)];
    }

    FqElem lead() const {
        if (c_.empty()) throw DomainError("Pol::lead: zero polynomial");
        return c_.back();
    }

    const std::vector<FqElem>& coeffs() const { return c_; }

    bool operator==(const Pol& o) const { return fld_ == o.fld_ && c_ == o.c_; }
    bool operator!=(const Pol& o) const { return !(*this == o); }

    Pol operator+(const Pol& o) const {
        check_same(o);
        std::vector<FqElem> r(std::max(c_.size(), o.c_.size()), fld_.zero());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size()) r[i] = r[i] + c_[i];
            if (i < o.c_.size()) r[i] = r[i] + o.c_[i];
        }
        return Pol(fld_, std::move(r));
    }

    Pol operator-() const {
        std::vector<FqElem> r(c_);
        for (auto& x : r) x = -x;
        return Pol(fld_, std::move(r));
    }

    Pol operator-(const Pol& o) const { return *this + (-o); }

    Pol operator*(const Pol& o) const {
        check_same(o);
        if (is_zero() || o.is_zero()) return zero(fld_);
        std::vector<FqElem> r(c_.size() + o.c_.size() - 1, fld_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
            }
        }
        return Pol(fld_, std::move(r));
    }

    Pol operator*(const FqElem& s) const {
        std::vector<FqElem> r(c_);
        for (auto& x : r) x = x * s;
        return Pol(fld_, std::move(r));
    }

    /// Multiply by c * t^-j.
    Pol shift_scale(const FqElem& c, int j) const {
        if (is_zero() || c.is_zero()) return zero(fld_);
        std::vector<FqElem> r(static_cast<std::size_t>(j), fld_.zero());
        r.reserve(c_.size() + static_cast<std::size_t>(j));
        for (const auto& x : c_) r.push_back(x * c);
        return Pol(fld_, std::move(r));
    }

    Pol pow(int n) const {
        if (n < 0) throw ParameterError("Pol::pow: negative exponent");
        Pol r = one(fld_), base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            if (n >>= 1) base = base * base;
        }
        return r;
    }

    /// a^Q for Q a power of p: sum c_i^Q t^-iQ, by the additivity of the
    /// Q-power map in characteristic p.
    Pol frobenius_power(int Q) const {
        if (!is_power_of(fld_.p(), Q)) throw ParameterError("Pol::frobenius_power: Q must be a power of p");
        if (is_zero()) return *this;
        std::vector<FqElem> r((c_.size() - 1) * static_cast<std::size_t>(Q) + 1, fld_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i * static_cast<std::size_t>(Q)] = c_[i].pow(Q);
        return Pol(fld_, std::move(r));
    }

    Pol monic() const {
        if (is_zero()) throw DomainError("Pol::monic: zero polynomial");
        return *this * lead().inverse();
    }

    /// Formal derivative with respect to t^-1.
    Pol derivative() const {
        if (c_.size() <= 1) return zero(fld_);
        std::vector<FqElem> r(c_.size() - 1, fld_.zero());
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * fld_.from_int(static_cast<std::int64_t>(i));
        return Pol(fld_, std::move(r));
    }

    /// The b with b^p = *this, when the support lies in p*Z (coefficient
    /// roots always exist, Frobenius being onto F_q).
    std::optional<Pol> pth_root() const {
        const int p = fld_.p();
        if (is_zero()) return zero(fld_);
        if ((static_cast<int>(c_.size()) - 1) % p != 0) return std::nullopt;
        std::vector<FqElem> r((c_.size() - 1) / static_cast<std::size_t>(p) + 1, fld_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (i % static_cast<std::size_t>(p) != 0) return std::nullopt;
            r[i / static_cast<std::size_t>(p)] = c_[i].frobenius(fld_.d() - 1);
        }
        return Pol(fld_, std::move(r));
    }

    FqElem eval(const FqElem& x) const {
        FqElem acc = fld_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Quotient and remainder; b nonzero.
    static std::pair<Pol, Pol> divmod(const Pol& a, const Pol& b) {
        a.check_same(b);
        if (b.is_zero()) throw DomainError("Pol::divmod: division by zero");
        if (a.deg() == kNegInfDeg || a.c_.size() < b.c_.size())
            return {zero(a.fld_), a};
        FqElem inv_lead = b.lead().inverse();
        std::vector<FqElem> rem(a.c_);
        std::vector<FqElem> quot(a.c_.size() - b.c_.size() + 1, a.fld_.zero());
        for (std::size_t k = a.c_.size(); k-- >= b.c_.size();) {
            if (rem.size() <= k) continue;
            FqElem c = rem[k] * inv_lead;
            if (!c.is_zero()) {
                std::size_t shift = k - (b.c_.size() - 1);
                quot[shift] = c;
                for (std::size_t j = 0; j < b.c_.size(); ++j)
                    rem[shift + j] = rem[shift + j] - c * b.c_[j];
            }
            if (k == b.c_.size() - 1) break;
        }
        return {Pol(a.fld_, std::move(quot)), Pol(a.fld_, std::move(rem))};
    }

    Pol operator/(const Pol& o) const { return divmod(*this, o).first; }
    Pol operator%(const Pol& o) const { return divmod(*this, o).second; }

    bool divisible_by(const Pol& o) const { return (*this % o).is_zero(); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            bool unit = c_[i] == fld_.one();
            bool needs_parens = fld_.d() > 1;
            if (!unit || i == 0) out += needs_parens && i > 0 ? "(" + c_[i].str() + ")" : c_[i].str();
            if (!unit && i > 0) out += "*";
            if (i == 1) out += "t^-1";
            if (i > 1) out += "t^-" + std::to_string(i);
        }
        return out;
    }

  private:
    Pol(FqField fld, std::vector<FqElem> c) : fld_(std::move(fld)), c_(std::move(c)) { trim(); }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    void check_same(const Pol& o) const {
        if (fld_ != o.fld_) throw ParameterError("Pol: mismatched field parameters");
    }

    FqField fld_;
    std::vector<FqElem> c_;
};

inline Pol operator*(const FqElem& s, const Pol& a) { return a * s; }

inline std::ostream& operator<<(std::ostream& os, const Pol& a) { return os << a.str(); }

/// Monic gcd. Not both arguments may be zero.
inline Pol gcd(const Pol& a, const Pol& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
    Pol r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Pol rem = r0 % r1;
        r0 = r1;
        r1 = rem;
    }
    return r0.monic();
}

/// A field automorphism of F of the standard affine-Frobenius shape:
/// f(t^-1) |-> sigma(f(alpha t^-1 + beta)), with sigma in Gal(F_q/F_p),
/// alpha nonzero. These restrict to ring automorphisms of F^-.
class FieldAut {
  public:
    FieldAut(GaloisElement sigma, FqElem alpha, FqElem beta)
        : sigma_(sigma), alpha_(std::move(alpha)), beta_(std::move(beta)) {
        if (alpha_.field() != beta_.field()) throw ParameterError("FieldAut: mismatched field parameters");
        if (alpha_.is_zero()) throw ParameterError("FieldAut: alpha must be nonzero");
    }

    static FieldAut identity(const FqField& fld) { return FieldAut(GaloisElement{0}, fld.one(), fld.zero()); }

    const GaloisElement& sigma() const { return sigma_; }
    const FqElem& alpha() const { return alpha_; }
    const FqElem& beta() const { return beta_; }
    const FqField& field() const { return alpha_.field(); }

    bool is_identity() const {
        return sigma_.power == 0 && alpha_ == field().one() && beta_.is_zero();
    }

    bool operator==(const FieldAut& o) const {
        return sigma_ == o.sigma_ && alpha_ == o.alpha_ && beta_ == o.beta_;
    }
    bool operator!=(const FieldAut& o) const { return !(*this == o); }

    FqElem apply(const FqElem& c) const { return c.frobenius(sigma_.power); }

    FieldAut inverse() const {
        const FqField& fld = field();
        GaloisElement si = tminus::inverse(sigma_, fld);
        FqElem sa = apply(alpha_), sb = apply(beta_);
        return FieldAut(si, sa.inverse(), -(sb * sa.inverse()));
    }

  private:
    GaloisElement sigma_;
    FqElem alpha_, beta_;
};

/// tau(f): substitute alpha t^-1 + beta, then apply sigma to the
/// coefficients. A ring automorphism of F^-; preserves deg.
inline Pol substitute_affine(const Pol& f, const FieldAut& tau) {
    const FqField& fld = f.field();
    if (fld != tau.field()) throw ParameterError("substitute_affine: mismatched field parameters");
    if (f.is_zero()) return f;
    Pol affine = Pol::from_coeffs(fld, {tau.beta(), tau.alpha()});
    Pol acc = Pol::zero(fld);
    for (int i = f.deg(); i >= 0; --i)
        acc = acc * affine + Pol::constant(fld, f.coeff(i));
    std::vector<FqElem> out;
    out.reserve(static_cast<std::size_t>(acc.deg()) + 1);
    for (int i = 0; i <= acc.deg(); ++i) out.push_back(tau.apply(acc.coeff(i)));
    return Pol::from_coeffs(fld, std::move(out));
}

/// compose(t2, t1) applies t1 first: compose(t2, t1)(f) = t2(t1(f)).
inline FieldAut compose(const FieldAut& t2, const FieldAut& t1) {
    const FqField& fld = t1.field();
    if (fld != t2.field()) throw ParameterError("compose: mismatched field parameters");
    GaloisElement s = compose(t2.sigma(), t1.sigma(), fld);
    GaloisElement s1inv = inverse(t1.sigma(), fld);
    FqElem a = t1.alpha() * t2.alpha().frobenius(s1inv.power);
    FqElem b = t1.beta() + t1.alpha() * t2.beta().frobenius(s1inv.power);
    return FieldAut(s, a, b);
}

/// Complete factorization over F_q: unit times monic irreducible powers.
struct Factorization {
    FqElem unit;
    std::vector<std::pair<Pol, int>> factors;  // (monic irreducible, multiplicity)

    Pol product() const {
        Pol r = Pol::constant(unit.field(), unit);
        for (const auto& [f, m] : factors) r = r * f.pow(m);
        return r;
    }

    int multiplicity_of(const Pol& f) const {
        for (const auto& [g, m] : factors)
            if (g == f) return m;
        return 0;
    }

    int max_multiplicity() const {
        int r = 0;
        for (const auto& [f, m] : factors) r = std::max(r, m);
        return r;
    }
};

namespace detail {

inline Pol pow_mod(const Pol& base, std::int64_t n, const Pol& mod) {
    Pol r = Pol::one(base.field());
    Pol b = base % mod;
    while (n > 0) {
        if (n & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        n >>= 1;
    }
    return r;
}

inline Pol random_pol_below(const FqField& fld, int deg_bound, Rng& rng) {
    std::vector<FqElem> c;
    c.reserve(static_cast<std::size_t>(deg_bound));
    for (int i = 0; i < deg_bound; ++i)
        c.push_back(fld.element(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(fld.q())))));
    return Pol::from_coeffs(fld, std::move(c));
}

/// Exhaustive fallback for equal-degree splitting: trial-divide by every
/// monic polynomial of degree r.
inline void edf_exhaustive(Pol g, int r, std::vector<Pol>& out) {
    const FqField& fld = g.field();
    double budget = 1;
    for (int i = 0; i < r; ++i) {
        budget *= static_cast<double>(fld.q());
        if (budget > 1e7) throw ResourceError("equal-degree fallback: q^r too large");
    }
    std::int64_t count = static_cast<std::int64_t>(budget);
    for (std::int64_t idx = 0; idx < count && g.deg() > 0; ++idx) {
        std::vector<FqElem> c;
        std::int64_t v = idx;
        for (int i = 0; i < r; ++i) {
            c.push_back(fld.element(v % fld.q()));
            v /= fld.q();
        }
        c.push_back(fld.one());
        Pol cand = Pol::from_coeffs(fld, std::move(c));
        while (g.divisible_by(cand)) {
            out.push_back(cand);
            g = g / cand;
        }
    }
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product
/// of irreducibles all of degree r.
inline void edf(const Pol& g, int r, Rng& rng, std::vector<Pol>& out) {
    const FqField& fld = g.field();
    if (g.deg() == r) {
        out.push_back(g);
        return;
    }
    // q^r, guarded. Past the guard the deterministic fallback would also be
    // hopeless, so give up loudly.
    double qr = 1;
    for (int i = 0; i < r; ++i) qr *= static_cast<double>(fld.q());
    if (qr > 1e12) throw ResourceError("equal-degree splitting: degree/field too large");
    const std::int64_t qr_i = static_cast<std::int64_t>(qr);

    for (int attempt = 0; attempt < 40; ++attempt) {
        Pol u = random_pol_below(fld, g.deg(), rng);
        if (u.is_zero()) continue;
        Pol w;
        if (fld.p() == 2) {
            // trace map over F_2
            w = Pol::zero(fld);
            Pol t = u;
            int bits = r * fld.d();
            for (int i = 0; i < bits; ++i) {
                w = (w + t) % g;
                t = (t * t) % g;
            }
        } else {
            w = pow_mod(u, (qr_i - 1) / 2, g) - Pol::one(fld);
        }
        if (w.is_zero()) continue;
        Pol h = gcd(w, g);
        if (h.deg() > 0 && h.deg() < g.deg()) {
            edf(h, r, rng, out);
            edf(g / h, r, rng, out);
            return;
        }
    }
    edf_exhaustive(g, r, out);
}

/// Distinct-degree splitting of a monic squarefree polynomial, then
/// equal-degree splitting of each part.
inline void factor_squarefree(const Pol& s, int multiplicity, Rng& rng,
                              std::vector<std::pair<Pol, int>>& out) {
    const FqField& fld = s.field();
    Pol f = s;
    Pol x = Pol::t_inv(fld, 1);
    Pol h = x % f;
    int r = 0;
    std::vector<std::pair<Pol, int>> parts;  // (product, degree of its irreducibles)
    while (f.deg() != kNegInfDeg && f.deg() >= 2 * (r + 1)) {
        ++r;
        h = pow_mod(h, fld.q(), f);
        Pol g = gcd(h - x % f, f);
        if (g.deg() > 0) {
            parts.emplace_back(g, r);
            f = f / g;
            if (f.deg() > 0) h = h % f;
        }
    }
    if (f.deg() > 0) parts.emplace_back(f, f.deg());
    for (const auto& [part, deg_r] : parts) {
        std::vector<Pol> irr;
        edf(part, deg_r, rng, irr);
        for (auto& u : irr) out.emplace_back(std::move(u), multiplicity);
    }
}

/// Squarefree decomposition in characteristic p. Emits (S, k) pairs with S
/// monic squarefree and k the exact multiplicity of S's irreducible factors
/// in the input. Handles vanishing derivatives by p-th-root descent.
inline void squarefree_decompose(const Pol& a, int scale, Rng& rng,
                                 std::vector<std::pair<Pol, int>>& out_sqf) {
    const FqField& fld = a.field();
    if (a.deg() <= 0) return;
    Pol ad = a.derivative();
    if (ad.is_zero()) {
        auto root = a.pth_root();
        if (!root) throw DomainError("squarefree_decompose: derivative zero but no p-th root");
        squarefree_decompose(*root, scale * fld.p(), rng, out_sqf);
        return;
    }
    Pol t = gcd(a, ad);
    Pol v = a / t;
    int k = 0;
    while (v.deg() > 0) {
        ++k;
        Pol w = gcd(t, v);
        Pol s = v / w;
        if (s.deg() > 0) out_sqf.emplace_back(s, k * scale);
        v = w;
        t = t / w;
    }
    if (t.deg() > 0) {
        auto root = t.pth_root();
        if (!root) throw DomainError("squarefree_decompose: residual part has no p-th root");
        squarefree_decompose(*root, scale * fld.p(), rng, out_sqf);
    }
}

}  // namespace detail

/// Complete factorization into monic irreducibles. Probabilistic splitting
/// draws from the supplied stream, so results replay per seed; the factor
/// list is sorted canonically regardless.
inline Factorization factorize(const Pol& a, Rng& rng) {
    if (a.is_zero()) throw DomainError("factorize: zero polynomial");
    Factorization out{a.lead(), {}};
    Pol monic = a.monic();
    std::vector<std::pair<Pol, int>> sqf;
    detail::squarefree_decompose(monic, 1, rng, sqf);
    for (const auto& [s, mult] : sqf) detail::factor_squarefree(s, mult, rng, out.factors);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.deg() != y.first.deg()) return x.first.deg() < y.first.deg();
        for (int i = x.first.deg(); i >= 0; --i) {
            auto xi = x.first.coeff(i).index(), yi = y.first.coeff(i).index();
            if (xi != yi) return xi < yi;
        }
        return x.second < y.second;
    });
    return out;
}

inline Factorization factorize(const Pol& a) {
    Rng rng(0x7A11F5EEDULL);
    return factorize(a, rng);
}

/// Is a free of nonconstant Q-th power divisors? (Every irreducible factor
/// multiplicity < Q.)
inline bool is_q_separable(const Pol& a, int Q, Rng& rng) {
    if (a.is_zero()) throw DomainError("is_q_separable: zero polynomial");
    if (Q <= 1 || !is_power_of(a.field().p(), Q))
        throw ParameterError("is_q_separable: Q must be a power of p, > 1");
    if (a.deg() < Q) return true;
    return factorize(a, rng).max_multiplicity() < Q;
}

inline bool is_q_separable(const Pol& a, int Q) {
    Rng rng(0x5EBA5ULL);
    return is_q_separable(a, Q, rng);
}

/// Split a = a' * c^Q with a' Q-separable and c monic. The unit stays with
/// a'. Q > 1 must be a power of p.
inline std::pair<Pol, Pol> q_separable_split(const Pol& a, int Q, Rng& rng) {
    if (a.is_zero()) throw DomainError("q_separable_split: zero polynomial");
    const FqField& fld = a.field();
    if (Q <= 1 || !is_power_of(fld.p(), Q))
        throw ParameterError("q_separable_split: Q must be a power of p, > 1");
    Factorization fact = factorize(a, rng);
    Pol sep = Pol::constant(fld, fact.unit);
    Pol c = Pol::one(fld);
    for (const auto& [u, m] : fact.factors) {
        if (m % Q != 0) sep = sep * u.pow(m % Q);
        if (m / Q > 0) c = c * u.pow(m / Q);
    }
    return {sep, c};
}

inline std::pair<Pol, Pol> q_separable_split(const Pol& a, int Q) {
    Rng rng(0x5B717ULL);
    return q_separable_split(a, Q, rng);
}

/// Decide a/b in F^e for e a power of p, via the support criterion: a/b is
/// an e-th power iff supp(a b^{e-1}) lies in e*Z. (Coefficients come along
/// for free: Frobenius is onto F_q, and an element of F supported in e*Z is
/// the e-th power of the element built from coefficient e-th roots.)
inline bool eth_power_ratio_test(const Pol& a, const Pol& b, int e) {
    if (a.is_zero() || b.is_zero()) throw DomainError("eth_power_ratio_test: zero input");
    const FqField& fld = a.field();
    if (e <= 1 || !is_power_of(fld.p(), e))
        throw ParameterError("eth_power_ratio_test: e must be a power of p, > 1");
    Pol w = a * b.pow(e - 1);
    for (int i = 0; i <= w.deg(); ++i)
        if (!w.coeff(i).is_zero() && i % e != 0) return false;
    return true;
}

/// Exact fraction u/b of elements of F^-, kept in canonical form: the
/// denominator is monic and coprime to the numerator. Models the elements
/// of F that the standard automorphisms and lattices actually touch.
class RatF {
  public:
    RatF() = default;

    RatF(Pol num, Pol den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("RatF: zero denominator");
        canonicalize();
    }

    explicit RatF(Pol num) : num_(std::move(num)), den_(Pol::one(num_.field())) {}

    static RatF zero(const FqField& fld) { return RatF(Pol::zero(fld)); }
    static RatF one(const FqField& fld) { return RatF(Pol::one(fld)); }

    const Pol& num() const { return num_; }
    const Pol& den() const { return den_; }
    const FqField& field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    const Pol& to_pol() const {
        if (!is_polynomial()) throw DomainError("RatF::to_pol: nontrivial denominator");
        return num_;
    }

    bool operator==(const RatF& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatF& o) const { return !(*this == o); }

    RatF operator+(const RatF& o) const { return RatF(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    RatF operator-(const RatF& o) const { return RatF(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    RatF operator-() const { return RatF(-num_, den_); }
    RatF operator*(const RatF& o) const { return RatF(num_ * o.num_, den_ * o.den_); }

    RatF operator/(const RatF& o) const {
        if (o.is_zero()) throw DomainError("RatF: division by zero");
        return RatF(num_ * o.den_, den_ * o.num_);
    }

    RatF inverse() const {
        if (is_zero()) throw DomainError("RatF: inverse of zero");
        return RatF(den_, num_);
    }

    RatF pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        RatF r = one(field()), base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            if (n >>= 1) base = base * base;
        }
        return r;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Pol::one(num_.field());
            return;
        }
        Pol g = gcd(num_, den_);
        if (g.deg() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        FqElem inv = den_.lead().inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    Pol num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatF& a) { return os << a.str(); }

inline RatF apply(const FieldAut& tau, const RatF& a) {
    return RatF(substitute_affine(a.num(), tau), substitute_affine(a.den(), tau));
}

}  // namespace tminus
