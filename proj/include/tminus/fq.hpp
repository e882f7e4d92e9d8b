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

#include <array>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tminus/errors.hpp"

namespace tminus {

/// Elements support extension degrees up to this bound; plenty for desk
/// scale, where d <= 4.
inline constexpr int kMaxExtensionDegree = 8;

/// (p, d, q = p^d) with p prime, d >= 1.
struct PrimePower {
    int p = 0;
    int d = 0;
    std::int64_t q = 0;
};

struct GaloisElement;
class FqElem;

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

// F_p[x] scratch arithmetic on int coefficient vectors (low degree first,
// trimmed). Only used to pick and validate the field modulus.
inline void fp_trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<int> fp_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    // b monic
    while (a.size() >= b.size()) {
        int c = a.back();
        std::size_t shift = a.size() - b.size();
        if (c != 0) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                int& t = a[shift + j];
                t = (t - c * b[j]) % p;
                if (t < 0) t += p;
            }
        }
        a.pop_back();
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool fp_is_irreducible(const std::vector<int>& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (int dd = 1; dd <= deg / 2; ++dd) {
        std::vector<int> div(static_cast<std::size_t>(dd) + 1, 0);
        div[static_cast<std::size_t>(dd)] = 1;
        std::int64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::int64_t v = idx;
            for (int i = 0; i < dd; ++i) {
                div[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
                v /= p;
            }
            if (fp_rem(f, div, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// The finite field F_q with q = p^d, as F_p[x]/(modulus). The modulus is
/// chosen deterministically: the first monic irreducible of degree d in
/// base-p counting order of the low coefficients, so (p, d) pins the
/// representation and serialized elements replay across runs.
class FqField {
  public:
    FqField() = default;

    FqField(int p, int d) {
        if (!detail::is_prime(p)) throw ParameterError("FqField: p must be prime, got " + std::to_string(p));
        if (d < 1 || d > kMaxExtensionDegree)
            throw ParameterError("FqField: extension degree must be in [1, " +
                                 std::to_string(kMaxExtensionDegree) + "], got " + std::to_string(d));
        auto impl = std::make_shared<Impl>();
        impl->params.p = p;
        impl->params.d = d;
        impl->params.q = 1;
        for (int i = 0; i < d; ++i) impl->params.q *= p;
        impl->modulus = least_irreducible(p, d);
        impl_ = std::move(impl);
    }

    bool valid() const { return impl_ != nullptr; }
    int p() const { return impl().params.p; }
    int d() const { return impl().params.d; }
    std::int64_t q() const { return impl().params.q; }
    const PrimePower& params() const { return impl().params; }

    /// Monic irreducible modulus, length d+1, low coefficient first.
    const std::vector<int>& modulus() const { return impl().modulus; }

    bool operator==(const FqField& o) const {
        if (impl_ == o.impl_) return true;
        if (!impl_ || !o.impl_) return false;
        return p() == o.p() && d() == o.d();
    }
    bool operator!=(const FqField& o) const { return !(*this == o); }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(std::int64_t residue) const;          // image of an integer (prime subfield)
    FqElem element(std::int64_t index) const;             // index in [0, q), base-p digits
    FqElem from_coeffs(const std::vector<int>& c) const;  // power-basis coordinates
    /// The class of x, a degree-d generator of the field over F_p.
    FqElem gen() const;
    /// All q elements in index order. Guarded against large q.
    std::vector<FqElem> elements() const;

  private:
    struct Impl {
        PrimePower params;
        std::vector<int> modulus;
    };

    const Impl& impl() const {
        if (!impl_) throw ParameterError("FqField: use of default-constructed field");
        return *impl_;
    }

    static std::vector<int> least_irreducible(int p, int d) {
        std::vector<int> f(static_cast<std::size_t>(d) + 1, 0);
        f[static_cast<std::size_t>(d)] = 1;
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::int64_t v = idx;
            for (int i = 0; i < d; ++i) {
                f[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
                v /= p;
            }
            if (detail::fp_is_irreducible(f, p)) return f;
        }
        throw DomainError("FqField: no irreducible modulus found");  // unreachable
    }

    std::shared_ptr<const Impl> impl_;
};

/// An element of Gal(F_q/F_p): the map x -> x^{p^power}.
struct GaloisElement {
    int power = 0;

    bool operator==(const GaloisElement& o) const { return power == o.power; }
    bool operator!=(const GaloisElement& o) const { return power != o.power; }
};

/// Element of F_q, stored as d residues mod p in the power basis of the
/// modulus. Immutable value type; carries its field handle.
class FqElem {
  public:
    FqElem() = default;

    FqElem(FqField fld, const std::vector<int>& coeffs) : fld_(std::move(fld)) {
        const int d = fld_.d();
        if (static_cast<int>(coeffs.size()) > d)
            throw ParameterError("FqElem: too many coordinates");
        c_.fill(0);
        const int p = fld_.p();
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            int r = coeffs[i] % p;
            if (r < 0) r += p;
            c_[i] = static_cast<std::uint8_t>(r);
        }
    }

    const FqField& field() const { return fld_; }

    bool is_zero() const {
        for (int i = 0; i < fld_.d(); ++i)
            if (c_[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    }

    /// Power-basis coordinate i, in [0, p).
    int coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

    /// Base-p integer index; a stable total order on elements of a field.
    std::int64_t index() const {
        std::int64_t v = 0;
        for (int i = fld_.d() - 1; i >= 0; --i) v = v * fld_.p() + c_[static_cast<std::size_t>(i)];
        return v;
    }

    bool operator==(const FqElem& o) const {
        if (fld_ != o.fld_) return false;
        for (int i = 0; i < fld_.d(); ++i)
            if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    FqElem operator+(const FqElem& o) const {
        check_same(o);
        FqElem r(*this);
        const int p = fld_.p();
        for (int i = 0; i < fld_.d(); ++i) {
            std::size_t k = static_cast<std::size_t>(i);
            r.c_[k] = static_cast<std::uint8_t>((r.c_[k] + o.c_[k]) % p);
        }
        return r;
    }

    FqElem operator-() const {
        FqElem r(*this);
        const int p = fld_.p();
        for (int i = 0; i < fld_.d(); ++i) {
            std::size_t k = static_cast<std::size_t>(i);
            r.c_[k] = static_cast<std::uint8_t>((p - r.c_[k]) % p);
        }
        return r;
    }

    FqElem operator-(const FqElem& o) const { return *this + (-o); }

    FqElem operator*(const FqElem& o) const {
        check_same(o);
        const int p = fld_.p();
        const int d = fld_.d();
        std::array<int, 2 * kMaxExtensionDegree> tmp{};
        for (int i = 0; i < d; ++i) {
            if (c_[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < d; ++j)
                tmp[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
        }
        const std::vector<int>& mod = fld_.modulus();
        for (int i = 2 * d - 2; i >= d; --i) {
            int c = tmp[static_cast<std::size_t>(i)] % p;
            if (c != 0) {
                for (int j = 0; j < d; ++j)
                    tmp[static_cast<std::size_t>(i - d + j)] -= c * mod[static_cast<std::size_t>(j)];
            }
            tmp[static_cast<std::size_t>(i)] = 0;
        }
        FqElem r(fld_, {});
        for (int i = 0; i < d; ++i) {
            int v = tmp[static_cast<std::size_t>(i)] % p;
            if (v < 0) v += p;
            r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        }
        return r;
    }

    FqElem pow(std::int64_t n) const {
        if (n < 0) return inverse().pow(-n);
        FqElem base(*this), r = fld_.one();
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse via extended Euclid on the representative
    /// polynomial against the modulus.
    FqElem inverse() const {
        if (is_zero()) throw DomainError("FqElem: inverse of zero");
        return inverse_impl();
    }

    /// Frobenius power: a^{p^i}. Additive and multiplicative; i may be any
    /// integer and acts through i mod d.
    FqElem frobenius(int i = 1) const {
        const int d = fld_.d();
        int k = i % d;
        if (k < 0) k += d;
        FqElem r(*this);
        for (int step = 0; step < k; ++step) r = r.pow(fld_.p());
        return r;
    }

    FqElem apply(const GaloisElement& g) const { return frobenius(g.power); }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int i = fld_.d() - 1; i >= 0; --i) {
            int c = coeff(i);
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i > 0 && c != 1) os << "*";
            if (i == 1) os << "x";
            if (i > 1) os << "x^" << i;
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    friend class FqField;

    static int int_inverse(int a, int p) {
        int t = 0, newt = 1, r = p, newr = a % p;
        while (newr != 0) {
            int qt = r / newr;
            int tmp = t - qt * newt;
            t = newt;
            newt = tmp;
            tmp = r - qt * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += p;
        return t;
    }

    FqElem inverse_impl() const {
        const int p = fld_.p();
        std::vector<int> r0 = fld_.modulus();
        std::vector<int> r1(c_.begin(), c_.begin() + fld_.d());
        detail::fp_trim(r1);
        std::vector<int> s0, s1{1};
        while (!r1.empty()) {
            // r0 = q*r1 + rem; (r0, s0) <- (r1, s1); (r1, s1) <- (rem, s0 - q*s1)
            std::vector<int> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
            std::vector<int> rem = r0;
            int inv_lead = int_inverse(r1.back(), p);
            while (rem.size() >= r1.size() && !rem.empty()) {
                int c = (rem.back() * inv_lead) % p;
                std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t j = 0; j < r1.size(); ++j) {
                    int& t = rem[shift + j];
                    t = (t - c * r1[j]) % p;
                    if (t < 0) t += p;
                }
                detail::fp_trim(rem);
                if (rem.empty()) break;
                if (rem.size() < r1.size()) break;
            }
            detail::fp_trim(q);
            // snew = s0 - q * s1
            std::vector<int> snew = s0;
            if (!q.empty() && !s1.empty()) {
                if (snew.size() < q.size() + s1.size() - 1) snew.resize(q.size() + s1.size() - 1, 0);
                for (std::size_t i = 0; i < q.size(); ++i) {
                    if (q[i] == 0) continue;
                    for (std::size_t j = 0; j < s1.size(); ++j) {
                        int& t = snew[i + j];
                        t = (t - q[i] * s1[j]) % p;
                        if (t < 0) t += p;
                    }
                }
            }
            detail::fp_trim(snew);
            r0 = r1;
            s0 = s1;
            r1 = rem;
            s1 = snew;
        }
        // r0 is now gcd = nonzero constant; inverse = s0 / r0 reduced mod modulus.
        int scale = int_inverse(r0.empty() ? 1 : r0[0], p);
        std::vector<int> res = detail::fp_rem(s0, fld_.modulus(), p);
        std::vector<int> out(static_cast<std::size_t>(fld_.d()), 0);
        for (std::size_t i = 0; i < res.size(); ++i) out[i] = (res[i] * scale) % p;
        return FqElem(fld_, out);
    }

    void check_same(const FqElem& o) const {
        if (fld_ != o.fld_) throw ParameterError("FqElem: mismatched field parameters");
    }

    FqField fld_;
    std::array<std::uint8_t, kMaxExtensionDegree> c_{};
};

inline FqElem FqField::zero() const { return FqElem(*this, {}); }

inline FqElem FqField::one() const { return FqElem(*this, {1}); }

inline FqElem FqField::from_int(std::int64_t residue) const {
    std::int64_t r = residue % p();
    if (r < 0) r += p();
    return FqElem(*this, {static_cast<int>(r)});
}

inline FqElem FqField::element(std::int64_t index) const {
    if (index < 0 || index >= q()) throw ParameterError("FqField::element: index out of range");
    std::vector<int> c(static_cast<std::size_t>(d()), 0);
    for (int i = 0; i < d(); ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<int>(index % p());
        index /= p();
    }
    return FqElem(*this, c);
}

inline FqElem FqField::from_coeffs(const std::vector<int>& c) const { return FqElem(*this, c); }

inline FqElem FqField::gen() const {
    if (d() == 1) return one();
    std::vector<int> c(static_cast<std::size_t>(d()), 0);
    c[1] = 1;
    return FqElem(*this, c);
}

inline std::vector<FqElem> FqField::elements() const {
    if (q() > 6561) throw ResourceError("FqField::elements: q too large to enumerate");
    std::vector<FqElem> out;
    out.reserve(static_cast<std::size_t>(q()));
    for (std::int64_t i = 0; i < q(); ++i) out.push_back(element(i));
    return out;
}

/// The d elements of Gal(F_q/F_p), Frobenius powers 0..d-1.
inline std::vector<GaloisElement> enumerate_galois(const FqField& fld) {
    std::vector<GaloisElement> out;
    out.reserve(static_cast<std::size_t>(fld.d()));
    for (int i = 0; i < fld.d(); ++i) out.push_back(GaloisElement{i});
    return out;
}

inline GaloisElement compose(const GaloisElement& a, const GaloisElement& b, const FqField& fld) {
    return GaloisElement{(a.power + b.power) % fld.d()};
}

inline GaloisElement inverse(const GaloisElement& a, const FqField& fld) {
    return GaloisElement{(fld.d() - a.power % fld.d()) % fld.d()};
}

/// True if v equals base^k for some k >= 0.
inline bool is_power_of(int base, std::int64_t v) {
    if (v < 1) return false;
    while (v % base == 0) v /= base;
    return v == 1;
}

}  // namespace tminus
