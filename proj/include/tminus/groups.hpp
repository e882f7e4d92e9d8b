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

#include <utility>
#include <vector>

#include "tminus/poly.hpp"

namespace tminus {

/// Small dense matrix over the fraction field, row-major. Only what the
/// group and solver code needs.
class RatMat {
  public:
    RatMat(int rows, int cols, const FqField& fld)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), RatF::zero(fld)) {}

    static RatMat identity(int n, const FqField& fld) {
        RatMat m(n, n, fld);
        for (int i = 0; i < n; ++i) m.at(i, i) = RatF::one(fld);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RatF& at(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
    const RatF& at(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const RatMat& o) const { return !(*this == o); }

    RatMat operator*(const RatMat& o) const {
        if (cols_ != o.rows_) throw ParameterError("RatMat: shape mismatch");
        const FqField& fld = a_.empty() ? o.a_[0].field() : a_[0].field();
        RatMat r(rows_, o.cols_, fld);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    std::vector<RatF> apply(const std::vector<RatF>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw ParameterError("RatMat: vector length mismatch");
        std::vector<RatF> r;
        r.reserve(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) {
            RatF acc = RatF::zero(v[0].field());
            for (int j = 0; j < cols_; ++j) acc = acc + at(i, j) * v[static_cast<std::size_t>(j)];
            r.push_back(std::move(acc));
        }
        return r;
    }

    /// Gauss-Jordan inverse over the fraction field; DomainError if singular.
    RatMat inverse() const {
        if (rows_ != cols_) throw ParameterError("RatMat: inverse of non-square matrix");
        const FqField& fld = a_[0].field();
        RatMat work = *this;
        RatMat inv = identity(rows_, fld);
        for (int col = 0; col < cols_; ++col) {
            int pivot = -1;
            for (int r = col; r < rows_; ++r)
                if (!work.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) throw DomainError("RatMat: singular matrix");
            for (int j = 0; j < cols_; ++j) {
                std::swap(work.at(col, j), work.at(pivot, j));
                std::swap(inv.at(col, j), inv.at(pivot, j));
            }
            RatF scale = work.at(col, col).inverse();
            for (int j = 0; j < cols_; ++j) {
                work.at(col, j) = work.at(col, j) * scale;
                inv.at(col, j) = inv.at(col, j) * scale;
            }
            for (int r = 0; r < rows_; ++r) {
                if (r == col || work.at(r, col).is_zero()) continue;
                RatF f = work.at(r, col);
                for (int j = 0; j < cols_; ++j) {
                    work.at(r, j) = work.at(r, j) - f * work.at(col, j);
                    inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    int rank() const {
        RatMat work = *this;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (!work.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            for (int j = 0; j < cols_; ++j) std::swap(work.at(rank, j), work.at(pivot, j));
            for (int r = rank + 1; r < rows_; ++r) {
                if (work.at(r, col).is_zero()) continue;
                RatF f = work.at(r, col) / work.at(rank, col);
                for (int j = col; j < cols_; ++j) work.at(r, j) = work.at(r, j) - f * work.at(rank, j);
            }
            ++rank;
        }
        return rank;
    }

  private:
    int rows_, cols_;
    std::vector<RatF> a_;
};

// ---------------------------------------------------------------------------
// G2: the two-dimensional unipotent group with matrix rows
// (1, y^e, z / 0, 1, y / 0, 0, 1). Group law in (y, z) coordinates:
// (y1,z1)(y2,z2) = (y1+y2, z1+z2+y1^e y2).
// ---------------------------------------------------------------------------

struct G2Group {
    int e;
    FqField fld;

    G2Group(int ee, FqField f) : e(ee), fld(std::move(f)) {
        if (e < 1 || !is_power_of(fld.p(), e))
            throw ParameterError("G2Group: e must be a positive power of p");
    }
};

struct G2Elem {
    RatF y, z;

    bool operator==(const G2Elem& o) const { return y == o.y && z == o.z; }
    bool operator!=(const G2Elem& o) const { return !(*this == o); }
};

inline G2Elem g2_identity(const G2Group& grp) {
    return {RatF::zero(grp.fld), RatF::zero(grp.fld)};
}

inline G2Elem g2_mul(const G2Group& grp, const G2Elem& g, const G2Elem& h) {
    if (g.y.field() != grp.fld || h.y.field() != grp.fld)
        throw ParameterError("g2_mul: mismatched field parameters");
    return {g.y + h.y, g.z + h.z + g.y.pow(grp.e) * h.y};
}

inline G2Elem g2_inv(const G2Group& grp, const G2Elem& g) {
    return {-g.y, g.y.pow(grp.e + 1) - g.z};
}

/// [g, h] = (0, <y1, y2>), central.
inline G2Elem g2_commutator(const G2Group& grp, const G2Elem& g, const G2Elem& h) {
    RatF z = g.y.pow(grp.e) * h.y - g.y * h.y.pow(grp.e);
    return {RatF::zero(grp.fld), std::move(z)};
}

/// phi_{tau,a}: (y, z) -> (a tau(y), a^{e+1} tau(z)), with the certificate b
/// witnessing a b in F^- (so lattices map to commensurable lattices).
struct StandardAutG2 {
    FieldAut tau;
    RatF a;
    Pol certificate_b;

    StandardAutG2(FieldAut t, RatF aa, Pol cert) : tau(std::move(t)), a(std::move(aa)), certificate_b(std::move(cert)) {
        if (a.is_zero()) throw ParameterError("StandardAutG2: a must be nonzero");
        if (certificate_b.is_zero()) throw ParameterError("StandardAutG2: certificate must be nonzero");
        if (!(a * RatF(certificate_b)).is_polynomial())
            throw ParameterError("StandardAutG2: certificate does not clear the denominator of a");
    }

    static StandardAutG2 from_pol(FieldAut t, const Pol& a) {
        return StandardAutG2(std::move(t), RatF(a), Pol::one(a.field()));
    }
};

inline G2Elem g2_apply_standard(const G2Group& grp, const StandardAutG2& phi, const G2Elem& g) {
    return {phi.a * apply(phi.tau, g.y), phi.a.pow(grp.e + 1) * apply(phi.tau, g.z)};
}

// ---------------------------------------------------------------------------
// Heisenberg group H = (F^{2m} x F, o) for the standard prime-field
// symplectic form <v,w> = sum_i (v_i w_{m+i} - v_{m+i} w_i). Requires p > 2;
// at p = 2 the group law below degenerates to an abelian one.
// ---------------------------------------------------------------------------

/// The standard symplectic form on F^{2m}, entries in the prime field.
/// Fixed shape: any symplectic form is equivalent to it by a change of
/// basis, and prime-field entries commute with every field automorphism.
struct SymplecticForm {
    int m;

    explicit SymplecticForm(int mm) : m(mm) {
        if (m < 1) throw ParameterError("SymplecticForm: m must be >= 1");
    }

    int dim() const { return 2 * m; }

    /// J entries: <e_i, e_j>.
    int entry(int i, int j) const {
        if (j == i + m) return 1;
        if (i == j + m) return -1;
        return 0;
    }

    RatF apply(const std::vector<RatF>& v, const std::vector<RatF>& w) const {
        if (static_cast<int>(v.size()) != dim() || static_cast<int>(w.size()) != dim())
            throw ParameterError("SymplecticForm: wrong vector length");
        const FqField& fld = v[0].field();
        RatF acc = RatF::zero(fld);
        for (int i = 0; i < m; ++i) {
            acc = acc + v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(m + i)];
            acc = acc - v[static_cast<std::size_t>(m + i)] * w[static_cast<std::size_t>(i)];
        }
        return acc;
    }
};

struct HeisGroup {
    SymplecticForm form;
    FqField fld;

    HeisGroup(SymplecticForm f, FqField field) : form(f), fld(std::move(field)) {
        if (fld.p() == 2)
            throw HypothesisError("HeisGroup: p = 2 makes the group abelian; p > 2 required");
    }
};

struct HeisElem {
    std::vector<RatF> v;  // length 2m
    RatF z;

    bool operator==(const HeisElem& o) const { return v == o.v && z == o.z; }
    bool operator!=(const HeisElem& o) const { return !(*this == o); }
};

inline HeisElem heis_identity(const HeisGroup& grp) {
    return {std::vector<RatF>(static_cast<std::size_t>(grp.form.dim()), RatF::zero(grp.fld)),
            RatF::zero(grp.fld)};
}

inline HeisElem heis_mul(const HeisGroup& grp, const HeisElem& g, const HeisElem& h) {
    if (static_cast<int>(g.v.size()) != grp.form.dim() || static_cast<int>(h.v.size()) != grp.form.dim())
        throw ParameterError("heis_mul: wrong vector length");
    std::vector<RatF> v;
    v.reserve(g.v.size());
    for (std::size_t i = 0; i < g.v.size(); ++i) v.push_back(g.v[i] + h.v[i]);
    return {std::move(v), g.z + h.z + grp.form.apply(g.v, h.v)};
}

inline HeisElem heis_inv(const HeisGroup& grp, const HeisElem& g) {
    std::vector<RatF> v;
    v.reserve(g.v.size());
    for (const auto& x : g.v) v.push_back(-x);
    (void)grp;
    return {std::move(v), -g.z};
}

/// [g, h] = (0, 2 <v1, v2>), central.
inline HeisElem heis_commutator(const HeisGroup& grp, const HeisElem& g, const HeisElem& h) {
    RatF two = RatF(Pol::constant(grp.fld, grp.fld.from_int(2)));
    return {std::vector<RatF>(g.v.size(), RatF::zero(grp.fld)), two * grp.form.apply(g.v, h.v)};
}

/// The scalar c_T with <Tv, Tw> = c_T <v, w>, when it exists.
inline RatF conformal_factor(const RatMat& T, const SymplecticForm& form, const FqField& fld) {
    const int n = form.dim();
    if (T.rows() != n || T.cols() != n) throw ParameterError("conformal_factor: wrong matrix shape");
    std::vector<std::vector<RatF>> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<RatF> col;
        col.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) col.push_back(T.at(i, j));
        cols.push_back(std::move(col));
    }
    RatF c = form.apply(cols[0], cols[static_cast<std::size_t>(form.m)]);
    if (c.is_zero()) throw DomainError("conformal_factor: singular or degenerate T");
    RatF minus_c = -c;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            RatF got = form.apply(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
            int want = form.entry(i, j);
            const RatF& expect = want == 0 ? RatF::zero(fld) : (want == 1 ? c : minus_c);
            if (got != expect) throw ConformalError("conformal_factor: the pairing identity fails");
        }
    }
    return c;
}

/// phi_{T,tau}: (v, z) -> (tau(T v), tau(c_T z)). A homomorphism because the
/// form's entries sit in the prime field, fixed by tau.
struct StandardAutHeis {
    RatMat T;
    RatF c_T;
    FieldAut tau;
    Pol certificate_b;

    StandardAutHeis(RatMat t, FieldAut aut, const SymplecticForm& form, Pol cert)
        : T(std::move(t)),
          c_T(conformal_factor(T, form, aut.field())),
          tau(std::move(aut)),
          certificate_b(std::move(cert)) {
        if (certificate_b.is_zero()) throw ParameterError("StandardAutHeis: certificate must be nonzero");
        RatF b(certificate_b);
        for (int i = 0; i < T.rows(); ++i)
            for (int j = 0; j < T.cols(); ++j)
                if (!(b * T.at(i, j)).is_polynomial())
                    throw ParameterError("StandardAutHeis: certificate does not make bT integral");
    }
};

inline HeisElem heis_apply_standard(const HeisGroup& grp, const StandardAutHeis& phi, const HeisElem& g) {
    if (static_cast<int>(g.v.size()) != grp.form.dim())
        throw ParameterError("heis_apply_standard: wrong vector length");
    std::vector<RatF> tv = phi.T.apply(g.v);
    for (auto& x : tv) x = apply(phi.tau, x);
    return {std::move(tv), apply(phi.tau, phi.c_T * g.z)};
}

/// Membership in the denominator-cleared lattice: every coordinate times
/// the certificate reduces to an element of F^-.
inline bool lattice_member(const G2Elem& g, const Pol& denominator) {
    if (denominator.is_zero()) throw ParameterError("lattice_member: zero denominator");
    RatF d(denominator);
    return (g.y * d).is_polynomial() && (g.z * d).is_polynomial();
}

inline bool lattice_member(const HeisElem& g, const Pol& denominator) {
    if (denominator.is_zero()) throw ParameterError("lattice_member: zero denominator");
    RatF d(denominator);
    for (const auto& x : g.v)
        if (!(x * d).is_polynomial()) return false;
    return (g.z * d).is_polynomial();
}

// ---------------------------------------------------------------------------
// H_p: the variant of H whose matrix picture carries p-th powers of the x
// and y coordinates and a free corner z. Coordinates here are the (x, y, z)
// before raising to p-th powers, except z which is stored as-is.
// ---------------------------------------------------------------------------

struct HpGroup {
    int m;
    FqField fld;

    HpGroup(int mm, FqField f) : m(mm), fld(std::move(f)) {
        if (m < 1) throw ParameterError("HpGroup: m must be >= 1");
    }
};

struct HpElem {
    std::vector<RatF> x, y;  // length m each
    RatF z;

    bool operator==(const HpElem& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const HpElem& o) const { return !(*this == o); }
};

inline HpElem hp_identity(const HpGroup& grp) {
    return {std::vector<RatF>(static_cast<std::size_t>(grp.m), RatF::zero(grp.fld)),
            std::vector<RatF>(static_cast<std::size_t>(grp.m), RatF::zero(grp.fld)), RatF::zero(grp.fld)};
}

/// Multiplication induced by the matrix picture: x and y add (p-th powers
/// add coordinatewise in characteristic p), and the corner accumulates
/// sum_i x1_i^p y2_i^p.
inline HpElem hp_mul(const HpGroup& grp, const HpElem& g, const HpElem& h) {
    if (static_cast<int>(g.x.size()) != grp.m || static_cast<int>(h.x.size()) != grp.m)
        throw ParameterError("hp_mul: wrong vector length");
    const int p = grp.fld.p();
    std::vector<RatF> x, y;
    x.reserve(g.x.size());
    y.reserve(g.y.size());
    RatF corner = g.z + h.z;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        x.push_back(g.x[i] + h.x[i]);
        y.push_back(g.y[i] + h.y[i]);
        corner = corner + g.x[i].pow(p) * h.y[i].pow(p);
    }
    return {std::move(x), std::move(y), std::move(corner)};
}

inline HpElem hp_inv(const HpGroup& grp, const HpElem& g) {
    const int p = grp.fld.p();
    std::vector<RatF> x, y;
    RatF corner = -g.z;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        x.push_back(-g.x[i]);
        y.push_back(-g.y[i]);
        corner = corner + g.x[i].pow(p) * g.y[i].pow(p);
    }
    return {std::move(x), std::move(y), std::move(corner)};
}

inline HpElem hp_commutator(const HpGroup& grp, const HpElem& g, const HpElem& h) {
    const int p = grp.fld.p();
    RatF corner = RatF::zero(grp.fld);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        corner = corner + g.x[i].pow(p) * h.y[i].pow(p) - h.x[i].pow(p) * g.y[i].pow(p);
    }
    return {std::vector<RatF>(g.x.size(), RatF::zero(grp.fld)),
            std::vector<RatF>(g.y.size(), RatF::zero(grp.fld)), std::move(corner)};
}

/// Split a polynomial z-coordinate by exponent class mod p: the part
/// supported on multiples of p (the H'_p direction, a p-th power) and the
/// rest (the central complement A).
inline std::pair<Pol, Pol> split_z_support(const Pol& z, int p) {
    const FqField& fld = z.field();
    std::vector<FqElem> zp(static_cast<std::size_t>(std::max(z.deg() + 1, 0)), fld.zero());
    std::vector<FqElem> za = zp;
    for (int j = 0; j <= z.deg(); ++j) {
        if (j % p == 0)
            zp[static_cast<std::size_t>(j)] = z.coeff(j);
        else
            za[static_cast<std::size_t>(j)] = z.coeff(j);
    }
    return {Pol::from_coeffs(fld, std::move(zp)), Pol::from_coeffs(fld, std::move(za))};
}

/// g = g' * g_A with g' in H'_p (z-support in pZ) and g_A central with
/// complementary support. Exact recomposition: hp_mul(grp, first, second)
/// returns g. Requires a polynomial z-coordinate.
inline std::pair<HpElem, HpElem> hp_decompose(const HpGroup& grp, const HpElem& g) {
    if (!g.z.is_polynomial())
        throw DecompositionError("hp_decompose: z-coordinate has a nontrivial denominator");
    auto [zp, za] = split_z_support(g.z.to_pol(), grp.fld.p());
    HpElem prime{g.x, g.y, RatF(zp)};
    HpElem central{std::vector<RatF>(g.x.size(), RatF::zero(grp.fld)),
                   std::vector<RatF>(g.y.size(), RatF::zero(grp.fld)), RatF(za)};
    return {std::move(prime), std::move(central)};
}

inline bool hp_in_prime_part(const HpGroup& grp, const HpElem& g) {
    if (!g.z.is_polynomial()) return false;
    return split_z_support(g.z.to_pol(), grp.fld.p()).second.is_zero();
}

inline bool hp_in_central_complement(const HpGroup& grp, const HpElem& g) {
    for (const auto& c : g.x)
        if (!c.is_zero()) return false;
    for (const auto& c : g.y)
        if (!c.is_zero()) return false;
    if (!g.z.is_polynomial()) return false;
    return split_z_support(g.z.to_pol(), grp.fld.p()).first.is_zero();
}

namespace detail {

inline RatF ratf_pth_root(const RatF& a, int p) {
    auto num = a.num().pth_root();
    auto den = a.den().pth_root();
    if (!num || !den) throw DomainError("frobenius transport: coordinate is not a p-th power");
    (void)p;
    return RatF(*num, *den);
}

/// B(v, w) = sum_i x_i(v) y_i(w), the triangular cocycle of the matrix
/// picture. The symplectic cocycle differs from it by the coboundary of
/// B(v,v)/2, which is the coordinate change used by the transport.
inline RatF triangular_cocycle(const SymplecticForm& form, const std::vector<RatF>& v,
                               const std::vector<RatF>& w) {
    const FqField& fld = v[0].field();
    RatF acc = RatF::zero(fld);
    for (int i = 0; i < form.m; ++i)
        acc = acc + v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(form.m + i)];
    return acc;
}

}  // namespace detail

/// The isomorphism H -> H'_p induced by x -> x^p on matrix entries,
/// composed with the change of coordinates between the symplectic and the
/// matrix cocycle (z |-> (z + B(v,v)) / 2, invertible since p > 2).
inline HpElem frobenius_transport(const HeisGroup& src, const HpGroup& dst, const HeisElem& g) {
    if (src.form.m != dst.m || src.fld != dst.fld)
        throw ParameterError("frobenius_transport: group shape mismatch");
    const FqField& fld = src.fld;
    RatF half = RatF(Pol::constant(fld, fld.from_int(2))).inverse();
    RatF w = (g.z + detail::triangular_cocycle(src.form, g.v, g.v)) * half;
    std::vector<RatF> x(g.v.begin(), g.v.begin() + src.form.m);
    std::vector<RatF> y(g.v.begin() + src.form.m, g.v.end());
    return {std::move(x), std::move(y), w.pow(fld.p())};
}

/// Inverse transport; DomainError when the corner is not a p-th power,
/// DecompositionError when the element is not in H'_p.
inline HeisElem frobenius_transport_inverse(const HpGroup& src, const HeisGroup& dst, const HpElem& g) {
    if (src.m != dst.form.m || src.fld != dst.fld)
        throw ParameterError("frobenius_transport_inverse: group shape mismatch");
    const FqField& fld = src.fld;
    RatF w = detail::ratf_pth_root(g.z, fld.p());
    std::vector<RatF> v;
    v.reserve(static_cast<std::size_t>(2 * src.m));
    for (const auto& c : g.x) v.push_back(c);
    for (const auto& c : g.y) v.push_back(c);
    RatF two = RatF(Pol::constant(fld, fld.from_int(2)));
    RatF z = two * w - detail::triangular_cocycle(dst.form, v, v);
    return {std::move(v), std::move(z)};
}

}  // namespace tminus
