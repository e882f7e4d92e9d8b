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

#include <cstdint>
#include <utility>
#include <vector>

#include "tminus/poly.hpp"

namespace tminus {

/// Coordinate vector over F_p, one byte per coordinate.
using FpVec = std::vector<std::uint8_t>;

/// The degree <= N truncation of F^-, as an F_p-space of dimension
/// d*(N+1). Coefficient of t^-j occupies coordinates j*d .. j*d + d - 1 in
/// the power basis of F_q.
struct Window {
    int N = 0;
    FqField fld;

    Window(int n, FqField f) : N(n), fld(std::move(f)) {
        if (n < 0) throw ParameterError("Window: N must be >= 0");
    }

    int dim() const { return fld.d() * (N + 1); }

    bool operator==(const Window& o) const { return N == o.N && fld == o.fld; }
    bool operator!=(const Window& o) const { return !(*this == o); }
};

inline FpVec embed(const Pol& a, const Window& w) {
    if (a.field() != w.fld) throw ParameterError("embed: mismatched field parameters");
    if (!a.is_zero() && a.deg() > w.N)
        throw WindowError("embed: degree " + std::to_string(a.deg()) + " exceeds window N=" + std::to_string(w.N));
    FpVec v(static_cast<std::size_t>(w.dim()), 0);
    const int d = w.fld.d();
    for (int j = 0; j <= a.deg() && j <= w.N; ++j) {
        FqElem c = a.coeff(j);
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(j * d + i)] = static_cast<std::uint8_t>(c.coeff(i));
    }
    return v;
}

inline Pol unembed(const FpVec& v, const Window& w) {
    if (static_cast<int>(v.size()) != w.dim()) throw ParameterError("unembed: wrong vector length");
    const int d = w.fld.d();
    std::vector<FqElem> coeffs;
    coeffs.reserve(static_cast<std::size_t>(w.N) + 1);
    for (int j = 0; j <= w.N; ++j) {
        std::vector<int> c(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(j * d + i)];
        coeffs.push_back(w.fld.from_coeffs(c));
    }
    return Pol::from_coeffs(w.fld, std::move(coeffs));
}

namespace detail {

inline int mod_inverse_small(int a, int p) {
    int t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int q = r / newr;
        int tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    return t < 0 ? t + p : t;
}

/// row -= c * other (mod p). The p == 2 case is a plain XOR loop, which the
/// compiler turns into wide vector ops; that is where the codimension
/// audits spend their time.
inline void row_axpy(FpVec& row, const FpVec& other, int c, int p) {
    if (c == 0) return;
    const std::size_t n = row.size();
    if (p == 2) {
        for (std::size_t i = 0; i < n; ++i) row[i] ^= other[i];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        int t = row[i] - c * other[i];
        t %= p;
        if (t < 0) t += p;
        row[i] = static_cast<std::uint8_t>(t);
    }
}

inline void row_scale(FpVec& row, int c, int p) {
    if (c == 1) return;
    for (auto& x : row) x = static_cast<std::uint8_t>((x * c) % p);
}

}  // namespace detail

/// In-place reduced row echelon form over F_p. Removes zero rows; rows end
/// up sorted by pivot column. Returns the rank.
inline int rref_in_place(std::vector<FpVec>& rows, int p) {
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        detail::row_scale(rows[rank], detail::mod_inverse_small(rows[rank][col], p), p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][col] != 0) detail::row_axpy(rows[r], rows[rank], rows[r][col], p);
        }
        ++rank;
    }
    rows.resize(rank);
    return static_cast<int>(rank);
}

/// Basis of the right kernel of the row system (rows as linear
/// functionals on F_p^ncols).
inline std::vector<FpVec> nullspace(std::vector<FpVec> rows, int ncols, int p) {
    rref_in_place(rows, p);
    std::vector<int> pivot_col_of_row(rows.size());
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int c = 0;
        while (rows[r][static_cast<std::size_t>(c)] == 0) ++c;
        pivot_col_of_row[r] = c;
        is_pivot[static_cast<std::size_t>(c)] = true;
    }
    std::vector<FpVec> basis;
    for (int freec = 0; freec < ncols; ++freec) {
        if (is_pivot[static_cast<std::size_t>(freec)]) continue;
        FpVec v(static_cast<std::size_t>(ncols), 0);
        v[static_cast<std::size_t>(freec)] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int c = rows[r][static_cast<std::size_t>(freec)];
            if (c != 0) v[static_cast<std::size_t>(pivot_col_of_row[r])] = static_cast<std::uint8_t>((p - c) % p);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// An F_p-subspace of a window, stored as a reduced-row-echelon basis.
/// Immutable after construction.
class FpSubspace {
  public:
    static FpSubspace zero(const Window& w) { return FpSubspace(w, {}); }

    static FpSubspace full(const Window& w) {
        std::vector<FpVec> rows;
        rows.reserve(static_cast<std::size_t>(w.dim()));
        for (int i = 0; i < w.dim(); ++i) {
            FpVec v(static_cast<std::size_t>(w.dim()), 0);
            v[static_cast<std::size_t>(i)] = 1;
            rows.push_back(std::move(v));
        }
        return FpSubspace(w, std::move(rows));
    }

    static FpSubspace span(std::vector<FpVec> vectors, const Window& w) {
        for (const auto& v : vectors)
            if (static_cast<int>(v.size()) != w.dim()) throw ParameterError("FpSubspace::span: wrong vector length");
        rref_in_place(vectors, w.fld.p());
        return FpSubspace(w, std::move(vectors));
    }

    static FpSubspace span_pols(const std::vector<Pol>& gens, const Window& w) {
        std::vector<FpVec> rows;
        rows.reserve(gens.size());
        for (const auto& g : gens) rows.push_back(embed(g, w));
        return span(std::move(rows), w);
    }

    const Window& window() const { return win_; }
    const std::vector<FpVec>& basis() const { return basis_; }

    int dim() const { return static_cast<int>(basis_.size()); }
    int codim() const { return win_.dim() - dim(); }

    /// Reduce v against the basis; the residual is zero iff v is in the span.
    FpVec reduce(FpVec v) const {
        const int p = win_.fld.p();
        for (const auto& row : basis_) {
            std::size_t c = pivot(row);
            if (v[c] != 0) detail::row_axpy(v, row, v[c], p);
        }
        return v;
    }

    bool contains(const FpVec& v) const {
        if (static_cast<int>(v.size()) != win_.dim()) throw ParameterError("FpSubspace::contains: wrong length");
        FpVec r = reduce(v);
        for (auto x : r)
            if (x != 0) return false;
        return true;
    }

    bool contains(const Pol& a) const { return contains(embed(a, win_)); }

    bool contains_subspace(const FpSubspace& other) const {
        for (const auto& row : other.basis_)
            if (!contains(row)) return false;
        return true;
    }

    std::vector<Pol> pol_basis() const {
        std::vector<Pol> out;
        out.reserve(basis_.size());
        for (const auto& row : basis_) out.push_back(unembed(row, win_));
        return out;
    }

    /// The sub-subspace of vectors supported in degree <= R, re-windowed.
    FpSubspace restrict_to_degree(int R) const {
        if (R > win_.N) throw WindowError("restrict_to_degree: R exceeds the window");
        Window small(R, win_.fld);
        const int cut = small.dim();
        // Solve for combinations of basis rows that vanish above the cut.
        std::vector<FpVec> high;
        high.reserve(basis_.size());
        for (const auto& row : basis_) high.emplace_back(row.begin() + cut, row.end());
        std::vector<FpVec> combos = nullspace(transpose(high), static_cast<int>(basis_.size()), win_.fld.p());
        std::vector<FpVec> rows;
        rows.reserve(combos.size());
        const int p = win_.fld.p();
        for (const auto& combo : combos) {
            FpVec v(static_cast<std::size_t>(cut), 0);
            for (std::size_t i = 0; i < combo.size(); ++i) {
                if (combo[i] == 0) continue;
                for (int j = 0; j < cut; ++j)
                    v[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(
                        (v[static_cast<std::size_t>(j)] + combo[i] * basis_[i][static_cast<std::size_t>(j)]) % p);
            }
            rows.push_back(std::move(v));
        }
        return span(std::move(rows), small);
    }

    bool operator==(const FpSubspace& o) const { return win_ == o.win_ && basis_ == o.basis_; }
    bool operator!=(const FpSubspace& o) const { return !(*this == o); }

    friend FpSubspace subspace_sum(const FpSubspace& u, const FpSubspace& w) {
        u.check_same(w);
        std::vector<FpVec> rows = u.basis_;
        rows.insert(rows.end(), w.basis_.begin(), w.basis_.end());
        return span(std::move(rows), u.win_);
    }

    /// Intersection by the kernel-of-stacked-constraints method: each space
    /// is the kernel of the functionals annihilating it, and the
    /// intersection is the kernel of the union.
    friend FpSubspace subspace_intersect(const FpSubspace& u, const FpSubspace& w) {
        u.check_same(w);
        const int p = u.win_.fld.p();
        const int n = u.win_.dim();
        std::vector<FpVec> constraints = nullspace(u.basis_, n, p);
        std::vector<FpVec> cw = nullspace(w.basis_, n, p);
        constraints.insert(constraints.end(), cw.begin(), cw.end());
        return span(nullspace(std::move(constraints), n, p), u.win_);
    }

  private:
    FpSubspace(Window w, std::vector<FpVec> rref_rows) : win_(std::move(w)), basis_(std::move(rref_rows)) {}

    static std::size_t pivot(const FpVec& row) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        return c;
    }

    static std::vector<FpVec> transpose(const std::vector<FpVec>& m) {
        if (m.empty()) return {};
        std::vector<FpVec> out(m[0].size(), FpVec(m.size(), 0));
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c) out[c][r] = m[r][c];
        return out;
    }

    void check_same(const FpSubspace& o) const {
        if (win_ != o.win_) throw ParameterError("FpSubspace: window mismatch");
    }

    Window win_;
    std::vector<FpVec> basis_;
};

inline int codim_in_window(const FpSubspace& u) { return u.codim(); }

/// Finite-codimension subspace of F^- in the tail model: the kernel of k
/// independent functionals supported on coefficients of degree <= D. The
/// modeled subspace contains every element supported in degrees > D, so it
/// restricts compatibly to every window with N >= D.
struct TailSubspaceSpec {
    int D = 0;
    FqField fld;
    std::vector<FpVec> constraints;

    TailSubspaceSpec(int depth, FqField f, std::vector<FpVec> cons)
        : D(depth), fld(std::move(f)), constraints(std::move(cons)) {
        const int width = fld.d() * (D + 1);
        for (const auto& c : constraints)
            if (static_cast<int>(c.size()) != width)
                throw ParameterError("TailSubspaceSpec: constraint length must be d*(D+1)");
        std::vector<FpVec> copy = constraints;
        if (rref_in_place(copy, fld.p()) != static_cast<int>(constraints.size()))
            throw ParameterError("TailSubspaceSpec: constraints must be linearly independent");
    }

    static TailSubspaceSpec full(const FqField& f) { return TailSubspaceSpec(0, f, {}); }

    int k() const { return static_cast<int>(constraints.size()); }

    bool contains(const Pol& a) const {
        if (a.field() != fld) throw ParameterError("TailSubspaceSpec: mismatched field parameters");
        const int d = fld.d();
        const int p = fld.p();
        for (const auto& c : constraints) {
            int acc = 0;
            for (int j = 0; j <= D; ++j)
                for (int i = 0; i < d; ++i) acc += c[static_cast<std::size_t>(j * d + i)] * a.coeff(j).coeff(i);
            if (acc % p != 0) return false;
        }
        return true;
    }

    /// The modeled subspace inside a window: kernel of the constraints on
    /// degrees <= D, full in degrees (D, N].
    FpSubspace realize(const Window& w) const {
        if (w.fld != fld) throw ParameterError("TailSubspaceSpec: mismatched field parameters");
        if (w.N < D) throw WindowError("realize_tail: window N < constraint depth D");
        std::vector<FpVec> padded;
        padded.reserve(constraints.size());
        for (const auto& c : constraints) {
            FpVec v(static_cast<std::size_t>(w.dim()), 0);
            std::copy(c.begin(), c.end(), v.begin());
            padded.push_back(std::move(v));
        }
        return FpSubspace::span(nullspace(std::move(padded), w.dim(), fld.p()), w);
    }
};

inline FpSubspace realize_tail(const TailSubspaceSpec& spec, const Window& w) { return spec.realize(w); }

}  // namespace tminus
