#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "zsep/common.hpp"

namespace zsep {

/// Dense row-major matrix of exact 64-bit integers. All normal-form
/// computations are first attempted in checked machine words; if any
/// intermediate would overflow, the whole computation restarts in
/// arbitrary precision. Nothing ever silently wraps.
struct IntMatrix {
    i64 rows = 0;
    i64 cols = 0;
    std::vector<i64> a;

    IntMatrix() = default;
    IntMatrix(i64 r, i64 c) : rows(r), cols(c), a(static_cast<size_t>(r * c), 0) {}

    static IntMatrix identity(i64 n) {
        IntMatrix m(n, n);
        for (i64 i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<i64>>& rws, i64 ncols) {
        IntMatrix m(static_cast<i64>(rws.size()), ncols);
        for (i64 i = 0; i < m.rows; ++i) {
            if (static_cast<i64>(rws[static_cast<size_t>(i)].size()) != ncols)
                throw std::invalid_argument("IntMatrix: ragged row list");
            for (i64 j = 0; j < ncols; ++j) m(i, j) = rws[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        return m;
    }

    i64& operator()(i64 i, i64 j) { return a[static_cast<size_t>(i * cols + j)]; }
    i64 operator()(i64 i, i64 j) const { return a[static_cast<size_t>(i * cols + j)]; }

    std::vector<i64> row(i64 i) const {
        return std::vector<i64>(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                                a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }

    bool operator==(const IntMatrix& o) const = default;
};

namespace detail {

// Internal signal: an int64 intermediate overflowed, retry with mpz.
struct overflow_retry {};

struct cint {
    i64 v = 0;
    cint() = default;
    cint(i64 x) : v(x) {}  // NOLINT: implicit by design
    friend cint operator+(cint a, cint b) {
        i64 r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw overflow_retry{};
        return cint(r);
    }
    friend cint operator-(cint a, cint b) {
        i64 r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw overflow_retry{};
        return cint(r);
    }
    friend cint operator*(cint a, cint b) {
        i64 r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw overflow_retry{};
        return cint(r);
    }
    friend cint operator-(cint a) { return cint(0) - a; }
    cint& operator+=(cint o) { return *this = *this + o; }
    cint& operator-=(cint o) { return *this = *this - o; }
    friend bool operator==(cint a, cint b) { return a.v == b.v; }
    friend bool operator!=(cint a, cint b) { return a.v != b.v; }
    friend bool operator<(cint a, cint b) { return a.v < b.v; }
};

inline bool is_zero(const cint& x) { return x.v == 0; }
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
inline bool is_neg(const cint& x) { return x.v < 0; }
inline bool is_neg(const mpz_class& x) { return sgn(x) < 0; }
inline cint abs_of(const cint& x) {
    if (x.v == std::numeric_limits<i64>::min()) throw overflow_retry{};
    return cint(x.v < 0 ? -x.v : x.v);
}
inline mpz_class abs_of(const mpz_class& x) { return abs(x); }

// Floor division (quotient rounded toward -inf), so a - fdiv(a,b)*b lies in
// [0, b) for b > 0.
inline cint fdiv(const cint& a, const cint& b) {
    if (b.v == -1) return -a;
    i64 q = a.v / b.v;
    if ((a.v % b.v != 0) && ((a.v < 0) != (b.v < 0))) --q;
    return cint(q);
}
inline mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
// Exact remainder test.
inline bool divides(const cint& d, const cint& a) { return a.v % d.v == 0; }
inline bool divides(const mpz_class& d, const mpz_class& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

template <class T>
struct Mat {
    i64 rows = 0, cols = 0;
    std::vector<T> a;
    Mat() = default;
    Mat(i64 r, i64 c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}
    T& operator()(i64 i, i64 j) { return a[static_cast<size_t>(i * cols + j)]; }
    const T& operator()(i64 i, i64 j) const { return a[static_cast<size_t>(i * cols + j)]; }
};

template <class T>
Mat<T> lift(const IntMatrix& m) {
    Mat<T> r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = T(m.a[i]);
    return r;
}

inline i64 lower(const cint& x) { return x.v; }
inline i64 lower(const mpz_class& x) {
    if (!x.fits_slong_p())
        throw std::overflow_error("intmat: exact result exceeds 64-bit range");
    return static_cast<i64>(x.get_si());
}

template <class T>
IntMatrix lower_mat(const Mat<T>& m) {
    IntMatrix r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = lower(m.a[i]);
    return r;
}

template <class T>
void row_sub(Mat<T>& m, i64 dst, i64 src, const T& q) {
    for (i64 j = 0; j < m.cols; ++j) m(dst, j) -= q * m(src, j);
}
template <class T>
void row_swap(Mat<T>& m, i64 i, i64 j) {
    for (i64 c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
template <class T>
void row_neg(Mat<T>& m, i64 i) {
    for (i64 c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}
template <class T>
void col_sub(Mat<T>& m, i64 dst, i64 src, const T& q) {
    for (i64 i = 0; i < m.rows; ++i) m(i, dst) -= q * m(i, src);
}
template <class T>
void col_swap(Mat<T>& m, i64 i, i64 j) {
    for (i64 r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}

// Row-style Hermite normal form. Pivot columns strictly increase down the
// rows, pivots are positive, entries above each pivot are reduced into
// [0, pivot). Returns the number of nonzero rows; on exit rows [rank, m)
// of `m` are zero. If `u` is nonnull it accumulates the unimodular row
// transform (u_out * m_in = m_out), whose rows [rank, m) span the left kernel.
template <class T>
i64 hnf_core(Mat<T>& m, Mat<T>* u) {
    if (u) {
        *u = Mat<T>(m.rows, m.rows);
        for (i64 i = 0; i < m.rows; ++i)
            for (i64 j = 0; j < m.rows; ++j) (*u)(i, j) = T(i == j ? 1 : 0);
    }
    i64 pivot = 0;
    for (i64 col = 0; col < m.cols && pivot < m.rows; ++col) {
        // Euclid over the rows at and below `pivot` until one survivor remains.
        while (true) {
            i64 best = -1;
            for (i64 i = pivot; i < m.rows; ++i)
                if (!is_zero(m(i, col)) &&
                    (best < 0 || abs_of(m(i, col)) < abs_of(m(best, col))))
                    best = i;
            if (best < 0) break;
            if (best != pivot) {
                row_swap(m, pivot, best);
                if (u) row_swap(*u, pivot, best);
            }
            if (is_neg(m(pivot, col))) {
                row_neg(m, pivot);
                if (u) row_neg(*u, pivot);
            }
            bool clean = true;
            for (i64 i = pivot + 1; i < m.rows; ++i) {
                if (is_zero(m(i, col))) continue;
                T q = fdiv(m(i, col), m(pivot, col));
                row_sub(m, i, pivot, q);
                if (u) row_sub(*u, i, pivot, q);
                if (!is_zero(m(i, col))) clean = false;
            }
            if (clean) break;
        }
        if (is_zero(m(pivot, col))) continue;
        // Reduce the entries above the new pivot into [0, pivot).
        for (i64 i = 0; i < pivot; ++i) {
            T q = fdiv(m(i, col), m(pivot, col));
            if (!is_zero(q)) {
                row_sub(m, i, pivot, q);
                if (u) row_sub(*u, i, pivot, q);
            }
        }
        ++pivot;
    }
    return pivot;
}

// Smith normal form with transforms: u * m_in * v = diag. Diagonal entries
// are nonnegative and form a divisibility chain.
template <class T>
void snf_core(Mat<T>& m, Mat<T>& u, Mat<T>& v) {
    u = Mat<T>(m.rows, m.rows);
    v = Mat<T>(m.cols, m.cols);
    for (i64 i = 0; i < m.rows; ++i)
        for (i64 j = 0; j < m.rows; ++j) u(i, j) = T(i == j ? 1 : 0);
    for (i64 i = 0; i < m.cols; ++i)
        for (i64 j = 0; j < m.cols; ++j) v(i, j) = T(i == j ? 1 : 0);

    i64 t = 0;
    i64 dim = std::min(m.rows, m.cols);
    while (t < dim) {
        // Move a minimal-magnitude nonzero entry of the trailing block to (t,t).
        i64 bi = -1, bj = -1;
        for (i64 i = t; i < m.rows; ++i)
            for (i64 j = t; j < m.cols; ++j)
                if (!is_zero(m(i, j)) &&
                    (bi < 0 || abs_of(m(i, j)) < abs_of(m(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi < 0) break;
        if (bi != t) {
            row_swap(m, t, bi);
            row_swap(u, t, bi);
        }
        if (bj != t) {
            col_swap(m, t, bj);
            col_swap(v, t, bj);
        }

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (i64 i = t + 1; i < m.rows; ++i) {
                while (!is_zero(m(i, t))) {
                    T q = fdiv(m(i, t), m(t, t));
                    row_sub(m, i, t, q);
                    row_sub(u, i, t, q);
                    if (!is_zero(m(i, t))) {
                        row_swap(m, t, i);
                        row_swap(u, t, i);
                        dirty = true;
                    }
                }
            }
            for (i64 j = t + 1; j < m.cols; ++j) {
                while (!is_zero(m(t, j))) {
                    T q = fdiv(m(t, j), m(t, t));
                    col_sub(m, j, t, q);
                    col_sub(v, j, t, q);
                    if (!is_zero(m(t, j))) {
                        col_swap(m, t, j);
                        col_swap(v, t, j);
                        dirty = true;
                    }
                }
            }
        }
        // Enforce divisibility of the trailing block by the pivot.
        bool restart = false;
        for (i64 i = t + 1; i < m.rows && !restart; ++i)
            for (i64 j = t + 1; j < m.cols && !restart; ++j)
                if (!divides(m(t, t), m(i, j))) {
                    for (i64 c = 0; c < m.cols; ++c) m(t, c) += m(i, c);
                    for (i64 c = 0; c < m.rows; ++c) u(t, c) += u(i, c);
                    restart = true;
                }
        if (restart) continue;
        if (is_neg(m(t, t))) {
            row_neg(m, t);
            row_neg(u, t);
        }
        ++t;
    }
    // Trailing diagonal entries stay zero; sign-normalize is already done.
}

}  // namespace detail

/// A sublattice of Z^k held by its canonical row-style Hermite basis.
/// Two IntLattice values describe the same lattice iff they compare equal.
struct IntLattice {
    i64 ambient = 0;
    IntMatrix basis;  // canonical HNF; basis.rows <= ambient

    i64 rank() const { return basis.rows; }
    bool is_zero() const { return basis.rows == 0; }
    bool operator==(const IntLattice& o) const = default;
};

struct SmithResult {
    std::vector<i64> diag;  // d1 | d2 | ..., padded with zeros to min(rows, cols)
    IntMatrix left;         // unimodular U
    IntMatrix right;        // unimodular V, with U * M * V = diag
};

namespace detail {

template <class T>
IntLattice hnf_typed(const IntMatrix& m) {
    Mat<T> work = lift<T>(m);
    i64 rank = hnf_core<T>(work, nullptr);
    IntLattice out;
    out.ambient = m.cols;
    out.basis = IntMatrix(rank, m.cols);
    for (i64 i = 0; i < rank; ++i)
        for (i64 j = 0; j < m.cols; ++j) out.basis(i, j) = lower(work(i, j));
    return out;
}

template <class T>
std::vector<std::vector<i64>> left_kernel_typed(const IntMatrix& m) {
    Mat<T> work = lift<T>(m);
    Mat<T> u;
    i64 rank = hnf_core<T>(work, &u);
    std::vector<std::vector<i64>> out;
    for (i64 i = rank; i < m.rows; ++i) {
        std::vector<i64> row(static_cast<size_t>(m.rows));
        for (i64 j = 0; j < m.rows; ++j) row[static_cast<size_t>(j)] = lower(u(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

template <class T>
SmithResult snf_typed(const IntMatrix& m) {
    Mat<T> work = lift<T>(m);
    Mat<T> u, v;
    snf_core<T>(work, u, v);
    SmithResult res;
    i64 dim = std::min(m.rows, m.cols);
    for (i64 t = 0; t < dim; ++t) res.diag.push_back(lower(work(t, t)));
    res.left = lower_mat(u);
    res.right = lower_mat(v);
    return res;
}

}  // namespace detail

/// Canonical Hermite normal form of the row lattice of M.
inline IntLattice hnf(const IntMatrix& m) {
    try {
        return detail::hnf_typed<detail::cint>(m);
    } catch (const detail::overflow_retry&) {
        return detail::hnf_typed<mpz_class>(m);
    }
}

/// Smith normal form with unimodular transforms (U * M * V = diag).
inline SmithResult snf(const IntMatrix& m) {
    try {
        return detail::snf_typed<detail::cint>(m);
    } catch (const detail::overflow_retry&) {
        return detail::snf_typed<mpz_class>(m);
    }
}

/// Basis rows of the left kernel {u : u * M = 0}. Derived from the Smith
/// transform: rows of U past the rank annihilate M.
inline std::vector<std::vector<i64>> left_kernel(const IntMatrix& m) {
    try {
        return detail::left_kernel_typed<detail::cint>(m);
    } catch (const detail::overflow_retry&) {
        return detail::left_kernel_typed<mpz_class>(m);
    }
}

/// The coefficients of v in the HNF basis of L, or nullopt when v is not in
/// the lattice. Back-substitution against the pivots; coefficients are unique
/// because HNF basis rows are independent.
inline std::optional<std::vector<i64>> lattice_coefficients(const IntLattice& lat,
                                                            const std::vector<i64>& v) {
    if (static_cast<i64>(v.size()) != lat.ambient)
        throw std::invalid_argument("lattice_coefficients: dimension mismatch");
    try {
        std::vector<detail::cint> rem(v.begin(), v.end());
        std::vector<i64> coeff(static_cast<size_t>(lat.basis.rows), 0);
        for (i64 i = 0; i < lat.basis.rows; ++i) {
            i64 p = 0;
            while (p < lat.ambient && lat.basis(i, p) == 0) ++p;
            detail::cint pivot(lat.basis(i, p));
            if (!detail::divides(pivot, rem[static_cast<size_t>(p)])) return std::nullopt;
            detail::cint q = detail::fdiv(rem[static_cast<size_t>(p)], pivot);
            coeff[static_cast<size_t>(i)] = q.v;
            for (i64 j = p; j < lat.ambient; ++j)
                rem[static_cast<size_t>(j)] -= q * detail::cint(lat.basis(i, j));
        }
        for (auto& x : rem)
            if (x.v != 0) return std::nullopt;
        return coeff;
    } catch (const detail::overflow_retry&) {
        std::vector<mpz_class> rem(v.begin(), v.end());
        std::vector<i64> coeff(static_cast<size_t>(lat.basis.rows), 0);
        for (i64 i = 0; i < lat.basis.rows; ++i) {
            i64 p = 0;
            while (p < lat.ambient && lat.basis(i, p) == 0) ++p;
            mpz_class pivot(lat.basis(i, p));
            if (!detail::divides(pivot, rem[static_cast<size_t>(p)])) return std::nullopt;
            mpz_class q = detail::fdiv(rem[static_cast<size_t>(p)], pivot);
            coeff[static_cast<size_t>(i)] = detail::lower(q);
            for (i64 j = p; j < lat.ambient; ++j)
                rem[static_cast<size_t>(j)] -= q * mpz_class(lat.basis(i, j));
        }
        for (auto& x : rem)
            if (sgn(x) != 0) return std::nullopt;
        return coeff;
    }
}

inline bool lattice_contains(const IntLattice& lat, const std::vector<i64>& v) {
    return lattice_coefficients(lat, v).has_value();
}

inline bool lattice_equal(const IntLattice& a, const IntLattice& b) {
    if (a.ambient != b.ambient)
        throw std::invalid_argument("lattice_equal: dimension mismatch");
    return a == b;
}

inline IntLattice sublattice_from_generators(i64 ambient,
                                             const std::vector<std::vector<i64>>& gens) {
    for (const auto& g : gens)
        if (static_cast<i64>(g.size()) != ambient)
            throw std::invalid_argument("sublattice_from_generators: dimension mismatch");
    return hnf(IntMatrix::from_rows(gens, ambient));
}

/// True iff every vector of `inner` lies in `outer`.
inline bool lattice_subset(const IntLattice& inner, const IntLattice& outer) {
    for (i64 i = 0; i < inner.basis.rows; ++i)
        if (!lattice_contains(outer, inner.basis.row(i))) return false;
    return true;
}

inline IntLattice full_lattice(i64 ambient) {
    IntLattice l;
    l.ambient = ambient;
    l.basis = IntMatrix::identity(ambient);
    return l;
}

inline IntLattice zero_lattice(i64 ambient) {
    IntLattice l;
    l.ambient = ambient;
    l.basis = IntMatrix(0, ambient);
    return l;
}

/// |det| of the HNF basis for a full-rank lattice (product of pivots); 0 when
/// the basis is not square.
inline i64 lattice_index(const IntLattice& lat) {
    if (lat.basis.rows != lat.ambient) return 0;
    i64 det = 1;
    for (i64 i = 0; i < lat.basis.rows; ++i) {
        i64 p = 0;
        while (p < lat.ambient && lat.basis(i, p) == 0) ++p;
        det *= lat.basis(i, p);
    }
    return det;
}

}  // namespace zsep
