#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wmha {

using Q = mpq_class;
using Vec = std::vector<Q>;

/// Exact textual form "num/den" (integers keep the "/1").
inline std::string to_string(const Q& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Sparse vector over Q; zero entries are never stored.
class SVec {
public:
    using Map = std::map<std::size_t, Q>;

    SVec() = default;

    static SVec unit(std::size_t i, const Q& c = Q(1))
    {
        SVec v;
        v.add(i, c);
        return v;
    }

    static SVec from_dense(const Vec& d)
    {
        SVec v;
        for (std::size_t i = 0; i < d.size(); ++i)
            v.add(i, d[i]);
        return v;
    }

    Vec to_dense(std::size_t n) const
    {
        Vec d(n);
        for (const auto& [i, c] : m_) {
            if (i >= n)
                throw std::out_of_range("SVec::to_dense: index beyond dimension");
            d[i] = c;
        }
        return d;
    }

    bool empty() const { return m_.empty(); }
    std::size_t nnz() const { return m_.size(); }
    const Map& entries() const { return m_; }
    Map::const_iterator begin() const { return m_.begin(); }
    Map::const_iterator end() const { return m_.end(); }

    Q get(std::size_t i) const
    {
        auto it = m_.find(i);
        return it == m_.end() ? Q(0) : it->second;
    }

    std::size_t leading() const { return m_.begin()->first; }

    void add(std::size_t i, const Q& c)
    {
        if (sgn(c) == 0)
            return;
        auto [it, fresh] = m_.try_emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0)
                m_.erase(it);
        }
    }

    void set(std::size_t i, const Q& c)
    {
        if (sgn(c) == 0)
            m_.erase(i);
        else
            m_[i] = c;
    }

    /// this += c * x
    void axpy(const Q& c, const SVec& x)
    {
        if (sgn(c) == 0)
            return;
        auto hint = m_.begin();
        for (const auto& [i, v] : x.m_) {
            hint = m_.lower_bound(i);
            if (hint != m_.end() && hint->first == i) {
                hint->second += c * v;
                if (sgn(hint->second) == 0)
                    hint = m_.erase(hint);
            } else {
                m_.emplace_hint(hint, i, c * v);
            }
        }
    }

    SVec& operator+=(const SVec& x)
    {
        axpy(Q(1), x);
        return *this;
    }
    SVec& operator-=(const SVec& x)
    {
        axpy(Q(-1), x);
        return *this;
    }
    SVec operator+(const SVec& x) const
    {
        SVec r = *this;
        r += x;
        return r;
    }
    SVec operator-(const SVec& x) const
    {
        SVec r = *this;
        r -= x;
        return r;
    }
    SVec scaled(const Q& c) const
    {
        SVec r;
        if (sgn(c) == 0)
            return r;
        for (const auto& [i, v] : m_)
            r.m_.emplace_hint(r.m_.end(), i, v * c);
        return r;
    }
    bool operator==(const SVec& o) const { return m_ == o.m_; }
    bool operator!=(const SVec& o) const { return !(m_ == o.m_); }

private:
    Map m_;
};

/// A linear map given by the images of the basis vectors.
using LinMap = std::vector<SVec>;

inline SVec apply_map(const LinMap& f, const SVec& x)
{
    SVec r;
    for (const auto& [i, c] : x)
        r.axpy(c, f.at(i));
    return r;
}

inline LinMap compose(const LinMap& f, const LinMap& g)
{
    LinMap h;
    h.reserve(g.size());
    for (const auto& v : g)
        h.push_back(apply_map(f, v));
    return h;
}

inline LinMap identity_map(std::size_t n)
{
    LinMap f;
    for (std::size_t i = 0; i < n; ++i)
        f.push_back(SVec::unit(i));
    return f;
}

/// x ⊗ y with row-major indexing, y living in a space of dimension m2.
inline SVec tensor(const SVec& x, const SVec& y, std::size_t m2)
{
    SVec r;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
            r.add(i * m2 + j, a * b);
    return r;
}

/// (f ⊗ g)(x) for x in V1 ⊗ V2 (dim V2 = n2), landing in W1 ⊗ W2 (dim W2 = m2).
/// A null map stands for the identity.
inline SVec tensor_map(const SVec& x, std::size_t n2, const LinMap* f, const LinMap* g, std::size_t m2)
{
    SVec r;
    for (const auto& [idx, c] : x) {
        std::size_t i = idx / n2, j = idx % n2;
        if (f && g) {
            const SVec& fi = f->at(i);
            const SVec& gj = g->at(j);
            for (const auto& [k, a] : fi)
                for (const auto& [l, b] : gj)
                    r.add(k * m2 + l, c * a * b);
        } else if (f) {
            for (const auto& [k, a] : f->at(i))
                r.add(k * m2 + j, c * a);
        } else if (g) {
            for (const auto& [l, b] : g->at(j))
                r.add(i * m2 + l, c * b);
        } else {
            r.add(i * m2 + j, c);
        }
    }
    return r;
}

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Q> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init)
    {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols)
                throw std::invalid_argument("Matrix: ragged initializer");
            for (long v : row)
                a.emplace_back(v);
        }
    }

    Q& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan with the leftmost pivot taken from the first nonzero row.
inline RrefResult rref(Matrix m)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            Q f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Kernel basis: one vector per free column, free entry 1, in column order.
inline std::vector<Vec> nullspace(const Matrix& m)
{
    auto [r, piv] = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto p : piv)
        is_piv[p] = true;
    std::vector<Vec> ker;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f])
            continue;
        Vec v(m.cols);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = -r(i, f);
        ker.push_back(std::move(v));
    }
    return ker;
}

struct AffineSolution {
    bool consistent = false;
    Vec particular;
    std::vector<Vec> kernel;
};

/// All solutions of A x = b: a particular solution with free variables set to zero,
/// plus the kernel basis of nullspace().
inline AffineSolution solve_affine(const Matrix& A, const Vec& b)
{
    if (b.size() != A.rows)
        throw std::invalid_argument("solve_affine: dimension mismatch");
    Matrix aug(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j)
            aug(i, j) = A(i, j);
        aug(i, A.cols) = b[i];
    }
    auto [r, piv] = rref(aug);
    AffineSolution s;
    if (!piv.empty() && piv.back() == A.cols)
        return s;
    s.consistent = true;
    s.particular.assign(A.cols, Q(0));
    for (std::size_t i = 0; i < piv.size(); ++i)
        s.particular[piv[i]] = r(i, A.cols);
    s.kernel = nullspace(A);
    return s;
}

inline std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows != m.cols)
        throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto [r, piv] = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = r(i, n + j);
    return inv;
}

/*
 * Incremental sparse Gauss-Jordan elimination.
 *
 * Rows are kept fully reduced (RREF): every pivot column is zero in all other
 * rows, and pivots are the leftmost nonzero entries normalized to 1.  Because
 * of that, reducing a vector needs one pass over its pivot coordinates.
 * With tracking enabled each row remembers which combination of inserted
 * generators produced it, and dependent generators are recorded as relations.
 */
class Eliminator {
public:
    explicit Eliminator(bool track = false) : track_(track) {}

    /// Returns true when v is independent of what was inserted before.
    bool insert(const SVec& v)
    {
        std::size_t g = count_++;
        SVec combo;
        SVec r = reduce(v, track_ ? &combo : nullptr);
        SVec rc;
        if (track_) {
            rc = SVec::unit(g);
            rc -= combo;
        }
        if (r.empty()) {
            if (track_)
                relations_.push_back(std::move(rc));
            return false;
        }
        std::size_t p = r.leading();
        Q inv = 1 / r.get(p);
        r = r.scaled(inv);
        if (track_)
            rc = rc.scaled(inv);
        for (auto& [q, row] : rows_) {
            Q f = row.v.get(p);
            if (sgn(f) == 0)
                continue;
            row.v.axpy(-f, r);
            if (track_)
                row.combo.axpy(-f, rc);
        }
        rows_.emplace(p, Row{std::move(r), std::move(rc)});
        return true;
    }

    /// Residual of v modulo the row space; combo receives the generator
    /// combination equal to v - residual.
    SVec reduce(const SVec& v, SVec* combo = nullptr) const
    {
        SVec r = v;
        for (const auto& [i, c] : v) {
            auto it = rows_.find(i);
            if (it == rows_.end())
                continue;
            r.axpy(-c, it->second.v);
            if (combo)
                combo->axpy(c, it->second.combo);
        }
        return r;
    }

    bool contains(const SVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return count_; }
    const std::vector<SVec>& relations() const { return relations_; }

    std::vector<SVec> basis() const
    {
        std::vector<SVec> b;
        b.reserve(rows_.size());
        for (const auto& [p, row] : rows_)
            b.push_back(row.v);
        return b;
    }

    std::vector<std::size_t> pivots() const
    {
        std::vector<std::size_t> p;
        for (const auto& [q, row] : rows_)
            p.push_back(q);
        return p;
    }

    /// Coordinates of v over basis(), provided v lies in the span.
    std::optional<SVec> coordinates(const SVec& v) const
    {
        SVec coords;
        std::size_t k = 0;
        SVec r = v;
        for (const auto& [p, row] : rows_) {
            Q c = v.get(p);
            if (sgn(c) != 0) {
                coords.add(k, c);
                r.axpy(-c, row.v);
            }
            ++k;
        }
        if (!r.empty())
            return std::nullopt;
        return coords;
    }

    /// Generator combination expressing v, provided v lies in the span.
    std::optional<SVec> express(const SVec& v) const
    {
        SVec combo;
        if (!reduce(v, &combo).empty())
            return std::nullopt;
        return combo;
    }

private:
    struct Row {
        SVec v;
        SVec combo;
    };
    std::map<std::size_t, Row> rows_;
    std::vector<SVec> relations_;
    std::size_t count_ = 0;
    bool track_;
};

/// Kernel of the matrix whose rows are given, in the same canonical form as nullspace().
inline std::vector<SVec> nullspace_rows(const std::vector<SVec>& rows, std::size_t ncols)
{
    Eliminator e;
    for (const auto& r : rows)
        e.insert(r);
    auto piv = e.pivots();
    auto basis = e.basis();
    std::vector<bool> is_piv(ncols, false);
    for (auto p : piv)
        is_piv[p] = true;
    std::vector<SVec> ker;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f])
            continue;
        SVec v = SVec::unit(f);
        for (std::size_t i = 0; i < piv.size(); ++i)
            v.add(piv[i], -basis[i].get(f));
        ker.push_back(std::move(v));
    }
    return ker;
}

/// Subspace of Q^ambient stored by its canonical RREF basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<SVec>& gens)
    {
        Subspace s(ambient);
        for (const auto& g : gens)
            s.add(g);
        return s;
    }

    static Subspace full(std::size_t ambient)
    {
        Subspace s(ambient);
        for (std::size_t i = 0; i < ambient; ++i)
            s.add(SVec::unit(i));
        return s;
    }

    bool add(const SVec& v)
    {
        if (!v.empty() && v.entries().rbegin()->first >= ambient_)
            throw std::out_of_range("Subspace::add: vector outside ambient space");
        return elim_.insert(v);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return elim_.rank(); }
    std::vector<SVec> basis() const { return elim_.basis(); }
    std::vector<std::size_t> pivots() const { return elim_.pivots(); }
    bool contains(const SVec& v) const { return elim_.contains(v); }
    SVec residual(const SVec& v) const { return elim_.reduce(v); }
    std::optional<SVec> coordinates(const SVec& v) const { return elim_.coordinates(v); }

    bool contains(const Subspace& u) const
    {
        check_ambient(u);
        for (const auto& b : u.basis())
            if (!contains(b))
                return false;
        return true;
    }

    bool operator==(const Subspace& o) const
    {
        check_ambient(o);
        return basis() == o.basis();
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    Subspace sum(const Subspace& o) const
    {
        check_ambient(o);
        Subspace s = *this;
        for (const auto& b : o.basis())
            s.add(b);
        return s;
    }

    /// Zassenhaus: rows (u|u) and (v|0); rows with vanishing left half span U ∩ V.
    Subspace intersection(const Subspace& o) const
    {
        check_ambient(o);
        std::size_t n = ambient_;
        Eliminator e;
        for (const auto& u : basis()) {
            SVec w = u;
            for (const auto& [i, c] : u)
                w.add(n + i, c);
            e.insert(w);
        }
        for (const auto& v : o.basis())
            e.insert(v);
        Subspace s(n);
        for (const auto& row : e.basis()) {
            if (row.leading() < n)
                continue;
            SVec w;
            for (const auto& [i, c] : row)
                w.add(i - n, c);
            s.add(w);
        }
        return s;
    }

    Matrix basis_matrix() const
    {
        auto b = basis();
        Matrix m(b.size(), ambient_);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (const auto& [j, c] : b[i])
                m(i, j) = c;
        return m;
    }

private:
    void check_ambient(const Subspace& o) const
    {
        if (o.ambient_ != ambient_)
            throw std::invalid_argument("Subspace: ambient dimension mismatch");
    }

    std::size_t ambient_;
    Eliminator elim_;
};

struct SparseSolution {
    bool consistent = false;
    SVec particular;
    std::vector<SVec> kernel;
};

/// Solves Σ x_i cols[i] = rhs; the kernel comes back in canonical RREF form.
inline SparseSolution solve_columns(const std::vector<SVec>& cols, const SVec& rhs)
{
    Eliminator e(true);
    for (const auto& c : cols)
        e.insert(c);
    SparseSolution s;
    auto combo = e.express(rhs);
    if (!combo)
        return s;
    s.consistent = true;
    s.particular = std::move(*combo);
    s.kernel = Subspace::span(cols.size(), e.relations()).basis();
    return s;
}

} // namespace wmha
