#pragma once

#include "exact_linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wmha {

/// Finite-dimensional algebra by structure constants: table[i][j] = e_i e_j.
struct Algebra {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> table;

    Algebra() = default;
    Algebra(std::string nm, std::vector<std::string> lbl, std::vector<std::vector<SVec>> tbl)
        : name(std::move(nm)), labels(std::move(lbl)), table(std::move(tbl))
    {
        if (labels.size() != table.size())
            throw std::invalid_argument("Algebra: label count differs from dimension");
        for (const auto& row : table)
            if (row.size() != table.size())
                throw std::invalid_argument("Algebra: structure table not square");
    }

    std::size_t dim() const { return table.size(); }
    const SVec& basis_product(std::size_t i, std::size_t j) const { return table[i][j]; }

    SVec mul(const SVec& a, const SVec& b) const
    {
        SVec r;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b)
                r.axpy(x * y, table[i][j]);
        return r;
    }

    /// a ↦ x·a
    LinMap left_mult(const SVec& x) const
    {
        LinMap f;
        for (std::size_t j = 0; j < dim(); ++j)
            f.push_back(mul(x, SVec::unit(j)));
        return f;
    }
    /// a ↦ a·x
    LinMap right_mult(const SVec& x) const
    {
        LinMap f;
        for (std::size_t j = 0; j < dim(); ++j)
            f.push_back(mul(SVec::unit(j), x));
        return f;
    }
};

/// Product in A⊗B without building the tensor algebra.
inline SVec tensor_mul(const Algebra& A, const Algebra& B, const SVec& x, const SVec& y)
{
    const std::size_t m = B.dim();
    SVec r;
    for (const auto& [p, s] : x)
        for (const auto& [q, t] : y) {
            const SVec& a = A.table[p / m][q / m];
            if (a.empty())
                continue;
            const SVec& b = B.table[p % m][q % m];
            if (b.empty())
                continue;
            Q c = s * t;
            for (const auto& [k, u] : a)
                for (const auto& [l, v] : b)
                    r.add(k * m + l, c * u * v);
        }
    return r;
}

/// Structure constants of A⊗B, row-major basis.
inline Algebra tensor_algebra(const Algebra& A, const Algebra& B)
{
    const std::size_t n = A.dim(), m = B.dim();
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(n * m, std::vector<SVec>(n * m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            labels.push_back(A.labels[i] + "⊗" + B.labels[j]);
    for (std::size_t p = 0; p < n * m; ++p)
        for (std::size_t q = 0; q < n * m; ++q)
            t[p][q] = tensor(A.table[p / m][q / m], B.table[p % m][q % m], m);
    return {A.name + "⊗" + B.name, labels, t};
}

/// Multiplier as a pair of operators: L[j] = m·e_j, R[j] = e_j·m.
struct Multiplier {
    LinMap L, R;

    bool operator==(const Multiplier& o) const { return L == o.L && R == o.R; }
    bool operator!=(const Multiplier& o) const { return !(*this == o); }
    SVec left(const SVec& a) const { return apply_map(L, a); }
    SVec right(const SVec& a) const { return apply_map(R, a); }
};

inline Multiplier embed(const Algebra& A, const SVec& a) { return {A.left_mult(a), A.right_mult(a)}; }

inline Multiplier identity_multiplier(std::size_t n) { return {identity_map(n), identity_map(n)}; }

inline Multiplier zero_multiplier(std::size_t n) { return {LinMap(n), LinMap(n)}; }

/// (m1 m2)·a = m1·(m2·a) and a·(m1 m2) = (a·m1)·m2.
inline Multiplier operator*(const Multiplier& m1, const Multiplier& m2)
{
    return {compose(m1.L, m2.L), compose(m2.R, m1.R)};
}

inline Multiplier operator+(const Multiplier& m1, const Multiplier& m2)
{
    Multiplier r = m1;
    for (std::size_t i = 0; i < r.L.size(); ++i) {
        r.L[i] += m2.L[i];
        r.R[i] += m2.R[i];
    }
    return r;
}

inline Multiplier scaled(const Multiplier& m, const Q& c)
{
    Multiplier r;
    for (const auto& v : m.L)
        r.L.push_back(v.scaled(c));
    for (const auto& v : m.R)
        r.R.push_back(v.scaled(c));
    return r;
}

inline Multiplier linear_combination(const std::vector<Multiplier>& basis, const SVec& coords, std::size_t n)
{
    Multiplier r = zero_multiplier(n);
    for (const auto& [i, c] : coords)
        for (std::size_t j = 0; j < n; ++j) {
            r.L[j].axpy(c, basis[i].L[j]);
            r.R[j].axpy(c, basis[i].R[j]);
        }
    return r;
}

/// m1 ⊗ m2 as a multiplier of A⊗B (dim B = m).
inline Multiplier tensor_multiplier(const Multiplier& m1, const Multiplier& m2)
{
    const std::size_t n = m1.L.size(), m = m2.L.size();
    Multiplier r;
    for (std::size_t p = 0; p < n * m; ++p) {
        r.L.push_back(tensor(m1.L[p / m], m2.L[p % m], m));
        r.R.push_back(tensor(m1.R[p / m], m2.R[p % m], m));
    }
    return r;
}

/// (a·m)·b = a·(m·b) on all basis pairs; returns the first failing pair.
inline std::optional<std::pair<std::size_t, std::size_t>> compatibility_failure(const Algebra& A, const Multiplier& m)
{
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (A.mul(m.R[i], SVec::unit(j)) != A.mul(SVec::unit(i), m.L[j]))
                return std::pair{i, j};
    return std::nullopt;
}

/// Coordinates in Q^{2n²}: L at j*n+k, R at n²+j*n+k.
inline SVec flatten(const Multiplier& m)
{
    const std::size_t n = m.L.size();
    SVec v;
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [k, c] : m.L[j])
            v.add(j * n + k, c);
        for (const auto& [k, c] : m.R[j])
            v.add(n * n + j * n + k, c);
    }
    return v;
}

inline Multiplier unflatten(const SVec& v, std::size_t n)
{
    Multiplier m = zero_multiplier(n);
    for (const auto& [idx, c] : v) {
        if (idx < n * n)
            m.L[idx / n].set(idx % n, c);
        else
            m.R[(idx - n * n) / n].set((idx - n * n) % n, c);
    }
    return m;
}

/// Left-action part of flatten() only.
inline SVec flatten_left(const Multiplier& m)
{
    const std::size_t n = m.L.size();
    SVec v;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : m.L[j])
            v.add(j * n + k, c);
    return v;
}

inline SVec flatten_right(const Multiplier& m)
{
    const std::size_t n = m.R.size();
    SVec v;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : m.R[j])
            v.add(j * n + k, c);
    return v;
}

struct AlgebraReport {
    bool associative = true;
    bool nondegenerate = true;
    bool idempotent = true;
    bool unital = false;
    bool has_local_units = false;
    std::optional<SVec> unit;
    std::string witness;
};

/// Solution e of e·a = a = a·e for every a in F, if one exists.
inline std::optional<SVec> local_units_for(const Algebra& A, const std::vector<SVec>& F)
{
    const std::size_t n = A.dim();
    std::vector<SVec> cols(n);
    SVec rhs;
    // Unknown e = Σ x_i e_i; equations indexed (f, side, k).
    std::size_t row = 0;
    for (const auto& a : F) {
        for (int side = 0; side < 2; ++side) {
            for (std::size_t i = 0; i < n; ++i) {
                SVec p = side == 0 ? A.mul(SVec::unit(i), a) : A.mul(a, SVec::unit(i));
                for (const auto& [k, c] : p)
                    cols[i].add(row + k, c);
            }
            for (const auto& [k, c] : a)
                rhs.add(row + k, c);
            row += n;
        }
    }
    auto sol = solve_columns(cols, rhs);
    if (!sol.consistent)
        return std::nullopt;
    return sol.particular;
}

inline AlgebraReport check_algebra(const Algebra& A)
{
    AlgebraReport r;
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n && r.associative; ++i)
        for (std::size_t j = 0; j < n && r.associative; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SVec ei = SVec::unit(i), ek = SVec::unit(k);
                if (A.mul(A.table[i][j], ek) != A.mul(ei, A.table[j][k])) {
                    r.associative = false;
                    r.witness = "associativity fails at (" + A.labels[i] + "," + A.labels[j] + "," + A.labels[k] + ")";
                    break;
                }
            }
    // a ↦ (a e_j)_j and a ↦ (e_j a)_j injective
    for (int side = 0; side < 2; ++side) {
        std::vector<SVec> rows;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SVec row;
                for (std::size_t i = 0; i < n; ++i)
                    row.add(i, (side == 0 ? A.table[i][j] : A.table[j][i]).get(k));
                if (!row.empty())
                    rows.push_back(std::move(row));
            }
        auto ker = nullspace_rows(rows, n);
        if (!ker.empty()) {
            r.nondegenerate = false;
            if (r.witness.empty())
                r.witness = std::string(side == 0 ? "left" : "right") + " annihilator of dimension " + std::to_string(ker.size());
        }
    }
    Subspace sq(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sq.add(A.table[i][j]);
    r.idempotent = sq.dim() == n;
    if (!r.idempotent && r.witness.empty())
        r.witness = "span of products has dimension " + std::to_string(sq.dim());
    std::vector<SVec> all;
    for (std::size_t i = 0; i < n; ++i)
        all.push_back(SVec::unit(i));
    r.unit = local_units_for(A, all);
    r.unital = r.unit.has_value();
    r.has_local_units = r.unital;
    return r;
}

/// M(A) realized inside Q^{2n²}, with structure constants in its RREF basis.
struct MultiplierAlgebra {
    std::size_t n = 0;
    Subspace space;
    std::vector<Multiplier> basis;
    Algebra alg;
    std::vector<SVec> embedding; // coordinates of e_i
    SVec unit;                   // coordinates of the identity

    std::size_t dim() const { return basis.size(); }
    SVec coords(const Multiplier& m) const
    {
        auto c = space.coordinates(flatten(m));
        if (!c)
            throw std::logic_error("MultiplierAlgebra: not a multiplier");
        return *c;
    }
    Multiplier element(const SVec& coords) const { return linear_combination(basis, coords, n); }
};

/// Basis of the pairs (L,R) with L(ab)=L(a)b, R(ab)=aR(b), aL(b)=R(a)b.
inline MultiplierAlgebra multiplier_algebra(const Algebra& A)
{
    const std::size_t n = A.dim(), nn = n * n;
    auto Lx = [n](std::size_t j, std::size_t k) { return j * n + k; };
    auto Rx = [n, nn](std::size_t j, std::size_t k) { return nn + j * n + k; };
    std::vector<SVec> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<SVec> eq1(n), eq2(n), eq3(n);
            // L(e_i e_j) - L(e_i) e_j
            for (const auto& [k, c] : A.table[i][j])
                for (std::size_t l = 0; l < n; ++l) {
                    eq1[l].add(Lx(k, l), c);
                    eq2[l].add(Rx(k, l), c);
                }
            for (std::size_t m = 0; m < n; ++m) {
                for (const auto& [l, c] : A.table[m][j])
                    eq1[l].add(Lx(i, m), -c);
                // e_i R(e_j)
                for (const auto& [l, c] : A.table[i][m])
                    eq2[l].add(Rx(j, m), -c);
                // e_i L(e_j) - R(e_i) e_j
                for (const auto& [l, c] : A.table[i][m])
                    eq3[l].add(Lx(j, m), c);
                for (const auto& [l, c] : A.table[m][j])
                    eq3[l].add(Rx(i, m), -c);
            }
            for (auto* eq : {&eq1, &eq2, &eq3})
                for (auto& r : *eq)
                    if (!r.empty())
                        rows.push_back(std::move(r));
        }
    auto ker = nullspace_rows(rows, 2 * nn);
    MultiplierAlgebra M;
    M.n = n;
    M.space = Subspace::span(2 * nn, ker);
    for (const auto& b : M.space.basis())
        M.basis.push_back(unflatten(b, n));
    const std::size_t d = M.basis.size();
    std::vector<std::vector<SVec>> tbl(d, std::vector<SVec>(d));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) {
        labels.push_back("m" + std::to_string(i));
        for (std::size_t j = 0; j < d; ++j)
            tbl[i][j] = M.coords(M.basis[i] * M.basis[j]);
    }
    M.alg = Algebra("M(" + A.name + ")", labels, tbl);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = M.space.coordinates(flatten(embed(A, SVec::unit(i))));
        if (!c)
            throw std::logic_error("multiplier_algebra: embedding fails");
        M.embedding.push_back(*c);
    }
    M.unit = M.coords(identity_multiplier(n));
    return M;
}

/// True when the embedding of A into M(A) is injective (A non-degenerate).
inline bool embedding_injective(const MultiplierAlgebra& M)
{
    Subspace s(M.dim());
    for (const auto& e : M.embedding)
        s.add(e);
    return s.dim() == M.n;
}

/// Span of m·a over m in R, a in A (side 0) or a·m (side 1).
inline Subspace module_span(const Algebra& A, const std::vector<Multiplier>& R, int side)
{
    Subspace s(A.dim());
    for (const auto& m : R)
        for (std::size_t j = 0; j < A.dim(); ++j)
            s.add(side == 0 ? m.L[j] : m.R[j]);
    return s;
}

struct RelativeMultipliers {
    bool hypotheses_hold = false;
    std::string failure;
    std::vector<Multiplier> basis;
    Subspace space; // flattened, inside M(A)
};

/// {x ∈ M(A) : xR ⊆ R, Rx ⊆ R}, requiring RA = A = AR.
inline RelativeMultipliers relative_multipliers(const Algebra& A, const MultiplierAlgebra& M, const std::vector<Multiplier>& R)
{
    RelativeMultipliers out;
    const std::size_t n = A.dim();
    if (module_span(A, R, 0).dim() != n) {
        out.failure = "R·A is a proper subspace of A";
        return out;
    }
    if (module_span(A, R, 1).dim() != n) {
        out.failure = "A·R is a proper subspace of A";
        return out;
    }
    out.hypotheses_hold = true;
    Subspace rs(2 * n * n);
    for (const auto& r : R)
        rs.add(flatten(r));
    // residual modulo span R is linear, so stack residuals of m_i r_j and r_j m_i.
    std::vector<SVec> cols(M.dim());
    std::size_t block = 0;
    const std::size_t stride = 2 * n * n;
    for (const auto& r : rs.basis()) {
        Multiplier rm = unflatten(r, n);
        for (std::size_t i = 0; i < M.dim(); ++i) {
            SVec a = rs.residual(flatten(M.basis[i] * rm));
            SVec b = rs.residual(flatten(rm * M.basis[i]));
            for (const auto& [k, c] : a)
                cols[i].add(block + k, c);
            for (const auto& [k, c] : b)
                cols[i].add(block + stride + k, c);
        }
        block += 2 * stride;
    }
    // kernel of the column map
    std::vector<SVec> rows;
    std::map<std::size_t, SVec> byrow;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (const auto& [k, c] : cols[i])
            byrow[k].add(i, c);
    for (auto& [k, r] : byrow)
        rows.push_back(std::move(r));
    out.space = Subspace(2 * n * n);
    for (const auto& x : nullspace_rows(rows, M.dim()))
        out.space.add(flatten(M.element(x)));
    for (const auto& b : out.space.basis())
        out.basis.push_back(unflatten(b, n));
    return out;
}

/// Which side a test element multiplies on when recovering an element from its products.
enum class Side { None, Left, Right };

/*
 * Recovers a ∈ A from products with basis elements.  Side::Right uses the data
 * a·e_u, Side::Left uses e_u·a.  For each side a set of n pivot coordinates
 * (u,k) is chosen so that a ↦ ((a·e_u)_k) is invertible; the inverse is stored.
 */
class Recoverer {
public:
    explicit Recoverer(const Algebra& A) : A_(&A)
    {
        build(Side::Right);
        build(Side::Left);
    }

    const Algebra& algebra() const { return *A_; }
    bool ok(Side s) const { return s == Side::None || sides_[idx(s)].ok; }
    const std::vector<std::pair<std::size_t, std::size_t>>& pivots(Side s) const { return sides_[idx(s)].piv; }

    /// Coefficient of e_i given the pivot data values d[r] = (product with e_{u_r})_{k_r}.
    const Matrix& inverse(Side s) const { return sides_[idx(s)].inv; }

    /// Product of x with e_u on the given side.
    SVec act(Side s, const SVec& x, std::size_t u) const
    {
        if (s == Side::None)
            return x;
        return s == Side::Right ? A_->mul(x, SVec::unit(u)) : A_->mul(SVec::unit(u), x);
    }

    /// Test indices u used for verification (a single dummy for None).
    std::size_t tests(Side s) const { return s == Side::None ? 1 : A_->dim(); }

private:
    struct Data {
        bool ok = false;
        std::vector<std::pair<std::size_t, std::size_t>> piv;
        Matrix inv;
    };
    static std::size_t idx(Side s) { return s == Side::Left ? 1 : 0; }

    void build(Side s)
    {
        const std::size_t n = A_->dim();
        Data d;
        Eliminator e;
        std::vector<Vec> rows;
        for (std::size_t u = 0; u < n && e.rank() < n; ++u)
            for (std::size_t k = 0; k < n && e.rank() < n; ++k) {
                SVec row;
                for (std::size_t i = 0; i < n; ++i)
                    row.add(i, (s == Side::Right ? A_->table[i][u] : A_->table[u][i]).get(k));
                if (e.insert(row)) {
                    d.piv.push_back({u, k});
                    rows.push_back(row.to_dense(n));
                }
            }
        if (e.rank() == n) {
            Matrix m(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t i = 0; i < n; ++i)
                    m(r, i) = rows[r][i];
            auto inv = wmha::inverse(m);
            d.ok = inv.has_value();
            if (inv)
                d.inv = *inv;
        }
        sides_[idx(s)] = std::move(d);
    }

    const Algebra* A_;
    Data sides_[2];
};

/// Candidate from pivot data only; returns nullopt when the side is degenerate.
inline std::optional<SVec> recover_candidate(const Recoverer& R, Side s, const std::function<SVec(std::size_t)>& data)
{
    const std::size_t n = R.algebra().dim();
    if (s == Side::None)
        return data(0);
    if (!R.ok(s))
        return std::nullopt;
    const auto& piv = R.pivots(s);
    const Matrix& inv = R.inverse(s);
    std::map<std::size_t, SVec> cache;
    Vec d(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto [u, k] = piv[r];
        auto it = cache.find(u);
        if (it == cache.end())
            it = cache.emplace(u, data(u)).first;
        d[r] = it->second.get(k);
    }
    SVec x;
    for (std::size_t i = 0; i < n; ++i) {
        Q c = 0;
        for (std::size_t r = 0; r < n; ++r)
            if (sgn(d[r]) != 0)
                c += inv(i, r) * d[r];
        x.add(i, c);
    }
    return x;
}

/// Recovers x ∈ A and verifies the data on every test element.
inline std::optional<SVec> recover(const Recoverer& R, Side s, const std::function<SVec(std::size_t)>& data)
{
    auto x = recover_candidate(R, s, data);
    if (!x)
        return std::nullopt;
    for (std::size_t u = 0; u < R.tests(s); ++u)
        if (R.act(s, *x, u) != data(u))
            return std::nullopt;
    return x;
}

/// Product of x ∈ A1⊗A2 with e_u on leg 1 and e_v on leg 2, sides as given.
inline SVec act_tensor(const Recoverer& R1, Side s1, const Recoverer& R2, Side s2, const SVec& x, std::size_t u, std::size_t v)
{
    const std::size_t m = R2.algebra().dim();
    SVec r;
    for (const auto& [idx, c] : x) {
        SVec a = R1.act(s1, SVec::unit(idx / m), u);
        if (a.empty())
            continue;
        SVec b = R2.act(s2, SVec::unit(idx % m), v);
        for (const auto& [i, p] : a)
            for (const auto& [j, q] : b)
                r.add(i * m + j, c * p * q);
    }
    return r;
}

/*
 * Recovers x ∈ A1⊗A2 from data(u,v) = product of x with test elements on each
 * leg, then verifies the reconstruction against the data for all test pairs.
 * A nullopt result means the data does not come from an element of A1⊗A2.
 */
inline std::optional<SVec> recover_tensor(const Recoverer& R1, Side s1, const Recoverer& R2, Side s2,
    const std::function<SVec(std::size_t, std::size_t)>& data, bool verify = true)
{
    const std::size_t n1 = R1.algebra().dim(), n2 = R2.algebra().dim();
    if (!R1.ok(s1) || !R2.ok(s2))
        return std::nullopt;
    std::map<std::pair<std::size_t, std::size_t>, SVec> cache;
    auto get = [&](std::size_t u, std::size_t v) -> const SVec& {
        auto key = std::pair{u, v};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, data(u, v)).first;
        return it->second;
    };
    auto piv = [&](const Recoverer& R, Side s, std::size_t n) {
        std::vector<std::pair<std::size_t, std::size_t>> p;
        if (s == Side::None) {
            for (std::size_t k = 0; k < n; ++k)
                p.push_back({0, k});
            return p;
        }
        return R.pivots(s);
    };
    auto coef = [](const Recoverer& R, Side s, std::size_t i, std::size_t r) -> Q {
        if (s == Side::None)
            return i == r ? Q(1) : Q(0);
        return R.inverse(s)(i, r);
    };
    auto p1 = piv(R1, s1, n1), p2 = piv(R2, s2, n2);
    // D[r][t] = data(u_r, v_t) at (k_r, l_t)
    std::vector<std::vector<Q>> D(n1, std::vector<Q>(n2));
    for (std::size_t r = 0; r < n1; ++r)
        for (std::size_t t = 0; t < n2; ++t)
            D[r][t] = get(p1[r].first, p2[t].first).get(p1[r].second * n2 + p2[t].second);
    // x_ij = Σ_r Σ_t c1(i,r) c2(j,t) D[r][t], contracted one leg at a time
    std::vector<std::vector<Q>> H(n1, std::vector<Q>(n2));
    for (std::size_t r = 0; r < n1; ++r)
        for (std::size_t j = 0; j < n2; ++j) {
            Q s = 0;
            for (std::size_t t = 0; t < n2; ++t)
                if (sgn(D[r][t]) != 0)
                    s += coef(R2, s2, j, t) * D[r][t];
            H[r][j] = s;
        }
    SVec x;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            Q s = 0;
            for (std::size_t r = 0; r < n1; ++r)
                if (sgn(H[r][j]) != 0)
                    s += coef(R1, s1, i, r) * H[r][j];
            x.add(i * n2 + j, s);
        }
    if (verify)
        for (std::size_t u = 0; u < R1.tests(s1); ++u)
            for (std::size_t v = 0; v < R2.tests(s2); ++v)
                if (act_tensor(R1, s1, R2, s2, x, u, v) != get(u, v))
                    return std::nullopt;
    return x;
}

} // namespace wmha
