#pragma once

#include <limits>
#include <set>
#include <unordered_map>

#include "prismatica/bigint.hpp"
#include "prismatica/prismatic.hpp"

namespace prismatica {

// ---------------------------------------------------------------------------
// Sparse integer matrices
// ---------------------------------------------------------------------------

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, long long v)
    {
        if (v == 0) return;
        check(r, c);
        auto& m = col_[c];
        auto it = m.find(r);
        if (it == m.end()) {
            m.emplace(r, v);
        } else {
            it->second += v;
            if (it->second == 0) m.erase(it);
        }
    }

    void set(int r, int c, long long v)
    {
        check(r, c);
        if (v == 0)
            col_[c].erase(r);
        else
            col_[c][r] = v;
    }

    long long get(int r, int c) const
    {
        check(r, c);
        auto it = col_[c].find(r);
        return it == col_[c].end() ? 0 : it->second;
    }

    const std::map<int, long long>& column(int c) const { return col_.at(c); }

    long long nonzeros() const
    {
        long long n = 0;
        for (const auto& c : col_) n += (long long)c.size();
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    // this * other, with cols() == other.rows()
    IntMatrix multiply(const IntMatrix& other) const
    {
        if (cols_ != other.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shape");
        IntMatrix out(rows_, other.cols_);
        for (int c = 0; c < other.cols_; ++c)
            for (const auto& [k, v] : other.col_[c])
                for (const auto& [r, w] : col_[k]) out.add(r, c, v * w);
        return out;
    }

    IntMatrix transpose() const
    {
        IntMatrix out(cols_, rows_);
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : col_[c]) out.set(c, r, v);
        return out;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, long long>> col_;

    void check(int r, int c) const
    {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw Error(ErrorKind::IndexOutOfRange, "matrix index");
    }
};

// ---------------------------------------------------------------------------
// Exact scalars for the reduction: overflow-checked int64, or BigInt
// ---------------------------------------------------------------------------

struct ArithmeticOverflow : std::runtime_error {
    ArithmeticOverflow() : std::runtime_error("int64 overflow during reduction") {}
};

struct Checked64 {
    long long v = 0;
    Checked64() = default;
    Checked64(long long x) : v(x) {}
    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v == 1 || v == -1; }
    Checked64 abs() const { return v < 0 ? Checked64(-v) : *this; }
    friend Checked64 operator+(Checked64 a, Checked64 b)
    {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw ArithmeticOverflow();
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b)
    {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw ArithmeticOverflow();
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b)
    {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw ArithmeticOverflow();
        return r;
    }
    friend Checked64 operator-(Checked64 a) { return Checked64(0) - a; }
    friend bool operator==(Checked64 a, Checked64 b) { return a.v == b.v; }
    friend bool operator<(Checked64 a, Checked64 b) { return a.v < b.v; }
    static void divmod(Checked64 a, Checked64 b, Checked64& q, Checked64& r)
    {
        if (b.v == 0) throw std::domain_error("division by zero");
        if (a.v == std::numeric_limits<long long>::min() && b.v == -1) throw ArithmeticOverflow();
        q = a.v / b.v;
        r = a.v % b.v;
    }
    BigInt big() const { return BigInt(v); }
};

struct BigScalar {
    BigInt v;
    BigScalar() = default;
    BigScalar(long long x) : v(x) {}
    BigScalar(BigInt x) : v(std::move(x)) {}
    bool is_zero() const { return v.is_zero(); }
    bool is_unit() const { return v.is_unit(); }
    BigScalar abs() const { return BigScalar(v.abs()); }
    friend BigScalar operator+(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v + b.v); }
    friend BigScalar operator-(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v - b.v); }
    friend BigScalar operator*(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v * b.v); }
    friend BigScalar operator-(const BigScalar& a) { return BigScalar(-a.v); }
    friend bool operator==(const BigScalar& a, const BigScalar& b) { return a.v == b.v; }
    friend bool operator<(const BigScalar& a, const BigScalar& b) { return a.v < b.v; }
    static void divmod(const BigScalar& a, const BigScalar& b, BigScalar& q, BigScalar& r)
    {
        BigInt Q, R;
        BigInt::divmod(a.v, b.v, Q, R);
        q = BigScalar(std::move(Q));
        r = BigScalar(std::move(R));
    }
    BigInt big() const { return v; }
};

struct SmithResult {
    std::vector<BigInt> factors; // d_1 | d_2 | ... | d_r, each > 0
    int rank = 0;
};

namespace detail {

// Unimodular row/column reduction. First exhausts +-1 pivots sparsely (each
// such pivot contributes an invariant factor 1), then runs the classical
// pivot-and-divide reduction on the dense residue.
template <class S>
SmithResult smith_impl(const IntMatrix& m)
{
    int R = m.rows(), C = m.cols();
    std::vector<std::map<int, S>> rows(R);
    std::vector<std::set<int>> colrows(C);
    for (int c = 0; c < C; ++c)
        for (const auto& [r, v] : m.column(c)) {
            rows[r].emplace(c, S(v));
            colrows[c].insert(r);
        }

    std::vector<bool> row_done(R, false), col_done(C, false);
    int units = 0;

    // sparse phase
    bool progress = true;
    while (progress) {
        progress = false;
        for (int r = 0; r < R; ++r) {
            if (row_done[r] || rows[r].empty()) continue;
            int best_c = -1;
            size_t best_load = SIZE_MAX;
            for (const auto& [c, v] : rows[r]) {
                if (v.is_unit() && colrows[c].size() < best_load) {
                    best_load = colrows[c].size();
                    best_c = c;
                }
            }
            if (best_c < 0) continue;
            int c = best_c;
            S pivot = rows[r].at(c);
            std::vector<int> others(colrows[c].begin(), colrows[c].end());
            for (int r2 : others) {
                if (r2 == r) continue;
                // rows[r2] -= (entry / pivot) * rows[r]; pivot is +-1
                S entry = rows[r2].at(c);
                S q = (pivot == S(1)) ? entry : -entry;
                for (const auto& [cc, vv] : rows[r]) {
                    auto it = rows[r2].find(cc);
                    S nv = (it == rows[r2].end() ? S(0) : it->second) - q * vv;
                    if (nv.is_zero()) {
                        if (it != rows[r2].end()) {
                            rows[r2].erase(it);
                            colrows[cc].erase(r2);
                        }
                    } else {
                        if (it == rows[r2].end()) colrows[cc].insert(r2);
                        rows[r2][cc] = nv;
                    }
                }
            }
            // row r and column c now split off a unit factor
            for (const auto& [cc, vv] : rows[r]) colrows[cc].erase(r);
            rows[r].clear();
            row_done[r] = true;
            col_done[c] = true;
            ++units;
            progress = true;
        }
    }

    // collect the residue densely
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < R; ++r)
        if (!row_done[r] && !rows[r].empty()) live_rows.push_back(r);
    std::set<int> lc;
    for (int r : live_rows)
        for (const auto& [c, v] : rows[r]) lc.insert(c);
    live_cols.assign(lc.begin(), lc.end());

    int n = (int)live_rows.size(), k = (int)live_cols.size();
    std::vector<std::vector<S>> a(n, std::vector<S>(k, S(0)));
    std::unordered_map<int, int> colpos;
    for (int j = 0; j < k; ++j) colpos[live_cols[j]] = j;
    for (int i = 0; i < n; ++i)
        for (const auto& [c, v] : rows[live_rows[i]]) a[i][colpos[c]] = v;

    std::vector<BigInt> residue_factors;
    int s = 0;
    while (true) {
        int pi = -1, pj = -1;
        for (int i = s; i < n; ++i)
            for (int j = s; j < k; ++j)
                if (!a[i][j].is_zero() &&
                    (pi < 0 || a[i][j].abs() < a[pi][pj].abs()))
                    pi = i, pj = j;
        if (pi < 0) break;
        std::swap(a[s], a[pi]);
        for (int i = 0; i < n; ++i) std::swap(a[i][s], a[i][pj]);

        bool clean = true;
        for (int i = s + 1; i < n; ++i) {
            if (a[i][s].is_zero()) continue;
            S q, r;
            S::divmod(a[i][s], a[s][s], q, r);
            if (!q.is_zero())
                for (int j = s; j < k; ++j) a[i][j] = a[i][j] - q * a[s][j];
            if (!a[i][s].is_zero()) clean = false;
        }
        if (!clean) continue;
        for (int j = s + 1; j < k; ++j) {
            if (a[s][j].is_zero()) continue;
            S q, r;
            S::divmod(a[s][j], a[s][s], q, r);
            if (!q.is_zero())
                for (int i = s; i < n; ++i) a[i][j] = a[i][j] - q * a[i][s];
            if (!a[s][j].is_zero()) clean = false;
        }
        if (!clean) continue;

        // divisibility sweep: fold a bad row back in and retry
        bool divides = true;
        for (int i = s + 1; i < n && divides; ++i)
            for (int j = s + 1; j < k && divides; ++j) {
                if (a[i][j].is_zero()) continue;
                S q, r;
                S::divmod(a[i][j], a[s][s], q, r);
                if (!r.is_zero()) {
                    for (int jj = s; jj < k; ++jj) a[s][jj] = a[s][jj] + a[i][jj];
                    divides = false;
                }
            }
        if (!divides) continue;

        residue_factors.push_back(a[s][s].abs().big());
        ++s;
    }

    SmithResult out;
    out.rank = units + s;
    out.factors.assign(units, BigInt(1));
    for (auto& f : residue_factors) out.factors.push_back(f);
    return out;
}

} // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& m)
{
    try {
        return detail::smith_impl<Checked64>(m);
    } catch (const ArithmeticOverflow&) {
        return detail::smith_impl<BigScalar>(m);
    }
}

// ---------------------------------------------------------------------------
// Independent oracle: rank by fraction-free elimination, invariant factors by
// gcds of k x k minors (determinantal divisors). Only viable for small
// matrices; used by tests as the ground truth the main reduction must match.
// ---------------------------------------------------------------------------

namespace detail {

inline long long checked_mul_ll(long long a, long long b)
{
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
}

// Bareiss determinant of the submatrix given by rows/cols index lists.
inline long long bareiss_det(const std::vector<std::vector<long long>>& a,
                             const std::vector<int>& rs, const std::vector<int>& cs)
{
    int n = (int)rs.size();
    std::vector<std::vector<long long>> b(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = a[rs[i]][cs[j]];
    long long prev = 1;
    int sign = 1;
    for (int t = 0; t < n - 1; ++t) {
        if (b[t][t] == 0) {
            int sw = -1;
            for (int i = t + 1; i < n; ++i)
                if (b[i][t] != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(b[t], b[sw]);
            sign = -sign;
        }
        for (int i = t + 1; i < n; ++i)
            for (int j = t + 1; j < n; ++j) {
                long long num = checked_mul_ll(b[i][j], b[t][t]) - checked_mul_ll(b[i][t], b[t][j]);
                b[i][j] = num / prev; // exact in Bareiss
            }
        prev = b[t][t];
    }
    return sign * b[n - 1][n - 1];
}

template <class F>
inline void for_each_subset(int n, int k, F&& fn)
{
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (int v = start; v <= n - (k - pos); ++v) {
            idx[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    if (k <= n) rec(0, 0);
}

} // namespace detail

inline SmithResult smith_oracle(const IntMatrix& m)
{
    int R = m.rows(), C = m.cols();
    std::vector<std::vector<long long>> a(R, std::vector<long long>(C, 0));
    for (int c = 0; c < C; ++c)
        for (const auto& [r, v] : m.column(c)) a[r][c] = v;

    // rank by fraction-free elimination on a copy
    int rank = 0;
    {
        auto b = a;
        long long prev = 1;
        int rr = 0;
        for (int c = 0; c < C && rr < R; ++c) {
            int piv = -1;
            for (int i = rr; i < R; ++i)
                if (b[i][c] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(b[rr], b[piv]);
            for (int i = rr + 1; i < R; ++i)
                for (int j = c + 1; j < C; ++j)
                    b[i][j] = (detail::checked_mul_ll(b[i][j], b[rr][c]) -
                               detail::checked_mul_ll(b[i][c], b[rr][j])) /
                              prev;
            for (int i = rr + 1; i < R; ++i) b[i][c] = 0;
            prev = b[rr][c];
            ++rr;
        }
        rank = rr;
    }

    SmithResult out;
    out.rank = rank;
    BigInt prev_d(1);
    for (int k = 1; k <= rank; ++k) {
        long long g = 0;
        bool done = false;
        detail::for_each_subset(R, k, [&](const std::vector<int>& rs) {
            if (done) return;
            detail::for_each_subset(C, k, [&](const std::vector<int>& cs) {
                if (done) return;
                long long d = detail::bareiss_det(a, rs, cs);
                if (d != 0) {
                    d = d < 0 ? -d : d;
                    g = g == 0 ? d : std::gcd(g, d);
                    if (g == 1) done = true;
                }
            });
        });
        BigInt dk(g);
        out.factors.push_back(dk / prev_d);
        prev_d = dk;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chain complexes and homology
// ---------------------------------------------------------------------------

struct HomologyGroup {
    int betti = 0;
    std::vector<BigInt> torsion; // entries > 1
    bool reliable = true;
};

struct ChainComplex {
    std::vector<std::vector<std::string>> basis; // labels per degree
    std::vector<IntMatrix> boundary;             // boundary[n]: C_n -> C_{n-1}
    bool complete = true;                        // no basis hidden above the top degree

    int top_degree() const { return (int)basis.size() - 1; }
};

struct DDViolation {
    int degree;
    int column;
};

inline std::vector<DDViolation> check_dd_zero(const ChainComplex& c)
{
    std::vector<DDViolation> bad;
    for (int n = 1; n <= c.top_degree(); ++n) {
        IntMatrix prod = c.boundary[n - 1].multiply(c.boundary[n]);
        for (int col = 0; col < prod.cols(); ++col)
            if (!prod.column(col).empty()) bad.push_back({n, col});
    }
    return bad;
}

inline std::vector<HomologyGroup> homology(const ChainComplex& c)
{
    if (!check_dd_zero(c).empty())
        throw Error(ErrorKind::NotAComplex, "boundary squared is nonzero");
    int top = c.top_degree();
    std::vector<SmithResult> snf(top + 1);
    for (int n = 0; n <= top; ++n) snf[n] = smith_normal_form(c.boundary[n]);
    std::vector<HomologyGroup> out(top + 1);
    for (int n = 0; n <= top; ++n) {
        int rank_in = (n + 1 <= top) ? snf[n + 1].rank : 0;
        HomologyGroup g;
        g.betti = (int)c.basis[n].size() - snf[n].rank - rank_in;
        if (n + 1 <= top)
            for (const BigInt& f : snf[n + 1].factors)
                if (!(f.is_one())) g.torsion.push_back(f);
        g.reliable = c.complete || n < top;
        out[n] = g;
    }
    return out;
}

// Normalized simplicial chain complex: nondegenerate generators,
// boundary sum of signed faces with degenerate faces dropped.
inline ChainComplex simplicial_chain_complex(const SimplicialSet& s)
{
    int top = s.max_generator_dim();
    ChainComplex c;
    c.complete = true;
    c.basis.resize(top + 1);
    c.boundary.resize(top + 1);
    for (int n = 0; n <= top; ++n)
        for (int i = 0; i < s.generator_count(n); ++i)
            c.basis[n].push_back(s.generator(GeneratorId{n, i}).label);
    c.boundary[0] = IntMatrix(0, (int)c.basis[0].size());
    for (int n = 1; n <= top; ++n) {
        IntMatrix d((int)c.basis[n - 1].size(), (int)c.basis[n].size());
        for (int i = 0; i < s.generator_count(n); ++i) {
            for (int k = 0; k <= n; ++k) {
                const NormalForm& f = s.face_of_generator(GeneratorId{n, i}, k);
                if (f.degenerate()) continue;
                d.add(f.gen.index, i, (k % 2 == 0) ? 1 : -1);
            }
        }
        c.boundary[n] = std::move(d);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Prismatic total complexes (the double complex of Remark 1, section 3)
// ---------------------------------------------------------------------------

struct CellKey {
    std::vector<int> q;
    NormalForm payload;
    friend bool operator<(const CellKey& a, const CellKey& b)
    {
        if (a.q != b.q) return a.q < b.q;
        return a.payload < b.payload;
    }
};

inline std::string cell_label(const PrismCell& cell)
{
    std::string s = "(p=" + std::to_string(cell.deg.p) + ";q=";
    for (size_t i = 0; i < cell.deg.q.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(cell.deg.q[i]);
    }
    s += ";[";
    for (size_t i = 0; i < cell.payload.degens.size(); ++i) {
        if (i) s += ",";
        s += "s" + std::to_string(cell.payload.degens[i]);
    }
    s += "]g" + std::to_string(cell.payload.gen.dim) + "." + std::to_string(cell.payload.gen.index);
    s += ")";
    return s;
}

// Sign of block i in the total complex: (-1)^{q_0+...+q_{i-1}+i}.
inline int block_sign(const MultiDegree& d, int i)
{
    return ((d.prefix(i) + i) % 2 == 0) ? 1 : -1;
}

// Koszul sign of the cellular boundary of a product of simplices:
// (-1)^{q_0+...+q_{i-1}}. Isomorphic to block_sign via a diagonal basis
// sign change; this is the convention for which aw has +1 coefficients.
inline int block_sign_cellular(const MultiDegree& d, int i)
{
    return (d.prefix(i) % 2 == 0) ? 1 : -1;
}

// Total complex of P(S) or Pbar(S) through total degree max_n. Fiberwise
// degenerate cells are dropped (normalized); the p-direction is a Delta-set
// and contributes every level.
inline ChainComplex prismatic_total_complex(const SimplicialSet& s, Construction cons, int max_n)
{
    if (cons == Construction::Pf)
        throw Error(ErrorKind::BadInput, "use pf_total_complex for a simplicial map");
    ChainComplex c;
    c.complete = false;
    c.basis.resize(max_n + 1);
    c.boundary.resize(max_n + 1);

    std::vector<std::map<CellKey, int>> index(max_n + 1);
    std::vector<std::vector<PrismCell>> cells(max_n + 1);

    for (int n = 0; n <= max_n; ++n) {
        for (int p = 0; p <= n; ++p) {
            MultiDegree probe(std::vector<int>(p + 1, 0));
            if (probe.with_q(0, n - p).payload_dim(cons) > s.truncation())
                throw Error(ErrorKind::DimensionOutOfRange,
                            "total complex needs a larger truncation");
            for_each_composition(n - p, p + 1, [&](const std::vector<int>& q) {
                MultiDegree d{q};
                for_each_prism_cell(s, cons, d, [&](const PrismCell& cell) {
                    if (fiberwise_degenerate(cell)) return;
                    CellKey key{d.q, cell.payload};
                    index[n].emplace(key, (int)cells[n].size());
                    cells[n].push_back(cell);
                });
            });
        }
        for (const PrismCell& cell : cells[n]) c.basis[n].push_back(cell_label(cell));
    }

    c.boundary[0] = IntMatrix(0, (int)c.basis[0].size());
    for (int n = 1; n <= max_n; ++n) {
        IntMatrix d((int)c.basis[n - 1].size(), (int)c.basis[n].size());
        for (int ci = 0; ci < (int)cells[n].size(); ++ci) {
            const PrismCell& cell = cells[n][ci];
            const MultiDegree& md = cell.deg;
            // vertical: fiber faces of every block with q_i >= 1
            for (int i = 0; i <= md.p; ++i) {
                if (md.q[i] == 0) continue;
                int bs = block_sign(md, i);
                for (int j = 0; j <= md.q[i]; ++j) {
                    PrismCell f = fiber_face(s, cell, i, j);
                    if (fiberwise_degenerate(f)) continue;
                    auto it = index[n - 1].find(CellKey{f.deg.q, f.payload});
                    if (it == index[n - 1].end())
                        throw Error(ErrorKind::InternalInvariantBroken, "missing fiber face cell");
                    d.add(it->second, ci, bs * ((j % 2 == 0) ? 1 : -1));
                }
            }
            // horizontal: base faces of blocks with q_k == 0
            if (md.p >= 1) {
                for (int k = 0; k <= md.p; ++k) {
                    if (md.q[k] != 0) continue;
                    PrismCell f = base_face(s, cell, k);
                    if (fiberwise_degenerate(f)) continue;
                    auto it = index[n - 1].find(CellKey{f.deg.q, f.payload});
                    if (it == index[n - 1].end())
                        throw Error(ErrorKind::InternalInvariantBroken, "missing base face cell");
                    d.add(it->second, ci, block_sign(md, k));
                }
            }
        }
        c.boundary[n] = std::move(d);
    }
    return c;
}

struct PfKey {
    std::vector<int> q;
    NormalForm payload, base;
    friend bool operator<(const PfKey& a, const PfKey& b)
    {
        if (a.q != b.q) return a.q < b.q;
        if (a.payload != b.payload) return a.payload < b.payload;
        return a.base < b.base;
    }
};

// Total complex of P(f) for a simplicial map f.
inline ChainComplex pf_total_complex(const SimplicialMap& f, int max_n)
{
    ChainComplex c;
    c.complete = false;
    c.basis.resize(max_n + 1);
    c.boundary.resize(max_n + 1);

    std::vector<std::map<PfKey, int>> index(max_n + 1);
    std::vector<std::vector<PrismCell>> cells(max_n + 1);

    for (int n = 0; n <= max_n; ++n) {
        for (int p = 0; p <= n; ++p) {
            for_each_composition(n - p, p + 1, [&](const std::vector<int>& q) {
                for (const PrismCell& cell : pf_cells(f, MultiDegree{q})) {
                    if (fiberwise_degenerate(cell)) continue;
                    index[n].emplace(PfKey{cell.deg.q, cell.payload, *cell.base},
                                     (int)cells[n].size());
                    cells[n].push_back(cell);
                }
            });
        }
        for (const PrismCell& cell : cells[n]) {
            std::string lbl = cell_label(cell) + "|b[";
            for (size_t i = 0; i < cell.base->degens.size(); ++i) {
                if (i) lbl += ",";
                lbl += "s" + std::to_string(cell.base->degens[i]);
            }
            lbl += "]g" + std::to_string(cell.base->gen.dim) + "." +
                   std::to_string(cell.base->gen.index);
            c.basis[n].push_back(lbl);
        }
    }

    c.boundary[0] = IntMatrix(0, (int)c.basis[0].size());
    for (int n = 1; n <= max_n; ++n) {
        IntMatrix d((int)c.basis[n - 1].size(), (int)c.basis[n].size());
        for (int ci = 0; ci < (int)cells[n].size(); ++ci) {
            const PrismCell& cell = cells[n][ci];
            const MultiDegree& md = cell.deg;
            for (int i = 0; i <= md.p; ++i) {
                if (md.q[i] == 0) continue;
                int bs = block_sign(md, i);
                for (int j = 0; j <= md.q[i]; ++j) {
                    PrismCell g = fiber_face(*f.src, cell, i, j);
                    if (fiberwise_degenerate(g)) continue;
                    auto it = index[n - 1].find(PfKey{g.deg.q, g.payload, *g.base});
                    if (it == index[n - 1].end())
                        throw Error(ErrorKind::InternalInvariantBroken, "missing Pf fiber face");
                    d.add(it->second, ci, bs * ((j % 2 == 0) ? 1 : -1));
                }
            }
            if (md.p >= 1) {
                for (int k = 0; k <= md.p; ++k) {
                    if (md.q[k] != 0) continue;
                    PrismCell g = base_face(*f.src, cell, k, &f);
                    if (fiberwise_degenerate(g)) continue;
                    auto it = index[n - 1].find(PfKey{g.deg.q, g.payload, *g.base});
                    if (it == index[n - 1].end())
                        throw Error(ErrorKind::InternalInvariantBroken, "missing Pf base face");
                    d.add(it->second, ci, block_sign(md, k));
                }
            }
        }
        c.boundary[n] = std::move(d);
    }
    return c;
}

// Row complex of P(S) at fixed p: fiber degrees n with the vertical boundary
// only. Degrees are the fiber total q, so aw lands degreewise.
inline ChainComplex prismatic_row_complex(const SimplicialSet& s, Construction cons, int p,
                                          int max_fiber)
{
    ChainComplex c;
    c.complete = false;
    c.basis.resize(max_fiber + 1);
    c.boundary.resize(max_fiber + 1);
    std::vector<std::map<CellKey, int>> index(max_fiber + 1);
    std::vector<std::vector<PrismCell>> cells(max_fiber + 1);
    for (int n = 0; n <= max_fiber; ++n) {
        for_each_composition(n, p + 1, [&](const std::vector<int>& q) {
            MultiDegree d{q};
            for_each_prism_cell(s, cons, d, [&](const PrismCell& cell) {
                if (fiberwise_degenerate(cell)) return;
                index[n].emplace(CellKey{d.q, cell.payload}, (int)cells[n].size());
                cells[n].push_back(cell);
            });
        });
        for (const PrismCell& cell : cells[n]) c.basis[n].push_back(cell_label(cell));
    }
    c.boundary[0] = IntMatrix(0, (int)c.basis[0].size());
    for (int n = 1; n <= max_fiber; ++n) {
        IntMatrix d((int)c.basis[n - 1].size(), (int)c.basis[n].size());
        for (int ci = 0; ci < (int)cells[n].size(); ++ci) {
            const PrismCell& cell = cells[n][ci];
            const MultiDegree& md = cell.deg;
            for (int i = 0; i <= md.p; ++i) {
                if (md.q[i] == 0) continue;
                int bs = block_sign_cellular(md, i);
                for (int j = 0; j <= md.q[i]; ++j) {
                    PrismCell g = fiber_face(s, cell, i, j);
                    if (fiberwise_degenerate(g)) continue;
                    auto it = index[n - 1].find(CellKey{g.deg.q, g.payload});
                    if (it == index[n - 1].end())
                        throw Error(ErrorKind::InternalInvariantBroken, "missing row face cell");
                    d.add(it->second, ci, bs * ((j % 2 == 0) ? 1 : -1));
                }
            }
        }
        c.boundary[n] = std::move(d);
    }
    return c;
}

// Find the basis slot of a cell in a complex built by the enumerators above.
struct PrismComplexIndex {
    std::vector<std::map<CellKey, int>> index;

    static PrismComplexIndex build(const SimplicialSet& s, Construction cons, int max_n,
                                   bool row_mode, int p)
    {
        PrismComplexIndex out;
        out.index.resize(max_n + 1);
        for (int n = 0; n <= max_n; ++n) {
            int start_p = row_mode ? p : 0;
            int end_p = row_mode ? p : n;
            int count = 0;
            for (int pp = start_p; pp <= end_p; ++pp) {
                int fiber = row_mode ? n : n - pp;
                if (fiber < 0) continue;
                for_each_composition(fiber, pp + 1, [&](const std::vector<int>& q) {
                    MultiDegree d{q};
                    for_each_prism_cell(s, cons, d, [&](const PrismCell& cell) {
                        if (fiberwise_degenerate(cell)) return;
                        out.index[n].emplace(CellKey{d.q, cell.payload}, count++);
                    });
                });
            }
        }
        return out;
    }

    int find(int degree, const PrismCell& cell) const
    {
        auto it = index.at(degree).find(CellKey{cell.deg.q, cell.payload});
        if (it == index.at(degree).end()) return -1;
        return it->second;
    }
};

// ---------------------------------------------------------------------------
// Chain map verification
// ---------------------------------------------------------------------------

struct ChainMapTerm {
    int index;
    long long coeff;
};

// f[n][j] lists the image of the j-th basis element of C_n inside D_n.
using ChainMapData = std::vector<std::vector<std::vector<ChainMapTerm>>>;

struct ChainMapViolation {
    int degree;
    int index;
};

struct ChainMapReport {
    std::vector<ChainMapViolation> violations;
    bool ok() const { return violations.empty(); }
};

inline ChainMapReport verify_chain_map(const ChainMapData& f, const ChainComplex& c,
                                       const ChainComplex& d)
{
    ChainMapReport rep;
    int top = std::min(c.top_degree(), d.top_degree());
    for (int n = 1; n <= top; ++n) {
        for (int j = 0; j < (int)c.basis[n].size(); ++j) {
            std::map<int, long long> lhs, rhs;
            // lhs = boundary_D(f(j))
            for (const ChainMapTerm& t : f[n][j])
                for (const auto& [r, v] : d.boundary[n].column(t.index)) lhs[r] += t.coeff * v;
            // rhs = f(boundary_C(j))
            for (const auto& [r, v] : c.boundary[n].column(j))
                for (const ChainMapTerm& t : f[n - 1][r]) rhs[t.index] += v * t.coeff;
            auto prune = [](std::map<int, long long>& m) {
                for (auto it = m.begin(); it != m.end();)
                    it = it->second == 0 ? m.erase(it) : std::next(it);
            };
            prune(lhs);
            prune(rhs);
            if (lhs != rhs) rep.violations.push_back({n, j});
        }
    }
    return rep;
}

} // namespace prismatica
