#pragma once

#include <set>

#include "prismatica/prismatic.hpp"

namespace prismatica {

// ---------------------------------------------------------------------------
// St(K): the subcomplex of K x K spanned by the products sigma' x sigma'.
// Simplices of the product triangulation are componentwise monotone chains of
// vertex pairs; a chain belongs to St(K) exactly when the union of all its
// coordinates spans a simplex of K.
// ---------------------------------------------------------------------------

// The vertices of St(K): pairs (u, v) spanning a simplex, in lexicographic
// order.
inline std::vector<std::pair<int, int>> star_pair_vertices(const OrderedComplex& k)
{
    std::set<std::vector<int>> simplex_set;
    for (const auto& s : k.simplices) simplex_set.insert(s);
    auto edge_exists = [&](int u, int v) {
        if (u == v) return simplex_set.count({u}) > 0;
        std::vector<int> e = {std::min(u, v), std::max(u, v)};
        return simplex_set.count(e) > 0;
    };
    std::vector<std::pair<int, int>> pairs;
    int nv = (int)k.vertex_labels.size();
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v)
            if (edge_exists(u, v)) pairs.push_back({u, v});
    return pairs;
}

inline OrderedComplex star_complex(const OrderedComplex& k)
{
    validate_complex(k);
    std::vector<std::pair<int, int>> pairs = star_pair_vertices(k);
    std::map<std::pair<int, int>, int> pair_index;
    for (int i = 0; i < (int)pairs.size(); ++i) pair_index[pairs[i]] = i;

    // chains inside sigma' x sigma', deduplicated across parents
    std::set<std::vector<int>> chains;
    for (const auto& sp : k.simplices) {
        std::vector<std::pair<int, int>> grid;
        for (int u : sp)
            for (int v : sp) grid.push_back({u, v});
        std::sort(grid.begin(), grid.end());
        std::vector<int> chain;
        std::function<void(size_t)> extend = [&](size_t start) {
            if (!chain.empty()) chains.insert(chain);
            for (size_t g = start; g < grid.size(); ++g) {
                if (!chain.empty()) {
                    auto [pu, pv] = pairs[chain.back()];
                    auto [u, v] = grid[g];
                    if (!(u >= pu && v >= pv && (u != pu || v != pv))) continue;
                }
                chain.push_back(pair_index.at(grid[g]));
                extend(g + 1);
                chain.pop_back();
            }
        };
        extend(0);
    }

    OrderedComplex out;
    for (auto [u, v] : pairs)
        out.vertex_labels.push_back("(" + k.vertex_labels[u] + "," + k.vertex_labels[v] + ")");
    for (const auto& c : chains) out.simplices.push_back(c);
    std::sort(out.simplices.begin(), out.simplices.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Membership witnesses for the displayed generators of St(S):
// (s_{nu_q...nu_1} d_{nu_1...nu_q} sigma', s_{mu_p...mu_1} d_{mu_1...mu_p} sigma')
// with sigma' of the pair's own dimension, nu inside {0..n-1}, mu inside
// {0..n}, disjoint. Faces apply in descending index order, then degeneracies
// ascending; candidates whose word is dimension-invalid are skipped.
// ---------------------------------------------------------------------------

struct StarWitness {
    NormalForm sigma_prime;
    std::vector<int> nu, mu;
};

inline std::optional<NormalForm> collapse_along(const SimplicialSet& s, const NormalForm& x,
                                                const std::vector<int>& idx)
{
    int n = x.dim();
    if ((int)idx.size() > n) return std::nullopt;
    for (size_t k = 0; k < idx.size(); ++k)
        if (idx[k] > n - (int)idx.size() + (int)k) return std::nullopt;
    NormalForm r = x;
    for (size_t k = idx.size(); k-- > 0;) r = apply_face(s, idx[k], r);
    for (size_t k = 0; k < idx.size(); ++k) r = apply_degeneracy(s, idx[k], r);
    return r;
}

inline std::vector<StarWitness> star_membership(const SimplicialSet& s, const NormalForm& a,
                                                const NormalForm& b)
{
    int n = a.dim();
    if (b.dim() != n) throw Error(ErrorKind::ShapeMismatch, "pair components differ in dimension");
    if (n > s.truncation()) throw Error(ErrorKind::DimensionOutOfRange, "pair above truncation");

    std::vector<StarWitness> found;
    std::vector<int> assign(n + 1, 0); // 0 = neither, 1 = nu, 2 = mu
    for_each_normal_form(s, n, [&](const NormalForm& sp) {
        std::function<void(int)> rec = [&](int pos) {
            if (pos == n + 1) {
                std::vector<int> nu, mu;
                for (int i = 0; i <= n; ++i) {
                    if (assign[i] == 1) nu.push_back(i);
                    if (assign[i] == 2) mu.push_back(i);
                }
                auto lhs = collapse_along(s, sp, nu);
                if (!lhs || !(*lhs == a)) return;
                auto rhs = collapse_along(s, sp, mu);
                if (!rhs || !(*rhs == b)) return;
                found.push_back(StarWitness{sp, nu, mu});
                return;
            }
            for (int c = 0; c < 3; ++c) {
                if (c == 1 && pos == n) continue; // nu stays below n
                assign[pos] = c;
                rec(pos + 1);
            }
            assign[pos] = 0;
        };
        rec(0);
    });
    return found;
}

// ---------------------------------------------------------------------------
// Star cells (sigma, tau, sigma_bar) and the comparison map pbar
// ---------------------------------------------------------------------------

struct StarCell {
    MultiDegree deg;
    NormalForm sigma, tau, sigma_bar;

    friend bool operator==(const StarCell& a, const StarCell& b)
    {
        return a.deg == b.deg && a.sigma == b.sigma && a.tau == b.tau &&
               a.sigma_bar == b.sigma_bar;
    }
    friend bool operator<(const StarCell& a, const StarCell& b)
    {
        if (!(a.deg == b.deg)) return a.deg < b.deg;
        if (a.sigma_bar != b.sigma_bar) return a.sigma_bar < b.sigma_bar;
        return a.tau < b.tau;
    }
};

// pbar via the I/J face partition: tau kills the skipped indices, sigma_bar
// kills their complement, sigma = mu(sigma_bar).
inline StarCell pbar(const SimplicialSet& s, const PrismCell& cell)
{
    if (cell.cons != Construction::Pbar)
        throw Error(ErrorKind::BadInput, "pbar acts on Pbar cells");
    const MultiDegree& d = cell.deg;
    int n = d.payload_dim(Construction::Pbar);
    std::vector<int> I = pbar_skipped_faces(d);
    std::vector<bool> in_I(n + 1, false);
    for (int i : I) in_I[i] = true;

    NormalForm tau = cell.payload;
    for (size_t k = I.size(); k-- > 0;) tau = apply_face(s, I[k], tau);

    NormalForm sigma_bar = cell.payload;
    for (int idx = n; idx >= 0; --idx)
        if (!in_I[idx]) sigma_bar = apply_face(s, idx, sigma_bar);

    NormalForm sigma = apply_mu(s, d.q, sigma_bar);
    return StarCell{d, sigma, tau, sigma_bar};
}

// Tuple-level pbar over K^s: gamma = (B_0, x_0 | ... | B_p, x_p) with
// |B_k| = q_k + 1; tau concatenates the B blocks, sigma_bar collects the x's.
inline void pbar_tuples(const MultiDegree& d, const std::vector<int>& gamma, std::vector<int>& x,
                        std::vector<int>& B)
{
    x.clear();
    B.clear();
    size_t pos = 0;
    for (int k = 0; k <= d.p; ++k) {
        for (int j = 0; j <= d.q[k]; ++j) B.push_back(gamma[pos++]);
        x.push_back(gamma[pos++]);
    }
}

// Interleave with the clamp rule: block k entries forced into
// [x_{k-1}, x_k] (block 0 has only the upper bound).
inline std::vector<int> pbar_inverse_tuples(const MultiDegree& d, const std::vector<int>& x,
                                            const std::vector<int>& B)
{
    std::vector<int> gamma;
    gamma.reserve(B.size() + x.size());
    size_t pos = 0;
    for (int k = 0; k <= d.p; ++k) {
        for (int j = 0; j <= d.q[k]; ++j) {
            int v = B[pos++];
            if (k > 0 && v < x[k - 1]) v = x[k - 1];
            if (v > x[k]) v = x[k];
            gamma.push_back(v);
        }
        gamma.push_back(x[k]);
    }
    return gamma;
}

inline PrismCell pbar_inverse(const SimplicialSet& s, const StarCell& cell)
{
    if (!s.from_complex_flag())
        throw Error(ErrorKind::NotFromComplex, "pbar inverse needs a complex-derived set");
    std::vector<int> x = vertex_tuple(s, cell.sigma_bar);
    std::vector<int> B = vertex_tuple(s, cell.tau);
    std::vector<int> gamma = pbar_inverse_tuples(cell.deg, x, B);
    return PrismCell{Construction::Pbar, cell.deg, normal_form_from_tuple(s, gamma), std::nullopt};
}

// A star cell over K^s is in the image of pbar exactly when the interleaved
// tuple is already monotone with simplex support.
inline bool star_cell_valid(const SimplicialSet& s, const StarCell& cell)
{
    if (!s.from_complex_flag()) return false;
    std::vector<int> x = vertex_tuple(s, cell.sigma_bar);
    std::vector<int> B = vertex_tuple(s, cell.tau);
    size_t pos = 0;
    int prev = -1;
    std::set<int> support;
    for (int k = 0; k <= cell.deg.p; ++k) {
        for (int j = 0; j <= cell.deg.q[k]; ++j) {
            int v = B[pos++];
            if (v < prev || v > x[k]) return false;
            prev = v;
            support.insert(v);
        }
        if (x[k] < prev) return false;
        prev = x[k];
        support.insert(x[k]);
    }
    std::vector<int> sup(support.begin(), support.end());
    if (!s.is_simplex(sup)) return false;
    return apply_mu(s, cell.deg.q, cell.sigma_bar) == cell.sigma;
}

// Enumerate P St(K^s) at a multidegree through membership: all pairs
// (mu(sigma_bar), tau, sigma_bar) whose interleaving is valid.
inline std::vector<StarCell> star_cells(const SimplicialSet& s, const MultiDegree& d)
{
    if (!s.from_complex_flag())
        throw Error(ErrorKind::NotFromComplex, "star cell enumeration needs a complex-derived set");
    int n = d.payload_dim(Construction::P);
    std::vector<StarCell> out;
    for_each_normal_form(s, d.p, [&](const NormalForm& sb) {
        NormalForm sigma = apply_mu(s, d.q, sb);
        for_each_normal_form(s, n, [&](const NormalForm& tau) {
            StarCell cell{d, sigma, tau, sb};
            if (star_cell_valid(s, cell)) out.push_back(cell);
        });
    });
    return out;
}

// ---------------------------------------------------------------------------
// K^s tuple enumeration (fast path for exhaustive scans)
// ---------------------------------------------------------------------------

// Visits every nondecreasing (n+1)-tuple supported on a simplex of K,
// i.e. every element of K^s_n, as a vertex tuple.
template <class F>
inline void for_each_ks_tuple(const SimplicialSet& s, int n, F&& fn)
{
    if (!s.from_complex_flag())
        throw Error(ErrorKind::NotFromComplex, "tuple enumeration needs a complex-derived set");
    std::vector<int> tuple(n + 1);
    for (int m = 0; m <= std::min(n, s.max_generator_dim()); ++m) {
        for (int gi = 0; gi < s.generator_count(m); ++gi) {
            const std::vector<int>& verts = s.generator(GeneratorId{m, gi}).vertices;
            // multiplicities >= 1 summing to n+1 across the m+1 vertices
            std::function<void(int, int, int)> rec = [&](int vi, int pos, int rest) {
                if (vi == m) {
                    for (int t = 0; t < rest; ++t) tuple[pos + t] = verts[vi];
                    fn(tuple);
                    return;
                }
                for (int take = 1; take <= rest - (m - vi); ++take) {
                    for (int t = 0; t < take; ++t) tuple[pos + t] = verts[vi];
                    rec(vi + 1, pos + take, rest - take);
                }
            };
            rec(0, 0, n + 1);
        }
    }
}

// ---------------------------------------------------------------------------
// st: St(K)^s <-> St(K^s) (joint-support pairs), dimension by dimension
// ---------------------------------------------------------------------------

struct StIsoDim {
    int dim = 0;
    long long lhs_count = 0; // elements of St(K)^s
    long long rhs_count = 0; // pairs with joint simplex support
    bool bijective = false;
};

struct StIsoReport {
    std::vector<StIsoDim> dims;
    bool ok() const
    {
        for (const auto& d : dims)
            if (!d.bijective) return false;
        return true;
    }
};

// Unzip a star-complex element into its component tuples over K.
inline std::pair<std::vector<int>, std::vector<int>> unzip_star_tuple(
    const std::vector<std::pair<int, int>>& pair_vertices, const std::vector<int>& tuple)
{
    std::vector<int> a, b;
    for (int pv : tuple) {
        a.push_back(pair_vertices.at(pv).first);
        b.push_back(pair_vertices.at(pv).second);
    }
    return {a, b};
}

inline StIsoReport st_iso(const OrderedComplex& k, int max_dim)
{
    StIsoReport rep;
    OrderedComplex stk = star_complex(k);
    SimplicialSet stks = from_complex(stk).with_truncation(
        std::max(max_dim, from_complex(stk).truncation()));
    SimplicialSet ks = from_complex(k).with_truncation(
        std::max(max_dim, from_complex(k).truncation()));
    std::vector<std::pair<int, int>> pair_vertices = star_pair_vertices(k);

    for (int n = 0; n <= max_dim; ++n) {
        StIsoDim dim;
        dim.dim = n;

        // left side: elements of St(K)^s, pushed through the unzip map
        std::set<std::pair<std::vector<int>, std::vector<int>>> images;
        for_each_ks_tuple(stks, n, [&](const std::vector<int>& tuple) {
            ++dim.lhs_count;
            images.insert(unzip_star_tuple(pair_vertices, tuple));
        });

        // right side: pairs (A, B) in K^s_n x K^s_n with joint simplex support
        bool all_hit = true;
        for_each_ks_tuple(ks, n, [&](const std::vector<int>& a) {
            std::vector<int> acopy = a;
            for_each_ks_tuple(ks, n, [&](const std::vector<int>& b) {
                std::set<int> sup(acopy.begin(), acopy.end());
                sup.insert(b.begin(), b.end());
                std::vector<int> supv(sup.begin(), sup.end());
                if (!ks.is_simplex(supv)) return;
                ++dim.rhs_count;
                if (!images.count({acopy, b})) all_hit = false;
            });
        });

        dim.bijective =
            all_hit && dim.lhs_count == dim.rhs_count && (long long)images.size() == dim.lhs_count;
        rep.dims.push_back(dim);
    }
    return rep;
}

} // namespace prismatica
