#pragma once

#include <numeric>
#include <optional>

#include "prismatica/core.hpp"

namespace prismatica {

// ---------------------------------------------------------------------------
// Multidegrees and prism cells
// ---------------------------------------------------------------------------

enum class Construction { P, Pbar, Pf };

inline const char* construction_name(Construction c)
{
    switch (c) {
        case Construction::P: return "P";
        case Construction::Pbar: return "Pbar";
        case Construction::Pf: return "Pf";
    }
    return "?";
}

struct MultiDegree {
    int p = 0;
    std::vector<int> q; // length p+1

    MultiDegree() : q{0} {}
    MultiDegree(std::vector<int> qv) : p((int)qv.size() - 1), q(std::move(qv))
    {
        if (q.empty()) throw Error(ErrorKind::BadInput, "empty multidegree");
        for (int qi : q)
            if (qi < 0) throw Error(ErrorKind::BadInput, "negative fiber degree");
    }

    int total_q() const { return std::accumulate(q.begin(), q.end(), 0); }
    int total_degree() const { return p + total_q(); }

    // q_0 + ... + q_{i-1}
    int prefix(int i) const { return std::accumulate(q.begin(), q.begin() + i, 0); }

    int payload_dim(Construction c) const
    {
        switch (c) {
            case Construction::P:
            case Construction::Pf: return total_q() + p;
            case Construction::Pbar: return total_q() + 2 * p + 1;
        }
        return 0;
    }

    MultiDegree with_q(int i, int delta) const
    {
        MultiDegree d = *this;
        d.q.at(i) += delta;
        if (d.q[i] < 0) throw Error(ErrorKind::IndexOutOfRange, "fiber degree below zero");
        return d;
    }

    MultiDegree without_block(int i) const
    {
        if (p == 0) throw Error(ErrorKind::IndexOutOfRange, "cannot remove the last block");
        MultiDegree d = *this;
        d.q.erase(d.q.begin() + i);
        d.p -= 1;
        return d;
    }

    friend bool operator==(const MultiDegree& a, const MultiDegree& b) { return a.q == b.q; }
    friend bool operator<(const MultiDegree& a, const MultiDegree& b)
    {
        if (a.p != b.p) return a.p < b.p;
        return a.q < b.q;
    }
};

struct PrismCell {
    Construction cons = Construction::P;
    MultiDegree deg;
    NormalForm payload;                // element of S_{q+p} (P, Pf) or S_{q+2p+1} (Pbar)
    std::optional<NormalForm> base;    // Pf only: sigma_bar in the target set

    friend bool operator==(const PrismCell& a, const PrismCell& b)
    {
        return a.cons == b.cons && a.deg == b.deg && a.payload == b.payload && a.base == b.base;
    }
    friend bool operator<(const PrismCell& a, const PrismCell& b)
    {
        if (!(a.deg == b.deg)) return a.deg < b.deg;
        if (a.payload != b.payload) return a.payload < b.payload;
        return a.base < b.base;
    }
};

// ---------------------------------------------------------------------------
// Operator index formulas
// ---------------------------------------------------------------------------

// Fiber operators act on the payload by a single index-shifted face or
// degeneracy; block i of a P cell starts at absolute index prefix(i) + i,
// block i of a Pbar cell at prefix(i) + 2i.
inline int fiber_index(Construction c, const MultiDegree& d, int i, int j)
{
    if (i < 0 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "block index");
    int base = d.prefix(i) + (c == Construction::Pbar ? 2 * i : i);
    return base + j;
}

// Face word of d_(i), applied to the payload innermost (largest index) first.
// P deletes the q_i+1 indices of block i; Pbar deletes those plus the skipped
// index that trails the block.
inline std::vector<int> base_face_word(Construction c, const MultiDegree& d, int i)
{
    if (i < 0 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "block index");
    int lo = d.prefix(i) + (c == Construction::Pbar ? 2 * i : i);
    int hi = lo + d.q[i] + (c == Construction::Pbar ? 1 : 0);
    std::vector<int> word;
    for (int idx = hi; idx >= lo; --idx) word.push_back(idx);
    return word;
}

// The p+1 face indices skipped by the Pbar fiber structure,
// {d_{q_0+1}, d_{q_0+q_1+3}, ..., d_{q+2p+1}}.
inline std::vector<int> pbar_skipped_faces(const MultiDegree& d)
{
    std::vector<int> out;
    for (int k = 1; k <= d.p + 1; ++k) out.push_back(d.prefix(k) + 2 * k - 1);
    return out;
}

// ---------------------------------------------------------------------------
// Cell enumeration and operators
// ---------------------------------------------------------------------------

template <class F>
inline void for_each_prism_cell(const SimplicialSet& s, Construction c, const MultiDegree& d, F&& fn)
{
    if (c == Construction::Pf)
        throw Error(ErrorKind::BadInput, "Pf cells are enumerated through pf_cells");
    int n = d.payload_dim(c);
    if (n > s.truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "payload dimension exceeds truncation");
    for_each_normal_form(s, n, [&](const NormalForm& x) {
        fn(PrismCell{c, d, x, std::nullopt});
    });
}

inline std::vector<PrismCell> prism_cells(const SimplicialSet& s, Construction c, const MultiDegree& d)
{
    std::vector<PrismCell> out;
    for_each_prism_cell(s, c, d, [&](const PrismCell& cell) { out.push_back(cell); });
    return out;
}

enum class PrismOp { FiberFace, FiberDegeneracy, BaseFace };

inline PrismCell fiber_face(const SimplicialSet& s, const PrismCell& cell, int i, int j)
{
    const MultiDegree& d = cell.deg;
    if (i < 0 || i > d.p || j < 0 || j > d.q.at(i))
        throw Error(ErrorKind::IndexOutOfRange, "fiber face indices");
    if (d.q[i] < 1) throw Error(ErrorKind::IndexOutOfRange, "fiber face needs q_i >= 1");
    PrismCell r = cell;
    r.deg = d.with_q(i, -1);
    r.payload = apply_face(s, fiber_index(cell.cons, d, i, j), cell.payload);
    return r;
}

inline PrismCell fiber_degeneracy(const SimplicialSet& s, const PrismCell& cell, int i, int j)
{
    const MultiDegree& d = cell.deg;
    if (i < 0 || i > d.p || j < 0 || j > d.q.at(i))
        throw Error(ErrorKind::IndexOutOfRange, "fiber degeneracy indices");
    PrismCell r = cell;
    r.deg = d.with_q(i, +1);
    r.payload = apply_degeneracy(s, fiber_index(cell.cons, d, i, j), cell.payload);
    return r;
}

inline NormalForm apply_face_word(const SimplicialSet& s, const std::vector<int>& word,
                                  const NormalForm& x)
{
    NormalForm r = x;
    for (int idx : word) r = apply_face(s, idx, r);
    return r;
}

struct SimplicialMap; // below
inline PrismCell base_face(const SimplicialSet& s, const PrismCell& cell, int i,
                           const SimplicialMap* f = nullptr);

// A cell is fiberwise degenerate when its payload lies in the image of some
// fiber degeneracy s_j^{(i)} of its multidegree.
inline bool fiberwise_degenerate(const PrismCell& cell)
{
    if (cell.payload.degens.empty()) return false;
    std::vector<int> t = position_tuple(cell.payload);
    const MultiDegree& d = cell.deg;
    for (int i = 0; i <= d.p; ++i) {
        int base = d.prefix(i) + (cell.cons == Construction::Pbar ? 2 * i : i);
        for (int j = 0; j + 1 <= d.q[i]; ++j) {
            int k = base + j;
            if (t[k] == t[k + 1]) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Simplicial maps and P(f)
// ---------------------------------------------------------------------------

struct SimplicialMap {
    const SimplicialSet* src = nullptr;
    const SimplicialSet* dst = nullptr;
    std::vector<std::vector<NormalForm>> image; // per dim, per generator index

    NormalForm apply(const NormalForm& x) const
    {
        NormalForm r = image.at(x.gen.dim).at(x.gen.index);
        for (size_t k = x.degens.size(); k-- > 0;) r = apply_degeneracy(*dst, x.degens[k], r);
        return r;
    }

    // A vertex map that is monotone on every simplex induces K^s -> L^s.
    static SimplicialMap from_vertex_map(const SimplicialSet& src, const SimplicialSet& dst,
                                         const std::vector<int>& vmap)
    {
        if (!src.from_complex_flag() || !dst.from_complex_flag())
            throw Error(ErrorKind::NotFromComplex, "vertex maps need complex-derived sets");
        SimplicialMap f;
        f.src = &src;
        f.dst = &dst;
        f.image.resize(src.max_generator_dim() + 1);
        for (int dim = 0; dim <= src.max_generator_dim(); ++dim) {
            for (int gi = 0; gi < src.generator_count(dim); ++gi) {
                std::vector<int> t = src.generator(GeneratorId{dim, gi}).vertices;
                for (int& v : t) v = vmap.at(v);
                for (size_t k = 1; k < t.size(); ++k)
                    if (t[k] < t[k - 1])
                        throw Error(ErrorKind::BadInput, "vertex map not monotone on a simplex");
                f.image[dim].push_back(normal_form_from_tuple(dst, t));
            }
        }
        return f;
    }

    // Commutation with faces, checkable on any finite set.
    bool is_simplicial(std::string* why = nullptr) const
    {
        for (int dim = 1; dim <= src->max_generator_dim(); ++dim)
            for (int gi = 0; gi < src->generator_count(dim); ++gi) {
                NormalForm x{GeneratorId{dim, gi}};
                for (int i = 0; i <= dim; ++i) {
                    if (apply(apply_face(*src, i, x)) != apply_face(*dst, i, apply(x))) {
                        if (why) *why = "face commutation fails";
                        return false;
                    }
                }
            }
        return true;
    }
};

inline std::vector<PrismCell> pf_cells(const SimplicialMap& f, const MultiDegree& d)
{
    int n = d.payload_dim(Construction::Pf);
    if (n > f.src->truncation() || d.p > f.dst->truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "Pf dimensions exceed truncation");
    std::vector<PrismCell> out;
    // no inverse of f in general: scan sigma over S_{q+p} for each sigma_bar
    for_each_normal_form(*f.dst, d.p, [&](const NormalForm& sb) {
        NormalForm target = apply_mu(*f.dst, d.q, sb);
        for_each_normal_form(*f.src, n, [&](const NormalForm& sigma) {
            if (f.apply(sigma) == target) out.push_back(PrismCell{Construction::Pf, d, sigma, sb});
        });
    });
    return out;
}

inline PrismCell base_face(const SimplicialSet& s, const PrismCell& cell, int i,
                           const SimplicialMap* f)
{
    const MultiDegree& d = cell.deg;
    if (i < 0 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "block index");
    PrismCell r = cell;
    r.deg = d.without_block(i);
    Construction wordc = cell.cons == Construction::Pbar ? Construction::Pbar : Construction::P;
    r.payload = apply_face_word(s, base_face_word(wordc, d, i), cell.payload);
    if (cell.cons == Construction::Pf) {
        if (!f) throw Error(ErrorKind::BadInput, "Pf base face needs the simplicial map");
        r.base = apply_face(*f->dst, i, *cell.base);
        NormalForm expect = apply_mu(*f->dst, r.deg.q, *r.base);
        if (f->apply(r.payload) != expect)
            throw Error(ErrorKind::InternalInvariantBroken, "Pf membership lost under base face");
    }
    return r;
}

// ---------------------------------------------------------------------------
// E.S: the (p+1)-fold product as a strong prismatic set. Fiber operators act
// componentwise; the base face deletes a component and the base degeneracy
// repeats one, so the base direction is a full simplicial set.
// ---------------------------------------------------------------------------

struct ESCell {
    MultiDegree deg;
    std::vector<NormalForm> components; // components[i] has dimension q_i

    void require_shape() const
    {
        if ((int)components.size() != deg.p + 1)
            throw Error(ErrorKind::ShapeMismatch, "component count");
        for (int i = 0; i <= deg.p; ++i)
            if (components[i].dim() != deg.q[i])
                throw Error(ErrorKind::ShapeMismatch, "component dimension");
    }

    friend bool operator==(const ESCell& a, const ESCell& b)
    {
        return a.deg == b.deg && a.components == b.components;
    }
};

inline ESCell es_fiber_face(const SimplicialSet& s, const ESCell& c, int i, int j)
{
    ESCell r = c;
    r.deg = c.deg.with_q(i, -1);
    r.components.at(i) = apply_face(s, j, c.components.at(i));
    return r;
}

inline ESCell es_fiber_degeneracy(const SimplicialSet& s, const ESCell& c, int i, int j)
{
    ESCell r = c;
    r.deg = c.deg.with_q(i, +1);
    r.components.at(i) = apply_degeneracy(s, j, c.components.at(i));
    return r;
}

inline ESCell es_base_face(const ESCell& c, int k)
{
    ESCell r = c;
    r.deg = c.deg.without_block(k);
    r.components.erase(r.components.begin() + k);
    return r;
}

inline ESCell es_base_degeneracy(const ESCell& c, int k)
{
    if (k < 0 || k > c.deg.p) throw Error(ErrorKind::IndexOutOfRange, "block index");
    ESCell r = c;
    r.deg.q.insert(r.deg.q.begin() + k, c.deg.q.at(k));
    r.deg.p += 1;
    r.components.insert(r.components.begin() + k, c.components.at(k));
    return r;
}

// ---------------------------------------------------------------------------
// Realization map lambda (Eq. 3.1): concatenate the scaled fiber blocks
// ---------------------------------------------------------------------------

struct PrismPoint {
    BaryPoint t;                 // point of Delta^p
    std::vector<BaryPoint> s;    // s[i] on Delta^{q_i}

    void require_shape(const MultiDegree& d) const
    {
        if (t.dim() != d.p || (int)s.size() != d.p + 1)
            throw Error(ErrorKind::ShapeMismatch, "prism point shape");
        for (int i = 0; i <= d.p; ++i)
            if (s[i].dim() != d.q[i]) throw Error(ErrorKind::ShapeMismatch, "fiber point shape");
    }
};

inline std::pair<BaryPoint, NormalForm> lambda_eval(const PrismCell& cell, const PrismPoint& pt)
{
    if (cell.cons == Construction::Pbar)
        throw Error(ErrorKind::BadInput, "lambda acts on P and Pf cells");
    pt.require_shape(cell.deg);
    std::vector<double> out;
    out.reserve(cell.deg.total_q() + cell.deg.p + 1);
    for (int i = 0; i <= cell.deg.p; ++i)
        for (double v : pt.s[i].c) out.push_back(pt.t.c[i] * v);
    return {BaryPoint{std::move(out)}, cell.payload};
}

// Exact-rational variant of the same formula (optional exact mode).
struct Rat {
    long long num = 0, den = 1;
    Rat() = default;
    Rat(long long n, long long d = 1) : num(n), den(d) { normalize(); }
    void normalize()
    {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator+(const Rat& a, const Rat& b)
    {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
};

inline std::vector<Rat> lambda_eval_exact(const MultiDegree& d, const std::vector<Rat>& t,
                                          const std::vector<std::vector<Rat>>& s)
{
    if ((int)t.size() != d.p + 1 || (int)s.size() != d.p + 1)
        throw Error(ErrorKind::ShapeMismatch, "prism point shape");
    std::vector<Rat> out;
    for (int i = 0; i <= d.p; ++i) {
        if ((int)s[i].size() != d.q[i] + 1)
            throw Error(ErrorKind::ShapeMismatch, "fiber point shape");
        for (const Rat& v : s[i]) out.push_back(t[i] * v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Comparison maps i, r, f between S, P(S) and Pbar(S)
// ---------------------------------------------------------------------------

// i(t, x) = (t, 1, s_0 ... s_p x) at multidegree (p; 0,...,0)
inline PrismCell inclusion_i(const SimplicialSet& s, const NormalForm& x)
{
    int p = x.dim();
    NormalForm y = x;
    for (int i = p; i >= 0; --i) y = apply_degeneracy(s, i, y);
    return PrismCell{Construction::Pbar, MultiDegree(std::vector<int>(p + 1, 0)), y, std::nullopt};
}

// r applies every fiber face of every block, landing in S_p.
inline NormalForm retraction_r(const SimplicialSet& s, const PrismCell& cell)
{
    if (cell.cons != Construction::Pbar)
        throw Error(ErrorKind::BadInput, "retraction acts on Pbar cells");
    const MultiDegree& d = cell.deg;
    std::vector<int> word;
    for (int i = 0; i <= d.p; ++i) {
        int lo = d.prefix(i) + 2 * i;
        for (int idx = lo; idx <= lo + d.q[i]; ++idx) word.push_back(idx);
    }
    std::sort(word.begin(), word.end(), std::greater<int>());
    return apply_face_word(s, word, cell.payload);
}

// f applies the p+1 skipped faces, carrying Pbar to P at the same multidegree.
inline PrismCell map_f(const SimplicialSet& s, const PrismCell& cell)
{
    if (cell.cons != Construction::Pbar)
        throw Error(ErrorKind::BadInput, "f acts on Pbar cells");
    std::vector<int> word = pbar_skipped_faces(cell.deg);
    std::sort(word.begin(), word.end(), std::greater<int>());
    PrismCell r = cell;
    r.cons = Construction::P;
    r.payload = apply_face_word(s, word, cell.payload);
    return r;
}

// ---------------------------------------------------------------------------
// aw: one P cell per composition q_0 + ... + q_p = n
// ---------------------------------------------------------------------------

struct AwTerm {
    PrismCell cell;
    int coeff = 1;
};

template <class F>
inline void for_each_composition(int n, int parts, F&& fn)
{
    std::vector<int> q(parts, 0);
    std::function<void(int, int)> rec = [&](int idx, int rest) {
        if (idx == parts - 1) {
            q[idx] = rest;
            fn(q);
            return;
        }
        for (int v = 0; v <= rest; ++v) {
            q[idx] = v;
            rec(idx + 1, rest - v);
        }
    };
    if (parts > 0) rec(0, n);
}

inline std::vector<AwTerm> aw_map(const SimplicialSet& s, const NormalForm& x, int p)
{
    int n = x.dim();
    if (n + p > s.truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "aw exceeds truncation");
    std::vector<AwTerm> out;
    for_each_composition(n, p + 1, [&](const std::vector<int>& q) {
        NormalForm y = x;
        int prefix = 0;
        for (int i = 1; i <= p; ++i) {
            prefix += q[i - 1];
            y = apply_degeneracy(s, prefix + i - 1, y);
        }
        out.push_back(AwTerm{PrismCell{Construction::P, MultiDegree(q), y, std::nullopt}, 1});
    });
    return out;
}

} // namespace prismatica
