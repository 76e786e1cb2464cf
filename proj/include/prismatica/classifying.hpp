#pragma once

#include "prismatica/gauge.hpp"
#include "prismatica/prismatic.hpp"

namespace prismatica {

// ---------------------------------------------------------------------------
// Interior coordinates of the standard simplex: t_k = 1 - t'_0 - ... -
// t'_{k-1} for k = 1..p, so 1 >= t_1 >= ... >= t_p >= 0.
// ---------------------------------------------------------------------------

struct InteriorPoint {
    std::vector<double> t;

    int p() const { return (int)t.size(); }

    bool valid(double tol = kBaryTol) const
    {
        double prev = 1.0 + tol;
        for (double v : t) {
            if (v > prev + tol || v < -tol || v > 1.0 + tol) return false;
            prev = v;
        }
        return true;
    }

    void require_valid() const
    {
        if (!valid()) throw Error(ErrorKind::InvalidPoint, "interior coordinates not monotone");
    }
};

inline InteriorPoint to_interior(const BaryPoint& tp)
{
    tp.require_valid();
    InteriorPoint out;
    double acc = 1.0;
    for (int k = 0; k + 1 < (int)tp.c.size(); ++k) {
        acc -= tp.c[k];
        out.t.push_back(acc);
    }
    return out;
}

inline BaryPoint from_interior(const InteriorPoint& ip)
{
    ip.require_valid();
    std::vector<double> c;
    double prev = 1.0;
    for (double v : ip.t) {
        c.push_back(prev - v);
        prev = v;
    }
    c.push_back(prev);
    return BaryPoint{std::move(c)};
}

// ---------------------------------------------------------------------------
// lambda_bar: the interior-coordinate realization map of a Pbar multidegree,
// Delta^p x Delta^{q_0..q_p} -> Delta^{q+2p+1}. Block k < p contributes
// (s^k_j (t_k - t_{k+1}) + t_{k+1})_j, t_{k+1}, t_{k+1}; the last block
// contributes (s^p_j t_p)_j, 0.
// ---------------------------------------------------------------------------

inline BaryPoint lambda_bar(const MultiDegree& d, const InteriorPoint& t,
                            const std::vector<BaryPoint>& s)
{
    if (t.p() != d.p || (int)s.size() != d.p + 1)
        throw Error(ErrorKind::ShapeMismatch, "lambda point shape");
    t.require_valid();
    std::vector<std::vector<double>> si;
    for (int i = 0; i <= d.p; ++i) {
        if (s[i].dim() != d.q[i]) throw Error(ErrorKind::ShapeMismatch, "fiber point shape");
        si.push_back(to_interior(s[i]).t);
    }
    auto tk = [&](int k) { return k == 0 ? 1.0 : t.t[k - 1]; }; // t_0 = 1

    InteriorPoint out;
    for (int k = 0; k < d.p; ++k) {
        double hi = tk(k), lo = tk(k + 1);
        for (int j = 0; j < d.q[k]; ++j) out.t.push_back(si[k][j] * (hi - lo) + lo);
        out.t.push_back(lo);
        out.t.push_back(lo);
    }
    double tp = tk(d.p);
    for (int j = 0; j < d.q[d.p]; ++j) out.t.push_back(si[d.p][j] * tp);
    out.t.push_back(0.0);
    return from_interior(out);
}

// Independent route: directly in barycentric coordinates, block k is
// t'_k * sbar^k followed by a zero slot.
inline BaryPoint lambda_bar_blocks(const MultiDegree& d, const BaryPoint& t_bary,
                                   const std::vector<BaryPoint>& s)
{
    if (t_bary.dim() != d.p || (int)s.size() != d.p + 1)
        throw Error(ErrorKind::ShapeMismatch, "lambda point shape");
    std::vector<double> out;
    for (int k = 0; k <= d.p; ++k) {
        for (double v : s[k].c) out.push_back(t_bary.c[k] * v);
        out.push_back(0.0);
    }
    return BaryPoint{std::move(out)};
}

// ---------------------------------------------------------------------------
// rho^(i): collapse of everything past the first prefix(i) + 2i coordinates
// into the last retained slot (the composite of trailing eta maps).
// ---------------------------------------------------------------------------

inline BaryPoint rho_eval(int i, const MultiDegree& d, const BaryPoint& u)
{
    if (i < 1 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "rho block index");
    int n = d.payload_dim(Construction::Pbar);
    if ((int)u.c.size() != n + 1) throw Error(ErrorKind::ShapeMismatch, "rho input shape");
    int keep = d.prefix(i) + 2 * i; // coordinate count of the target
    std::vector<double> out(u.c.begin(), u.c.begin() + keep);
    double tail = 0.0;
    for (int k = keep; k <= n; ++k) tail += u.c[k];
    out.back() += tail;
    return BaryPoint{std::move(out)};
}

// Same map through the eta primitives, applied largest index first.
inline BaryPoint rho_via_eta(int i, const MultiDegree& d, const BaryPoint& u)
{
    if (i < 1 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "rho block index");
    int lo = d.prefix(i) + 2 * i - 1;
    int hi = d.total_q() + 2 * d.p;
    BaryPoint r = u;
    for (int k = hi; k >= lo; --k) r = eval_coord_map(CoordMap::Eta, k, r);
    return r;
}

// ---------------------------------------------------------------------------
// The classifying map m: a_p = 1 and
// a_i = v_{sigma, d_(i+1)...(p) sigma}( rho^(i+1) lambda(t)(s) )^{-1}.
// ---------------------------------------------------------------------------

// Face word (outermost first) of the composite d_(lo) ... d_(p) on a Pbar
// cell; the blocks peel off from the top.
inline std::vector<int> pbar_tail_base_word(const MultiDegree& d, int lo)
{
    std::vector<int> app;
    MultiDegree cur = d;
    for (int k = d.p; k >= lo; --k) {
        for (int idx : base_face_word(Construction::Pbar, cur, k)) app.push_back(idx);
        cur = cur.without_block(k);
    }
    std::reverse(app.begin(), app.end());
    return app;
}

using ClassifyingTuple = std::vector<GroupElem>;

// a_p = 1 and a_i = v_{sigma, d_(i+1)...(p) sigma}(rho^(i+1) lambda(t)(s))^{-1},
// with v_{sigma,tau} the cocycle-chained transition of the composite face.
// Each a_i reads only t and s^0..s^i through rho^(i+1).
inline ClassifyingTuple classify_cell(const TransitionSet& ts, const PrismCell& cell,
                                      const InteriorPoint& t, const std::vector<BaryPoint>& s)
{
    if (cell.cons != Construction::Pbar)
        throw Error(ErrorKind::BadInput, "the classifying map acts on Pbar cells");
    const MultiDegree& d = cell.deg;
    BaryPoint u = lambda_bar(d, t, s);
    ClassifyingTuple out(d.p + 1);
    out[d.p] = ts.group.identity();
    for (int i = d.p - 1; i >= 0; --i) {
        TransitionFn v = extend_to_faces(ts, cell.payload,
                                         FaceSpec::from_word(pbar_tail_base_word(d, i + 1)));
        out[i] = ts.group.inv(v(rho_eval(i + 1, d, u)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Prismatic-map compatibility of m, modulo the quotient by a single group
// translation, plus the independence clause of the PEG condition.
// ---------------------------------------------------------------------------

struct MCompatReport {
    long long samples_checked = 0;
    double max_discrepancy = 0.0;
    std::vector<std::string> violations;
    bool right_translation_ok = true; // convention that matched (right preferred)
    bool ok() const { return violations.empty(); }
};

inline std::string cell_label_short(const PrismCell& cell)
{
    std::string s = "(p=" + std::to_string(cell.deg.p) + ";q=";
    for (size_t i = 0; i < cell.deg.q.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(cell.deg.q[i]);
    }
    return s + ")";
}

namespace detail {

// b == a * g for one g (right) or g * a (left), pointwise.
inline bool tuples_match_mod_translation(const Group& g, const ClassifyingTuple& a,
                                         const ClassifyingTuple& b, bool right, double& maxdisc)
{
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    GroupElem shift = right ? g.mul(g.inv(a.back()), b.back()) : g.mul(b.back(), g.inv(a.back()));
    bool all = true;
    for (size_t k = 0; k < a.size(); ++k) {
        GroupElem expect = right ? g.mul(a[k], shift) : g.mul(shift, a[k]);
        double dd = g.distance(expect, b[k]);
        maxdisc = std::max(maxdisc, dd);
        if (dd > (g.exact() ? 0.0 : g.tol())) all = false;
    }
    return all;
}

} // namespace detail

inline MCompatReport check_m_compatibility(const TransitionSet& ts, const PrismCell& cell, int i,
                                           int samples, uint64_t seed = 0)
{
    if (cell.cons != Construction::Pbar || cell.deg.p < 1)
        throw Error(ErrorKind::BadInput, "base-face compatibility needs a Pbar cell with p >= 1");
    const SimplicialSet& sset = *ts.base;
    const MultiDegree& d = cell.deg;
    if (i < 0 || i > d.p) throw Error(ErrorKind::IndexOutOfRange, "base face index");

    PrismCell face = base_face(sset, cell, i);
    MCompatReport rep;
    SplitMix64 rng(seed);

    for (int rep_i = 0; rep_i < samples; ++rep_i) {
        // sample a point of the face cell
        InteriorPoint that = to_interior(BaryPoint{rng.next_barycentric(d.p - 1)});
        std::vector<BaryPoint> shat;
        for (int b = 0; b <= face.deg.p; ++b)
            shat.push_back(BaryPoint{rng.next_barycentric(face.deg.q[b])});
        ClassifyingTuple B = classify_cell(ts, face, that, shat);

        // the same point through the epsilon^i embedding of the base simplex
        InteriorPoint t = to_interior(eval_coord_map(CoordMap::Epsilon, i, from_interior(that)));
        std::vector<BaryPoint> s;
        for (int b = 0, src = 0; b <= d.p; ++b) {
            if (b == i)
                s.push_back(bary_center(d.q[b]));
            else
                s.push_back(shat[src++]);
        }
        ClassifyingTuple A = classify_cell(ts, cell, t, s);
        if (!ts.group.eq(A[d.p], ts.group.identity()))
            rep.violations.push_back("a_p is not the identity");
        ClassifyingTuple Adrop;
        for (int k = 0; k <= d.p; ++k)
            if (k != i) Adrop.push_back(A[k]);

        ++rep.samples_checked;
        double disc = 0.0;
        if (!detail::tuples_match_mod_translation(ts.group, Adrop, B, true, disc)) {
            double dl = 0.0;
            if (detail::tuples_match_mod_translation(ts.group, Adrop, B, false, dl)) {
                rep.right_translation_ok = false;
                rep.max_discrepancy = std::max(rep.max_discrepancy, dl);
            } else {
                rep.violations.push_back("face " + std::to_string(i) + " of " +
                                         cell_label_short(cell));
                rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
            }
        } else {
            rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
        }

        // independence clause: at the epsilon^i boundary the other components
        // do not see s^i
        for (int probe = 0; probe < 3; ++probe) {
            std::vector<BaryPoint> s2 = s;
            s2[i] = BaryPoint{rng.next_barycentric(d.q[i])};
            ClassifyingTuple A2 = classify_cell(ts, cell, t, s2);
            for (int k = 0; k <= d.p; ++k) {
                if (k == i) continue;
                double dd = ts.group.distance(A[k], A2[k]);
                rep.max_discrepancy = std::max(rep.max_discrepancy, dd);
                if (dd > (ts.group.exact() ? 0.0 : ts.group.tol()))
                    rep.violations.push_back("component " + std::to_string(k) +
                                             " depends on the collapsed fiber");
            }
        }
    }
    return rep;
}

} // namespace prismatica
