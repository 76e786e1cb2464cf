#pragma once

#include <cmath>
#include <variant>

#include "json.hpp"

#include "prismatica/core.hpp"
#include "prismatica/rng.hpp"

namespace prismatica {

// ---------------------------------------------------------------------------
// Group backends: integers mod m, permutations, square real matrices.
// The first two are exact; the matrix backend compares within a tolerance.
// ---------------------------------------------------------------------------

using GroupElem = std::variant<long long, std::vector<int>, std::vector<double>>;

class Group {
  public:
    enum class Kind { ZMod, Perm, Matrix };

    static Group zmod(int m)
    {
        if (m < 1) throw Error(ErrorKind::BadInput, "modulus must be positive");
        return Group(Kind::ZMod, m);
    }
    static Group perm(int n)
    {
        if (n < 1) throw Error(ErrorKind::BadInput, "degree must be positive");
        return Group(Kind::Perm, n);
    }
    static Group matrix(int dim, double tol = 1e-9)
    {
        if (dim < 1) throw Error(ErrorKind::BadInput, "dimension must be positive");
        Group g(Kind::Matrix, dim);
        g.tol_ = tol;
        return g;
    }

    Kind kind() const { return kind_; }
    int param() const { return n_; }
    double tol() const { return tol_; }
    bool exact() const { return kind_ != Kind::Matrix; }

    GroupElem identity() const
    {
        switch (kind_) {
            case Kind::ZMod: return (long long)0;
            case Kind::Perm: {
                std::vector<int> p(n_);
                for (int i = 0; i < n_; ++i) p[i] = i;
                return p;
            }
            case Kind::Matrix: {
                std::vector<double> m(n_ * n_, 0.0);
                for (int i = 0; i < n_; ++i) m[i * n_ + i] = 1.0;
                return m;
            }
        }
        throw Error(ErrorKind::BadInput, "bad group kind");
    }

    GroupElem mul(const GroupElem& a, const GroupElem& b) const
    {
        switch (kind_) {
            case Kind::ZMod:
                return mod(std::get<long long>(a) + std::get<long long>(b));
            case Kind::Perm: {
                const auto& pa = std::get<std::vector<int>>(a);
                const auto& pb = std::get<std::vector<int>>(b);
                std::vector<int> r(n_);
                for (int i = 0; i < n_; ++i) r[i] = pa[pb[i]];
                return r;
            }
            case Kind::Matrix: {
                const auto& ma = std::get<std::vector<double>>(a);
                const auto& mb = std::get<std::vector<double>>(b);
                std::vector<double> r(n_ * n_, 0.0);
                for (int i = 0; i < n_; ++i)
                    for (int k = 0; k < n_; ++k) {
                        double v = ma[i * n_ + k];
                        if (v == 0.0) continue;
                        for (int j = 0; j < n_; ++j) r[i * n_ + j] += v * mb[k * n_ + j];
                    }
                return r;
            }
        }
        throw Error(ErrorKind::BadInput, "bad group kind");
    }

    GroupElem inv(const GroupElem& a) const
    {
        switch (kind_) {
            case Kind::ZMod: return mod(-std::get<long long>(a));
            case Kind::Perm: {
                const auto& pa = std::get<std::vector<int>>(a);
                std::vector<int> r(n_);
                for (int i = 0; i < n_; ++i) r[pa[i]] = i;
                return r;
            }
            case Kind::Matrix: {
                // Gauss-Jordan with partial pivoting
                const auto& ma = std::get<std::vector<double>>(a);
                std::vector<double> m = ma, r(n_ * n_, 0.0);
                for (int i = 0; i < n_; ++i) r[i * n_ + i] = 1.0;
                for (int c = 0; c < n_; ++c) {
                    int piv = c;
                    for (int i = c + 1; i < n_; ++i)
                        if (std::fabs(m[i * n_ + c]) > std::fabs(m[piv * n_ + c])) piv = i;
                    if (std::fabs(m[piv * n_ + c]) < 1e-14)
                        throw Error(ErrorKind::BadInput, "singular matrix element");
                    for (int j = 0; j < n_; ++j) {
                        std::swap(m[c * n_ + j], m[piv * n_ + j]);
                        std::swap(r[c * n_ + j], r[piv * n_ + j]);
                    }
                    double d = m[c * n_ + c];
                    for (int j = 0; j < n_; ++j) {
                        m[c * n_ + j] /= d;
                        r[c * n_ + j] /= d;
                    }
                    for (int i = 0; i < n_; ++i) {
                        if (i == c) continue;
                        double f = m[i * n_ + c];
                        if (f == 0.0) continue;
                        for (int j = 0; j < n_; ++j) {
                            m[i * n_ + j] -= f * m[c * n_ + j];
                            r[i * n_ + j] -= f * r[c * n_ + j];
                        }
                    }
                }
                return r;
            }
        }
        throw Error(ErrorKind::BadInput, "bad group kind");
    }

    bool eq(const GroupElem& a, const GroupElem& b) const { return distance(a, b) <= tol_bound(); }

    // 0 for exact backends on equal elements; max-abs difference for matrices
    double distance(const GroupElem& a, const GroupElem& b) const
    {
        switch (kind_) {
            case Kind::ZMod: return std::get<long long>(a) == std::get<long long>(b) ? 0.0 : 1.0;
            case Kind::Perm: return std::get<std::vector<int>>(a) == std::get<std::vector<int>>(b) ? 0.0 : 1.0;
            case Kind::Matrix: {
                const auto& ma = std::get<std::vector<double>>(a);
                const auto& mb = std::get<std::vector<double>>(b);
                double d = 0.0;
                for (size_t i = 0; i < ma.size(); ++i) d = std::max(d, std::fabs(ma[i] - mb[i]));
                return d;
            }
        }
        return 1.0;
    }

    GroupElem parse(const nlohmann::json& j) const
    {
        switch (kind_) {
            case Kind::ZMod: return mod(j.get<long long>());
            case Kind::Perm: {
                std::vector<int> p = j.get<std::vector<int>>();
                if ((int)p.size() != n_) throw Error(ErrorKind::BadInput, "bad permutation size");
                std::vector<bool> seen(n_, false);
                for (int x : p) {
                    if (x < 0 || x >= n_ || seen[x])
                        throw Error(ErrorKind::BadInput, "not a permutation");
                    seen[x] = true;
                }
                return p;
            }
            case Kind::Matrix: {
                std::vector<double> m = j.get<std::vector<double>>();
                if ((int)m.size() != n_ * n_) throw Error(ErrorKind::BadInput, "bad matrix size");
                return m;
            }
        }
        throw Error(ErrorKind::BadInput, "bad group kind");
    }

    nlohmann::json dump(const GroupElem& e) const
    {
        switch (kind_) {
            case Kind::ZMod: return std::get<long long>(e);
            case Kind::Perm: return std::get<std::vector<int>>(e);
            case Kind::Matrix: return std::get<std::vector<double>>(e);
        }
        return nullptr;
    }

    static Group from_json(const nlohmann::json& j)
    {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "zmod") return zmod(j.at("m").get<int>());
        if (kind == "perm") return perm(j.at("n").get<int>());
        if (kind == "matrix") return matrix(j.at("dim").get<int>(),
                                            j.value("tol", 1e-9));
        throw Error(ErrorKind::BadInput, "unknown group kind: " + kind);
    }

  private:
    Group(Kind k, int n) : kind_(k), n_(n) {}
    Kind kind_;
    int n_;
    double tol_ = 1e-9;

    double tol_bound() const { return kind_ == Kind::Matrix ? tol_ : 0.5; }
    long long mod(long long v) const
    {
        long long r = v % n_;
        return r < 0 ? r + n_ : r;
    }
};

// ---------------------------------------------------------------------------
// Transition functions: group-valued evaluators on barycentric simplices.
// Products and coordinate precompositions stay symbolic (composed closures).
// ---------------------------------------------------------------------------

struct TransitionFn {
    bool constant = false;
    std::function<GroupElem(const BaryPoint&)> eval;

    GroupElem operator()(const BaryPoint& t) const { return eval(t); }

    static TransitionFn make_constant(GroupElem v)
    {
        TransitionFn f;
        f.constant = true;
        f.eval = [v](const BaryPoint&) { return v; };
        return f;
    }
};

inline TransitionFn precompose_epsilon(const TransitionFn& f, int i)
{
    TransitionFn g;
    g.constant = f.constant;
    auto inner = f.eval;
    g.eval = [inner, i](const BaryPoint& t) { return inner(eval_coord_map(CoordMap::Epsilon, i, t)); };
    return g;
}

inline TransitionFn precompose_eta(const TransitionFn& f, int i)
{
    TransitionFn g;
    g.constant = f.constant;
    auto inner = f.eval;
    g.eval = [inner, i](const BaryPoint& t) { return inner(eval_coord_map(CoordMap::Eta, i, t)); };
    return g;
}

inline TransitionFn fn_product(const Group& g, const TransitionFn& a, const TransitionFn& b)
{
    TransitionFn r;
    r.constant = a.constant && b.constant;
    auto ea = a.eval, eb = b.eval;
    r.eval = [g, ea, eb](const BaryPoint& t) { return g.mul(ea(t), eb(t)); };
    return r;
}

inline TransitionFn fn_inverse(const Group& g, const TransitionFn& a)
{
    TransitionFn r;
    r.constant = a.constant;
    auto ea = a.eval;
    r.eval = [g, ea](const BaryPoint& t) { return g.inv(ea(t)); };
    return r;
}

// ---------------------------------------------------------------------------
// Transition sets: one v_sigma per nondegenerate generator of dim >= 1,
// valued on Delta^{p-1}; degenerate simplices are reached by v_{s_j x} =
// v_x . eta^j.
// ---------------------------------------------------------------------------

struct TransitionSet {
    const SimplicialSet* base = nullptr;
    Group group = Group::zmod(1);
    std::map<GeneratorId, TransitionFn> values;

    const TransitionFn& fn_of(GeneratorId id) const
    {
        auto it = values.find(id);
        if (it == values.end())
            throw Error(ErrorKind::MissingEntry,
                        "no transition function for generator " + base->generator(id).label);
        return it->second;
    }

    // v on an arbitrary simplex: v_{s_j y} = v_y . eta^j for j below the top
    // index, and the identity when the last vertex is duplicated (the i = j+1
    // entry of the degenerate-transition table).
    TransitionFn v_eval(const NormalForm& x) const
    {
        if (x.dim() < 1) throw Error(ErrorKind::BadInput, "transition functions start at dim 1");
        if (!x.degenerate()) return fn_of(x.gen);
        int j = x.degens.front();
        NormalForm inner{std::vector<int>(x.degens.begin() + 1, x.degens.end()), x.gen};
        if (j == inner.dim()) return TransitionFn::make_constant(group.identity());
        return precompose_eta(v_eval(inner), j);
    }

    void require_complete() const
    {
        for (int d = 1; d <= base->max_generator_dim(); ++d)
            for (int i = 0; i < base->generator_count(d); ++i) fn_of(GeneratorId{d, i});
    }
};

// Parse {"group": {...}, "values": {label: spec}} over a base set.
inline TransitionSet transition_set_from_json(const SimplicialSet& base, const nlohmann::json& j)
{
    TransitionSet t;
    t.base = &base;
    t.group = Group::from_json(j.at("group"));

    std::map<std::string, GeneratorId> by_label;
    for (int d = 1; d <= base.max_generator_dim(); ++d)
        for (int i = 0; i < base.generator_count(d); ++i)
            by_label[base.generator(GeneratorId{d, i}).label] = GeneratorId{d, i};

    for (const auto& [key, spec] : j.at("values").items()) {
        auto it = by_label.find(key);
        if (it == by_label.end())
            throw Error(ErrorKind::BadInput, "unknown generator key: " + key);
        GeneratorId id = it->second;
        std::string kind = spec.at("kind").get<std::string>();
        if (kind == "constant") {
            t.values.emplace(id, TransitionFn::make_constant(t.group.parse(spec.at("value"))));
        } else if (kind == "rot_constant" || kind == "rot_affine") {
            if (t.group.kind() != Group::Kind::Matrix || t.group.param() != 2)
                throw Error(ErrorKind::BadInput, "rotation specs need the 2x2 matrix group");
            std::vector<double> angles;
            if (kind == "rot_constant")
                angles.assign((size_t)id.dim, spec.at("angle").get<double>());
            else
                angles = spec.at("angles").get<std::vector<double>>();
            if ((int)angles.size() != id.dim)
                throw Error(ErrorKind::BadInput, "rotation spec needs one angle per coordinate");
            TransitionFn f;
            f.constant = id.dim == 1;
            f.eval = [angles](const BaryPoint& t) -> GroupElem {
                if (t.c.size() != angles.size())
                    throw Error(ErrorKind::ShapeMismatch, "rotation evaluator arity");
                double theta = 0;
                for (size_t i = 0; i < angles.size(); ++i) theta += t.c[i] * angles[i];
                return std::vector<double>{std::cos(theta), -std::sin(theta), std::sin(theta),
                                           std::cos(theta)};
            };
            t.values.emplace(id, f);
        } else {
            throw Error(ErrorKind::BadInput, "unknown value kind: " + kind);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Sample schedules: vertices, barycenter, edge midpoints, then seeded
// pseudorandom points.
// ---------------------------------------------------------------------------

inline std::vector<BaryPoint> sample_points(int dim, int randoms, SplitMix64& rng)
{
    std::vector<BaryPoint> out;
    for (int k = 0; k <= dim; ++k) out.push_back(bary_vertex(dim, k));
    out.push_back(bary_center(dim));
    for (int a = 0; a <= dim; ++a)
        for (int b = a + 1; b <= dim; ++b) {
            std::vector<double> c(dim + 1, 0.0);
            c[a] = c[b] = 0.5;
            out.push_back(BaryPoint{std::move(c)});
        }
    for (int k = 0; k < randoms; ++k) out.push_back(BaryPoint{rng.next_barycentric(dim)});
    return out;
}

// ---------------------------------------------------------------------------
// Compatibility and cocycle checks
// ---------------------------------------------------------------------------

struct GaugeViolation {
    std::string where;
    double discrepancy;
};

struct GaugeReport {
    std::vector<GaugeViolation> violations;
    double max_discrepancy = 0.0;
    long long checked = 0;
    bool ok() const { return violations.empty(); }
};

// v_sigma . eps^i = v_{d_i sigma} (i < p-1) and = v_{d_{p-1}sigma} .
// v_{d_p sigma}^{-1} (i = p-1), sampled on each face simplex.
inline GaugeReport check_compatibility(const TransitionSet& t, int samples, uint64_t seed = 0)
{
    t.require_complete();
    const SimplicialSet& s = *t.base;
    GaugeReport rep;
    SplitMix64 rng(seed);
    for (int p = 2; p <= s.max_generator_dim(); ++p) {
        for (int gi = 0; gi < s.generator_count(p); ++gi) {
            GeneratorId id{p, gi};
            NormalForm sigma{id};
            TransitionFn vs = t.fn_of(id);
            for (int i = 0; i <= p - 1; ++i) {
                TransitionFn lhs = precompose_epsilon(vs, i);
                TransitionFn rhs;
                if (i < p - 1) {
                    rhs = t.v_eval(apply_face(s, i, sigma));
                } else {
                    rhs = fn_product(t.group, t.v_eval(apply_face(s, p - 1, sigma)),
                                     fn_inverse(t.group, t.v_eval(apply_face(s, p, sigma))));
                }
                for (const BaryPoint& pt : sample_points(p - 2, samples, rng)) {
                    double d = t.group.distance(lhs(pt), rhs(pt));
                    rep.max_discrepancy = std::max(rep.max_discrepancy, d);
                    ++rep.checked;
                    if (d > (t.group.exact() ? 0.0 : t.group.tol()))
                        rep.violations.push_back(
                            {s.generator(id).label + " eps^" + std::to_string(i), d});
                }
            }
        }
    }
    return rep;
}

// v_{x, d_i x} for a possibly degenerate x, by the degenerate-case table.
inline TransitionFn single_face_transition(const TransitionSet& t, const NormalForm& x, int i)
{
    int p = x.dim();
    if (i < 0 || i > p) throw Error(ErrorKind::IndexOutOfRange, "face index");
    if (!x.degenerate()) {
        if (i == p) return t.fn_of(x.gen);
        return TransitionFn::make_constant(t.group.identity());
    }
    int j = x.degens.front();
    NormalForm inner{std::vector<int>(x.degens.begin() + 1, x.degens.end()), x.gen};
    if (i == j || i == j + 1) return TransitionFn::make_constant(t.group.identity());
    if (i < j) return precompose_eta(single_face_transition(t, inner, i), j - 1);
    return precompose_eta(single_face_transition(t, inner, i - 1), j);
}

// Face specifications for v_{sigma,tau}.
struct FaceSpec {
    enum class Kind { Single, Tail, Word } kind;
    int i = 0;                 // Single: d_i; Tail: d_i . d_{i+1} ... d_p
    std::vector<int> word;     // Word: face letters, outermost first
    static FaceSpec single(int i) { return {Kind::Single, i, {}}; }
    static FaceSpec tail(int i) { return {Kind::Tail, i, {}}; }
    static FaceSpec from_word(std::vector<int> w) { return {Kind::Word, 0, std::move(w)}; }
};

inline TransitionFn extend_word(const TransitionSet& t, const NormalForm& sigma,
                                const std::vector<int>& w);

// v_{sigma,tau} per the requested face specification.
inline TransitionFn extend_to_faces(const TransitionSet& t, const NormalForm& sigma,
                                    const FaceSpec& spec)
{
    int p = sigma.dim();
    switch (spec.kind) {
        case FaceSpec::Kind::Single:
            return single_face_transition(t, sigma, spec.i);
        case FaceSpec::Kind::Tail: {
            if (spec.i < 1 || spec.i > p)
                throw Error(ErrorKind::UnsupportedFaceSpec, "tail spec out of range");
            // product over the iterated last faces, factor k precomposed with
            // (eps^i)^{p-i-k}
            TransitionFn acc;
            bool first = true;
            NormalForm cur = sigma;
            for (int k = 0; k <= p - spec.i; ++k) {
                TransitionFn vk = t.v_eval(cur);
                for (int z = 0; z < p - spec.i - k; ++z) vk = precompose_epsilon(vk, spec.i);
                acc = first ? vk : fn_product(t.group, acc, vk);
                first = false;
                if (k < p - spec.i) cur = apply_face(*t.base, cur.dim(), cur);
            }
            return acc;
        }
        case FaceSpec::Kind::Word:
            return extend_word(t, sigma, spec.word);
    }
    throw Error(ErrorKind::UnsupportedFaceSpec, "bad face spec");
}

// Cocycle chaining over an arbitrary face word (outermost first, applied
// back to front): v_{sigma,tau} = (v_{sigma,gamma} . E) . v_{gamma,tau}.
inline TransitionFn extend_word(const TransitionSet& t, const NormalForm& sigma,
                                const std::vector<int>& w)
{
    if (w.empty()) return TransitionFn::make_constant(t.group.identity());
    int innermost = w.back();
    std::vector<int> rest(w.begin(), w.end() - 1);
    NormalForm gamma = apply_face(*t.base, innermost, sigma);
    TransitionFn step = single_face_transition(t, sigma, innermost);
    // embed the final face's domain into gamma's: duals of the remaining
    // letters, the outermost letter's dual applied first
    for (size_t k = rest.size(); k-- > 0;) step = precompose_epsilon(step, rest[k]);
    if (rest.empty()) return step;
    return fn_product(t.group, step, extend_word(t, gamma, rest));
}

// Canonical face word deleting the given original positions (ascending),
// applied largest first.
inline std::vector<int> canonical_face_word(std::vector<int> positions)
{
    std::sort(positions.begin(), positions.end());
    return positions;
}

// Checks v_{sigma,tau} = (v_{sigma,gamma} . eps^i) . v_{gamma,tau} for all
// gamma = d_j sigma, tau = d_i gamma, with the left side evaluated through
// the canonical deleted-position word.
inline GaugeReport check_cocycle(const TransitionSet& t, int samples, uint64_t seed = 0)
{
    t.require_complete();
    const SimplicialSet& s = *t.base;
    GaugeReport rep;
    SplitMix64 rng(seed);
    for (int p = 2; p <= s.max_generator_dim(); ++p) {
        for (int gi = 0; gi < s.generator_count(p); ++gi) {
            NormalForm sigma{GeneratorId{p, gi}};
            for (int j = 0; j <= p; ++j) {
                NormalForm gamma = apply_face(s, j, sigma);
                for (int i = 0; i <= p - 1; ++i) {
                    int pos_i = i >= j ? i + 1 : i; // original position deleted second
                    TransitionFn lhs = extend_to_faces(
                        t, sigma, FaceSpec::from_word(canonical_face_word({j, pos_i})));
                    TransitionFn rhs =
                        fn_product(t.group,
                                   precompose_epsilon(single_face_transition(t, sigma, j), i),
                                   single_face_transition(t, gamma, i));
                    for (const BaryPoint& pt : sample_points(p - 2, samples, rng)) {
                        double d = t.group.distance(lhs(pt), rhs(pt));
                        rep.max_discrepancy = std::max(rep.max_discrepancy, d);
                        ++rep.checked;
                        if (d > (t.group.exact() ? 0.0 : t.group.tol()))
                            rep.violations.push_back(
                                {s.generator(sigma.gen).label + " d_" + std::to_string(j) +
                                     " d_" + std::to_string(i),
                                 d});
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Gauge normalization: rewrite a constant face-pair family into one with
// v_{sigma, d_i sigma} = 1 for i < p, by a skeleton-inductive change of
// trivializations processed in lexicographic generator order.
// ---------------------------------------------------------------------------

struct FacePairFamily {
    std::map<std::pair<GeneratorId, int>, GroupElem> v; // (sigma, face index) -> constant
};

struct GaugeNormalization {
    FacePairFamily normalized;
    std::map<GeneratorId, GroupElem> h; // change of trivialization per generator
    std::vector<std::string> inconsistencies;
    bool ok() const { return inconsistencies.empty(); }
};

inline GaugeNormalization normalize_gauge(const SimplicialSet& s, const Group& g,
                                          const FacePairFamily& fam)
{
    GaugeNormalization out;
    for (int i = 0; i < s.generator_count(0); ++i) out.h[GeneratorId{0, i}] = g.identity();
    for (int p = 1; p <= s.max_generator_dim(); ++p) {
        for (int gi = 0; gi < s.generator_count(p); ++gi) {
            GeneratorId id{p, gi};
            // h_sigma = h_{d_i sigma} . v_{sigma, d_i sigma}^{-1}, consistent
            // over all i < p when the family satisfies the cocycle
            std::optional<GroupElem> h;
            for (int i = 0; i < p; ++i) {
                const NormalForm& f = s.face_of_generator(id, i);
                if (f.degenerate()) continue; // handled by the degenerate table
                GroupElem cand =
                    g.mul(out.h.at(f.gen), g.inv(fam.v.at({id, i})));
                if (!h)
                    h = cand;
                else if (!g.eq(*h, cand))
                    out.inconsistencies.push_back("generator " + s.generator(id).label);
            }
            if (!h) h = g.identity(); // p == 1 with i < p empty never happens; degenerate-only
            out.h[id] = *h;
        }
    }
    for (const auto& [key, val] : fam.v) {
        auto [id, i] = key;
        const NormalForm& f = s.face_of_generator(id, i);
        if (f.degenerate()) {
            out.normalized.v[key] = val;
            continue;
        }
        out.normalized.v[key] = g.mul(out.h.at(id), g.mul(val, g.inv(out.h.at(f.gen))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Phillips-Stone parallel transport along the piecewise linear path
// ---------------------------------------------------------------------------

struct PlPath {
    std::vector<BaryPoint> points; // P_1 .. P_{r-1}; P_k over (a_0..a_k)
    BaryPoint t;                   // coordinates of P_{r-1} in the last face
};

inline PlPath pl_path(int r, const std::vector<double>& s)
{
    if (r < 1) throw Error(ErrorKind::BadInput, "path needs a positive-dimensional simplex");
    if ((int)s.size() != r - 1) throw Error(ErrorKind::ShapeMismatch, "cube point arity");
    for (double v : s)
        if (v < 0.0 || v > 1.0) throw Error(ErrorKind::InvalidPoint, "cube coordinates in [0,1]");
    PlPath out;
    std::vector<double> cur = {1.0}; // P_0 = a_0
    for (int k = 1; k <= r - 1; ++k) {
        for (double& c : cur) c *= (1.0 - s[k - 1]);
        cur.push_back(s[k - 1]);
        out.points.push_back(BaryPoint{cur});
    }
    out.t = BaryPoint{cur};
    return out;
}

inline GroupElem transport_V(const TransitionSet& t, const NormalForm& sigma,
                             const std::vector<double>& s)
{
    if (sigma.degenerate())
        throw Error(ErrorKind::BadInput, "transport is defined on nondegenerate simplices");
    PlPath path = pl_path(sigma.dim(), s);
    return t.v_eval(sigma)(path.t);
}

// Boundary identities of the parallel transport function, as derivable from
// the epsilon compatibility laws:
//   s_k = 1          V_sigma = V_{<a_k..a_r>} of the remaining parameters
//   s_k = 0, k < r-1 V_sigma = V of the simplex with a_k deleted
//   s_{r-1} = 0      V_sigma = V_{d_{r-1}sigma} . V_{d_r sigma}^{-1}
inline GaugeReport check_ps_boundaries(const TransitionSet& t, int samples, uint64_t seed = 0)
{
    t.require_complete();
    const SimplicialSet& s = *t.base;
    if (!s.from_complex_flag())
        throw Error(ErrorKind::NotFromComplex, "transport boundaries need a complex-derived set");
    GaugeReport rep;
    SplitMix64 rng(seed);

    auto sub_simplex = [&](const std::vector<int>& verts) {
        auto id = s.generator_by_vertices(verts);
        if (!id) throw Error(ErrorKind::InternalInvariantBroken, "face tuple is not a simplex");
        return NormalForm{*id};
    };

    for (int r = 2; r <= s.max_generator_dim(); ++r) {
        for (int gi = 0; gi < s.generator_count(r); ++gi) {
            NormalForm sigma{GeneratorId{r, gi}};
            std::vector<int> verts = s.generator(sigma.gen).vertices;
            for (int rep_i = 0; rep_i < samples; ++rep_i) {
                std::vector<double> cube(r - 1);
                for (double& v : cube) v = rng.next_double();
                for (int k = 1; k <= r - 1; ++k) {
                    auto check = [&](const GroupElem& lhs, const GroupElem& rhs,
                                     const std::string& what) {
                        double d = t.group.distance(lhs, rhs);
                        rep.max_discrepancy = std::max(rep.max_discrepancy, d);
                        ++rep.checked;
                        if (d > (t.group.exact() ? 0.0 : t.group.tol()))
                            rep.violations.push_back({s.generator(sigma.gen).label + " " + what, d});
                    };

                    // s_k = 1: the transport factors through the visited vertex
                    {
                        std::vector<double> at = cube;
                        at[k - 1] = 1.0;
                        GroupElem lhs = transport_V(t, sigma, at);
                        std::vector<int> back(verts.begin() + k, verts.end());
                        std::vector<double> rest(at.begin() + k, at.end());
                        GroupElem rhs = transport_V(t, sub_simplex(back), rest);
                        check(lhs, rhs, "s_" + std::to_string(k) + "=1");
                    }
                    // s_k = 0
                    {
                        std::vector<double> at = cube;
                        at[k - 1] = 0.0;
                        GroupElem lhs = transport_V(t, sigma, at);
                        if (k < r - 1) {
                            std::vector<int> del = verts;
                            del.erase(del.begin() + k);
                            std::vector<double> rest = at;
                            rest.erase(rest.begin() + (k - 1));
                            GroupElem rhs = transport_V(t, sub_simplex(del), rest);
                            check(lhs, rhs, "s_" + std::to_string(k) + "=0");
                        } else {
                            std::vector<double> rest(at.begin(), at.end() - 1);
                            GroupElem a = transport_V(t, apply_face(s, r - 1, sigma), rest);
                            GroupElem b = transport_V(t, apply_face(s, r, sigma), rest);
                            GroupElem rhs = t.group.mul(a, t.group.inv(b));
                            check(lhs, rhs, "s_last=0");
                        }
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace prismatica
