#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <stdexcept>
#include <vector>

namespace prismatica {

constexpr double kBaryTol = 1e-12;

enum class ErrorKind {
    DimensionOutOfRange,
    IndexOutOfRange,
    NotClosedUnderFaces,
    UnorderedVertices,
    ShapeMismatch,
    InternalInvariantBroken,
    NotFromComplex,
    MissingEntry,
    UnsupportedFaceSpec,
    NotAComplex,
    BijectionFailure,
    InvalidPoint,
    BadInput,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind(kind) {}
    ErrorKind kind;
};

inline const char* error_kind_name(ErrorKind k)
{
    switch (k) {
        case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NotClosedUnderFaces: return "NotClosedUnderFaces";
        case ErrorKind::UnorderedVertices: return "UnorderedVertices";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::InternalInvariantBroken: return "InternalInvariantBroken";
        case ErrorKind::NotFromComplex: return "NotFromComplex";
        case ErrorKind::MissingEntry: return "MissingEntry";
        case ErrorKind::UnsupportedFaceSpec: return "UnsupportedFaceSpec";
        case ErrorKind::NotAComplex: return "NotAComplex";
        case ErrorKind::BijectionFailure: return "BijectionFailure";
        case ErrorKind::InvalidPoint: return "InvalidPoint";
        case ErrorKind::BadInput: return "BadInput";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Simplices and operators
// ---------------------------------------------------------------------------

struct GeneratorId {
    int dim = 0;
    int index = 0;

    friend bool operator==(const GeneratorId& a, const GeneratorId& b)
    {
        return a.dim == b.dim && a.index == b.index;
    }
    friend bool operator!=(const GeneratorId& a, const GeneratorId& b) { return !(a == b); }
    friend bool operator<(const GeneratorId& a, const GeneratorId& b)
    {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.index < b.index;
    }
};

// Eilenberg-Zilber normal form: a strictly decreasing degeneracy word applied
// to a nondegenerate generator. The empty word is the generator itself.
struct NormalForm {
    std::vector<int> degens; // strictly decreasing, outermost first
    GeneratorId gen;

    NormalForm() = default;
    NormalForm(GeneratorId g) : gen(g) {}
    NormalForm(std::vector<int> w, GeneratorId g) : degens(std::move(w)), gen(g) {}

    int dim() const { return gen.dim + (int)degens.size(); }
    bool degenerate() const { return !degens.empty(); }

    friend bool operator==(const NormalForm& a, const NormalForm& b)
    {
        return a.gen == b.gen && a.degens == b.degens;
    }
    friend bool operator!=(const NormalForm& a, const NormalForm& b) { return !(a == b); }
    friend bool operator<(const NormalForm& a, const NormalForm& b)
    {
        if (a.gen != b.gen) return a.gen < b.gen;
        return a.degens < b.degens;
    }
};

enum class OpKind { Face, Degeneracy };

struct OpLetter {
    OpKind kind;
    int index;
};

// Letters in composition order: front() is the outermost operator, so the
// word is applied back to front.
using OperatorWord = std::vector<OpLetter>;

inline OpLetter face_op(int i) { return OpLetter{OpKind::Face, i}; }
inline OpLetter degeneracy_op(int i) { return OpLetter{OpKind::Degeneracy, i}; }

// ---------------------------------------------------------------------------
// Simplicial sets (dimension truncated, nondegenerate generators only)
// ---------------------------------------------------------------------------

struct Generator {
    std::string label;
    std::vector<NormalForm> faces; // faces[i] = d_i, dim+1 entries for dim >= 1
    std::vector<int> vertices;     // set when built from an ordered complex
};

class SimplicialSet {
  public:
    int truncation() const { return truncation_; }
    bool from_complex_flag() const { return from_complex_; }

    int generator_count(int dim) const
    {
        if (dim < 0 || dim >= (int)gens_.size()) return 0;
        return (int)gens_[dim].size();
    }
    int max_generator_dim() const { return (int)gens_.size() - 1; }

    const Generator& generator(GeneratorId id) const
    {
        if (id.dim < 0 || id.dim >= (int)gens_.size() || id.index < 0 ||
            id.index >= (int)gens_[id.dim].size())
            throw Error(ErrorKind::IndexOutOfRange, "unknown generator");
        return gens_[id.dim][id.index];
    }

    const NormalForm& face_of_generator(GeneratorId id, int i) const
    {
        const Generator& g = generator(id);
        if (i < 0 || i >= (int)g.faces.size())
            throw Error(ErrorKind::IndexOutOfRange, "face index out of range");
        return g.faces[i];
    }

    const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }

    std::optional<GeneratorId> generator_by_vertices(const std::vector<int>& vs) const
    {
        auto it = by_vertices_.find(vs);
        if (it == by_vertices_.end()) return std::nullopt;
        return it->second;
    }

    bool is_simplex(const std::vector<int>& distinct_sorted) const
    {
        return by_vertices_.count(distinct_sorted) > 0;
    }

    SimplicialSet with_truncation(int new_d) const
    {
        if (new_d < max_generator_dim())
            throw Error(ErrorKind::DimensionOutOfRange,
                        "truncation below the top generator dimension");
        SimplicialSet s = *this;
        s.truncation_ = new_d;
        return s;
    }

  private:
    int truncation_ = 0;
    bool from_complex_ = false;
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::string> vertex_labels_;
    std::map<std::vector<int>, GeneratorId> by_vertices_;

    friend class SimplicialSetBuilder;
};

class SimplicialSetBuilder {
  public:
    GeneratorId add_generator(int dim, std::string label = "")
    {
        if (dim < 0) throw Error(ErrorKind::DimensionOutOfRange, "negative dimension");
        if ((int)gens_.size() <= dim) gens_.resize(dim + 1);
        gens_[dim].push_back(Generator{std::move(label), {}, {}});
        return GeneratorId{dim, (int)gens_[dim].size() - 1};
    }

    void set_faces(GeneratorId id, std::vector<NormalForm> faces)
    {
        Generator& g = gens_.at(id.dim).at(id.index);
        if (id.dim >= 1 && (int)faces.size() != id.dim + 1)
            throw Error(ErrorKind::ShapeMismatch, "generator needs dim+1 faces");
        g.faces = std::move(faces);
    }

    void set_vertices(GeneratorId id, std::vector<int> vs)
    {
        gens_.at(id.dim).at(id.index).vertices = std::move(vs);
    }

    void set_vertex_labels(std::vector<std::string> labels) { vertex_labels_ = std::move(labels); }
    void mark_from_complex() { from_complex_ = true; }

    SimplicialSet build(int truncation)
    {
        SimplicialSet s;
        s.truncation_ = truncation;
        s.from_complex_ = from_complex_;
        s.gens_ = gens_;
        s.vertex_labels_ = vertex_labels_;
        if ((int)s.gens_.size() - 1 > truncation)
            throw Error(ErrorKind::DimensionOutOfRange, "generator above truncation");
        for (int d = 0; d < (int)s.gens_.size(); ++d) {
            for (int i = 0; i < (int)s.gens_[d].size(); ++i) {
                const Generator& g = s.gens_[d][i];
                if (d >= 1 && (int)g.faces.size() != d + 1)
                    throw Error(ErrorKind::ShapeMismatch, "missing faces on generator");
                for (const NormalForm& f : g.faces) {
                    if (f.dim() != d - 1)
                        throw Error(ErrorKind::ShapeMismatch, "face has wrong dimension");
                    if (f.gen.dim < 0 || f.gen.dim >= (int)s.gens_.size() ||
                        f.gen.index >= (int)s.gens_[f.gen.dim].size())
                        throw Error(ErrorKind::BadInput, "face references unknown generator");
                }
                if (!g.vertices.empty()) s.by_vertices_[g.vertices] = GeneratorId{d, i};
            }
        }
        return s;
    }

  private:
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::string> vertex_labels_;
    bool from_complex_ = false;
};

// ---------------------------------------------------------------------------
// Operator application in normal form
// ---------------------------------------------------------------------------

// s_i x for a normal form x; uses s_i s_j = s_{j+1} s_i (i <= j).
inline NormalForm apply_degeneracy(const SimplicialSet& s, int i, const NormalForm& x)
{
    int n = x.dim();
    if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "degeneracy index out of range");
    if (n + 1 > s.truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "degeneracy exceeds truncation");
    NormalForm r;
    r.gen = x.gen;
    r.degens.reserve(x.degens.size() + 1);
    size_t k = 0;
    int c = i;
    for (; k < x.degens.size(); ++k) {
        int j = x.degens[k];
        if (c <= j) {
            r.degens.push_back(j + 1);
        } else {
            break;
        }
    }
    r.degens.push_back(c);
    for (; k < x.degens.size(); ++k) r.degens.push_back(x.degens[k]);
    return r;
}

// d_i x for a normal form x, resolving faces of generators through the stored
// face table and cancelling against the degeneracy word by the d_i s_j rules.
inline NormalForm apply_face(const SimplicialSet& s, int i, const NormalForm& x)
{
    int n = x.dim();
    if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "face index out of range");
    if (n == 0) throw Error(ErrorKind::DimensionOutOfRange, "face of a 0-simplex");

    std::vector<int> out;
    out.reserve(x.degens.size());
    int c = i;
    for (size_t k = 0; k < x.degens.size(); ++k) {
        int j = x.degens[k];
        if (c < j) {
            out.push_back(j - 1);
        } else if (c == j || c == j + 1) {
            // d_i s_j = id; the rest of the word passes through untouched
            out.insert(out.end(), x.degens.begin() + k + 1, x.degens.end());
            return NormalForm{std::move(out), x.gen};
        } else {
            out.push_back(j);
            --c;
        }
    }
    // face reaches the generator
    const NormalForm& f = s.face_of_generator(x.gen, c);
    NormalForm r = f;
    for (size_t t = out.size(); t-- > 0;) r = apply_degeneracy(s, out[t], r);
    return r;
}

inline NormalForm apply_operator(const SimplicialSet& s, OpKind kind, int i, const NormalForm& x)
{
    return kind == OpKind::Face ? apply_face(s, i, x) : apply_degeneracy(s, i, x);
}

inline NormalForm normalize_word(const SimplicialSet& s, const OperatorWord& w, const NormalForm& x)
{
    NormalForm r = x;
    for (size_t k = w.size(); k-- > 0;) r = apply_operator(s, w[k].kind, w[k].index, r);
    return r;
}

// Positions tuple of a normal form: the degeneracy word applied to
// (0, 1, ..., gen.dim). Encodes the underlying monotone surjection, so
// x lies in the image of s_k exactly when entries k and k+1 agree.
inline std::vector<int> position_tuple(const NormalForm& x)
{
    std::vector<int> t(x.gen.dim + 1);
    for (int i = 0; i <= x.gen.dim; ++i) t[i] = i;
    for (size_t k = x.degens.size(); k-- > 0;) {
        int i = x.degens[k];
        t.insert(t.begin() + i, t[i]);
    }
    return t;
}

inline bool degenerate_at(const NormalForm& x, int k)
{
    std::vector<int> t = position_tuple(x);
    return k >= 0 && k + 1 < (int)t.size() && t[k] == t[k + 1];
}

// ---------------------------------------------------------------------------
// Ordered simplicial complexes and K^s
// ---------------------------------------------------------------------------

struct OrderedComplex {
    std::vector<std::string> vertex_labels;
    std::vector<std::vector<int>> simplices; // vertex index tuples, includes singletons

    int dim() const
    {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, (int)s.size() - 1);
        return d;
    }
};

inline void validate_complex(const OrderedComplex& k)
{
    std::map<std::vector<int>, bool> present;
    for (const auto& s : k.simplices) {
        if (s.empty()) throw Error(ErrorKind::BadInput, "empty simplex");
        for (int v : s)
            if (v < 0 || v >= (int)k.vertex_labels.size())
                throw Error(ErrorKind::BadInput, "simplex references unknown vertex");
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1])
                throw Error(ErrorKind::UnorderedVertices,
                            "simplex vertices must be strictly increasing");
        present[s] = true;
    }
    for (const auto& s : k.simplices) {
        if (s.size() == 1) continue;
        for (size_t i = 0; i < s.size(); ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + i);
            if (!present.count(f))
                throw Error(ErrorKind::NotClosedUnderFaces, "missing face of a listed simplex");
        }
    }
}

// The simplicial set K^s of an ordered complex: generators are the simplices,
// d_i deletes vertex i, truncation D = dim K.
inline SimplicialSet from_complex(const OrderedComplex& k)
{
    validate_complex(k);
    SimplicialSetBuilder b;
    b.set_vertex_labels(k.vertex_labels);
    b.mark_from_complex();

    std::map<std::vector<int>, GeneratorId> ids;
    std::vector<std::vector<int>> sorted = k.simplices;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& s : sorted) {
        std::string label;
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) label += ",";
            label += k.vertex_labels[s[i]];
        }
        GeneratorId id = b.add_generator((int)s.size() - 1, label);
        b.set_vertices(id, s);
        ids[s] = id;
    }
    for (const auto& s : sorted) {
        if (s.size() == 1) continue;
        std::vector<NormalForm> faces;
        for (size_t i = 0; i < s.size(); ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + i);
            faces.push_back(NormalForm{ids.at(f)});
        }
        b.set_faces(ids.at(s), std::move(faces));
    }
    int d = k.dim();
    return b.build(d < 0 ? 0 : d);
}

// Vertex tuple of a normal form over K^s (nondecreasing, with repetitions).
inline std::vector<int> vertex_tuple(const SimplicialSet& s, const NormalForm& x)
{
    const Generator& g = s.generator(x.gen);
    if (g.vertices.empty() && x.gen.dim > 0)
        throw Error(ErrorKind::NotFromComplex, "generator has no vertex tuple");
    std::vector<int> t = g.vertices;
    if (t.empty()) t = {0}; // tolerate vertex generators without explicit tuple
    for (size_t k = x.degens.size(); k-- > 0;) {
        int i = x.degens[k];
        t.insert(t.begin() + i, t[i]);
    }
    return t;
}

// Inverse of vertex_tuple: nondecreasing tuple supported on a simplex of K.
inline NormalForm normal_form_from_tuple(const SimplicialSet& s, const std::vector<int>& t)
{
    if (t.empty()) throw Error(ErrorKind::BadInput, "empty tuple");
    std::vector<int> distinct;
    std::vector<int> word;
    for (size_t p = 0; p < t.size(); ++p) {
        if (p > 0 && t[p] == t[p - 1])
            word.push_back((int)p - 1);
        else if (p > 0 && t[p] < t[p - 1])
            throw Error(ErrorKind::UnorderedVertices, "tuple not nondecreasing");
        else
            distinct.push_back(t[p]);
    }
    auto id = s.generator_by_vertices(distinct);
    if (!id) throw Error(ErrorKind::BadInput, "tuple support is not a simplex");
    std::reverse(word.begin(), word.end());
    return NormalForm{std::move(word), *id};
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

inline std::vector<GeneratorId> nondegenerate_cells(const SimplicialSet& s, int n)
{
    if (n < 0 || n > s.truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "dimension outside truncation");
    std::vector<GeneratorId> out;
    for (int i = 0; i < s.generator_count(n); ++i) out.push_back(GeneratorId{n, i});
    return out;
}

// Visits every normal form of dimension n: each generator of dimension m <= n
// under every admissible strictly decreasing degeneracy word of length n - m.
template <class F>
inline void for_each_normal_form(const SimplicialSet& s, int n, F&& fn)
{
    if (n < 0 || n > s.truncation())
        throw Error(ErrorKind::DimensionOutOfRange, "dimension outside truncation");
    std::vector<int> word;
    // Valid words i_1 > ... > i_k with i_t <= m + (k - t).
    std::function<void(GeneratorId, int, int)> rec = [&](GeneratorId g, int k, int maxidx) {
        if (k == 0) {
            fn(NormalForm{word, g});
            return;
        }
        for (int i = std::min(maxidx, g.dim + k - 1); i >= k - 1; --i) {
            word.push_back(i);
            rec(g, k - 1, i - 1);
            word.pop_back();
        }
    };
    for (int m = n; m >= 0; --m) {
        for (int gi = 0; gi < s.generator_count(m); ++gi) {
            word.clear();
            rec(GeneratorId{m, gi}, n - m, n - 1);
        }
    }
}

inline std::vector<NormalForm> all_normal_forms(const SimplicialSet& s, int n)
{
    std::vector<NormalForm> out;
    for_each_normal_form(s, n, [&](const NormalForm& x) { out.push_back(x); });
    return out;
}

inline long long count_normal_forms(const SimplicialSet& s, int n)
{
    long long c = 0;
    for_each_normal_form(s, n, [&](const NormalForm&) { ++c; });
    return c;
}

// ---------------------------------------------------------------------------
// Identity verification (Def 2.2 relations as data, never aborts)
// ---------------------------------------------------------------------------

struct IdentityViolation {
    std::string relation;
    NormalForm x;
    int i, j;
};

struct IdentityReport {
    std::vector<IdentityViolation> violations;
    long long checked = 0;
    bool ok() const { return violations.empty(); }
};

inline void check_identities_on(const SimplicialSet& s, const NormalForm& x, IdentityReport& rep)
{
    int n = x.dim();
    // d_i d_j = d_{j-1} d_i for i < j
    if (n >= 2) {
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i) {
                ++rep.checked;
                if (apply_face(s, i, apply_face(s, j, x)) !=
                    apply_face(s, j - 1, apply_face(s, i, x)))
                    rep.violations.push_back({"d_i d_j = d_{j-1} d_i", x, i, j});
            }
    }
    if (n + 2 <= s.truncation()) {
        // s_i s_j = s_{j+1} s_i for i <= j
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i) {
                ++rep.checked;
                if (apply_degeneracy(s, i, apply_degeneracy(s, j, x)) !=
                    apply_degeneracy(s, j + 1, apply_degeneracy(s, i, x)))
                    rep.violations.push_back({"s_i s_j = s_{j+1} s_i", x, i, j});
            }
    }
    if (n + 1 <= s.truncation()) {
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                ++rep.checked;
                NormalForm lhs = apply_face(s, i, apply_degeneracy(s, j, x));
                NormalForm rhs;
                if (i < j)
                    rhs = apply_degeneracy(s, j - 1, apply_face(s, i, x));
                else if (i == j || i == j + 1)
                    rhs = x;
                else
                    rhs = apply_degeneracy(s, j, apply_face(s, i - 1, x));
                if (lhs != rhs) rep.violations.push_back({"d_i s_j relation", x, i, j});
            }
    }
}

inline IdentityReport verify_identities(const SimplicialSet& s, int max_dim = -1)
{
    IdentityReport rep;
    if (max_dim < 0) max_dim = s.truncation();
    max_dim = std::min(max_dim, s.truncation());
    for (int n = 0; n <= max_dim; ++n)
        for_each_normal_form(s, n, [&](const NormalForm& x) { check_identities_on(s, x, rep); });
    return rep;
}

// ---------------------------------------------------------------------------
// Barycentric points and coordinate maps
// ---------------------------------------------------------------------------

struct BaryPoint {
    std::vector<double> c;

    BaryPoint() = default;
    explicit BaryPoint(std::vector<double> v) : c(std::move(v)) {}

    int dim() const { return (int)c.size() - 1; }

    bool valid(double tol = kBaryTol) const
    {
        if (c.empty()) return false;
        double sum = 0;
        for (double x : c) {
            if (x < -tol) return false;
            sum += x;
        }
        return std::fabs(sum - 1.0) <= tol * std::max<double>(1, c.size());
    }

    void require_valid() const
    {
        if (!valid()) throw Error(ErrorKind::InvalidPoint, "not a barycentric point");
    }
};

inline BaryPoint bary_vertex(int n, int k)
{
    std::vector<double> c(n + 1, 0.0);
    c.at(k) = 1.0;
    return BaryPoint{std::move(c)};
}

inline BaryPoint bary_center(int n)
{
    return BaryPoint{std::vector<double>(n + 1, 1.0 / (n + 1))};
}

enum class CoordMap { Epsilon, Eta };

// epsilon^i inserts 0 at slot i (Delta^{n-1} -> Delta^n); eta^i merges
// adjacent coordinates (t_i, t_{i+1}) into their sum (Delta^{n+1} -> Delta^n).
inline BaryPoint eval_coord_map(CoordMap kind, int i, const BaryPoint& t)
{
    std::vector<double> c = t.c;
    if (kind == CoordMap::Epsilon) {
        if (i < 0 || i > (int)c.size())
            throw Error(ErrorKind::IndexOutOfRange, "epsilon index out of range");
        c.insert(c.begin() + i, 0.0);
    } else {
        if (i < 0 || i + 1 >= (int)c.size())
            throw Error(ErrorKind::IndexOutOfRange, "eta index out of range");
        c[i] += c[i + 1];
        c.erase(c.begin() + i + 1);
    }
    return BaryPoint{std::move(c)};
}

// ---------------------------------------------------------------------------
// The mu operator of a multidegree
// ---------------------------------------------------------------------------

struct MuOperator {
    std::vector<int> q;
    OperatorWord word; // degeneracy word carrying S_p into S_{q+p}

    // Blockwise barycentric sum Delta^{q+p} -> Delta^p; block i has q_i+1 slots.
    BaryPoint coord_map(const BaryPoint& t) const
    {
        int total = 0;
        for (int qi : q) total += qi + 1;
        if ((int)t.c.size() != total)
            throw Error(ErrorKind::ShapeMismatch, "coordinate count does not match multidegree");
        std::vector<double> out;
        out.reserve(q.size());
        int pos = 0;
        for (int qi : q) {
            double sum = 0;
            for (int j = 0; j <= qi; ++j) sum += t.c[pos++];
            out.push_back(sum);
        }
        return BaryPoint{std::move(out)};
    }
};

// mu_{q_0,...,q_p}: block i contributes the consecutive degeneracies
// s_{prefix_i + i + q_i - 1}, ..., s_{prefix_i + i}; later blocks are outermost.
inline MuOperator mu_operator(const std::vector<int>& q)
{
    for (int qi : q)
        if (qi < 0) throw Error(ErrorKind::BadInput, "negative fiber degree");
    if (q.empty()) throw Error(ErrorKind::BadInput, "empty multidegree");
    MuOperator mu;
    mu.q = q;
    int p = (int)q.size() - 1;
    int prefix = 0;
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i <= p; ++i) {
        std::vector<int> blk;
        int low = prefix + i;
        for (int idx = low + q[i] - 1; idx >= low; --idx) blk.push_back(idx);
        blocks.push_back(std::move(blk));
        prefix += q[i];
    }
    for (int i = p; i >= 0; --i)
        for (int idx : blocks[i]) mu.word.push_back(degeneracy_op(idx));
    return mu;
}

inline NormalForm apply_mu(const SimplicialSet& s, const std::vector<int>& q, const NormalForm& x)
{
    return normalize_word(s, mu_operator(q).word, x);
}

} // namespace prismatica
