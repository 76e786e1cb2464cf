#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "prismatica/bigint.hpp"
#include "prismatica/core.hpp"
#include "prismatica/fixtures.hpp"
#include "prismatica/rng.hpp"

using namespace prismatica;

static NormalForm vertex(const SimplicialSet& s, int i)
{
    (void)s;
    return NormalForm{GeneratorId{0, i}};
}

TEST_CASE("bigint arithmetic")
{
    BigInt a(123456789012345LL), b(-987654321LL);
    CHECK((a * b).str() == "-121932631124827861592745");
    CHECK((a + b).str() == "123455801358024");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK((q * b + r) == a);
    CHECK(r.abs() < b.abs());
    CHECK(BigInt::gcd(BigInt(48), BigInt(-36)).to_ll() == 12);
    CHECK(BigInt(-7).str() == "-7");
    CHECK(BigInt(0).is_zero());

    // divmod truncates toward zero, matching built-in semantics
    SplitMix64 rng(7);
    for (int t = 0; t < 500; ++t) {
        long long x = (long long)(rng.next() % 2000001) - 1000000;
        long long y = (long long)(rng.next() % 999) + 1;
        if (rng.next() & 1) y = -y;
        BigInt Q, R;
        BigInt::divmod(BigInt(x), BigInt(y), Q, R);
        CHECK(Q.to_ll() == x / y);
        CHECK(R.to_ll() == x % y);
    }
}

TEST_CASE("normalize_word spec cases")
{
    SimplicialSet s = fixture_set("circle", 3);
    NormalForm v = vertex(s, 0);

    // d_0 s_0 = id
    CHECK(normalize_word(s, {face_op(0), degeneracy_op(0)}, v) == v);
    // s_0 s_0 = s_1 s_0
    NormalForm ss = normalize_word(s, {degeneracy_op(0), degeneracy_op(0)}, v);
    CHECK(ss == NormalForm({1, 0}, v.gen));
    // d_1 s_0 = id
    CHECK(normalize_word(s, {face_op(1), degeneracy_op(0)}, v) == v);
    // idempotent: normalizing a normal form returns it
    CHECK(normalize_word(s, {}, ss) == ss);
}

TEST_CASE("apply_operator spec cases")
{
    SimplicialSet s = fixture_set("circle", 3);
    NormalForm e{GeneratorId{1, 0}}; // edge (0,1)
    NormalForm d0 = apply_face(s, 0, e);
    CHECK(d0.gen.dim == 0);
    CHECK(vertex_tuple(s, d0) == std::vector<int>{1});
    NormalForm v = vertex(s, 0);
    CHECK(apply_degeneracy(s, 0, v) == NormalForm({0}, v.gen));
    CHECK(apply_face(s, 1, NormalForm({0}, v.gen)) == v);

    CHECK_THROWS_AS(apply_face(s, 0, v), Error);
    CHECK_THROWS_AS(apply_face(s, 2, e), Error);
    SimplicialSet tight = fixture_set("point"); // truncation 0
    CHECK_THROWS_AS(apply_degeneracy(tight, 0, vertex(tight, 0)), Error);
}

TEST_CASE("from_complex counts and faces")
{
    SimplicialSet circle = fixture_set("circle");
    CHECK(circle.generator_count(0) == 3);
    CHECK(circle.generator_count(1) == 3);
    CHECK(circle.truncation() == 1);

    SimplicialSet pt = fixture_set("point");
    CHECK(pt.generator_count(0) == 1);

    SimplicialSet tri = fixture_set("triangle");
    CHECK(tri.generator_count(0) == 3);
    CHECK(tri.generator_count(1) == 3);
    CHECK(tri.generator_count(2) == 1);
    NormalForm top{GeneratorId{2, 0}};
    NormalForm d1 = apply_face(tri, 1, top);
    CHECK(vertex_tuple(tri, d1) == std::vector<int>{0, 2});

    OrderedComplex bad;
    bad.vertex_labels = {"a", "b"};
    bad.simplices = {{0}, {1}, {1, 0}};
    CHECK_THROWS_AS(from_complex(bad), Error);
    OrderedComplex open_k;
    open_k.vertex_labels = {"a", "b"};
    open_k.simplices = {{0, 1}};
    CHECK_THROWS_AS(from_complex(open_k), Error);
}

TEST_CASE("mu operator words and coordinate maps")
{
    // qvec = (1,0): blockwise sum over a 2+1 split
    MuOperator mu = mu_operator({1, 0});
    BaryPoint t{std::vector<double>{0.2, 0.3, 0.5}};
    BaryPoint img = mu.coord_map(t);
    CHECK(img.c == std::vector<double>{0.5, 0.5});

    // all-zero multidegree: identity word and map
    MuOperator mu0 = mu_operator({0, 0, 0});
    CHECK(mu0.word.empty());
    BaryPoint u{std::vector<double>{0.1, 0.2, 0.7}};
    CHECK(mu0.coord_map(u).c == u.c);

    // qvec = (2): everything collapses to a point
    MuOperator mu2 = mu_operator({2});
    CHECK(mu2.coord_map(t).c == std::vector<double>{1.0});

    // word consistency with tuples over K^s: mu duplicates vertex i q_i+1 times
    SimplicialSet tri = fixture_set("triangle", 5);
    NormalForm edge{GeneratorId{1, 0}}; // (0,1)
    NormalForm m = apply_mu(tri, {2, 1}, edge);
    CHECK(vertex_tuple(tri, m) == std::vector<int>{0, 0, 0, 1, 1});
}

TEST_CASE("eval_coord_map")
{
    BaryPoint t{std::vector<double>{0.3, 0.7}};
    CHECK(eval_coord_map(CoordMap::Epsilon, 1, t).c == std::vector<double>{0.3, 0.0, 0.7});
    BaryPoint u{std::vector<double>{0.2, 0.3, 0.5}};
    CHECK(eval_coord_map(CoordMap::Eta, 0, u).c == std::vector<double>{0.5, 0.5});

    // composing adjacent sums realizes rho^(1) on 4 coordinates
    BaryPoint w{std::vector<double>{0.1, 0.2, 0.3, 0.4}};
    BaryPoint r = eval_coord_map(CoordMap::Eta, 1, eval_coord_map(CoordMap::Eta, 2, w));
    CHECK(r.c.size() == 2);
    CHECK(r.c[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.c[1] == doctest::Approx(0.9).epsilon(1e-12));

    // eta^j . eps^j = id, and outputs stay barycentric
    SplitMix64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 1 + (int)rng.next_below(4);
        BaryPoint p{rng.next_barycentric(n)};
        int j = (int)rng.next_below(n + 1);
        BaryPoint q = eval_coord_map(CoordMap::Eta, j, eval_coord_map(CoordMap::Epsilon, j, p));
        REQUIRE(q.c.size() == p.c.size());
        for (size_t i = 0; i < q.c.size(); ++i) CHECK(q.c[i] == doctest::Approx(p.c[i]).epsilon(1e-12));
        CHECK(eval_coord_map(CoordMap::Epsilon, j, p).valid());
    }
    CHECK_THROWS_AS(eval_coord_map(CoordMap::Eta, 1, t), Error);
}

TEST_CASE("nondegenerate cell enumeration")
{
    SimplicialSet circle = fixture_set("circle", 2);
    CHECK(nondegenerate_cells(circle, 1).size() == 3);
    CHECK(nondegenerate_cells(circle, 2).empty());
    CHECK_THROWS_AS(nondegenerate_cells(circle, 3), Error);

    SimplicialSet torus = fixture_set("torus7");
    CHECK(nondegenerate_cells(torus, 2).size() == 14);
    CHECK(nondegenerate_cells(torus, 1).size() == 21);

    // all normal forms of S_1 over the circle: 3 edges + 3 degenerate vertices
    CHECK(count_normal_forms(circle, 1) == 6);
}

TEST_CASE("verify_identities on fixtures")
{
    for (const auto& name : fixture_names()) {
        SimplicialSet s = fixture_set(name, 4);
        IdentityReport rep = verify_identities(s, 4);
        CHECK_MESSAGE(rep.ok(), name);
        CHECK(rep.checked > 0);
    }

    // empty simplicial set
    SimplicialSetBuilder b;
    SimplicialSet empty = b.build(0);
    CHECK(verify_identities(empty).ok());
}

TEST_CASE("verify_identities flags swapped faces")
{
    // triangle with d_0 and d_1 swapped on the 2-generator
    SimplicialSetBuilder b;
    GeneratorId v0 = b.add_generator(0, "v0");
    GeneratorId v1 = b.add_generator(0, "v1");
    GeneratorId v2 = b.add_generator(0, "v2");
    GeneratorId e01 = b.add_generator(1, "e01");
    GeneratorId e02 = b.add_generator(1, "e02");
    GeneratorId e12 = b.add_generator(1, "e12");
    b.set_faces(e01, {NormalForm{v1}, NormalForm{v0}});
    b.set_faces(e02, {NormalForm{v2}, NormalForm{v0}});
    b.set_faces(e12, {NormalForm{v2}, NormalForm{v1}});
    GeneratorId t = b.add_generator(2, "t");
    // correct faces would be (e12, e02, e01); swap the first two
    b.set_faces(t, {NormalForm{e02}, NormalForm{e12}, NormalForm{e01}});
    SimplicialSet s = b.build(2);
    IdentityReport rep = verify_identities(s);
    CHECK_FALSE(rep.ok());
    bool found_dd = false;
    for (const auto& v : rep.violations)
        if (v.relation.substr(0, 7) == "d_i d_j") found_dd = true;
    CHECK(found_dd);
}

TEST_CASE("normal form uniqueness against the monotone-map oracle")
{
    SimplicialSet tri = fixture_set("triangle", 6);
    SplitMix64 rng(11);

    auto word_tuple = [](const OperatorWord& w, int n) {
        // action of the word on the position tuple (0..n); empty = invalid
        std::vector<int> t(n + 1);
        for (int i = 0; i <= n; ++i) t[i] = i;
        for (size_t k = w.size(); k-- > 0;) {
            int i = w[k].index;
            if (w[k].kind == OpKind::Face) {
                if ((int)t.size() <= 1 || i >= (int)t.size()) return std::vector<int>{};
                t.erase(t.begin() + i);
            } else {
                if (i >= (int)t.size()) return std::vector<int>{};
                t.insert(t.begin() + i, t[i]);
            }
        }
        return t;
    };

    for (int rep = 0; rep < 400; ++rep) {
        int n = (int)rng.next_below(3);
        // random word keeping dimensions in [0, 6]
        OperatorWord w;
        int len = 1 + (int)rng.next_below(6);
        int dim = n;
        std::vector<OpLetter> rev;
        for (int k = 0; k < len; ++k) {
            bool face = dim > 0 && (rng.next() & 1);
            if (dim >= 5) face = true;
            if (face) {
                rev.push_back(face_op((int)rng.next_below(dim + 1)));
                --dim;
            } else {
                rev.push_back(degeneracy_op((int)rng.next_below(dim + 1)));
                ++dim;
            }
        }
        w.assign(rev.rbegin(), rev.rend());

        std::vector<int> t = word_tuple(w, n);
        REQUIRE(!t.empty());

        // canonical factorization of the induced monotone map: faces at the
        // missing values, then degeneracies at the repeats
        OperatorWord canon;
        for (size_t p = t.size(); p-- > 1;)
            if (t[p] == t[p - 1]) canon.push_back(degeneracy_op((int)p - 1));
        // letters apply right to left, so ascending push order applies the
        // largest missing value first
        std::vector<bool> hit(n + 1, false);
        for (int x : t) hit[x] = true;
        for (int v = 0; v <= n; ++v)
            if (!hit[v]) canon.push_back(face_op(v));
        CHECK(word_tuple(canon, n) == t);

        for (int gi = 0; gi < tri.generator_count(n); ++gi) {
            NormalForm x{GeneratorId{n, gi}};
            CHECK(normalize_word(tri, w, x) == normalize_word(tri, canon, x));
        }
    }
}

TEST_CASE("tuple round trips over K^s")
{
    SimplicialSet torus = fixture_set("torus7", 5);
    SplitMix64 rng(5);
    for (int n = 0; n <= 5; ++n) {
        for_each_normal_form(torus, n, [&](const NormalForm& x) {
            if (rng.next_below(7)) return; // sample
            std::vector<int> t = vertex_tuple(torus, x);
            CHECK((int)t.size() == n + 1);
            CHECK(normal_form_from_tuple(torus, t) == x);
        });
    }
}

TEST_CASE("f-vector matches after from_complex")
{
    for (const auto& name : fixture_names()) {
        OrderedComplex k = fixture_complex(name);
        SimplicialSet s = from_complex(k);
        std::vector<int> fvec(std::max(0, k.dim()) + 1, 0);
        for (const auto& simp : k.simplices) fvec[simp.size() - 1]++;
        for (int d = 0; d < (int)fvec.size(); ++d) CHECK(s.generator_count(d) == fvec[d]);
    }
}
