#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "prismatica/fixtures.hpp"
#include "prismatica/star.hpp"

using namespace prismatica;

static std::vector<MultiDegree> small_degrees(int max_p, int max_qi)
{
    std::vector<MultiDegree> out;
    for (int p = 0; p <= max_p; ++p) {
        std::vector<int> q(p + 1, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == p + 1) {
                out.push_back(MultiDegree{q});
                return;
            }
            for (int v = 0; v <= max_qi; ++v) {
                q[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    }
    return out;
}

TEST_CASE("star complex of small fixtures")
{
    // point: St is a point
    OrderedComplex st_pt = star_complex(fixture_complex("point"));
    CHECK(st_pt.vertex_labels.size() == 1);
    CHECK(st_pt.simplices.size() == 1);

    // single edge: St is the full square on 4 pair-vertices
    OrderedComplex st_edge = star_complex(fixture_complex("interval"));
    CHECK(st_edge.vertex_labels.size() == 4);
    int by_dim[3] = {0, 0, 0};
    for (const auto& s : st_edge.simplices) by_dim[s.size() - 1]++;
    CHECK(by_dim[0] == 4);
    CHECK(by_dim[1] == 5);
    CHECK(by_dim[2] == 2);
    validate_complex(st_edge);

    // two disjoint edges: no mixed pairs
    OrderedComplex st_two = star_complex(fixture_complex("two_edges"));
    CHECK(st_two.vertex_labels.size() == 8);
    for (const auto& lbl : st_two.vertex_labels) {
        bool first_low = lbl.find("(0,") == 0 || lbl.find("(1,") == 0;
        bool second_low = lbl.find(",0)") != std::string::npos || lbl.find(",1)") != std::string::npos;
        CHECK(first_low == second_low);
    }
}

TEST_CASE("star membership witnesses")
{
    SimplicialSet circle = fixture_set("circle", 4);

    // a = b = x nondegenerate: the trivial witness
    NormalForm e{GeneratorId{1, 0}};
    auto w = star_membership(circle, e, e);
    bool trivial = false;
    for (const auto& wit : w)
        if (wit.sigma_prime == e && wit.nu.empty() && wit.mu.empty()) trivial = true;
    CHECK(trivial);

    // diagonal pair (s_0 d_0 e, e): witness sigma' = e, nu = {0}, mu = {}
    NormalForm a = apply_degeneracy(circle, 0, apply_face(circle, 0, e));
    auto w2 = star_membership(circle, a, e);
    bool found = false;
    for (const auto& wit : w2)
        if (wit.sigma_prime == e && wit.nu == std::vector<int>{0} && wit.mu.empty()) found = true;
    CHECK(found);

    // disjoint components admit no witness
    SimplicialSet two = fixture_set("two_edges", 3);
    NormalForm e01{GeneratorId{1, 0}}, e23{GeneratorId{1, 1}};
    CHECK(vertex_tuple(two, e01) == std::vector<int>{0, 1});
    CHECK(vertex_tuple(two, e23) == std::vector<int>{2, 3});
    CHECK(star_membership(two, e01, e23).empty());

    CHECK_THROWS_AS(star_membership(circle, e, NormalForm{GeneratorId{0, 0}}), Error);
}

TEST_CASE("star membership on a hand-built loop")
{
    // one vertex, one edge with both faces at it
    SimplicialSetBuilder b;
    GeneratorId v = b.add_generator(0, "v");
    GeneratorId e = b.add_generator(1, "e");
    b.set_faces(e, {NormalForm{v}, NormalForm{v}});
    SimplicialSet s = b.build(3);
    REQUIRE(verify_identities(s).ok());

    NormalForm edge{e};
    NormalForm a = apply_degeneracy(s, 0, apply_face(s, 0, edge)); // s_0 v
    auto w = star_membership(s, a, edge);
    bool found = false;
    for (const auto& wit : w)
        if (wit.sigma_prime == edge && wit.nu == std::vector<int>{0} && wit.mu.empty())
            found = true;
    CHECK(found);
}

TEST_CASE("pbar on the spec cells")
{
    SimplicialSet tri = fixture_set("triangle", 6);

    // p=0, q_0=1 on the full 2-simplex (c_0,c_1,c_2)
    NormalForm gamma{GeneratorId{2, 0}};
    PrismCell cell{Construction::Pbar, MultiDegree{{1}}, gamma, std::nullopt};
    StarCell sc = pbar(tri, cell);
    CHECK(vertex_tuple(tri, sc.sigma_bar) == std::vector<int>{2});
    CHECK(vertex_tuple(tri, sc.tau) == std::vector<int>{0, 1});
    CHECK(vertex_tuple(tri, sc.sigma) == std::vector<int>{2, 2});
    CHECK(star_cell_valid(tri, sc));

    // p=0, q_0=0, gamma = s_0 v
    NormalForm v{GeneratorId{0, 0}};
    PrismCell cell2{Construction::Pbar, MultiDegree{{0}}, NormalForm({0}, v.gen), std::nullopt};
    StarCell sc2 = pbar(tri, cell2);
    CHECK(sc2.sigma_bar == v);
    CHECK(sc2.tau == v);
    CHECK(sc2.sigma == v);

    // sigma = mu(sigma_bar) holds on every cell of a few multidegrees
    for (const MultiDegree& d : small_degrees(1, 1)) {
        if (d.payload_dim(Construction::Pbar) > tri.truncation()) continue;
        for_each_prism_cell(tri, Construction::Pbar, d, [&](const PrismCell& c) {
            StarCell out = pbar(tri, c);
            CHECK(out.sigma == apply_mu(tri, d.q, out.sigma_bar));
            CHECK(star_cell_valid(tri, out));
        });
    }
}

TEST_CASE("pbar operator route matches the tuple route")
{
    for (const std::string& name : {std::string("circle"), std::string("triangle")}) {
        SimplicialSet s = fixture_set(name, 8);
        for (const MultiDegree& d : small_degrees(2, 1)) {
            if (d.payload_dim(Construction::Pbar) > s.truncation()) continue;
            for_each_prism_cell(s, Construction::Pbar, d, [&](const PrismCell& c) {
                StarCell sc = pbar(s, c);
                std::vector<int> x, B;
                pbar_tuples(d, vertex_tuple(s, c.payload), x, B);
                CHECK(vertex_tuple(s, sc.sigma_bar) == x);
                CHECK(vertex_tuple(s, sc.tau) == B);
            });
        }
    }
}

TEST_CASE("pbar commutes with fiber faces")
{
    SimplicialSet circle = fixture_set("circle", 7);
    for (const MultiDegree& d : small_degrees(1, 2)) {
        if (d.payload_dim(Construction::Pbar) > circle.truncation()) continue;
        for_each_prism_cell(circle, Construction::Pbar, d, [&](const PrismCell& c) {
            for (int i = 0; i <= d.p; ++i) {
                if (d.q[i] < 1) continue;
                for (int j = 0; j <= d.q[i]; ++j) {
                    StarCell lhs = pbar(circle, fiber_face(circle, c, i, j));
                    StarCell base = pbar(circle, c);
                    int abs_idx = fiber_index(Construction::P, d, i, j);
                    StarCell rhs{d.with_q(i, -1), apply_face(circle, abs_idx, base.sigma),
                                 apply_face(circle, abs_idx, base.tau), base.sigma_bar};
                    CHECK(lhs == rhs);
                }
            }
        });
    }
}

TEST_CASE("pbar is a bijection onto the star cells over K^s")
{
    for (const std::string& name :
         {std::string("circle"), std::string("interval"), std::string("two_edges")}) {
        SimplicialSet s = fixture_set(name, 8);
        for (const MultiDegree& d : small_degrees(2, 1)) {
            if (d.payload_dim(Construction::Pbar) > s.truncation()) continue;

            // image of pbar
            std::set<StarCell> image;
            long long pbar_count = 0;
            bool roundtrip = true;
            for_each_prism_cell(s, Construction::Pbar, d, [&](const PrismCell& c) {
                StarCell sc = pbar(s, c);
                image.insert(sc);
                ++pbar_count;
                if (!(pbar_inverse(s, sc) == c)) roundtrip = false;
            });
            CHECK(roundtrip);
            CHECK((long long)image.size() == pbar_count); // injectivity

            // independent enumeration through membership
            std::vector<StarCell> cells = star_cells(s, d);
            CHECK((long long)cells.size() == pbar_count);
            for (const StarCell& sc : cells) {
                CHECK(image.count(sc) == 1);
                CHECK(pbar(s, pbar_inverse(s, sc)) == sc);
            }
        }
    }
}

TEST_CASE("pbar inverse clamp on the degenerate diagonal")
{
    SimplicialSet tri = fixture_set("triangle", 3);
    // deg (0;0): gamma = (clamped tau vertex, sigma vertex); degenerate
    // exactly when tau = sigma_bar
    for (int v = 0; v < 3; ++v)
        for (int w = 0; w < 3; ++w) {
            NormalForm sv{GeneratorId{0, v}}, sw{GeneratorId{0, w}};
            StarCell sc{MultiDegree{{0}}, sv, sw, sv};
            if (!star_cell_valid(tri, sc)) continue;
            PrismCell g = pbar_inverse(tri, sc);
            CHECK((g.payload.degenerate() == (v == w)));
        }
}

TEST_CASE("pbar inverse requires a complex-derived set")
{
    SimplicialSetBuilder b;
    GeneratorId v = b.add_generator(0, "v");
    (void)v;
    SimplicialSet s = b.build(2);
    NormalForm nv{GeneratorId{0, 0}};
    StarCell sc{MultiDegree{{0}}, nv, nv, nv};
    CHECK_THROWS_AS(pbar_inverse(s, sc), Error);
}

TEST_CASE("st iso counts match dimensionwise")
{
    StIsoReport pt = st_iso(fixture_complex("point"), 3);
    CHECK(pt.ok());
    for (const auto& d : pt.dims) CHECK(d.lhs_count == 1);

    StIsoReport edge = st_iso(fixture_complex("interval"), 3);
    CHECK(edge.ok());
    CHECK(edge.dims[0].lhs_count == 4);
    CHECK(edge.dims[1].lhs_count == 9);

    StIsoReport circle = st_iso(fixture_complex("circle"), 3);
    CHECK(circle.ok());
    for (const auto& d : circle.dims) CHECK(d.lhs_count == d.rhs_count);
}

TEST_CASE("ks tuple enumeration agrees with normal form enumeration")
{
    SimplicialSet torus = fixture_set("torus7", 4);
    for (int n = 0; n <= 4; ++n) {
        std::set<std::vector<int>> via_tuples;
        for_each_ks_tuple(torus, n, [&](const std::vector<int>& t) { via_tuples.insert(t); });
        std::set<std::vector<int>> via_nf;
        for_each_normal_form(torus, n, [&](const NormalForm& x) {
            via_nf.insert(vertex_tuple(torus, x));
        });
        CHECK(via_tuples == via_nf);
        CHECK((long long)via_tuples.size() == count_normal_forms(torus, n));
    }
}
