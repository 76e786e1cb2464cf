#pragma once

#include <set>

#include "prismatica/core.hpp"

namespace prismatica {

// Built-in complexes used by the CLI and the test suites.
//
//   point      one vertex
//   interval   one edge
//   circle     boundary of a triangle
//   triangle   full 2-simplex
//   torus7     7-vertex triangulated torus (all 21 edges, 14 triangles)
//   rp2        6-vertex projective plane (icosahedron quotient)
//   mobius     5-vertex Moebius band
//   two_edges  two disjoint edges
inline OrderedComplex fixture_complex(const std::string& name)
{
    auto labels = [](int n) {
        std::vector<std::string> v;
        for (int i = 0; i < n; ++i) v.push_back(std::to_string(i));
        return v;
    };
    OrderedComplex k;
    if (name == "point") {
        k.vertex_labels = labels(1);
        k.simplices = {{0}};
        return k;
    }
    if (name == "interval") {
        k.vertex_labels = labels(2);
        k.simplices = {{0}, {1}, {0, 1}};
        return k;
    }
    if (name == "circle") {
        k.vertex_labels = labels(3);
        k.simplices = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
        return k;
    }
    if (name == "triangle") {
        k.vertex_labels = labels(3);
        k.simplices = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
        return k;
    }
    if (name == "torus7") {
        k.vertex_labels = labels(7);
        for (int i = 0; i < 7; ++i) k.simplices.push_back({i});
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) k.simplices.push_back({i, j});
        for (int i = 0; i < 7; ++i) {
            std::vector<int> a = {i, (i + 1) % 7, (i + 3) % 7};
            std::vector<int> b = {i, (i + 2) % 7, (i + 3) % 7};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            k.simplices.push_back(a);
            k.simplices.push_back(b);
        }
        return k;
    }
    if (name == "rp2") {
        k.vertex_labels = labels(6);
        for (int i = 0; i < 6; ++i) k.simplices.push_back({i});
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) k.simplices.push_back({i, j});
        k.simplices.insert(k.simplices.end(),
                           {{0, 1, 2},
                            {0, 2, 3},
                            {0, 3, 4},
                            {0, 4, 5},
                            {0, 1, 5},
                            {1, 2, 4},
                            {1, 3, 4},
                            {1, 3, 5},
                            {2, 3, 5},
                            {2, 4, 5}});
        return k;
    }
    if (name == "mobius") {
        k.vertex_labels = labels(5);
        for (int i = 0; i < 5; ++i) k.simplices.push_back({i});
        std::set<std::vector<int>> edges;
        for (int i = 0; i < 5; ++i) {
            std::vector<int> t = {i, (i + 1) % 5, (i + 2) % 5};
            std::sort(t.begin(), t.end());
            k.simplices.push_back(t);
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) edges.insert({t[a], t[b]});
        }
        for (const auto& e : edges) k.simplices.push_back(e);
        return k;
    }
    if (name == "two_edges") {
        k.vertex_labels = labels(4);
        k.simplices = {{0}, {1}, {2}, {3}, {0, 1}, {2, 3}};
        return k;
    }
    throw Error(ErrorKind::BadInput, "unknown fixture: " + name);
}

inline const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names = {
        "point", "interval", "circle", "triangle", "torus7", "rp2", "mobius", "two_edges"};
    return names;
}

// K^s of a fixture, with the truncation raised to at least min_truncation so
// higher-dimensional (degenerate) elements can be enumerated.
inline SimplicialSet fixture_set(const std::string& name, int min_truncation = -1)
{
    SimplicialSet s = from_complex(fixture_complex(name));
    if (min_truncation > s.truncation()) return s.with_truncation(min_truncation);
    return s;
}

// Gauge configurations over the `triangle` fixture, one per group backend.
// Generator keys use the vertex label tuple of the simplex.
inline std::string gauge_fixture_json(const std::string& name)
{
    if (name == "z5") {
        return R"({
  "group": {"kind": "zmod", "m": 5},
  "values": {
    "0,1": {"kind": "constant", "value": 1},
    "0,2": {"kind": "constant", "value": 3},
    "1,2": {"kind": "constant", "value": 2},
    "0,1,2": {"kind": "constant", "value": 2}
  }
})";
    }
    if (name == "s3") {
        return R"({
  "group": {"kind": "perm", "n": 3},
  "values": {
    "0,1": {"kind": "constant", "value": [1, 0, 2]},
    "0,2": {"kind": "constant", "value": [2, 1, 0]},
    "1,2": {"kind": "constant", "value": [1, 2, 0]},
    "0,1,2": {"kind": "constant", "value": [1, 2, 0]}
  }
})";
    }
    if (name == "so2") {
        // flat assignment: the triangle value matches both epsilon conditions
        // with a single constant rotation
        return R"({
  "group": {"kind": "matrix", "dim": 2},
  "values": {
    "0,1": {"kind": "rot_constant", "angle": 0.7},
    "0,2": {"kind": "rot_constant", "angle": 1.1},
    "1,2": {"kind": "rot_constant", "angle": 0.4},
    "0,1,2": {"kind": "rot_constant", "angle": 0.4}
  }
})";
    }
    throw Error(ErrorKind::BadInput, "unknown gauge fixture: " + name);
}

inline const std::vector<std::string>& gauge_fixture_names()
{
    static const std::vector<std::string> names = {"z5", "s3", "so2"};
    return names;
}

} // namespace prismatica
