// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <iomanip>
#include <iostream>

#include "prismatica/cli.hpp"

using namespace prismatica;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, double seconds, double budget)
{
    bool in_budget = seconds < budget;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << what << " ("
              << std::fixed << std::setprecision(2) << seconds << "s";
    if (!in_budget) std::cout << ", over budget " << budget << "s";
    if (!ok) std::cout << ", checks failed";
    std::cout << ")\n";
}

struct Timer {
    Clock::time_point start = Clock::now();
    double elapsed() const
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
};

std::vector<long long> betti_of(const std::vector<HomologyGroup>& h)
{
    std::vector<long long> out;
    for (const auto& g : h) out.push_back(g.betti);
    return out;
}

bool groups_equal_reliable(const std::vector<HomologyGroup>& got,
                           const std::vector<HomologyGroup>& want)
{
    for (size_t n = 0; n < got.size(); ++n) {
        if (!got[n].reliable) continue;
        int wb = n < want.size() ? want[n].betti : 0;
        std::vector<BigInt> wt = n < want.size() ? want[n].torsion : std::vector<BigInt>{};
        if (got[n].betti != wb) return false;
        if (got[n].torsion.size() != wt.size()) return false;
        for (size_t k = 0; k < wt.size(); ++k)
            if (!(got[n].torsion[k] == wt[k])) return false;
    }
    return true;
}

std::vector<MultiDegree> degrees_up_to(int max_p, int max_qi)
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

// ---------------------------------------------------------------------------

void criterion_1()
{
    Timer t;
    bool ok = true;
    for (const auto& name : fixture_names()) {
        SimplicialSet s = fixture_set(name, 6);
        IdentityReport rep = verify_identities(s, 6);
        ok = ok && rep.ok() && rep.checked > 0;
    }
    report(1, "simplicial identities on all fixtures up to dimension 6", ok, t.elapsed(), 1.0);
}

struct HomologyRun {
    std::map<std::string, ChainComplex> complexes; // kept for criterion 3
    bool ok = true;
    double seconds = 0;
};

HomologyRun criterion_2()
{
    HomologyRun run;
    Timer t;
    struct Want {
        std::string name;
        std::vector<int> betti;
        std::vector<std::pair<int, long long>> torsion; // (degree, factor)
    };
    std::vector<Want> cases = {
        {"circle", {1, 1}, {}},
        {"torus7", {1, 2, 1}, {}},
        {"rp2", {1, 0, 0}, {{1, 2}}},
        {"mobius", {1, 1, 0}, {}},
    };
    int max_n = 3;
    for (const auto& c : cases) {
        SimplicialSet s = fixture_set(c.name);
        ChainComplex sc = simplicial_chain_complex(s);
        run.complexes["simplicial:" + c.name] = sc;
        auto hs = homology(sc);

        // expected groups, and the independent minor-gcd oracle on each matrix
        std::vector<HomologyGroup> want(hs.size());
        for (size_t n = 0; n < hs.size(); ++n) {
            want[n].betti = n < c.betti.size() ? c.betti[n] : 0;
            for (auto [deg, f] : c.torsion)
                if ((int)n == deg) want[n].torsion.push_back(BigInt(f));
        }
        for (size_t n = 0; n < hs.size(); ++n) {
            run.ok = run.ok && hs[n].betti == want[n].betti &&
                     hs[n].torsion.size() == want[n].torsion.size();
            for (size_t k = 0; k < hs[n].torsion.size() && k < want[n].torsion.size(); ++k)
                run.ok = run.ok && hs[n].torsion[k] == want[n].torsion[k];
        }
        for (int n = 1; n <= sc.top_degree(); ++n) {
            SmithResult main = smith_normal_form(sc.boundary[n]);
            SmithResult oracle = smith_oracle(sc.boundary[n]);
            run.ok = run.ok && main.rank == oracle.rank && main.factors.size() == oracle.factors.size();
            for (size_t k = 0; k < main.factors.size() && k < oracle.factors.size(); ++k)
                run.ok = run.ok && main.factors[k] == oracle.factors[k];
        }

        for (Construction cons : {Construction::P, Construction::Pbar}) {
            int need = cons == Construction::P ? max_n : 2 * max_n + 1;
            SimplicialSet sb = fixture_set(c.name, need);
            ChainComplex tc = prismatic_total_complex(sb, cons, max_n);
            run.complexes[std::string(construction_name(cons)) + ":" + c.name] = tc;
            auto ht = homology(tc);
            run.ok = run.ok && groups_equal_reliable(ht, hs);
        }
    }
    run.seconds = t.elapsed();
    report(2, "P and Pbar total homology equals simplicial homology (oracle checked)", run.ok,
           run.seconds, 60.0);
    return run;
}

void criterion_3(HomologyRun& run)
{
    Timer t;
    bool ok = true;
    // the complexes of criterion 2, plus the remaining fixtures across every
    // construction and a Pf case
    for (const auto& name : fixture_names()) {
        if (!run.complexes.count("simplicial:" + std::string(name)))
            run.complexes["simplicial:" + std::string(name)] =
                simplicial_chain_complex(fixture_set(name));
        for (Construction cons : {Construction::P, Construction::Pbar}) {
            std::string key = std::string(construction_name(cons)) + ":" + std::string(name);
            if (run.complexes.count(key)) continue;
            int max_n = 2;
            int need = cons == Construction::P ? max_n : 2 * max_n + 1;
            run.complexes[key] = prismatic_total_complex(fixture_set(name, need), cons, max_n);
        }
    }
    {
        SimplicialSet circle = fixture_set("circle", 3);
        SimplicialSet pt = fixture_set("point", 3);
        SimplicialMap f = SimplicialMap::from_vertex_map(circle, pt, {0, 0, 0});
        run.complexes["Pf:circle"] = pf_total_complex(f, 2);
    }
    long long total = 0;
    for (const auto& [name, c] : run.complexes) {
        ok = ok && check_dd_zero(c).empty();
        ++total;
    }
    ok = ok && total >= 25;
    report(3, "boundary squared is zero on every constructed complex", ok, t.elapsed(), 5.0);
}

void criterion_4()
{
    Timer t;
    bool ok = true;
    for (const auto& name : fixture_names()) {
        int dim = std::max(0, fixture_complex(name).dim());
        for (int p = 0; p <= 2; ++p) {
            SimplicialSet s = fixture_set(name, dim + p);
            ChainComplex cs = simplicial_chain_complex(s);
            int max_fiber = cs.top_degree();
            ChainComplex row = prismatic_row_complex(s, Construction::P, p, max_fiber);
            PrismComplexIndex idx =
                PrismComplexIndex::build(s, Construction::P, max_fiber, true, p);
            ChainMapData f(max_fiber + 1);
            for (int n = 0; n <= max_fiber; ++n) {
                f[n].resize(cs.basis[n].size());
                for (int j = 0; j < (int)cs.basis[n].size(); ++j) {
                    NormalForm x{GeneratorId{n, j}};
                    for (const AwTerm& term : aw_map(s, x, p)) {
                        if (fiberwise_degenerate(term.cell)) continue;
                        int slot = idx.find(n, term.cell);
                        if (slot < 0) {
                            ok = false;
                            continue;
                        }
                        f[n][j].push_back({slot, term.coeff});
                    }
                }
            }
            ok = ok && verify_chain_map(f, cs, row).ok();
        }
    }
    report(4, "aw is a chain map on all fixtures for p <= 2", ok, t.elapsed(), 10.0);
}

void criterion_5()
{
    Timer t;
    bool ok = true;
    for (const auto& name : fixture_names()) {
        OrderedComplex k = fixture_complex(name);
        for (const MultiDegree& d : degrees_up_to(2, 2)) {
            int dim = d.payload_dim(Construction::Pbar);
            SimplicialSet s = fixture_set(name, dim);

            // gamma side: pbar injective with exact inverse round trips
            std::set<StarCell> image;
            long long count = 0;
            bool round = true;
            for_each_prism_cell(s, Construction::Pbar, d, [&](const PrismCell& c) {
                StarCell sc = pbar(s, c);
                ++count;
                image.insert(sc);
                if (!star_cell_valid(s, sc)) round = false;
                if (!(pbar_inverse(s, sc) == c)) round = false;
            });
            ok = ok && round && (long long)image.size() == count;

            // independent enumeration: surjectivity and cardinality
            std::vector<StarCell> cells = star_cells(s, d);
            ok = ok && (long long)cells.size() == count;
            for (const StarCell& sc : cells) {
                if (!image.count(sc)) ok = false;
                if (!(pbar(s, pbar_inverse(s, sc)) == sc)) ok = false;
            }
        }
    }
    report(5, "pbar surjective and bijective with exact round trips (p<=2, q_i<=2)", ok,
           t.elapsed(), 30.0);
}

void criterion_6()
{
    Timer t;
    bool ok = true;
    for (const std::string name : {"point", "interval", "circle"}) {
        StIsoReport rep = st_iso(fixture_complex(name), 3);
        ok = ok && rep.ok();
        for (const auto& d : rep.dims) ok = ok && d.lhs_count == d.rhs_count;
    }
    report(6, "st is a dimensionwise bijection on point, edge and circle", ok, t.elapsed(), 30.0);
}

void criterion_7()
{
    Timer t;
    bool ok = true;
    SimplicialSet tri = fixture_set("triangle", 6);
    for (const auto& name : gauge_fixture_names()) {
        TransitionSet ts = transition_set_from_json(tri, json::parse(gauge_fixture_json(name)));
        GaugeReport compat = check_compatibility(ts, 25, 0);
        GaugeReport cocycle = check_cocycle(ts, 25, 0);
        GaugeReport transport = check_ps_boundaries(ts, 25, 0);
        ok = ok && compat.ok() && cocycle.ok() && transport.ok();
        double tol = ts.group.exact() ? 0.0 : 1e-9;
        ok = ok && compat.max_discrepancy <= tol && cocycle.max_discrepancy <= tol &&
             transport.max_discrepancy <= tol;
        ok = ok && compat.checked >= 25 && cocycle.checked >= 25 && transport.checked >= 25;
    }
    report(7, "gauge laws: compatibility, cocycle and transport boundaries", ok, t.elapsed(),
           10.0);
}

void criterion_8()
{
    Timer t;
    bool ok = true;
    SimplicialSet tri = fixture_set("triangle", 6);
    SplitMix64 rng(0);
    for (const auto& name : gauge_fixture_names()) {
        TransitionSet ts = transition_set_from_json(tri, json::parse(gauge_fixture_json(name)));
        double tol = ts.group.exact() ? 0.0 : 1e-9;
        for (const MultiDegree& d : degrees_up_to(2, 1)) {
            if (d.payload_dim(Construction::Pbar) > tri.truncation()) continue;
            for_each_prism_cell(tri, Construction::Pbar, d, [&](const PrismCell& c) {
                // a_p stays the identity on random evaluations
                InteriorPoint tp = to_interior(BaryPoint{rng.next_barycentric(d.p)});
                std::vector<BaryPoint> sp;
                for (int b = 0; b <= d.p; ++b)
                    sp.push_back(BaryPoint{rng.next_barycentric(d.q[b])});
                ClassifyingTuple tup = classify_cell(ts, c, tp, sp);
                if (!ts.group.eq(tup[d.p], ts.group.identity())) ok = false;

                // dual-path lambda/rho consistency at this sample
                BaryPoint u1 = lambda_bar(d, tp, sp);
                BaryPoint u2 = lambda_bar_blocks(d, from_interior(tp), sp);
                for (size_t z = 0; z < u1.c.size(); ++z)
                    if (std::fabs(u1.c[z] - u2.c[z]) > 1e-10) ok = false;
                for (int i = 1; i <= d.p; ++i) {
                    BaryPoint r1 = rho_eval(i, d, u1);
                    BaryPoint r2 = rho_via_eta(i, d, u1);
                    for (size_t z = 0; z < r1.c.size(); ++z)
                        if (std::fabs(r1.c[z] - r2.c[z]) > 1e-10) ok = false;
                }

                // prismatic-map property with the independence clause at
                // every base face
                if (d.p >= 1) {
                    for (int i = 0; i <= d.p; ++i) {
                        MCompatReport rep = check_m_compatibility(ts, c, i, 5, 0);
                        if (!rep.ok() || rep.max_discrepancy > tol) ok = false;
                    }
                }
            });
        }
    }
    report(8, "classifying map: a_p = 1, independence, face compatibility, dual paths", ok,
           t.elapsed(), 30.0);
}

void criterion_9()
{
    Timer t;
    bool ok = true;
    SplitMix64 rng(1234);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 6;
        std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
        for (auto& row : a)
            for (auto& x : row) x = (long long)rng.next_below(19) - 9;
        IntMatrix m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.set(r, c, a[r][c]);
        SmithResult base = smith_normal_form(m);

        auto b = a;
        for (int op = 0; op < 10; ++op) {
            int i = (int)rng.next_below(n), j = (int)rng.next_below(n);
            if (i == j) continue;
            long long k = (long long)rng.next_below(5) - 2;
            if (rng.next() & 1)
                for (int c = 0; c < n; ++c) b[i][c] += k * b[j][c];
            else
                for (int r = 0; r < n; ++r) b[r][i] += k * b[r][j];
        }
        IntMatrix mb(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) mb.set(r, c, b[r][c]);
        SmithResult tr = smith_normal_form(mb);
        ok = ok && tr.rank == base.rank && tr.factors.size() == base.factors.size();
        for (size_t k = 0; k < base.factors.size() && k < tr.factors.size(); ++k)
            ok = ok && base.factors[k] == tr.factors[k];
    }
    report(9, "smith factors stable under 100 random unimodular compositions", ok, t.elapsed(),
           30.0);
}

void criterion_10()
{
    Timer t;
    std::vector<std::vector<std::string>> suite = {
        {"validate", "--fixture", "torus7"},
        {"validate", "--fixture", "rp2"},
        {"prism", "enumerate", "--fixture", "circle", "--construction", "P", "--deg", "1,0,0"},
        {"prism", "enumerate", "--fixture", "triangle", "--construction", "Pbar", "--deg",
         "1,0,1"},
        {"star", "--fixture", "interval", "--max-p", "1", "--max-q", "1"},
        {"star", "--fixture", "circle", "--max-p", "1", "--max-q", "1"},
        {"homology", "--fixture", "circle", "--construction", "P", "--max-degree", "3",
         "--seed", "0"},
        {"homology", "--fixture", "mobius", "--construction", "Pbar", "--max-degree", "2"},
        {"homology", "--fixture", "circle", "--construction", "Pf", "--max-degree", "2"},
        {"gauge", "check", "--fixture", "triangle", "--gauge", "builtin:z5", "--seed", "0"},
        {"gauge", "check", "--fixture", "triangle", "--gauge", "builtin:s3", "--seed", "0"},
        {"gauge", "check", "--fixture", "triangle", "--gauge", "builtin:so2", "--seed", "0"},
        {"gauge", "transport", "--fixture", "triangle", "--gauge", "builtin:z5", "--simplex",
         "0,1,2", "--cube", "0.25"},
        {"classify", "--fixture", "triangle", "--gauge", "builtin:z5", "--deg", "1,0,0",
         "--samples", "3", "--seed", "0"},
        {"classify", "--fixture", "triangle", "--gauge", "builtin:so2", "--deg", "2,0,0,0",
         "--samples", "2", "--seed", "0"},
    };
    bool ok = true;
    std::string first, second;
    for (int round = 0; round < 2; ++round) {
        std::string& acc = round == 0 ? first : second;
        for (const auto& cmd : suite) {
            std::ostringstream out, err;
            int code = run_cli(cmd, out, err);
            if (code != 0) ok = false;
            acc += out.str();
            acc += err.str();
            acc += "exit=" + std::to_string(code) + "\n";
        }
    }
    ok = ok && first == second && !first.empty();
    report(10, "two full CLI suite runs with seed 0 are byte-identical", ok, t.elapsed(), 60.0);
}

} // namespace

int main()
{
    criterion_1();
    HomologyRun run = criterion_2();
    criterion_3(run);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::cout << "all acceptance criteria passed\n";
    else
        std::cout << failures << " acceptance criteria failed\n";
    return failures == 0 ? 0 : 1;
}
